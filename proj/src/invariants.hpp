#pragma once

#include <string>

#include "curvature.hpp"

namespace cgl {

// The named scalar Riemannian invariants of weight <= 6 that the heat
// coefficients are built from.  Weights: One 0; Kappa 2; KappaSq, RicSq,
// RiemSq, LapKappa 4; GradRiemSq, Cubic1, Cubic2 6.
enum class InvariantName {
  One,
  Kappa,
  KappaSq,
  RicSq,        // |Ric|^2
  RiemSq,       // |R|^2
  LapKappa,     // Lap_g kappa
  GradRiemSq,   // |grad R|^2 = (grad R)^{m ijkl} (grad R)_{m ijkl}
  Cubic1,       // R_ij^{kl} R^{ij}_{pq} ... fully cyclic cubic trace
  Cubic2,       // R_ijkl R^{i k}_{p q} R^{pjql}
};

int invariant_weight(InvariantName name);
const char* invariant_label(InvariantName name);
InvariantName invariant_from_label(const std::string& label);  // throws on unknown
const std::vector<InvariantName>& all_invariants();

// Complete metric contraction of the named invariant at the bundle's point.
// Throws order_error when the bundle lacks the needed tensor (gradR for
// GradRiemSq, lap_kappa for LapKappa).
double eval_invariant(InvariantName name, const CurvatureBundle& bundle);

// The two cubic contraction patterns applied to any all-covariant rank-4
// tensor with Riemann-type symmetries (used for both the curvature and the
// Weyl tensor):
//   cubic_trace1: T_ij^{kl} T^{ij}_{pq} T^{pq}_{kl}
//   cubic_trace2: T_ijkl T^{i k}_{ p q} T^{pjql}
double cubic_trace1(const Tensor& t4, const PointFrame& frame);
double cubic_trace2(const Tensor& t4, const PointFrame& frame);

struct HeatValue {
  double value = 0.0;
  // True when Ricci-involving terms are omitted: the weight-6 coefficient is
  // only complete as stated on Ricci-flat metrics (or when the caller
  // asserts ricci_flat_mode).
  bool partial = false;
};

// Pointwise heat coefficient a_{2j}(Lap_g; x), j in {0,1,2,3}:
//   a_0 = 1
//   a_2 = -kappa/6
//   a_4 = |R|^2/180 - |Ric|^2/180 + kappa^2/72 - (Lap kappa)/30
//   a_6 = (81 |grad R|^2 + 64 Cubic1 + 352 Cubic2) / (9 * 7!)  [+ Ricci terms]
// The a_6 Ricci-involving remainder is not reconstructed; off Ricci-flat
// metrics the value is flagged partial.
HeatValue heat_invariant(int j, const CurvatureBundle& bundle, bool ricci_flat_mode = false);

struct ScalingCheck {
  bool pass = false;
  double base_value = 0.0;
  double scaled_value = 0.0;
  double expected_scaled = 0.0;  // lambda^{-w} * base_value
};

// Checks the homogeneity law I_{lambda^2 g} = lambda^{-w} I_g by rescaling
// the metric components at expression level and re-evaluating.  `order` 0
// picks the minimal jet order the invariant needs.
ScalingCheck weight_scaling_check(InvariantName name, const MetricField& field,
                                  const std::vector<double>& point, double lambda, int order = 0);

}  // namespace cgl
