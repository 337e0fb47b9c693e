#pragma once

#include <string>

#include "curvature.hpp"
#include "metric.hpp"

namespace cgl {

// Scalar conformal invariants built from the Weyl tensor and its companions.
// Weights: WeylSq 4; CubicW1, CubicW2, Phi 6.
enum class WeylQuantity { WeylSq, CubicW1, CubicW2, Phi };

int weyl_quantity_weight(WeylQuantity q);
const char* weyl_quantity_label(WeylQuantity q);

// Conformal decomposition data at a point, all-covariant value tensors:
//   P_jk    = (Ric_jk - kappa/(2(n-1)) g_jk) / (n-2)          (Schouten)
//   W_ijkl  = R_ijkl - (P_jk g_il + P_il g_jk - P_jl g_ik - P_ik g_jl)
//   C_jkl   = grad_l P_jk - grad_k P_jl                        (Cotton)
//   V_mijkl = grad_m W_ijkl - g_im C_jkl + g_jm C_ikl - g_km C_lij + g_lm C_kij
//   U_mjkl  = grad_m C_jkl + P_m^s W_sjkl
//   phi     = |V|^2 + 16 <W,U> + 16 |C|^2,  <W,U> = W^{mjkl} U_mjkl
// Derivative-bearing fields need jet order: C and V appear from K >= 3, U and
// phi from K >= 4 (U differentiates the Cotton tensor); the has_* flags say
// what the bundle carries.
struct ConformalBundle {
  PointFrame frame;
  Tensor P;  // rank 2
  Tensor W;  // rank 4

  bool has_C = false;  // K >= 3: C and V
  Tensor C;  // rank 3
  Tensor V;  // rank 5

  bool has_U = false;  // K >= 4: U and phi
  Tensor U;  // rank 4

  double weylSq = 0.0;
  double cubicW1 = 0.0;
  double cubicW2 = 0.0;
  double cottonSq = 0.0;  // |C|^2, valid with has_C
  double vSq = 0.0;       // |V|^2, valid with has_C
  double wuPair = 0.0;    // <W,U>, valid with has_U
  double phi = 0.0;       // valid with has_U
};

// Builds the decomposition from curvature data.  Throws invalid_argument in
// dimension < 3 (the Schouten tensor divides by n-2).
ConformalBundle conformal_bundle(const CurvatureBundle& bundle);

// New field with components e^{2 upsilon} g_ij, composed at expression level
// so jets of the rescaled metric are exact.  The string overload parses
// upsilon over the field's coordinates and parameters.
MetricField rescale_metric(const MetricField& field, const ExprPtr& upsilon);
MetricField rescale_metric(const MetricField& field, const std::string& upsilon);

struct ConformalScalingCheck {
  bool pass = false;
  double base_value = 0.0;
  double scaled_value = 0.0;
  double expected_scaled = 0.0;  // e^{-w upsilon(point)} * base_value
};

// Checks the conformal weight law I_{e^{2 upsilon} g} = e^{-w upsilon(x)} I_g
// at the point, to 1e-7 relative.
ConformalScalingCheck conformal_weight_check(WeylQuantity q, const MetricField& field,
                                             const ExprPtr& upsilon,
                                             const std::vector<double>& point);

}  // namespace cgl
