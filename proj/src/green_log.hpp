#pragma once

#include <string>
#include <vector>

#include "conformal.hpp"
#include "curvature.hpp"
#include "fg_rule.hpp"
#include "metric.hpp"

namespace cgl {

// Gamma(k) for positive half-integer k (2k a positive integer), from the
// recursion Gamma(x+1) = x Gamma(x) anchored at Gamma(1/2) = sqrt(pi) and
// Gamma(1) = 1.  Exact products, no general gamma-function call, so values
// like Gamma(5/2) = 3 sqrt(pi)/4 carry no library rounding surprises.
// Throws std::invalid_argument unless 2k is a positive integer.
double gamma_half_integer(double k);

// Which formula produced a logarithmic-singularity coefficient.
enum class FormulaPath { RiemannianHeat, ConformalMainTheorem };

// "riemannian_heat" / "conformal_main_theorem".
std::string formula_path_label(FormulaPath path);

// The coefficient of -log|x - y| in the near-diagonal expansion of a Green
// function, together with how it was computed.
struct GammaResult {
  double k = 0.0;       // operator order (half-integer)
  int n = 0;            // dimension
  double value = 0.0;   // the logarithmic-singularity coefficient at the point
  FormulaPath formula_path = FormulaPath::RiemannianHeat;
  std::string expression;  // rendered formal expression that was evaluated
  // True only when the weight-6 heat coefficient's incomplete value was
  // consumed off Ricci-flat metrics; always false at weight <= 4 and on the
  // conformal path.
  bool partial = false;
};

// gamma for the k-th power of the Laplacian:
//   gamma = (4 pi)^{-n/2} * (2 / Gamma(k)) * a_{n-2k}(x),
// with a_{2j} the heat-trace coefficients.  Requires n - 2k in {0,2,4,6}
// and k > 0 (std::invalid_argument otherwise).  When the bundle is
// Ricci-flat (max |Ric| < 1e-10 componentwise) the weight-6 coefficient is
// evaluated in ricci-flat mode and the result is complete; otherwise the
// weight-6 value is the non-Ricci part only and `partial` is set.
// Propagates order_error when the bundle's jets are too shallow for the
// requested weight.
GammaResult gamma_power_laplacian(double k, const CurvatureBundle& b);
// Convenience: builds a curvature bundle of the minimal jet order for the
// requested weight at `point`.
GammaResult gamma_power_laplacian(double k, const MetricField& field,
                                  const std::vector<double>& point);

// gamma for the order-2k conformally covariant operator with leading part
// Delta^k:
//   gamma = (2 / Gamma(k)) * (4 pi)^{-n/2} * a~_{n-2k}(x),
// where a~ is the conformal counterpart of the heat coefficient.  Requires
// k > 0, n/2 - k a nonnegative integer (so k is a half-integer exactly when
// n is odd), and n - 2k <= 6 (std::invalid_argument otherwise).  Never
// partial: the conformal coefficients are complete at every weight.
GammaResult gamma_gjms(double k, const ConformalBundle& cb);
// Convenience: builds the conformal bundle at the order the weight needs.
// Dimension 2 is admitted here for the single case k = n/2 = 1, whose
// weight-0 expression needs no Weyl data at all.
GammaResult gamma_gjms(double k, const MetricField& field, const std::vector<double>& point);

enum class FlatnessVerdict { ConformallyFlatConsistent, Obstructed };

// "CONFORMALLY_FLAT_CONSISTENT" / "OBSTRUCTED".
std::string flatness_verdict_label(FlatnessVerdict v);

struct FlatnessProbe {
  FlatnessVerdict verdict = FlatnessVerdict::ConformallyFlatConsistent;
  double k = 0.0;               // n/2 - 2, the probed operator order
  double max_abs_gamma = 0.0;   // largest |gamma| over the sample points
  std::vector<double> witness;  // point achieving the maximum
};

// Local-conformal-flatness test: the metric is locally conformally flat
// exactly when gamma for the order-(n-4) operator P_{n/2-2} vanishes
// identically (its value is a positive multiple of |W|^2).  Evaluates that
// gamma at each sample point; CONFORMALLY_FLAT_CONSISTENT when every
// |gamma| < tol, OBSTRUCTED otherwise.  Requires n >= 5 and a nonempty
// sample (std::invalid_argument otherwise).
FlatnessProbe conformal_flatness_probe(const MetricField& field,
                                       const std::vector<std::vector<double>>& points,
                                       double tol = 1e-9);

}  // namespace cgl
