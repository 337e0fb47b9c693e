#include "green_log.hpp"

#include <cmath>
#include <stdexcept>

#include "invariants.hpp"
#include "tensor.hpp"

namespace cgl {

double gamma_half_integer(double k) {
  double doubled = 2.0 * k;
  long long m = std::llround(doubled);
  if (m <= 0 || std::abs(doubled - static_cast<double>(m)) > 1e-9)
    throw std::invalid_argument("gamma_half_integer needs 2k to be a positive integer, got k = " +
                                std::to_string(k));
  double g = (m % 2 == 1) ? std::sqrt(M_PI) : 1.0;
  for (long long t = (m % 2 == 1) ? 1 : 2; t < m; t += 2) g *= static_cast<double>(t) / 2.0;
  return g;
}

std::string formula_path_label(FormulaPath path) {
  switch (path) {
    case FormulaPath::RiemannianHeat:
      return "riemannian_heat";
    case FormulaPath::ConformalMainTheorem:
      return "conformal_main_theorem";
  }
  throw std::invalid_argument("unknown formula path");
}

std::string flatness_verdict_label(FlatnessVerdict v) {
  switch (v) {
    case FlatnessVerdict::ConformallyFlatConsistent:
      return "CONFORMALLY_FLAT_CONSISTENT";
    case FlatnessVerdict::Obstructed:
      return "OBSTRUCTED";
  }
  throw std::invalid_argument("unknown flatness verdict");
}

namespace {

// Validates k and computes the heat-coefficient index j = (n - 2k)/2,
// requiring the weight n - 2k to land in the implemented set {0,2,4,6}.
int weight_index(double k, int n, const char* who) {
  if (!(k > 0.0))
    throw std::invalid_argument(std::string(who) + ": operator order must be positive, got k = " +
                                std::to_string(k));
  long long doubled = std::llround(2.0 * k);
  if (std::abs(2.0 * k - static_cast<double>(doubled)) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": operator order must be a half-integer, " +
                                "got k = " + std::to_string(k));
  long long twice_weight = 2 * n - 2 * doubled;  // = 2(n - 2k), always integral
  if (twice_weight < 0 || twice_weight % 4 != 0 || twice_weight > 12)
    throw std::invalid_argument(std::string(who) + ": weight n - 2k = " +
                                std::to_string(static_cast<double>(twice_weight) / 2.0) +
                                " is outside the implemented set {0, 2, 4, 6}");
  return static_cast<int>(twice_weight / 4);
}

bool is_ricci_flat(const CurvatureBundle& b) {
  Tensor ric = b.Ric();
  for (double v : ric.data)
    if (std::abs(v) >= 1e-10) return false;
  return true;
}

void check_finite(double value, const char* who) {
  if (!std::isfinite(value))
    throw std::runtime_error(std::string(who) +
                             ": value is not finite (metric singular at the point?)");
}

GammaResult gjms_from_conformal_value(double k, int n, double tilde_value, int j) {
  GammaResult out;
  out.k = k;
  out.n = n;
  out.formula_path = FormulaPath::ConformalMainTheorem;
  out.expression = to_string(a_tilde(j));
  out.partial = false;
  out.value = (2.0 / gamma_half_integer(k)) * std::pow(4.0 * M_PI, -0.5 * n) * tilde_value;
  check_finite(out.value, "gamma_gjms");
  return out;
}

// The conformal path additionally requires n/2 - k to be a nonnegative
// integer (the operator family exists only at those orders).
void check_gjms_order(double k, int n) {
  long long doubled = std::llround(2.0 * k);
  long long half_diff = n - doubled;  // = 2(n/2 - k)
  if (half_diff < 0 || half_diff % 2 != 0)
    throw std::invalid_argument("gamma_gjms: n/2 - k must be a nonnegative integer, got n = " +
                                std::to_string(n) + ", k = " + std::to_string(k));
}

}  // namespace

GammaResult gamma_power_laplacian(double k, const CurvatureBundle& b) {
  const int n = b.frame.dim;
  const int j = weight_index(k, n, "gamma_power_laplacian");
  const bool ricci_flat = (j == 3) && is_ricci_flat(b);
  HeatValue heat = heat_invariant(j, b, ricci_flat);

  GammaResult out;
  out.k = k;
  out.n = n;
  out.formula_path = FormulaPath::RiemannianHeat;
  out.expression = to_string(heat_expr(j));
  out.partial = heat.partial;
  out.value = std::pow(4.0 * M_PI, -0.5 * n) * (2.0 / gamma_half_integer(k)) * heat.value;
  check_finite(out.value, "gamma_power_laplacian");
  return out;
}

GammaResult gamma_power_laplacian(double k, const MetricField& field,
                                  const std::vector<double>& point) {
  const int j = weight_index(k, field.dim(), "gamma_power_laplacian");
  const int order = j == 2 ? 4 : (j == 3 ? 3 : 2);
  return gamma_power_laplacian(k, curvature(build_frame(field, point, order)));
}

GammaResult gamma_gjms(double k, const ConformalBundle& cb) {
  const int n = cb.frame.dim;
  const int j = weight_index(k, n, "gamma_gjms");
  check_gjms_order(k, n);
  return gjms_from_conformal_value(k, n, eval_conformal_expr(a_tilde(j), cb), j);
}

GammaResult gamma_gjms(double k, const MetricField& field, const std::vector<double>& point) {
  const int n = field.dim();
  const int j = weight_index(k, n, "gamma_gjms");
  check_gjms_order(k, n);
  if (n == 2) {
    // Only k = 1 reaches here (k > 0 and n/2 - k integral); its weight-0
    // expression is the constant 1 and needs no conformal decomposition.
    return gjms_from_conformal_value(k, n, 1.0, j);
  }
  const int order = j == 3 ? 4 : 2;
  return gamma_gjms(k, conformal_bundle(curvature(build_frame(field, point, order))));
}

FlatnessProbe conformal_flatness_probe(const MetricField& field,
                                       const std::vector<std::vector<double>>& points,
                                       double tol) {
  const int n = field.dim();
  if (n < 5)
    throw std::invalid_argument("conformal_flatness_probe needs dimension >= 5, got " +
                                std::to_string(n));
  if (points.empty())
    throw std::invalid_argument("conformal_flatness_probe needs at least one sample point");

  FlatnessProbe out;
  out.k = 0.5 * n - 2.0;
  for (const auto& pt : points) {
    GammaResult g = gamma_gjms(out.k, field, pt);
    if (std::abs(g.value) >= out.max_abs_gamma || out.witness.empty()) {
      out.max_abs_gamma = std::abs(g.value);
      out.witness = pt;
    }
  }
  out.verdict = out.max_abs_gamma < tol ? FlatnessVerdict::ConformallyFlatConsistent
                                        : FlatnessVerdict::Obstructed;
  return out;
}

}  // namespace cgl
