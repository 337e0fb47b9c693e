#include "ambient.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "curvature.hpp"
#include "tensor.hpp"

namespace cgl {

namespace {

void check_einstein_base(const MetricField& base, double lambda,
                         const std::vector<double>& point) {
  const int n = base.dim();
  const PointFrame frame = build_frame(base, point, 2);
  const CurvatureBundle b = curvature(frame);
  const Tensor ric = b.Ric();
  const Tensor gv = frame.g_values();
  double max_dev = 0.0;
  double ric_max = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = ric.at({i, j});
      max_dev = std::max(max_dev, std::abs(r - 2.0 * lambda * (n - 1) * gv.at({i, j})));
      ric_max = std::max(ric_max, std::abs(r));
    }
  }
  if (max_dev > 1e-8 * std::max(1.0, ric_max)) {
    std::ostringstream oss;
    oss << "base is not Einstein with Ric = 2 lambda (n-1) g for lambda = " << lambda
        << ": max deviation = " << max_dev;
    throw std::invalid_argument(oss.str());
  }
}

bool mentions_var(const ExprPtr& e, int var) {
  if (!e) return false;
  if (e->kind == Expr::Kind::Var) return e->var == var;
  return mentions_var(e->a, var) || mentions_var(e->b, var);
}

bool is_literal_zero(const ExprPtr& e) {
  return e && e->kind == Expr::Kind::Literal && e->lit == 0.0;
}

// Core evaluator shared by the public entry points: u_ambient is the
// extension, already written over the ambient coordinates.
double power_of_extension(const AmbientField& af, int k, const ExprPtr& u_ambient,
                          const std::vector<double>& point, double t) {
  const int n = af.base.dim();
  if (k < 1) throw std::invalid_argument("the ambient power needs k >= 1");
  if (n % 2 == 0 && k > n / 2) {
    throw std::invalid_argument(
        "the ambient construction breaks down for k > n/2 in even dimensions");
  }
  if (!(t > 0.0)) throw std::invalid_argument("the dilation coordinate t must be positive");
  if (point.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("point dimension does not match the base");
  }
  check_einstein_base(af.base, af.lambda, point);

  std::vector<double> z;
  z.reserve(static_cast<size_t>(n) + 2);
  z.push_back(t);
  z.insert(z.end(), point.begin(), point.end());
  z.push_back(0.0);

  const int order = 2 * k;
  const PointFrame frame = build_frame(af.ambient, z, order);

  // f = t^{k - n/2} u~; the exponent may be negative or half-integral, both
  // fine on t > 0.
  const ExprPtr f =
      mk_mul(mk_pow(mk_var(0), mk_lit(k - 0.5 * n)), u_ambient);
  Jet fj = eval_jet(resolve_params(f, af.ambient.params()), z, order);
  for (int j = 0; j < k; ++j) fj = laplacian_of_jet(fj, frame);
  return std::pow(t, 0.5 * n + k) * fj.value();
}

}  // namespace

AmbientField build_ambient(const MetricField& base, double lambda) {
  return build_ambient(base, lambda, std::vector<double>(static_cast<size_t>(base.dim()), 0.0));
}

AmbientField build_ambient(const MetricField& base, double lambda,
                           const std::vector<double>& probe_point) {
  const int n = base.dim();
  if (n < 2) throw std::invalid_argument("the ambient construction needs a base of dimension >= 2");
  for (const std::string& name : base.coords()) {
    if (name == "t" || name == "rho") {
      throw std::invalid_argument("base coordinates may not be named 't' or 'rho'");
    }
  }
  check_einstein_base(base, lambda, probe_point);

  std::vector<std::string> coords;
  coords.reserve(static_cast<size_t>(n) + 2);
  coords.emplace_back("t");
  for (const std::string& c : base.coords()) coords.push_back(c);
  coords.emplace_back("rho");

  MetricField amb(n + 2, coords);
  for (const auto& [name, value] : base.params()) amb.set_param(name, value);

  const int kT = 0;
  const int kRho = n + 1;
  amb.set_entry(kT, kT, mk_mul(mk_lit(2.0), mk_var(kRho)));
  amb.set_entry(kT, kRho, mk_var(kT));
  // Warp factor t^2 (1 + lambda rho)^2 on the base block.
  const ExprPtr warp =
      mk_mul(mk_pow(mk_var(kT), mk_lit(2.0)),
             mk_pow(mk_add(mk_lit(1.0), mk_mul(mk_lit(lambda), mk_var(kRho))), mk_lit(2.0)));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const ExprPtr& e = base.entry(i, j);
      if (is_literal_zero(e)) continue;  // keep plain zeros readable
      amb.set_entry(i + 1, j + 1, mk_mul(warp, shift_vars(e, 1)));
    }
  }
  std::vector<int> sig(static_cast<size_t>(n) + 2, +1);
  sig[static_cast<size_t>(kRho)] = -1;
  amb.set_signature(sig);

  return {base, lambda, std::move(amb)};
}

double ambient_laplacian_power(const AmbientField& af, int k, const ExprPtr& u,
                               const std::vector<double>& point, double t) {
  if (!u) throw std::invalid_argument("the ambient power needs a non-null test function");
  return power_of_extension(af, k, shift_vars(u, 1), point, t);
}

ExtensionCheck extension_independence_check(const AmbientField& af, int k, const ExprPtr& u,
                                            const std::vector<double>& point,
                                            const ExprPtr& perturbation) {
  if (!u) throw std::invalid_argument("the extension check needs a non-null test function");
  if (!perturbation) throw std::invalid_argument("the extension check needs a perturbation");
  if (mentions_var(perturbation, 0)) {
    throw std::invalid_argument(
        "the perturbation may not involve t: extensions stay dilation-homogeneous");
  }
  const int n = af.base.dim();
  std::vector<double> z;
  z.reserve(static_cast<size_t>(n) + 2);
  z.push_back(1.0);
  z.insert(z.end(), point.begin(), point.end());
  z.push_back(0.0);
  const double boundary = eval_value(resolve_params(perturbation, af.ambient.params()), z);
  if (std::abs(boundary) > 1e-12) {
    std::ostringstream oss;
    oss << "the perturbation must vanish at rho = 0, got " << boundary
        << "; multiply it by rho to make it a valid extension change";
    throw std::invalid_argument(oss.str());
  }

  ExtensionCheck out;
  out.unperturbed = power_of_extension(af, k, shift_vars(u, 1), point, 1.0);
  out.perturbed =
      power_of_extension(af, k, mk_add(shift_vars(u, 1), perturbation), point, 1.0);
  out.rel_gap = std::abs(out.perturbed - out.unperturbed) / std::max(1.0, std::abs(out.unperturbed));
  out.pass = out.rel_gap <= 1e-6;
  return out;
}

}  // namespace cgl
