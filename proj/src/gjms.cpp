#include "gjms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conformal.hpp"
#include "curvature.hpp"
#include "tensor.hpp"

namespace cgl {

namespace {

ExprPtr require_function(const ExprPtr& u) {
  if (!u) throw std::invalid_argument("operator application needs a non-null test function");
  return u;
}

// e^{w upsilon} * u at expression level, so jets of the boosted test
// function are exact.
ExprPtr boost_function(const ExprPtr& u, const ExprPtr& upsilon, double w) {
  return mk_mul(mk_call(Func::Exp, mk_mul(mk_lit(w), upsilon)), u);
}

double covariance_residual(double k, const MetricField& field, const ExprPtr& upsilon,
                           const ExprPtr& u, const std::vector<double>& point,
                           double (*apply)(const MetricField&, const std::vector<double>&,
                                           const ExprPtr&)) {
  require_function(u);
  if (!upsilon) throw std::invalid_argument("covariance residual needs a non-null upsilon");
  const int n = field.dim();
  const MetricField scaled = rescale_metric(field, upsilon);
  const double lhs = apply(scaled, point, u);
  const ExprPtr boosted = boost_function(u, upsilon, 0.5 * n - k);
  const double ups0 = eval_value(resolve_params(upsilon, field.params()), point);
  const double rhs = std::exp(-(0.5 * n + k) * ups0) * apply(field, point, boosted);
  return std::abs(lhs - rhs);
}

}  // namespace

double yamabe_apply(const MetricField& field, const std::vector<double>& point, const ExprPtr& u) {
  require_function(u);
  const int n = field.dim();
  if (n < 3) throw std::invalid_argument("the Yamabe operator needs dimension >= 3");
  const PointFrame frame = build_frame(field, point, 2);
  const CurvatureBundle b = curvature(frame);
  const Jet uj = eval_jet(resolve_params(u, field.params()), point, 2);
  const double lap = laplacian_of_jet(uj, frame).value();
  return lap + (n - 2) / (4.0 * (n - 1)) * b.kappa_value() * uj.value();
}

double paneitz_apply(const MetricField& field, const std::vector<double>& point, const ExprPtr& u) {
  require_function(u);
  const int n = field.dim();
  if (n < 3) throw std::invalid_argument("the Paneitz operator needs dimension >= 3");
  const PointFrame frame = build_frame(field, point, 4);
  const CurvatureBundle b = curvature(frame);
  const Jet uj = eval_jet(resolve_params(u, field.params()), point, 4);

  // Lap^2 u.
  const double lap2 = laplacian_of_jet(laplacian_of_jet(uj, frame), frame).value();

  // Schouten jets P_jk = (Ric_jk - kappa g_jk / (2(n-1))) / (n-2), order 2.
  const auto layout2 = b.ricci.data.front().layout_ptr();
  JetTensor schouten(n, {LO, LO}, layout2);
  for (int j = 0; j < n; ++j) {
    for (int kk = 0; kk < n; ++kk) {
      schouten.at({j, kk}) =
          (b.ricci.at({j, kk}) - b.kappa * frame.g_at(j, kk) / (2.0 * (n - 1))) / (n - 2.0);
    }
  }

  // omega_j = V_jk g^{kl} d_l u with V_jk = (n-2)/(2(n-1)) kappa g_jk - 4 P_jk.
  std::vector<Jet> du;
  du.reserve(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) du.push_back(uj.derivative(l));
  JetTensor omega(n, {LO}, layout2);
  for (int j = 0; j < n; ++j) {
    Jet acc(layout2);
    for (int kk = 0; kk < n; ++kk) {
      const Jet v_jk = (n - 2) / (2.0 * (n - 1)) * b.kappa * frame.g_at(j, kk) -
                       4.0 * schouten.at({j, kk});
      for (int l = 0; l < n; ++l) acc += v_jk * frame.ginv_at(kk, l) * du[static_cast<size_t>(l)];
    }
    omega.at({j}) = acc;
  }

  // delta omega = -g^{ij} grad_i omega_j.
  const JetTensor grad_omega = covariant_derivative(omega, frame);
  double delta_omega = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      delta_omega -= frame.ginv_at(i, j).value() * grad_omega.at({i, j}).value();
    }
  }

  // Zeroth-order bracket.
  Tensor schouten_values = schouten.values();
  const double p_sq = metric_norm2(schouten_values, frame);
  const double kappa0 = b.kappa_value();
  const double bracket = b.lap_kappa / (2.0 * (n - 1)) +
                         n * kappa0 * kappa0 / (8.0 * (n - 1) * (n - 1)) - 2.0 * p_sq;

  return lap2 + delta_omega + 0.5 * (n - 4) * bracket * uj.value();
}

double einstein_gjms_apply(int k, double lambda, const MetricField& field,
                           const std::vector<double>& point, const ExprPtr& u) {
  require_function(u);
  if (k < 1) throw std::invalid_argument("the Einstein product formula needs k >= 1");
  const int n = field.dim();
  const int order = std::max(2, 2 * k);
  const PointFrame frame = build_frame(field, point, order);
  const CurvatureBundle b = curvature(frame);

  // Refuse unless Ric = lambda (n-1) g holds at the point.
  const Tensor ric = b.Ric();
  const Tensor gv = frame.g_values();
  double max_dev = 0.0;
  double ric_max = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = ric.at({i, j});
      max_dev = std::max(max_dev, std::abs(r - lambda * (n - 1) * gv.at({i, j})));
      ric_max = std::max(ric_max, std::abs(r));
    }
  }
  if (max_dev > 1e-8 * std::max(1.0, ric_max)) {
    std::ostringstream oss;
    oss << "metric is not Einstein with lambda = " << lambda
        << " at the point: max |Ric - lambda (n-1) g| = " << max_dev;
    throw std::invalid_argument(oss.str());
  }

  Jet uj = eval_jet(resolve_params(u, field.params()), point, order);
  for (int j = 1; j <= k; ++j) {
    const double c = 0.25 * lambda * (n + 2 * j - 2) * (n - 2 * j);
    uj = laplacian_of_jet(uj, frame) + c * uj;
  }
  return uj.value();
}

double yamabe_covariance_residual(const MetricField& field, const ExprPtr& upsilon,
                                  const ExprPtr& u, const std::vector<double>& point) {
  return covariance_residual(1.0, field, upsilon, u, point, &yamabe_apply);
}

double paneitz_covariance_residual(const MetricField& field, const ExprPtr& upsilon,
                                   const ExprPtr& u, const std::vector<double>& point) {
  return covariance_residual(2.0, field, upsilon, u, point, &paneitz_apply);
}

std::string operator_kind_label(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Yamabe: return "yamabe";
    case OperatorKind::Paneitz: return "paneitz";
    case OperatorKind::EinsteinGJMS: return "einstein_gjms";
  }
  throw std::invalid_argument("unknown operator kind");
}

OperatorApplication run_operator(OperatorKind kind, const MetricField& field,
                                 const std::vector<double>& point, const ExprPtr& u,
                                 const ExprPtr& upsilon, int k, double lambda) {
  OperatorApplication rec;
  rec.op = kind;
  rec.point = point;
  switch (kind) {
    case OperatorKind::Yamabe:
      rec.k = 1;
      rec.value = yamabe_apply(field, point, u);
      if (upsilon) rec.covariance_residual = yamabe_covariance_residual(field, upsilon, u, point);
      break;
    case OperatorKind::Paneitz:
      rec.k = 2;
      rec.value = paneitz_apply(field, point, u);
      if (upsilon) rec.covariance_residual = paneitz_covariance_residual(field, upsilon, u, point);
      break;
    case OperatorKind::EinsteinGJMS:
      rec.k = k;
      rec.lambda = lambda;
      rec.value = einstein_gjms_apply(k, lambda, field, point, u);
      break;
  }
  return rec;
}

}  // namespace cgl
