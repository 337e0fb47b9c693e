#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expr.hpp"
#include "metric.hpp"

namespace cgl {

// Yamabe operator (conformal Laplacian):
//   P_1 u = Lap_g u + (n-2)/(4(n-1)) kappa u
// evaluated at `point`, with the geometer-positive Laplacian.  Requires
// n >= 3 (std::invalid_argument otherwise).
double yamabe_apply(const MetricField& field, const std::vector<double>& point, const ExprPtr& u);

// Paneitz operator:
//   P_2 u = Lap^2 u + delta(V du)
//         + (n-4)/2 { kappa_lap/(2(n-1)) + n kappa^2/(8(n-1)^2) - 2|P|^2 } u
// with V_ij = (n-2)/(2(n-1)) kappa g_ij - 4 P_ij (P the Schouten tensor),
// kappa_lap = Lap_g kappa, and the codifferential on 1-forms
// delta(w) = -g^{ij} grad_i w_j, whose sign makes delta d = Lap on flat
// space and is confirmed by the operator's conformal covariance.
// Requires n >= 3.
double paneitz_apply(const MetricField& field, const std::vector<double>& point, const ExprPtr& u);

// Einstein-case product formula: with Ric = lambda (n-1) g,
//   P_k u = [ prod_{j=1..k} (Lap_g + 1/4 lambda (n+2j-2)(n-2j)) ] u,
// the factors applied sequentially to u's jet (they commute, sharing one
// Laplacian).  The base is verified Einstein at `point`:
// max |Ric - lambda (n-1) g| <= 1e-8 * max(1, |Ric|), refused with the
// measured deviation otherwise.  Requires k >= 1.
double einstein_gjms_apply(int k, double lambda, const MetricField& field,
                           const std::vector<double>& point, const ExprPtr& u);

// |LHS - RHS| of the conformal-covariance law at `point`:
//   P_{k, e^{2U} g} u  =  e^{-(n/2+k) U} P_{k, g} ( e^{(n/2-k) U} u )
// for k = 1 (Yamabe) and k = 2 (Paneitz).  Both sides are evaluated
// exactly (the rescaled metric and the boosted test function are formed at
// expression level), so the residual is pure convention/implementation
// error plus rounding.
double yamabe_covariance_residual(const MetricField& field, const ExprPtr& upsilon,
                                  const ExprPtr& u, const std::vector<double>& point);
double paneitz_covariance_residual(const MetricField& field, const ExprPtr& upsilon,
                                   const ExprPtr& u, const std::vector<double>& point);

enum class OperatorKind { Yamabe, Paneitz, EinsteinGJMS };

// "yamabe" / "paneitz" / "einstein_gjms".
std::string operator_kind_label(OperatorKind kind);

// One operator evaluation, packaged for reporting.
struct OperatorApplication {
  OperatorKind op = OperatorKind::Yamabe;
  int k = 1;            // operator order index (1 Yamabe, 2 Paneitz, given for EinsteinGJMS)
  double lambda = 0.0;  // Einstein constant (EinsteinGJMS only)
  std::vector<double> point;
  double value = 0.0;
  // |LHS - RHS| of the covariance law; present when an upsilon was supplied
  // and the operator has an implemented two-sided law (Yamabe, Paneitz).
  std::optional<double> covariance_residual;
};

// Applies the requested operator and, when `upsilon` is non-null and the
// operator has a two-sided covariance law, also fills the residual.  For
// EinsteinGJMS the law is not evaluable (the rescaled metric is no longer
// Einstein), so the residual stays empty.  `k` and `lambda` are read only
// for EinsteinGJMS.
OperatorApplication run_operator(OperatorKind kind, const MetricField& field,
                                 const std::vector<double>& point, const ExprPtr& u,
                                 const ExprPtr& upsilon = nullptr, int k = 1,
                                 double lambda = 0.0);

}  // namespace cgl
