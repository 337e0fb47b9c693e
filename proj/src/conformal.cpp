#include "conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "invariants.hpp"

namespace cgl {

int weyl_quantity_weight(WeylQuantity q) { return q == WeylQuantity::WeylSq ? 4 : 6; }

const char* weyl_quantity_label(WeylQuantity q) {
  switch (q) {
    case WeylQuantity::WeylSq:
      return "weyl_sq";
    case WeylQuantity::CubicW1:
      return "cubic_w1";
    case WeylQuantity::CubicW2:
      return "cubic_w2";
    case WeylQuantity::Phi:
      return "phi";
  }
  throw std::invalid_argument("unknown conformal quantity");
}

ConformalBundle conformal_bundle(const CurvatureBundle& b) {
  const PointFrame& f = b.frame;
  const int n = f.dim;
  if (n < 3) throw std::invalid_argument("conformal decomposition needs dimension >= 3");

  ConformalBundle out;
  out.frame = f;
  const auto layout = b.riemann.data.empty() ? nullptr : b.riemann.data[0].layout_ptr();

  // Schouten jets: P = (Ric - kappa/(2(n-1)) g) / (n-2).
  JetTensor pj(n, {LO, LO}, layout);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      pj.at({j, k}) =
          (b.ricci.at({j, k}) - b.kappa * f.g_at(j, k) * (1.0 / (2.0 * (n - 1)))) * (1.0 / (n - 2));

  // Weyl jets: W_ijkl = R_ijkl - (P_jk g_il + P_il g_jk - P_jl g_ik - P_ik g_jl).
  JetTensor wj(n, {LO, LO, LO, LO}, layout);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          wj.at({i, j, k, l}) = b.riemann.at({i, j, k, l}) -
                                (pj.at({j, k}) * f.g_at(i, l) + pj.at({i, l}) * f.g_at(j, k) -
                                 pj.at({j, l}) * f.g_at(i, k) - pj.at({i, k}) * f.g_at(j, l));

  out.P = pj.values();
  out.W = wj.values();
  out.weylSq = metric_norm2(out.W, f);
  out.cubicW1 = cubic_trace1(out.W, f);
  out.cubicW2 = cubic_trace2(out.W, f);

  const int jet_order = layout ? layout->order() : 0;  // = K - 2
  if (jet_order < 1) return out;

  // Cotton jets: C_jkl = grad_l P_jk - grad_k P_jl, derivative slot first in
  // the library's gradient.
  out.has_C = true;
  JetTensor dp = covariant_derivative(pj, f);
  JetTensor cj(n, {LO, LO, LO}, dp.data[0].layout_ptr());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) cj.at({j, k, l}) = dp.at({l, j, k}) - dp.at({k, j, l});
  out.C = cj.values();
  out.cottonSq = metric_norm2(out.C, f);

  // V_mijkl = grad_m W_ijkl - g_im C_jkl + g_jm C_ikl - g_km C_lij + g_lm C_kij.
  Tensor dw = covariant_derivative(wj, f).values();
  Tensor gv = f.g_values();
  Tensor v(n, {LO, LO, LO, LO, LO});
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            v.at({m, i, j, k, l}) = dw.at({m, i, j, k, l}) - gv.at({i, m}) * out.C.at({j, k, l}) +
                                    gv.at({j, m}) * out.C.at({i, k, l}) -
                                    gv.at({k, m}) * out.C.at({l, i, j}) +
                                    gv.at({l, m}) * out.C.at({k, i, j});
  out.V = v;
  out.vSq = metric_norm2(out.V, f);

  if (jet_order < 2) return out;

  // U_mjkl = grad_m C_jkl + P_m^s W_sjkl.
  out.has_U = true;
  Tensor dc = covariant_derivative(cj, f).values();
  Tensor pup = raise_lower(out.P, 1, f);  // P_m^s
  Tensor u(n, {LO, LO, LO, LO});
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dc.at({m, j, k, l});
          for (int r = 0; r < n; ++r) s += pup.at({m, r}) * out.W.at({r, j, k, l});
          u.at({m, j, k, l}) = s;
        }
  out.U = u;

  // <W,U> = W^{mjkl} U_mjkl.
  Tensor wup = out.W;
  for (int slot = 0; slot < 4; ++slot) wup = raise_lower(wup, slot, f);
  out.wuPair = full_contract(wup, out.U);
  out.phi = out.vSq + 16.0 * out.wuPair + 16.0 * out.cottonSq;
  return out;
}

MetricField rescale_metric(const MetricField& field, const ExprPtr& upsilon) {
  if (!upsilon) throw std::invalid_argument("rescale_metric: empty conformal factor");
  MetricField out = field;
  ExprPtr factor = mk_call(Func::Exp, mk_mul(mk_lit(2.0), upsilon));
  for (int i = 0; i < field.dim(); ++i)
    for (int j = i; j < field.dim(); ++j) {
      const ExprPtr& e = field.entry(i, j);
      // Identically-zero entries stay plain zeros so exports remain readable.
      if (e && !(e->kind == Expr::Kind::Literal && e->lit == 0.0))
        out.set_entry(i, j, mk_mul(factor, e));
    }
  return out;
}

MetricField rescale_metric(const MetricField& field, const std::string& upsilon) {
  std::vector<std::string> params;
  params.reserve(field.params().size());
  for (const auto& [name, value] : field.params()) params.push_back(name);
  return rescale_metric(field, parse_expr(upsilon, field.coords(), params));
}

namespace {

double eval_weyl_quantity(WeylQuantity q, const MetricField& field,
                          const std::vector<double>& point) {
  const int order = q == WeylQuantity::Phi ? 4 : 2;
  ConformalBundle cb = conformal_bundle(curvature(build_frame(field, point, order)));
  switch (q) {
    case WeylQuantity::WeylSq:
      return cb.weylSq;
    case WeylQuantity::CubicW1:
      return cb.cubicW1;
    case WeylQuantity::CubicW2:
      return cb.cubicW2;
    case WeylQuantity::Phi:
      return cb.phi;
  }
  throw std::invalid_argument("unknown conformal quantity");
}

}  // namespace

ConformalScalingCheck conformal_weight_check(WeylQuantity q, const MetricField& field,
                                             const ExprPtr& upsilon,
                                             const std::vector<double>& point) {
  ConformalScalingCheck out;
  out.base_value = eval_weyl_quantity(q, field, point);
  out.scaled_value = eval_weyl_quantity(q, rescale_metric(field, upsilon), point);

  const double ups = eval_value(resolve_params(upsilon, field.params()), point);
  out.expected_scaled = std::exp(-weyl_quantity_weight(q) * ups) * out.base_value;

  const double scale = std::max(std::abs(out.expected_scaled), std::abs(out.scaled_value));
  out.pass = scale < 1e-12 || std::abs(out.scaled_value - out.expected_scaled) <= 1e-7 * scale;
  return out;
}

}  // namespace cgl
