#include "invariants.hpp"

#include <cmath>
#include <stdexcept>

namespace cgl {

namespace {

struct LabelEntry {
  InvariantName name;
  const char* label;
  int weight;
};

constexpr LabelEntry kTable[] = {
    {InvariantName::One, "one", 0},
    {InvariantName::Kappa, "kappa", 2},
    {InvariantName::KappaSq, "kappa_sq", 4},
    {InvariantName::RicSq, "ric_sq", 4},
    {InvariantName::RiemSq, "riem_sq", 4},
    {InvariantName::LapKappa, "lap_kappa", 4},
    {InvariantName::GradRiemSq, "grad_riem_sq", 6},
    {InvariantName::Cubic1, "cubic1", 6},
    {InvariantName::Cubic2, "cubic2", 6},
};

const LabelEntry& table_entry(InvariantName name) {
  for (const auto& e : kTable)
    if (e.name == name) return e;
  throw std::invalid_argument("unknown invariant");
}

// R with slots 0 and 1 raised: M^{ij}_{kl}.
Tensor raise_first_pair(const Tensor& rll, const PointFrame& frame) {
  return raise_lower(raise_lower(rll, 0, frame), 1, frame);
}

}  // namespace

double cubic_trace1(const Tensor& rll, const PointFrame& frame) {
  const Tensor m = raise_first_pair(rll, frame);
  const int n = frame.dim;
  auto at = [&](int a, int b, int c, int d) {
    return m.data[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
  };
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double m1 = at(i, j, k, l);
          if (m1 == 0.0) continue;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) sum += m1 * at(k, l, p, q) * at(p, q, i, j);
        }
  return sum;
}

double cubic_trace2(const Tensor& rll, const PointFrame& frame) {
  // Middle factor R^{i}_{p}{}^{k}_{q}: slots 0 and 2 raised.
  const Tensor rmix = raise_lower(raise_lower(rll, 0, frame), 2, frame);
  const Tensor rall = raise_lower(raise_lower(rmix, 1, frame), 3, frame);
  const int n = frame.dim;
  auto idx = [&](int a, int b, int c, int d) {
    return ((static_cast<size_t>(a) * n + b) * n + c) * n + d;
  };
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r1 = rll.data[idx(i, j, k, l)];
          if (r1 == 0.0) continue;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              sum += r1 * rmix.data[idx(i, p, k, q)] * rall.data[idx(p, j, q, l)];
        }
  return sum;
}

namespace {

int minimal_order(InvariantName name) {
  switch (name) {
    case InvariantName::LapKappa:
      return 4;
    case InvariantName::GradRiemSq:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int invariant_weight(InvariantName name) { return table_entry(name).weight; }

const char* invariant_label(InvariantName name) { return table_entry(name).label; }

InvariantName invariant_from_label(const std::string& label) {
  for (const auto& e : kTable)
    if (label == e.label) return e.name;
  throw std::invalid_argument("unknown invariant label: " + label);
}

const std::vector<InvariantName>& all_invariants() {
  static const std::vector<InvariantName> names = [] {
    std::vector<InvariantName> v;
    for (const auto& e : kTable) v.push_back(e.name);
    return v;
  }();
  return names;
}

double eval_invariant(InvariantName name, const CurvatureBundle& bundle) {
  const PointFrame& frame = bundle.frame;
  switch (name) {
    case InvariantName::One:
      return 1.0;
    case InvariantName::Kappa:
      return bundle.kappa_value();
    case InvariantName::KappaSq: {
      const double k = bundle.kappa_value();
      return k * k;
    }
    case InvariantName::RicSq:
      return metric_norm2(bundle.Ric(), frame);
    case InvariantName::RiemSq:
      return metric_norm2(bundle.R(), frame);
    case InvariantName::LapKappa:
      if (!bundle.has_lap_kappa)
        throw order_error("LapKappa needs a jet order >= 4 curvature bundle");
      return bundle.lap_kappa;
    case InvariantName::GradRiemSq:
      if (!bundle.has_gradR)
        throw order_error("GradRiemSq needs a jet order >= 3 curvature bundle");
      return metric_norm2(bundle.gradR.values(), frame);
    case InvariantName::Cubic1:
      return cubic_trace1(bundle.R(), frame);
    case InvariantName::Cubic2:
      return cubic_trace2(bundle.R(), frame);
  }
  throw std::invalid_argument("unknown invariant");
}

HeatValue heat_invariant(int j, const CurvatureBundle& bundle, bool ricci_flat_mode) {
  switch (j) {
    case 0:
      return {1.0, false};
    case 1:
      return {-bundle.kappa_value() / 6.0, false};
    case 2: {
      const double riem = eval_invariant(InvariantName::RiemSq, bundle);
      const double ric = eval_invariant(InvariantName::RicSq, bundle);
      const double kap = bundle.kappa_value();
      const double lapk = eval_invariant(InvariantName::LapKappa, bundle);
      return {riem / 180.0 - ric / 180.0 + kap * kap / 72.0 - lapk / 30.0, false};
    }
    case 3: {
      const double grad = eval_invariant(InvariantName::GradRiemSq, bundle);
      const double c1 = eval_invariant(InvariantName::Cubic1, bundle);
      const double c2 = eval_invariant(InvariantName::Cubic2, bundle);
      const double value = (81.0 * grad + 64.0 * c1 + 352.0 * c2) / 45360.0;
      return {value, !ricci_flat_mode};
    }
    default:
      throw std::invalid_argument("heat coefficient index must be 0..3");
  }
}

ScalingCheck weight_scaling_check(InvariantName name, const MetricField& field,
                                  const std::vector<double>& point, double lambda, int order) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaling factor must be positive");
  if (order <= 0) order = minimal_order(name);

  ScalingCheck out;
  out.base_value = eval_invariant(name, curvature(build_frame(field, point, order)));

  MetricField scaled = field;
  const double l2 = lambda * lambda;
  for (int i = 0; i < field.dim(); ++i)
    for (int j = i; j < field.dim(); ++j) {
      ExprPtr e = field.entry(i, j);
      if (e) scaled.set_entry(i, j, mk_mul(mk_lit(l2), e));
    }
  out.scaled_value = eval_invariant(name, curvature(build_frame(scaled, point, order)));

  out.expected_scaled = std::pow(lambda, -invariant_weight(name)) * out.base_value;
  const double scale = std::max(std::abs(out.expected_scaled), std::abs(out.scaled_value));
  out.pass = scale < 1e-12 || std::abs(out.scaled_value - out.expected_scaled) <= 1e-9 * scale;
  return out;
}

}  // namespace cgl
