#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "invariants.hpp"
#include "test_helpers.hpp"

using namespace cgl;

namespace {

CurvatureBundle bundle_from_text(const std::string& text, const std::vector<double>& pt,
                                 int order = 4) {
  MetricField m = MetricField::from_text(text);
  return curvature(build_frame(m, pt, order));
}

// ---- Explicit-loop contraction oracles -------------------------------------
// These raise indices with raw inverse-metric loops and never touch the
// library's contraction helpers, so they are independent cross-checks of
// eval_invariant's index gymnastics.

struct NumFrame {
  int n = 0;
  std::vector<double> g, gi;  // row-major values at the point
  double G(int a, int b) const { return g[static_cast<size_t>(a * n + b)]; }
  double Gi(int a, int b) const { return gi[static_cast<size_t>(a * n + b)]; }
};

NumFrame num_frame(const PointFrame& f) {
  NumFrame out;
  out.n = f.dim;
  out.g = f.g_values().data;
  out.gi = f.ginv_values().data;
  return out;
}

size_t idx4(int n, int i, int j, int k, int l) {
  return ((static_cast<size_t>(i) * n + j) * n + k) * n + l;
}

// All four slots raised, one slot at a time.
std::vector<double> raise_all4(const std::vector<double>& r, const NumFrame& f) {
  const int n = f.n;
  std::vector<double> cur = r;
  for (int slot = 0; slot < 4; ++slot) {
    std::vector<double> next(cur.size(), 0.0);
    int out_idx[4];
    for (out_idx[0] = 0; out_idx[0] < n; ++out_idx[0])
      for (out_idx[1] = 0; out_idx[1] < n; ++out_idx[1])
        for (out_idx[2] = 0; out_idx[2] < n; ++out_idx[2])
          for (out_idx[3] = 0; out_idx[3] < n; ++out_idx[3]) {
            double s = 0.0;
            int in_idx[4] = {out_idx[0], out_idx[1], out_idx[2], out_idx[3]};
            for (int a = 0; a < n; ++a) {
              in_idx[slot] = a;
              s += f.Gi(out_idx[slot], a) * cur[idx4(n, in_idx[0], in_idx[1], in_idx[2], in_idx[3])];
            }
            next[idx4(n, out_idx[0], out_idx[1], out_idx[2], out_idx[3])] = s;
          }
    cur = std::move(next);
  }
  return cur;
}

// Raise a chosen subset of the four slots.
std::vector<double> raise_slots(const std::vector<double>& r, const NumFrame& f,
                                std::initializer_list<int> slots) {
  const int n = f.n;
  std::vector<double> cur = r;
  for (int slot : slots) {
    std::vector<double> next(cur.size(), 0.0);
    int o[4];
    for (o[0] = 0; o[0] < n; ++o[0])
      for (o[1] = 0; o[1] < n; ++o[1])
        for (o[2] = 0; o[2] < n; ++o[2])
          for (o[3] = 0; o[3] < n; ++o[3]) {
            double s = 0.0;
            int in[4] = {o[0], o[1], o[2], o[3]};
            for (int a = 0; a < n; ++a) {
              in[slot] = a;
              s += f.Gi(o[slot], a) * cur[idx4(n, in[0], in[1], in[2], in[3])];
            }
            next[idx4(n, o[0], o[1], o[2], o[3])] = s;
          }
    cur = std::move(next);
  }
  return cur;
}

double oracle_riem_sq(const std::vector<double>& r, const NumFrame& f) {
  std::vector<double> up = raise_all4(r, f);
  double s = 0.0;
  for (size_t i = 0; i < r.size(); ++i) s += up[i] * r[i];
  return s;
}

double oracle_ric_sq(const std::vector<double>& r, const NumFrame& f) {
  const int n = f.n;
  std::vector<double> ric(static_cast<size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) s += f.Gi(p, q) * r[idx4(n, p, i, j, q)];
      ric[static_cast<size_t>(i * n + j)] = s;
    }
  double out = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          out += f.Gi(i, a) * f.Gi(j, b) * ric[static_cast<size_t>(i * n + j)] *
                 ric[static_cast<size_t>(a * n + b)];
  return out;
}

double oracle_cubic1(const std::vector<double>& r, const NumFrame& f) {
  const int n = f.n;
  std::vector<double> m = raise_slots(r, f, {0, 1});
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              s += m[idx4(n, i, j, k, l)] * m[idx4(n, k, l, p, q)] * m[idx4(n, p, q, i, j)];
  return s;
}

double oracle_cubic2(const std::vector<double>& r, const NumFrame& f) {
  const int n = f.n;
  std::vector<double> mix = raise_slots(r, f, {0, 2});
  std::vector<double> up = raise_all4(r, f);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              s += r[idx4(n, i, j, k, l)] * mix[idx4(n, i, p, k, q)] * up[idx4(n, p, j, q, l)];
  return s;
}

// Constant-curvature model tensor c (g_jk g_il - g_ik g_jl) from the metric
// values at the point.
std::vector<double> model_riemann(const NumFrame& f, double c) {
  const int n = f.n;
  std::vector<double> r(static_cast<size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r[idx4(n, i, j, k, l)] = c * (f.G(j, k) * f.G(i, l) - f.G(i, k) * f.G(j, l));
  return r;
}

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale < 1e-12 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_SUITE("riemann_invariants") {

TEST_CASE("names carry weights and labels round-trip") {
  CHECK(invariant_weight(InvariantName::One) == 0);
  CHECK(invariant_weight(InvariantName::Kappa) == 2);
  CHECK(invariant_weight(InvariantName::KappaSq) == 4);
  CHECK(invariant_weight(InvariantName::RicSq) == 4);
  CHECK(invariant_weight(InvariantName::RiemSq) == 4);
  CHECK(invariant_weight(InvariantName::LapKappa) == 4);
  CHECK(invariant_weight(InvariantName::GradRiemSq) == 6);
  CHECK(invariant_weight(InvariantName::Cubic1) == 6);
  CHECK(invariant_weight(InvariantName::Cubic2) == 6);
  CHECK(all_invariants().size() == 9);
  for (InvariantName name : all_invariants())
    CHECK(invariant_from_label(invariant_label(name)) == name);
  CHECK_THROWS_AS(invariant_from_label("riem_cubed"), std::invalid_argument);
}

TEST_CASE("flat space: every invariant vanishes except the constant") {
  CurvatureBundle b = bundle_from_text(testutil::flat_text(3), {0.4, -1.2, 0.7});
  for (InvariantName name : all_invariants()) {
    double v = eval_invariant(name, b);
    if (name == InvariantName::One)
      CHECK(v == 1.0);
    else
      CHECK(std::abs(v) < 1e-12);
  }
  CHECK(heat_invariant(0, b).value == 1.0);
  CHECK(std::abs(heat_invariant(1, b).value) < 1e-12);
  CHECK(std::abs(heat_invariant(2, b).value) < 1e-12);
  CHECK(std::abs(heat_invariant(3, b, true).value) < 1e-12);
}

TEST_CASE("unit spheres match the constant-curvature closed forms") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    std::vector<double> pt(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pt[static_cast<size_t>(i)] = 0.2 - 0.11 * i;
    CurvatureBundle b = bundle_from_text(testutil::sphere_text(n), pt);
    const double nn1 = n * (n - 1.0);

    CHECK(rel_diff(eval_invariant(InvariantName::Kappa, b), nn1) < 1e-9);
    CHECK(rel_diff(eval_invariant(InvariantName::KappaSq, b), nn1 * nn1) < 1e-9);
    CHECK(rel_diff(eval_invariant(InvariantName::RicSq, b), n * (n - 1.0) * (n - 1.0)) < 1e-9);
    CHECK(rel_diff(eval_invariant(InvariantName::RiemSq, b), 2.0 * nn1) < 1e-9);
    CHECK(std::abs(eval_invariant(InvariantName::LapKappa, b)) < 1e-7);
    CHECK(std::abs(eval_invariant(InvariantName::GradRiemSq, b)) < 1e-7);
    CHECK(rel_diff(eval_invariant(InvariantName::Cubic1, b), -4.0 * nn1) < 1e-9);
    CHECK(rel_diff(eval_invariant(InvariantName::Cubic2, b), -nn1 * (n - 2.0)) < 1e-9);

    // The same numbers from the model tensor via raw index loops; this pins
    // both the bundle's Riemann tensor and the contraction patterns.
    NumFrame f = num_frame(b.frame);
    std::vector<double> model = model_riemann(f, 1.0);
    std::vector<double> actual = b.R().data;
    REQUIRE(actual.size() == model.size());
    for (size_t i = 0; i < model.size(); ++i) CHECK(std::abs(actual[i] - model[i]) < 1e-9);
    CHECK(rel_diff(oracle_riem_sq(model, f), 2.0 * nn1) < 1e-10);
    CHECK(rel_diff(oracle_cubic1(model, f), -4.0 * nn1) < 1e-10);
    if (n > 2) CHECK(rel_diff(oracle_cubic2(model, f), -nn1 * (n - 2.0)) < 1e-10);
  }
}

TEST_CASE("hyperbolic space flips the odd-order invariants") {
  CurvatureBundle b = bundle_from_text(testutil::hyperbolic_text(3), {0.15, -0.22, 0.31});
  // Curvature -1: even contractions keep their sphere values, odd ones flip.
  CHECK(rel_diff(eval_invariant(InvariantName::Kappa, b), -6.0) < 1e-9);
  CHECK(rel_diff(eval_invariant(InvariantName::RiemSq, b), 12.0) < 1e-9);
  CHECK(rel_diff(eval_invariant(InvariantName::RicSq, b), 12.0) < 1e-9);
  CHECK(rel_diff(eval_invariant(InvariantName::Cubic1, b), 24.0) < 1e-9);
  CHECK(rel_diff(eval_invariant(InvariantName::Cubic2, b), 6.0) < 1e-9);
  CHECK(rel_diff(heat_invariant(1, b).value, 1.0) < 1e-9);
}

TEST_CASE("library contractions agree with raw index loops off symmetry") {
  // A curved metric with no special structure at the evaluation point.
  CurvatureBundle b = bundle_from_text(testutil::wiggly_text(3), {0.7, -0.3, 0.4});
  NumFrame f = num_frame(b.frame);
  std::vector<double> r = b.R().data;

  CHECK(rel_diff(eval_invariant(InvariantName::RiemSq, b), oracle_riem_sq(r, f)) < 1e-11);
  CHECK(rel_diff(eval_invariant(InvariantName::RicSq, b), oracle_ric_sq(r, f)) < 1e-11);
  CHECK(rel_diff(eval_invariant(InvariantName::Cubic1, b), oracle_cubic1(r, f)) < 1e-11);
  CHECK(rel_diff(eval_invariant(InvariantName::Cubic2, b), oracle_cubic2(r, f)) < 1e-11);

  // |grad R|^2 by raising all five slots of the library's gradient values
  // with raw loops.
  const int n = 3;
  std::vector<double> dr = b.gradR.values().data;
  double grad = 0.0;
  std::vector<int> a(5), ap(5);
  auto idx5 = [&](const std::vector<int>& v) {
    size_t s = 0;
    for (int t = 0; t < 5; ++t) s = s * n + static_cast<size_t>(v[static_cast<size_t>(t)]);
    return s;
  };
  for (a[0] = 0; a[0] < n; ++a[0])
    for (a[1] = 0; a[1] < n; ++a[1])
      for (a[2] = 0; a[2] < n; ++a[2])
        for (a[3] = 0; a[3] < n; ++a[3])
          for (a[4] = 0; a[4] < n; ++a[4])
            for (ap[0] = 0; ap[0] < n; ++ap[0])
              for (ap[1] = 0; ap[1] < n; ++ap[1])
                for (ap[2] = 0; ap[2] < n; ++ap[2])
                  for (ap[3] = 0; ap[3] < n; ++ap[3])
                    for (ap[4] = 0; ap[4] < n; ++ap[4]) {
                      double w = dr[idx5(a)] * dr[idx5(ap)];
                      if (w == 0.0) continue;
                      for (int t = 0; t < 5; ++t)
                        w *= f.Gi(a[static_cast<size_t>(t)], ap[static_cast<size_t>(t)]);
                      grad += w;
                    }
  CHECK(grad > 1e-6);  // genuinely curved with non-parallel curvature
  CHECK(rel_diff(eval_invariant(InvariantName::GradRiemSq, b), grad) < 1e-10);
}

TEST_CASE("heat coefficients reproduce the model values") {
  // a2 = -kappa/6 on the unit 6-sphere: kappa = 30.
  {
    std::vector<double> pt(6, 0.05);
    CurvatureBundle b = bundle_from_text(testutil::sphere_text(6), pt, 2);
    CHECK(rel_diff(heat_invariant(1, b).value, -5.0) < 1e-9);
  }
  // a4 on the unit 4-sphere: 24/180 - 36/180 + 144/72 - 0 = 29/15.
  {
    CurvatureBundle b = bundle_from_text(testutil::sphere_text(4), {0.1, -0.2, 0.15, 0.05});
    HeatValue a4 = heat_invariant(2, b);
    CHECK_FALSE(a4.partial);
    CHECK(rel_diff(a4.value, 29.0 / 15.0) < 1e-9);
  }
  // a4 on the unit 3-sphere: 12/180 - 12/180 + 36/72 = 1/2.
  {
    CurvatureBundle b = bundle_from_text(testutil::sphere_text(3), {0.3, -0.1, 0.2});
    CHECK(rel_diff(heat_invariant(2, b).value, 0.5) < 1e-9);
  }
  // a6's stated part on the unit 4-sphere, and the partial flag contract.
  {
    CurvatureBundle b = bundle_from_text(testutil::sphere_text(4), {0.1, -0.2, 0.15, 0.05});
    HeatValue open = heat_invariant(3, b);
    HeatValue closed = heat_invariant(3, b, true);
    CHECK(open.partial);
    CHECK_FALSE(closed.partial);
    CHECK(open.value == closed.value);
    const double expected = (64.0 * -48.0 + 352.0 * -24.0) / 45360.0;
    CHECK(rel_diff(closed.value, expected) < 1e-9);
  }
  // Bad index and insufficient jet order.
  {
    CurvatureBundle b = bundle_from_text(testutil::sphere_text(3), {0.3, -0.1, 0.2});
    CHECK_THROWS_AS(heat_invariant(4, b), std::invalid_argument);
    CHECK_THROWS_AS(heat_invariant(-1, b), std::invalid_argument);
  }
  {
    CurvatureBundle shallow = bundle_from_text(testutil::sphere_text(3), {0.3, -0.1, 0.2}, 2);
    CHECK_THROWS_AS(heat_invariant(2, shallow), order_error);
    CHECK_THROWS_AS(heat_invariant(3, shallow), order_error);
    CHECK_THROWS_AS(eval_invariant(InvariantName::GradRiemSq, shallow), order_error);
    CHECK_THROWS_AS(eval_invariant(InvariantName::LapKappa, shallow), order_error);
  }
}

TEST_CASE("contracted second-Bianchi identity on Ricci-flat metrics") {
  // On a Ricci-flat metric, g^{pq} R^{ijkl} R_{ijkl;pq} equals
  // Cubic1 + 4 Cubic2 exactly.
  for (int n : {5, 6}) {
    CAPTURE(n);
    MetricField m = MetricField::from_text(testutil::tangherlini_text(n));
    for (double r : {1.8, 2.3, 3.1}) {
      CAPTURE(r);
      std::vector<double> pt = testutil::tangherlini_point(n, r);
      CurvatureBundle b = curvature(build_frame(m, pt, 4));

      // Sanity: the fixture really is Ricci-flat and really is curved.
      Tensor ric = b.Ric();
      for (double v : ric.data) CHECK(std::abs(v) < 1e-9);
      double riem = eval_invariant(InvariantName::RiemSq, b);
      REQUIRE(riem > 1e-4);

      JetTensor d2 = second_covariant_riemann(b);
      Tensor d2v = d2.values();
      NumFrame f = num_frame(b.frame);
      std::vector<double> up = raise_all4(b.R().data, f);

      double lhs = 0.0;
      const size_t block = up.size();  // n^4 trailing entries per (p,q)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          double gpq = f.Gi(p, q);
          if (gpq == 0.0) continue;
          const size_t base = (static_cast<size_t>(p) * n + q) * block;
          double s = 0.0;
          for (size_t t = 0; t < block; ++t) s += up[t] * d2v.data[base + t];
          lhs += gpq * s;
        }

      double rhs = eval_invariant(InvariantName::Cubic1, b) +
                   4.0 * eval_invariant(InvariantName::Cubic2, b);
      CHECK(rel_diff(lhs, rhs) < 1e-7);
    }
  }
}

TEST_CASE("rescaled metrics obey the weight law") {
  MetricField sphere = MetricField::from_text(testutil::sphere_text(3));
  std::vector<double> pt{0.2, -0.1, 0.3};
  for (double lambda : {0.5, 1.7}) {
    CAPTURE(lambda);
    for (InvariantName name : all_invariants()) {
      CAPTURE(invariant_label(name));
      ScalingCheck c = weight_scaling_check(name, sphere, pt, lambda);
      CHECK(c.pass);
      CHECK(c.expected_scaled ==
            doctest::Approx(std::pow(lambda, -invariant_weight(name)) * c.base_value));
    }
  }

  // Doubling the metric on the unit 4-sphere quarters the scalar curvature.
  {
    MetricField s4 = MetricField::from_text(testutil::sphere_text(4));
    ScalingCheck c =
        weight_scaling_check(InvariantName::Kappa, s4, {0.1, -0.2, 0.15, 0.05}, 2.0);
    CHECK(c.pass);
    CHECK(rel_diff(c.base_value, 12.0) < 1e-9);
    CHECK(rel_diff(c.scaled_value, 3.0) < 1e-9);
  }

  // A weight-6 cubic on a Ricci-flat 6-manifold.
  {
    MetricField m = MetricField::from_text(testutil::tangherlini_text(6));
    ScalingCheck c =
        weight_scaling_check(InvariantName::Cubic2, m, testutil::tangherlini_point(6, 2.0), 1.7);
    CHECK(c.pass);
    CHECK(std::abs(c.base_value) > 1e-6);
  }

  // Weight-6 gradient term on a metric where it does not vanish.
  {
    MetricField m = MetricField::from_text(testutil::wiggly_text(3));
    ScalingCheck c = weight_scaling_check(InvariantName::GradRiemSq, m, {0.7, -0.3, 0.4}, 2.0);
    CHECK(c.pass);
    CHECK(std::abs(c.base_value) > 1e-6);
  }

  CHECK_THROWS_AS(weight_scaling_check(InvariantName::Kappa, sphere, pt, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weight_scaling_check(InvariantName::Kappa, sphere, pt, -2.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
