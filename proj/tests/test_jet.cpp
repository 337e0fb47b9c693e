#include <cmath>
#include <complex>

#include "doctest.h"
#include "jet.hpp"
#include "test_helpers.hpp"

using namespace cgl;
using testutil::cauchy_taylor_coeffs;

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_SUITE("jet_engine") {

TEST_CASE("layout sizes and position round-trip") {
  for (int n = 1; n <= 4; ++n) {
    for (int K = 0; K <= 5; ++K) {
      auto lay = JetLayout::get(n, K);
      CHECK(lay->size() == binom(n + K, K));
      for (int p = 0; p < lay->size(); ++p) {
        CHECK(lay->position(lay->multi_index(p)) == p);
        int deg = 0;
        for (int e : lay->multi_index(p)) deg += e;
        CHECK(lay->degree(p) == deg);
      }
    }
  }
}

TEST_CASE("layouts are prefix-stable across orders") {
  auto lo = JetLayout::get(3, 2);
  auto hi = JetLayout::get(3, 6);
  for (int p = 0; p < lo->size(); ++p) CHECK(lo->multi_index(p) == hi->multi_index(p));
}

TEST_CASE("increment table matches explicit position lookup") {
  auto lay = JetLayout::get(3, 4);
  for (int p = 0; p < lay->size(); ++p)
    for (int v = 0; v < 3; ++v) {
      std::vector<int> a = lay->multi_index(p);
      a[(size_t)v] += 1;
      CHECK(lay->increment(p, v) == lay->position(a));
    }
}

TEST_CASE("layout guards") {
  CHECK_THROWS(JetLayout::get(0, 3));
  CHECK_THROWS(JetLayout::get(9, 3));
  CHECK_THROWS(JetLayout::get(2, -1));
  CHECK_THROWS(JetLayout::get(2, 13));
}

TEST_CASE("variable and constant jets") {
  auto lay = JetLayout::get(2, 3);
  Jet x = Jet::variable(lay, 0, 2.5);
  CHECK(x.value() == 2.5);
  CHECK(x.coeff({1, 0}) == 1.0);
  CHECK(x.coeff({0, 1}) == 0.0);
  CHECK(x.coeff({2, 0}) == 0.0);
  Jet c = Jet::constant(lay, -3.0);
  CHECK(c.value() == -3.0);
  CHECK(c.coeff({1, 0}) == 0.0);
}

TEST_CASE("polynomial arithmetic against brute-force polynomial oracle") {
  // f = (1 + x - 2y)^3 * (x + y^2), expanded both ways.
  using testutil::Poly;
  Poly one{2, {{{0, 0}, 1.0}}};
  Poly base{2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, -2.0}}};
  Poly cube = poly_mul(poly_mul(base, base), base);
  Poly tail{2, {{{1, 0}, 1.0}, {{0, 2}, 1.0}}};
  Poly prod = poly_mul(cube, tail);
  (void)one;

  std::vector<double> x0 = {0.7, -0.4};
  auto lay = JetLayout::get(2, 5);
  Jet jx = Jet::variable(lay, 0, x0[0]);
  Jet jy = Jet::variable(lay, 1, x0[1]);
  Jet jb = 1.0 + jx - 2.0 * jy;
  Jet jf = jb * jb * jb * (jx + jy * jy);

  for (int p = 0; p < lay->size(); ++p) {
    double expect = testutil::poly_taylor_coeff(prod, x0, lay->multi_index(p));
    CHECK(jf.coeff_at(p) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("elementary functions against Cauchy-integral Taylor oracle") {
  const double x0 = 0.8;
  auto lay = JetLayout::get(1, 8);
  Jet x = Jet::variable(lay, 0, x0);

  struct Case {
    Jet jet;
    std::function<std::complex<double>(std::complex<double>)> fn;
  };
  std::vector<Case> cases;
  cases.push_back({jet_exp(x), [](std::complex<double> z) { return std::exp(z); }});
  cases.push_back({jet_log(x), [](std::complex<double> z) { return std::log(z); }});
  cases.push_back({jet_sqrt(x), [](std::complex<double> z) { return std::sqrt(z); }});
  cases.push_back({jet_sin(x), [](std::complex<double> z) { return std::sin(z); }});
  cases.push_back({jet_cos(x), [](std::complex<double> z) { return std::cos(z); }});
  cases.push_back({jet_tan(x), [](std::complex<double> z) { return std::tan(z); }});
  cases.push_back({jet_recip(x), [](std::complex<double> z) { return 1.0 / z; }});
  cases.push_back(
      {jet_pow(x, 1.7), [](std::complex<double> z) { return std::pow(z, 1.7); }});

  for (const auto& c : cases) {
    auto ref = cauchy_taylor_coeffs(c.fn, x0, 9, 0.3);
    for (int m = 0; m <= 8; ++m) {
      std::vector<int> alpha = {m};
      CHECK(c.jet.coeff(alpha) == doctest::Approx(ref[(size_t)m]).epsilon(1e-9));
    }
  }
}

TEST_CASE("algebraic identities at jet level") {
  auto lay = JetLayout::get(3, 4);
  Jet x = Jet::variable(lay, 0, 0.4);
  Jet y = Jet::variable(lay, 1, -0.9);
  Jet z = Jet::variable(lay, 2, 1.3);
  Jet a = 2.0 + x * x + jet_sin(y) - 0.5 * z;  // value > 0

  SUBCASE("exp(log a) == a") {
    Jet b = jet_exp(jet_log(a));
    for (int p = 0; p < a.size(); ++p)
      CHECK(b.coeff_at(p) == doctest::Approx(a.coeff_at(p)).epsilon(1e-12));
  }
  SUBCASE("sin^2 + cos^2 == 1") {
    Jet s = jet_sin(a), c = jet_cos(a);
    Jet u = s * s + c * c;
    CHECK(u.value() == doctest::Approx(1.0));
    for (int p = 1; p < u.size(); ++p) CHECK(u.coeff_at(p) == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("sqrt(a)^2 == a") {
    Jet r = jet_sqrt(a);
    Jet u = r * r;
    for (int p = 0; p < a.size(); ++p)
      CHECK(u.coeff_at(p) == doctest::Approx(a.coeff_at(p)).epsilon(1e-12));
  }
  SUBCASE("a * recip(a) == 1") {
    Jet u = a * jet_recip(a);
    CHECK(u.value() == doctest::Approx(1.0));
    for (int p = 1; p < u.size(); ++p) CHECK(u.coeff_at(p) == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("tan == sin/cos") {
    Jet t = jet_tan(a);
    Jet q = jet_sin(a) / jet_cos(a);
    for (int p = 0; p < t.size(); ++p)
      CHECK(t.coeff_at(p) == doctest::Approx(q.coeff_at(p)).epsilon(1e-11));
  }
}

TEST_CASE("derivative extraction and symmetry of mixed partials") {
  auto lay = JetLayout::get(2, 5);
  Jet x = Jet::variable(lay, 0, 0.3);
  Jet y = Jet::variable(lay, 1, 0.7);
  Jet f = jet_exp(x * y) + jet_sin(x - 2.0 * y);

  Jet fx = f.derivative(0);
  Jet fy = f.derivative(1);
  CHECK(fx.order() == 4);

  Jet fxy = fx.derivative(1);
  Jet fyx = fy.derivative(0);
  for (int p = 0; p < fxy.size(); ++p)
    CHECK(fxy.coeff_at(p) == doctest::Approx(fyx.coeff_at(p)).epsilon(1e-12));

  // derivative() agrees with the coefficient relation: (d_0 f) coeff at alpha
  // equals (alpha_0+1) * f coeff at alpha + e_0.
  for (int p = 0; p < fx.size(); ++p) {
    std::vector<int> a = fx.layout().multi_index(p);
    std::vector<int> b = a;
    b[0] += 1;
    CHECK(fx.coeff_at(p) == doctest::Approx((a[0] + 1) * f.coeff(b)).epsilon(1e-12));
  }

  // partial() multiplies by alpha!.
  CHECK(f.partial({2, 1}) == doctest::Approx(2.0 * f.coeff({2, 1})).epsilon(1e-12));
}

TEST_CASE("product rule via derivative") {
  auto lay = JetLayout::get(2, 4);
  Jet x = Jet::variable(lay, 0, 1.1);
  Jet y = Jet::variable(lay, 1, 0.2);
  Jet f = jet_exp(0.5 * x) + y * y;
  Jet g = jet_cos(x * y);
  Jet lhs = (f * g).derivative(0);
  Jet rhs = f.derivative(0) * g + f * g.derivative(0);
  for (int p = 0; p < lhs.size(); ++p)
    CHECK(lhs.coeff_at(p) == doctest::Approx(rhs.coeff_at(p)).epsilon(1e-12));
}

TEST_CASE("mixed-order operands produce the lower order") {
  auto hi = JetLayout::get(2, 5);
  auto lo = JetLayout::get(2, 2);
  Jet a = jet_exp(Jet::variable(hi, 0, 0.3) + Jet::variable(hi, 1, 0.1));
  Jet b = Jet::variable(lo, 0, 0.3) * Jet::variable(lo, 1, 0.1);

  Jet ab = a * b;
  CHECK(ab.order() == 2);
  Jet ab_ref = a.truncated(2) * b;
  for (int p = 0; p < ab.size(); ++p)
    CHECK(ab.coeff_at(p) == doctest::Approx(ab_ref.coeff_at(p)).epsilon(1e-13));

  Jet sum = a + b;
  CHECK(sum.order() == 2);
  CHECK(sum.value() == doctest::Approx(a.value() + b.value()));
}

TEST_CASE("truncation keeps the common prefix") {
  auto lay = JetLayout::get(3, 5);
  Jet f = jet_exp(Jet::variable(lay, 0, 0.2) - Jet::variable(lay, 2, 0.4));
  Jet t = f.truncated(3);
  CHECK(t.order() == 3);
  for (int p = 0; p < t.size(); ++p) CHECK(t.coeff_at(p) == f.coeff_at(p));
}

TEST_CASE("integer powers, including negative bases and exponents") {
  auto lay = JetLayout::get(1, 4);
  Jet x = Jet::variable(lay, 0, -2.0);  // negative base value

  Jet cube = jet_pow_int(x, 3);
  Jet ref = x * x * x;
  for (int p = 0; p < cube.size(); ++p)
    CHECK(cube.coeff_at(p) == doctest::Approx(ref.coeff_at(p)).epsilon(1e-13));

  Jet zero_pow = jet_pow_int(x, 0);
  CHECK(zero_pow.value() == 1.0);
  for (int p = 1; p < zero_pow.size(); ++p) CHECK(zero_pow.coeff_at(p) == 0.0);

  Jet inv2 = jet_pow_int(x, -2);
  Jet ref2 = jet_recip(x * x);
  for (int p = 0; p < inv2.size(); ++p)
    CHECK(inv2.coeff_at(p) == doctest::Approx(ref2.coeff_at(p)).epsilon(1e-12));

  // Real-exponent path matches exp(p log a) on a positive base.
  Jet y = Jet::variable(lay, 0, 1.5);
  Jet p25 = jet_pow(y, 2.5);
  Jet ref3 = jet_exp(2.5 * jet_log(y));
  for (int p = 0; p < p25.size(); ++p)
    CHECK(p25.coeff_at(p) == doctest::Approx(ref3.coeff_at(p)).epsilon(1e-12));
}

TEST_CASE("compose_series reproduces exp") {
  auto lay = JetLayout::get(2, 4);
  Jet a = Jet::variable(lay, 0, 0.3) * Jet::variable(lay, 1, 2.0) + 1.5;
  std::vector<double> series((size_t)5);
  double e = std::exp(a.value());
  for (int m = 0; m <= 4; ++m) series[(size_t)m] = e / factorial(m);
  Jet composed = a.compose_series(series);
  Jet ref = jet_exp(a);
  for (int p = 0; p < ref.size(); ++p)
    CHECK(composed.coeff_at(p) == doctest::Approx(ref.coeff_at(p)).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  auto lay = JetLayout::get(1, 3);
  Jet zero = Jet::constant(lay, 0.0);
  Jet neg = Jet::constant(lay, -1.0);
  Jet x = Jet::variable(lay, 0, 1.0);

  CHECK_THROWS_AS((void)jet_log(neg), domain_error);
  CHECK_THROWS_AS((void)jet_log(zero), domain_error);
  CHECK_THROWS_AS((void)jet_sqrt(neg), domain_error);
  CHECK_THROWS_AS((void)jet_recip(zero), domain_error);
  CHECK_THROWS_AS((void)(x / zero), domain_error);
  CHECK_THROWS_AS((void)jet_abs(zero), domain_error);
  CHECK_THROWS_AS((void)jet_pow(neg, 0.5), domain_error);
}

TEST_CASE("abs of a nonzero-value jet copies the sign") {
  auto lay = JetLayout::get(1, 3);
  Jet x = Jet::variable(lay, 0, -0.7);
  Jet a = jet_abs(x);
  CHECK(a.value() == doctest::Approx(0.7));
  CHECK(a.coeff({1}) == doctest::Approx(-1.0));
  Jet y = Jet::variable(lay, 0, 0.7);
  CHECK(jet_abs(y).coeff({1}) == doctest::Approx(1.0));
}

TEST_CASE("finite-difference cross-check on a 2-d composite") {
  // Independent low-order check that the whole pipeline differentiates the
  // function it claims to.
  auto f = [](double x, double y) { return std::exp(0.3 * x) * std::sin(x + 2.0 * y); };
  double x0 = 0.4, y0 = -0.2;
  auto lay = JetLayout::get(2, 3);
  Jet jx = Jet::variable(lay, 0, x0);
  Jet jy = Jet::variable(lay, 1, y0);
  Jet jf = jet_exp(0.3 * jx) * jet_sin(jx + 2.0 * jy);

  CHECK(jf.value() == doctest::Approx(f(x0, y0)).epsilon(1e-12));
  double h = 1e-5;
  double fx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2 * h);
  double fy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2 * h);
  CHECK(jf.partial({1, 0}) == doctest::Approx(fx).epsilon(1e-8));
  CHECK(jf.partial({0, 1}) == doctest::Approx(fy).epsilon(1e-8));
  double h2 = 1e-4;
  double fxx = (f(x0 + h2, y0) - 2 * f(x0, y0) + f(x0 - h2, y0)) / (h2 * h2);
  CHECK(jf.partial({2, 0}) == doctest::Approx(fxx).epsilon(1e-5));
  double fxy = (f(x0 + h2, y0 + h2) - f(x0 + h2, y0 - h2) - f(x0 - h2, y0 + h2) +
                f(x0 - h2, y0 - h2)) /
               (4 * h2 * h2);
  CHECK(jf.partial({1, 1}) == doctest::Approx(fxy).epsilon(1e-5));
}

}  // TEST_SUITE
