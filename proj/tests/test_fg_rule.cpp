#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fg_rule.hpp"
#include "test_helpers.hpp"

using namespace cgl;

namespace {

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale < 1e-12 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_SUITE("fg_rule") {

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-1, -6) == Rational(1, 6));
  CHECK(Rational(1, -6) == Rational(-1, 6));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(81, 45360) == Rational(1, 560));

  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 6) - Rational(1, 6) == Rational(0));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(-Rational(1, 6) == Rational(-1, 6));
  CHECK((Rational(1, 6) - Rational(1, 6)).is_zero());

  CHECK(Rational(3).to_string() == "3");
  CHECK(Rational(-1, 6).to_string() == "-1/6");
  CHECK(Rational(1, 180).to_double() == doctest::Approx(1.0 / 180.0).epsilon(1e-16));

  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  long long big = 1LL << 62;
  CHECK_THROWS_AS(Rational(big, 3) + Rational(big, 5), std::overflow_error);
}

TEST_CASE("expressions stay canonical under term insertion") {
  InvariantExpr e(4);
  e.add(Rational(1, 2), InvariantName::RicSq);
  e.add(Rational(1, 3), InvariantName::RicSq);
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].coeff == Rational(5, 6));

  // Cancellation removes the term entirely.
  e.add(Rational(-5, 6), InvariantName::RicSq);
  CHECK(e.is_zero());

  // Zero coefficients never enter.
  e.add(Rational(0), InvariantName::KappaSq);
  CHECK(e.is_zero());

  // Weight-tag enforcement, named and marker primitives alike.
  CHECK_THROWS_AS(e.add(Rational(1), InvariantName::Kappa), std::invalid_argument);
  CHECK_THROWS_AS(e.add(Rational(1), RicciInvolving{6}), std::invalid_argument);
  InvariantExpr w6(6);
  CHECK_NOTHROW(w6.add(Rational(1), RicciInvolving{6}));

  // Structural equality is insertion-order independent.
  InvariantExpr a(4), b(4);
  a.add(Rational(1, 180), InvariantName::RiemSq);
  a.add(Rational(1, 72), InvariantName::KappaSq);
  b.add(Rational(1, 72), InvariantName::KappaSq);
  b.add(Rational(1, 180), InvariantName::RiemSq);
  CHECK(a == b);
  b.add(Rational(1, 30), InvariantName::LapKappa);
  CHECK(a != b);

  // Same canonicalization on the conformal side.
  ConformalExpr c(6);
  c.add(Rational(1, 4), ConformalName::CubicW1);
  c.add(Rational(1, 4), ConformalName::CubicW1);
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].coeff == Rational(1, 2));
  CHECK_THROWS_AS(c.add(Rational(1), ConformalName::WeylSq), std::invalid_argument);
}

TEST_CASE("heat coefficients as formal expressions") {
  InvariantExpr a0 = heat_expr(0);
  CHECK(a0.weight() == 0);
  REQUIRE(a0.terms().size() == 1);
  CHECK(a0.terms()[0].coeff == Rational(1));

  InvariantExpr a1 = heat_expr(1);
  InvariantExpr a1_expected(2);
  a1_expected.add(Rational(-1, 6), InvariantName::Kappa);
  CHECK(a1 == a1_expected);

  InvariantExpr a2_expected(4);
  a2_expected.add(Rational(1, 180), InvariantName::RiemSq);
  a2_expected.add(Rational(-1, 180), InvariantName::RicSq);
  a2_expected.add(Rational(1, 72), InvariantName::KappaSq);
  a2_expected.add(Rational(-1, 30), InvariantName::LapKappa);
  CHECK(heat_expr(2) == a2_expected);

  InvariantExpr a3_expected(6);
  a3_expected.add(Rational(81, 45360), InvariantName::GradRiemSq);
  a3_expected.add(Rational(64, 45360), InvariantName::Cubic1);
  a3_expected.add(Rational(352, 45360), InvariantName::Cubic2);
  a3_expected.add(Rational(1), RicciInvolving{6});
  CHECK(heat_expr(3) == a3_expected);

  CHECK_THROWS_AS(heat_expr(4), std::invalid_argument);
  CHECK_THROWS_AS(heat_expr(-1), std::invalid_argument);
}

TEST_CASE("rewrite rules: ricci terms die, curvature becomes weyl") {
  // Every scalar-curvature and Ricci primitive maps to zero.
  CHECK(fg_transform(heat_expr(1)).is_zero());
  InvariantExpr ricci_only(4);
  ricci_only.add(Rational(7, 3), InvariantName::RicSq);
  ricci_only.add(Rational(-2), InvariantName::KappaSq);
  ricci_only.add(Rational(5), InvariantName::LapKappa);
  CHECK(fg_transform(ricci_only).is_zero());

  // The three substitution rules, coefficients untouched.
  ConformalExpr t2 = fg_transform(heat_expr(2));
  ConformalExpr t2_expected(4);
  t2_expected.add(Rational(1, 180), ConformalName::WeylSq);
  CHECK(t2 == t2_expected);

  ConformalExpr t3 = fg_transform(heat_expr(3));
  ConformalExpr t3_expected(6);
  t3_expected.add(Rational(81, 45360), ConformalName::Phi);
  t3_expected.add(Rational(64, 45360), ConformalName::CubicW1);
  t3_expected.add(Rational(352, 45360), ConformalName::CubicW2);
  CHECK(t3 == t3_expected);

  // One passes through (weight-0 identity).
  ConformalExpr t0 = fg_transform(heat_expr(0));
  REQUIRE(t0.terms().size() == 1);
  CHECK(t0.terms()[0].primitive == ConformalName::One);
  CHECK(t0.terms()[0].coeff == Rational(1));

  // Weight ceiling: an expression above weight 6 is refused loudly.
  InvariantExpr w8(8);
  w8.add(Rational(1), RicciInvolving{8});
  CHECK_THROWS_AS(fg_transform(w8), std::invalid_argument);
}

TEST_CASE("rewrite is linear over exact rational combinations") {
  InvariantExpr e1(6), e2(6);
  e1.add(Rational(2), InvariantName::Cubic1);
  e1.add(Rational(1, 3), InvariantName::GradRiemSq);
  e2.add(Rational(-1, 2), InvariantName::Cubic1);
  e2.add(Rational(4), InvariantName::Cubic2);
  e2.add(Rational(9), RicciInvolving{6});

  InvariantExpr combined(6);
  combined.add(e1);
  combined.add(e2);

  ConformalExpr lhs = fg_transform(combined);
  ConformalExpr rhs = fg_transform(e1);
  rhs.add(fg_transform(e2));
  CHECK(lhs == rhs);
  // And the combination itself carries the exact merged coefficient.
  ConformalExpr expected(6);
  expected.add(Rational(3, 2), ConformalName::CubicW1);
  expected.add(Rational(4), ConformalName::CubicW2);
  expected.add(Rational(1, 3), ConformalName::Phi);
  CHECK(lhs == expected);
}

TEST_CASE("conformal counterparts of the heat coefficients") {
  ConformalExpr t0 = a_tilde(0);
  REQUIRE(t0.terms().size() == 1);
  CHECK(t0.terms()[0].primitive == ConformalName::One);

  CHECK(a_tilde(1).is_zero());
  CHECK(a_tilde(1).weight() == 2);

  ConformalExpr t2_expected(4);
  t2_expected.add(Rational(1, 180), ConformalName::WeylSq);
  CHECK(a_tilde(2) == t2_expected);

  ConformalExpr t3_expected(6);
  t3_expected.add(Rational(81, 45360), ConformalName::Phi);
  t3_expected.add(Rational(64, 45360), ConformalName::CubicW1);
  t3_expected.add(Rational(352, 45360), ConformalName::CubicW2);
  CHECK(a_tilde(3) == t3_expected);

  CHECK_THROWS_AS(a_tilde(5), std::invalid_argument);
}

TEST_CASE("pretty printer emits readable reports") {
  CHECK(to_string(a_tilde(2)) == "1/180 * |W|^2");
  CHECK(to_string(a_tilde(1)) == "0");
  CHECK(to_string(a_tilde(0)) == "1");
  CHECK(to_string(heat_expr(1)) == "-1/6 * kappa");
  CHECK(to_string(heat_expr(2)) == "1/72 * kappa^2 - 1/180 * |Ric|^2 + 1/180 * |R|^2 - 1/30 * lap(kappa)");
  CHECK(to_string(heat_expr(3)) ==
        "1/560 * |grad R|^2 + 4/2835 * R3a + 22/2835 * R3b + ricci_involving(6)");
  CHECK(to_string(a_tilde(3)) == "4/2835 * W3a + 22/2835 * W3b + 1/560 * Phi");
}

TEST_CASE("numeric evaluation of formal expressions") {
  // Conformally flat spaces kill every conformal coefficient beyond 1.
  {
    MetricField m = MetricField::from_text(testutil::sphere_text(6));
    std::vector<double> pt(6, 0.1);
    ConformalBundle cb = conformal_bundle(curvature(build_frame(m, pt, 4)));
    CHECK(eval_conformal_expr(a_tilde(0), cb) == 1.0);
    CHECK(std::abs(eval_conformal_expr(a_tilde(2), cb)) < 1e-12);
    CHECK(std::abs(eval_conformal_expr(a_tilde(3), cb)) < 1e-12);
  }
  {
    MetricField m = MetricField::from_text(testutil::flat_text(6));
    std::vector<double> pt(6, 0.3);
    ConformalBundle cb = conformal_bundle(curvature(build_frame(m, pt, 4)));
    CHECK(std::abs(eval_conformal_expr(a_tilde(3), cb)) < 1e-15);
  }

  // Ricci-flat metric: the weight-4 conformal coefficient equals |R|^2/180
  // (oracle from the plain curvature invariants, computed first).
  {
    MetricField m = MetricField::from_text(testutil::tangherlini_text(6));
    std::vector<double> pt = testutil::tangherlini_point(6, 2.0);
    CurvatureBundle b = curvature(build_frame(m, pt, 2));
    double oracle = eval_invariant(InvariantName::RiemSq, b) / 180.0;
    REQUIRE(oracle > 1e-6);
    ConformalBundle cb = conformal_bundle(b);
    CHECK(rel_diff(eval_conformal_expr(a_tilde(2), cb), oracle) < 1e-9);
  }

  // Phi needs the derivative layer of the bundle.
  {
    MetricField m = MetricField::from_text(testutil::bumpy_text(4));
    std::vector<double> pt{0.2, -0.1, 0.15, 0.1};
    ConformalBundle shallow = conformal_bundle(curvature(build_frame(m, pt, 2)));
    CHECK_THROWS_AS(eval_conformal_expr(a_tilde(3), shallow), std::invalid_argument);
  }

  // Formal curvature expressions agree with the closed-form heat values.
  {
    MetricField m = MetricField::from_text(testutil::wiggly_text(3));
    std::vector<double> pt{0.4, -0.2, 0.3};
    CurvatureBundle b = curvature(build_frame(m, pt, 4));
    for (int j : {0, 1, 2}) {
      CAPTURE(j);
      CHECK(rel_diff(eval_invariant_expr(heat_expr(j), b), heat_invariant(j, b).value) < 1e-13);
    }
    // The weight-6 remainder has no value off Ricci-flat metrics.
    CHECK_THROWS_AS(eval_invariant_expr(heat_expr(3), b), std::invalid_argument);
  }

  // Shallow jets propagate the order error from the invariant evaluator.
  {
    MetricField m = MetricField::from_text(testutil::sphere_text(3));
    CurvatureBundle b = curvature(build_frame(m, {0.1, 0.2, 0.3}, 2));
    CHECK_THROWS_AS(eval_invariant_expr(heat_expr(2), b), order_error);
  }
}

TEST_CASE("on ricci-flat metrics the rewrite changes nothing numerically") {
  for (int n : {5, 6}) {
    CAPTURE(n);
    MetricField m = MetricField::from_text(testutil::tangherlini_text(n));
    for (double r : {1.9, 2.6}) {
      CAPTURE(r);
      std::vector<double> pt = testutil::tangherlini_point(n, r);
      CurvatureBundle b = curvature(build_frame(m, pt, 4));
      ConformalBundle cb = conformal_bundle(b);
      for (int j : {0, 1, 2, 3}) {
        CAPTURE(j);
        double plain = eval_invariant_expr(heat_expr(j), b, /*ricci_flat_mode=*/true);
        double conformal = eval_conformal_expr(a_tilde(j), cb);
        if (j == 1) {
          CHECK(std::abs(plain) < 1e-9);
          CHECK(conformal == 0.0);
        } else {
          CHECK(rel_diff(plain, conformal) < 1e-7);
        }
      }
    }
  }
}

}  // TEST_SUITE
