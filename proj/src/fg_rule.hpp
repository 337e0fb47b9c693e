#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "conformal.hpp"
#include "curvature.hpp"
#include "invariants.hpp"

namespace cgl {

// Raised when the Poincare-metric rewrite meets a primitive outside its
// closed rule table.  The table is complete for every InvariantName, so in
// practice this guards future enum growth rather than a reachable state.
class rewrite_error : public std::runtime_error {
 public:
  explicit rewrite_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact rational with 64-bit numerator and denominator.  Always normalized:
// gcd(num, den) = 1 and den > 0 (zero is 0/1).  Arithmetic cross-reduces
// before multiplying and checks the result range, throwing
// std::overflow_error rather than wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long num) : num_(num) {}  // NOLINT: implicit from integers
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  // "3", "-1/6".
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

 private:
  long long num_ = 0;
  long long den_ = 1;
};

// Conformal primitives: the pointwise scalars built from the Weyl tensor
// that survive the Poincare-metric rewrite, plus the constant 1.
enum class ConformalName { One, WeylSq, CubicW1, CubicW2, Phi };

// 0 for One, 4 for WeylSq, 6 for the rest.
int conformal_name_weight(ConformalName name);

// Display label: "1", "|W|^2", "W3a", "W3b", "Phi".
std::string conformal_name_label(ConformalName name);

// Marker for the unexpanded remainder of a heat coefficient: a sum of terms,
// each carrying at least one Ricci or scalar-curvature factor, of the given
// total weight.  It cannot be evaluated numerically off Ricci-flat metrics,
// but it maps to zero under the Poincare-metric rewrite and vanishes when
// the metric is Ricci-flat.
struct RicciInvolving {
  int weight = 0;
  friend bool operator==(const RicciInvolving& a, const RicciInvolving& b) {
    return a.weight == b.weight;
  }
};

using InvariantPrimitive = std::variant<InvariantName, RicciInvolving>;

struct InvariantTerm {
  Rational coeff;
  InvariantPrimitive primitive;
};

// Formal linear combination of curvature invariants of one common weight,
// with exact rational coefficients.  Kept canonical: at most one term per
// primitive, zero-coefficient terms removed, terms in a fixed primitive
// order, so structural equality is meaningful.
class InvariantExpr {
 public:
  explicit InvariantExpr(int weight) : weight_(weight) {}

  int weight() const { return weight_; }
  const std::vector<InvariantTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Merges `coeff * primitive` into the combination.  The primitive's
  // intrinsic weight must match the expression's weight tag
  // (std::invalid_argument otherwise).
  void add(const Rational& coeff, const InvariantPrimitive& primitive);
  // Adds every term of `other` (weights must match).
  void add(const InvariantExpr& other);

  friend bool operator==(const InvariantExpr& a, const InvariantExpr& b);
  friend bool operator!=(const InvariantExpr& a, const InvariantExpr& b) { return !(a == b); }

 private:
  int weight_;
  std::vector<InvariantTerm> terms_;
};

struct ConformalTerm {
  Rational coeff;
  ConformalName primitive;
};

// Formal linear combination of conformal primitives of one common weight.
// Same canonicalization contract as InvariantExpr.
class ConformalExpr {
 public:
  explicit ConformalExpr(int weight) : weight_(weight) {}

  int weight() const { return weight_; }
  const std::vector<ConformalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Rational& coeff, ConformalName primitive);
  void add(const ConformalExpr& other);

  friend bool operator==(const ConformalExpr& a, const ConformalExpr& b);
  friend bool operator!=(const ConformalExpr& a, const ConformalExpr& b) { return !(a == b); }

 private:
  int weight_;
  std::vector<ConformalTerm> terms_;
};

// "0", "-1/6 * kappa", "1/180 * |W|^2 - 1/30 * lap(kappa)", ...
std::string to_string(const InvariantExpr& e);
std::string to_string(const ConformalExpr& e);

// The rewrite I -> I~ induced by passing to the Ricci-flat Poincare metric
// in one dimension up and restricting back to the boundary:
//   - Kappa, KappaSq, RicSq, LapKappa and every RicciInvolving marker
//     vanish (any term with a Ricci or scalar factor dies on a Ricci-flat
//     metric);
//   - RiemSq -> WeylSq, Cubic1 -> CubicW1, Cubic2 -> CubicW2 (substitute
//     the Weyl tensor for the curvature tensor);
//   - GradRiemSq -> Phi (the gradient-squared invariant acquires the
//     Cotton/Weyl correction terms);
//   - One -> One.
// Coefficients are carried through unchanged; the rewrite is linear.
// Throws std::invalid_argument for weight > 6 (outside the implemented
// table) and rewrite_error for a primitive the table does not know.
ConformalExpr fg_transform(const InvariantExpr& e);

// The heat-trace coefficient a_{2j} as a formal expression, j in {0,1,2,3}:
//   a_0 = 1
//   a_2 = -1/6 kappa
//   a_4 = 1/180 |R|^2 - 1/180 |Ric|^2 + 1/72 kappa^2 - 1/30 lap(kappa)
//   a_6 = 1/(9*7!) (81 |grad R|^2 + 64 R3a + 352 R3b) + [Ricci-involving]
// where the weight-6 marker stands for a_6's unexpanded remainder.
// Throws std::invalid_argument for j outside {0,1,2,3}.
InvariantExpr heat_expr(int j);

// a~_{2j} = fg_transform(heat_expr(j)):
//   a~_0 = 1,  a~_2 = 0,  a~_4 = 1/180 |W|^2,
//   a~_6 = 1/(9*7!) (81 Phi + 64 W3a + 352 W3b).
ConformalExpr a_tilde(int j);

// Numeric value of a formal curvature expression on a curvature bundle.
// RicciInvolving markers contribute zero when ricci_flat_mode is set and
// throw std::invalid_argument otherwise (the remainder has no evaluation
// rule off Ricci-flat metrics).  Underlying invariant evaluations propagate
// order_error when the bundle's jets are too shallow.
double eval_invariant_expr(const InvariantExpr& e, const CurvatureBundle& b,
                           bool ricci_flat_mode = false);

// Numeric value of a conformal expression on a conformal bundle.  Phi
// requires cb.has_U (std::invalid_argument otherwise).
double eval_conformal_expr(const ConformalExpr& e, const ConformalBundle& cb);

}  // namespace cgl
