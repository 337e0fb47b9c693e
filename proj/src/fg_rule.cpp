#include "fg_rule.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cgl {

namespace {

long long checked_narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error(std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

std::string Rational::to_string() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

Rational operator+(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
  __int128 den = static_cast<__int128>(a.den_) * b.den_;
  return Rational(checked_narrow(num, "+"), checked_narrow(den, "+"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.num_;
  __int128 den = static_cast<__int128>(a.den_) * b.den_;
  return Rational(checked_narrow(num, "*"), checked_narrow(den, "*"));
}

int conformal_name_weight(ConformalName name) {
  switch (name) {
    case ConformalName::One:
      return 0;
    case ConformalName::WeylSq:
      return 4;
    case ConformalName::CubicW1:
    case ConformalName::CubicW2:
    case ConformalName::Phi:
      return 6;
  }
  throw std::invalid_argument("unknown conformal primitive");
}

std::string conformal_name_label(ConformalName name) {
  switch (name) {
    case ConformalName::One:
      return "1";
    case ConformalName::WeylSq:
      return "|W|^2";
    case ConformalName::CubicW1:
      return "W3a";
    case ConformalName::CubicW2:
      return "W3b";
    case ConformalName::Phi:
      return "Phi";
  }
  throw std::invalid_argument("unknown conformal primitive");
}

namespace {

int primitive_weight(const InvariantPrimitive& p) {
  if (const auto* marker = std::get_if<RicciInvolving>(&p)) return marker->weight;
  return invariant_weight(std::get<InvariantName>(p));
}

// Fixed ordering key so canonical term order (and hence structural equality)
// is independent of insertion order.  Named invariants sort before markers.
std::pair<int, int> primitive_key(const InvariantPrimitive& p) {
  if (const auto* marker = std::get_if<RicciInvolving>(&p)) return {1, marker->weight};
  return {0, static_cast<int>(std::get<InvariantName>(p))};
}

std::string primitive_label(const InvariantPrimitive& p) {
  if (const auto* marker = std::get_if<RicciInvolving>(&p))
    return "ricci_involving(" + std::to_string(marker->weight) + ")";
  switch (std::get<InvariantName>(p)) {
    case InvariantName::One:
      return "1";
    case InvariantName::Kappa:
      return "kappa";
    case InvariantName::KappaSq:
      return "kappa^2";
    case InvariantName::RicSq:
      return "|Ric|^2";
    case InvariantName::RiemSq:
      return "|R|^2";
    case InvariantName::LapKappa:
      return "lap(kappa)";
    case InvariantName::GradRiemSq:
      return "|grad R|^2";
    case InvariantName::Cubic1:
      return "R3a";
    case InvariantName::Cubic2:
      return "R3b";
  }
  throw std::invalid_argument("unknown invariant");
}

// Shared canonical-merge used by both expression types.  `Key` orders the
// terms; equal keys merge by coefficient addition and drop on cancellation.
template <typename Term, typename KeyFn>
void merge_term(std::vector<Term>& terms, Term t, KeyFn key) {
  auto pos = std::lower_bound(terms.begin(), terms.end(), t, [&](const Term& a, const Term& b) {
    return key(a.primitive) < key(b.primitive);
  });
  if (pos != terms.end() && key(pos->primitive) == key(t.primitive)) {
    pos->coeff = pos->coeff + t.coeff;
    if (pos->coeff.is_zero()) terms.erase(pos);
    return;
  }
  terms.insert(pos, std::move(t));
}

template <typename Term>
std::string render_terms(const std::vector<Term>& terms,
                         std::string (*label)(const decltype(Term::primitive)&)) {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    Rational c = terms[i].coeff;
    bool neg = c.num() < 0;
    Rational mag = neg ? -c : c;
    std::string name = label(terms[i].primitive);
    std::string piece;
    if (name == "1")
      piece = mag.to_string();
    else if (mag == Rational(1))
      piece = name;
    else
      piece = mag.to_string() + " * " + name;
    if (i == 0)
      out += (neg ? "-" : "") + piece;
    else
      out += (neg ? " - " : " + ") + piece;
  }
  return out;
}

std::string conformal_term_label(const ConformalName& name) { return conformal_name_label(name); }

}  // namespace

void InvariantExpr::add(const Rational& coeff, const InvariantPrimitive& primitive) {
  if (primitive_weight(primitive) != weight_)
    throw std::invalid_argument("term of weight " + std::to_string(primitive_weight(primitive)) +
                                " in expression of weight " + std::to_string(weight_));
  if (coeff.is_zero()) return;
  merge_term(terms_, InvariantTerm{coeff, primitive}, primitive_key);
}

void InvariantExpr::add(const InvariantExpr& other) {
  if (other.weight_ != weight_)
    throw std::invalid_argument("combining expressions of weights " + std::to_string(weight_) +
                                " and " + std::to_string(other.weight_));
  for (const auto& t : other.terms_) add(t.coeff, t.primitive);
}

bool operator==(const InvariantExpr& a, const InvariantExpr& b) {
  if (a.weight_ != b.weight_ || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff ||
        primitive_key(a.terms_[i].primitive) != primitive_key(b.terms_[i].primitive))
      return false;
  return true;
}

void ConformalExpr::add(const Rational& coeff, ConformalName primitive) {
  if (conformal_name_weight(primitive) != weight_)
    throw std::invalid_argument(
        "term of weight " + std::to_string(conformal_name_weight(primitive)) +
        " in expression of weight " + std::to_string(weight_));
  if (coeff.is_zero()) return;
  merge_term(terms_, ConformalTerm{coeff, primitive},
             [](ConformalName n) { return static_cast<int>(n); });
}

void ConformalExpr::add(const ConformalExpr& other) {
  if (other.weight_ != weight_)
    throw std::invalid_argument("combining expressions of weights " + std::to_string(weight_) +
                                " and " + std::to_string(other.weight_));
  for (const auto& t : other.terms_) add(t.coeff, t.primitive);
}

bool operator==(const ConformalExpr& a, const ConformalExpr& b) {
  if (a.weight_ != b.weight_ || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].primitive != b.terms_[i].primitive)
      return false;
  return true;
}

std::string to_string(const InvariantExpr& e) { return render_terms(e.terms(), primitive_label); }

std::string to_string(const ConformalExpr& e) {
  return render_terms(e.terms(), conformal_term_label);
}

ConformalExpr fg_transform(const InvariantExpr& e) {
  if (e.weight() > 6)
    throw std::invalid_argument("rewrite implemented up to weight 6, got weight " +
                                std::to_string(e.weight()));
  ConformalExpr out(e.weight());
  for (const auto& term : e.terms()) {
    if (std::holds_alternative<RicciInvolving>(term.primitive)) continue;  // vanishes
    switch (std::get<InvariantName>(term.primitive)) {
      case InvariantName::Kappa:
      case InvariantName::KappaSq:
      case InvariantName::RicSq:
      case InvariantName::LapKappa:
        continue;  // vanishes on the Ricci-flat extension
      case InvariantName::One:
        out.add(term.coeff, ConformalName::One);
        continue;
      case InvariantName::RiemSq:
        out.add(term.coeff, ConformalName::WeylSq);
        continue;
      case InvariantName::Cubic1:
        out.add(term.coeff, ConformalName::CubicW1);
        continue;
      case InvariantName::Cubic2:
        out.add(term.coeff, ConformalName::CubicW2);
        continue;
      case InvariantName::GradRiemSq:
        out.add(term.coeff, ConformalName::Phi);
        continue;
    }
    throw rewrite_error("no rewrite rule for primitive '" + primitive_label(term.primitive) + "'");
  }
  return out;
}

InvariantExpr heat_expr(int j) {
  switch (j) {
    case 0: {
      InvariantExpr e(0);
      e.add(Rational(1), InvariantName::One);
      return e;
    }
    case 1: {
      InvariantExpr e(2);
      e.add(Rational(-1, 6), InvariantName::Kappa);
      return e;
    }
    case 2: {
      InvariantExpr e(4);
      e.add(Rational(1, 180), InvariantName::RiemSq);
      e.add(Rational(-1, 180), InvariantName::RicSq);
      e.add(Rational(1, 72), InvariantName::KappaSq);
      e.add(Rational(-1, 30), InvariantName::LapKappa);
      return e;
    }
    case 3: {
      InvariantExpr e(6);
      e.add(Rational(81, 45360), InvariantName::GradRiemSq);
      e.add(Rational(64, 45360), InvariantName::Cubic1);
      e.add(Rational(352, 45360), InvariantName::Cubic2);
      e.add(Rational(1), RicciInvolving{6});
      return e;
    }
    default:
      throw std::invalid_argument("heat coefficient index must be in {0,1,2,3}, got " +
                                  std::to_string(j));
  }
}

ConformalExpr a_tilde(int j) { return fg_transform(heat_expr(j)); }

double eval_invariant_expr(const InvariantExpr& e, const CurvatureBundle& b,
                           bool ricci_flat_mode) {
  double sum = 0.0;
  for (const auto& term : e.terms()) {
    if (std::holds_alternative<RicciInvolving>(term.primitive)) {
      if (!ricci_flat_mode)
        throw std::invalid_argument(
            "expression carries an unexpanded Ricci-involving remainder; it is only "
            "evaluable in ricci_flat_mode, where it vanishes");
      continue;
    }
    sum += term.coeff.to_double() * eval_invariant(std::get<InvariantName>(term.primitive), b);
  }
  return sum;
}

double eval_conformal_expr(const ConformalExpr& e, const ConformalBundle& cb) {
  double sum = 0.0;
  for (const auto& term : e.terms()) {
    double value = 0.0;
    switch (term.primitive) {
      case ConformalName::One:
        value = 1.0;
        break;
      case ConformalName::WeylSq:
        value = cb.weylSq;
        break;
      case ConformalName::CubicW1:
        value = cb.cubicW1;
        break;
      case ConformalName::CubicW2:
        value = cb.cubicW2;
        break;
      case ConformalName::Phi:
        if (!cb.has_U)
          throw std::invalid_argument(
              "expression references Phi but the bundle was built without the "
              "derivative layer (needs metric jets of order >= 4)");
        value = cb.phi;
        break;
    }
    sum += term.coeff.to_double() * value;
  }
  return sum;
}

}  // namespace cgl
