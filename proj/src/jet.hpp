#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgl {

// Raised when an evaluation leaves the domain of a function (log of a
// nonpositive value, division by a jet with zero constant term, ...).
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient layout shared by all jets in `nvars` variables truncated at
// total degree `order`.  Multi-indices are enumerated by total degree and
// lexicographically within each degree, so layouts with the same number of
// variables are prefix-compatible: a position valid at order m means the same
// multi-index at every order >= m.  `increment` returns the position of
// alpha + e_var in one table lookup, which lets products walk the table
// instead of re-ranking multi-indices.
class JetLayout {
 public:
  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(midx_.size()); }

  int degree(int pos) const { return deg_[pos]; }
  const std::vector<int>& multi_index(int pos) const { return midx_[pos]; }
  int position(const std::vector<int>& alpha) const;  // -1 if degree > order

  // Position of multi_index(pos) + e_var, or -1 if that exceeds `order`.
  int increment(int pos, int var) const { return incr_[pos * nvars_ + var]; }

  // First position of total degree d (== size() when d == order()+1).
  int degree_offset(int d) const { return deg_offset_[d]; }

  // Variable list of multi_index(pos), each variable repeated by its
  // exponent; used to walk `increment` during multiplication.
  const int* path(int pos, int* len) const {
    *len = path_off_[pos + 1] - path_off_[pos];
    return path_data_.data() + path_off_[pos];
  }

 private:
  JetLayout(int nvars, int order);

  int nvars_ = 0;
  int order_ = 0;
  std::vector<std::vector<int>> midx_;
  std::vector<int> deg_;
  std::vector<int> deg_offset_;
  std::vector<int> incr_;
  std::vector<int> path_off_;
  std::vector<int> path_data_;
};

// Truncated multivariate Taylor expansion (a "jet") of a smooth function at a
// base point.  Coefficients are Taylor-normalized: coeff(alpha) is
// d^alpha f / alpha!, so multiplication is a plain Cauchy product and the
// actual partial derivative is coeff(alpha) * alpha!.
//
// Binary operations accept operands of different truncation orders (same
// variable count) and produce the lower order, which is the canonical
// projection between the quotient rings; mixing variable counts is an error.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::shared_ptr<const JetLayout> layout)
      : layout_(std::move(layout)), c_(layout_->size(), 0.0) {}

  static Jet constant(std::shared_ptr<const JetLayout> layout, double v);
  // Jet of the coordinate function x_var at base value x0.
  static Jet variable(std::shared_ptr<const JetLayout> layout, int var, double x0);

  bool empty() const { return !layout_; }
  const JetLayout& layout() const { return *layout_; }
  std::shared_ptr<const JetLayout> layout_ptr() const { return layout_; }
  int nvars() const { return layout_->nvars(); }
  int order() const { return layout_->order(); }

  double value() const { return c_[0]; }
  double coeff(const std::vector<int>& alpha) const;
  double coeff_at(int pos) const { return c_[pos]; }
  double& coeff_at(int pos) { return c_[pos]; }
  int size() const { return static_cast<int>(c_.size()); }

  // Partial derivative d^alpha f at the base point (coeff times alpha!).
  double partial(const std::vector<int>& alpha) const;

  Jet truncated(int new_order) const;
  // Jet of the partial derivative with respect to x_var; order drops by one.
  Jet derivative(int var) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);
  friend Jet operator/(double s, const Jet& a);

  // sum_m series[m] * (this - value())^m, evaluated by Horner's scheme; the
  // series coefficients are the Taylor coefficients f^(m)(value())/m! of the
  // outer function, so this is the composition f(jet).
  Jet compose_series(const std::vector<double>& series) const;

 private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> c_;
};

Jet jet_exp(const Jet& a);
Jet jet_log(const Jet& a);   // requires value() > 0
Jet jet_sqrt(const Jet& a);  // requires value() > 0
Jet jet_sin(const Jet& a);
Jet jet_cos(const Jet& a);
Jet jet_tan(const Jet& a);  // requires cos(value()) != 0
Jet jet_abs(const Jet& a);  // requires value() != 0
Jet jet_recip(const Jet& a);
Jet jet_pow_int(const Jet& a, long long p);  // repeated multiplication
Jet jet_pow(const Jet& a, double p);         // exp(p log a), requires value() > 0

double factorial(int n);
double multi_factorial(const std::vector<int>& alpha);  // alpha!

}  // namespace cgl
