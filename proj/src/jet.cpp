#include "jet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace cgl {

namespace {

constexpr int kMaxVars = 8;
constexpr int kMaxOrder = 12;

// Multi-indices of total degree d over nvars variables, lexicographic order.
void enumerate_degree(int nvars, int d, std::vector<std::vector<int>>& out) {
  std::vector<int> alpha(nvars, 0);
  // Recursive lexicographic enumeration, iteratively.
  struct Frame {
    int var;
    int remaining;
  };
  std::vector<int> stack_val;
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == nvars - 1) {
      alpha[var] = remaining;
      out.push_back(alpha);
      alpha[var] = 0;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      alpha[var] = v;
      rec(var + 1, remaining - v);
    }
    alpha[var] = 0;
  };
  (void)stack_val;
  rec(0, d);
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  deg_offset_.assign(order + 2, 0);
  for (int d = 0; d <= order; ++d) {
    deg_offset_[d] = static_cast<int>(midx_.size());
    enumerate_degree(nvars, d, midx_);
  }
  deg_offset_[order + 1] = static_cast<int>(midx_.size());

  deg_.resize(midx_.size());
  for (size_t p = 0; p < midx_.size(); ++p) {
    int d = 0;
    for (int v : midx_[p]) d += v;
    deg_[p] = d;
  }

  incr_.assign(midx_.size() * nvars, -1);
  path_off_.assign(midx_.size() + 1, 0);
  for (size_t p = 0; p < midx_.size(); ++p) {
    path_off_[p + 1] = path_off_[p] + deg_[p];
    if (deg_[p] == order) continue;
    std::vector<int> alpha = midx_[p];
    for (int v = 0; v < nvars; ++v) {
      alpha[v] += 1;
      incr_[p * nvars + v] = position(alpha);
      alpha[v] -= 1;
    }
  }
  path_data_.reserve(path_off_.back());
  for (size_t p = 0; p < midx_.size(); ++p) {
    for (int v = 0; v < nvars; ++v) {
      for (int r = 0; r < midx_[p][v]; ++r) path_data_.push_back(v);
    }
  }
}

int JetLayout::position(const std::vector<int>& alpha) const {
  int d = 0;
  for (int v : alpha) d += v;
  if (d > order_) return -1;
  // Rank within the degree-d block: count multi-indices of degree d that are
  // lexicographically smaller, variable by variable.
  auto choose = [](long long a, long long b) -> long long {
    if (b < 0 || a < b) return 0;
    long long r = 1;
    for (long long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  long long rank = 0;
  int remaining = d;
  for (int var = 0; var < nvars_ - 1; ++var) {
    for (int v = 0; v < alpha[var]; ++v) {
      // Multi-indices with this prefix and alpha[var] == v: distribute
      // remaining - v over nvars_-var-1 trailing variables.
      rank += choose(remaining - v + nvars_ - var - 2, nvars_ - var - 2);
    }
    remaining -= alpha[var];
  }
  return deg_offset_[d] + static_cast<int>(rank);
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  if (nvars < 1 || nvars > kMaxVars)
    throw std::invalid_argument("jet layout: variable count must be 1.." +
                                std::to_string(kMaxVars));
  if (order < 0 || order > kMaxOrder)
    throw std::invalid_argument("jet layout: order must be 0.." +
                                std::to_string(kMaxOrder));
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const JetLayout> layout(new JetLayout(nvars, order));
  cache[key] = layout;
  return layout;
}

Jet Jet::constant(std::shared_ptr<const JetLayout> layout, double v) {
  Jet j(std::move(layout));
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(std::shared_ptr<const JetLayout> layout, int var, double x0) {
  if (var < 0 || var >= layout->nvars())
    throw std::invalid_argument("jet variable index out of range");
  Jet j(layout);
  j.c_[0] = x0;
  if (layout->order() >= 1) {
    std::vector<int> alpha(layout->nvars(), 0);
    alpha[var] = 1;
    j.c_[layout->position(alpha)] = 1.0;
  }
  return j;
}

double Jet::coeff(const std::vector<int>& alpha) const {
  int pos = layout_->position(alpha);
  if (pos < 0) throw std::invalid_argument("jet coefficient beyond truncation order");
  return c_[pos];
}

double Jet::partial(const std::vector<int>& alpha) const {
  return coeff(alpha) * multi_factorial(alpha);
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order()) return *this;
  if (new_order < 0) throw std::invalid_argument("jet truncation order negative");
  Jet out(JetLayout::get(nvars(), new_order));
  std::copy(c_.begin(), c_.begin() + out.size(), out.c_.begin());
  return out;
}

Jet Jet::derivative(int var) const {
  if (order() == 0) throw std::invalid_argument("jet derivative needs order >= 1");
  if (var < 0 || var >= nvars()) throw std::invalid_argument("jet derivative: bad variable");
  Jet out(JetLayout::get(nvars(), order() - 1));
  // Taylor-normalized: (d_var f)_beta = (beta_var + 1) * f_{beta + e_var}.
  for (int p = 0; p < out.size(); ++p) {
    int src = layout_->increment(p, var);  // positions are prefix-stable
    out.c_[p] = c_[src] * (out.layout().multi_index(p)[var] + 1);
  }
  return out;
}

namespace {

// Aligns two jets to a common (minimum) order; returns the result layout.
std::shared_ptr<const JetLayout> common_layout(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("jet arithmetic: operands have different variable counts");
  return JetLayout::get(a.nvars(), std::min(a.order(), b.order()));
}

}  // namespace

Jet Jet::operator-() const {
  Jet out(*this);
  for (double& x : out.c_) x = -x;
  return out;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }
Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  auto layout = common_layout(a, b);
  Jet out(layout);
  for (int p = 0; p < out.size(); ++p) out.c_[p] = a.c_[p] + b.c_[p];
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  auto layout = common_layout(a, b);
  Jet out(layout);
  for (int p = 0; p < out.size(); ++p) out.c_[p] = a.c_[p] - b.c_[p];
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  auto layout = common_layout(a, b);
  const JetLayout& L = *layout;
  const int R = L.order();
  Jet out(layout);
  // Cauchy product: out[alpha+beta] += a[alpha] * b[beta].  The target
  // position is found by walking beta's variable path through the increment
  // table starting from alpha's position.
  for (int pb = 0; pb < out.size(); ++pb) {
    double bv = b.c_[pb];
    if (bv == 0.0) continue;
    int len = 0;
    const int* path = L.path(pb, &len);
    int limit = L.degree_offset(R - L.degree(pb) + 1);
    for (int pa = 0; pa < limit; ++pa) {
      double av = a.c_[pa];
      if (av == 0.0) continue;
      int target = pa;
      for (int s = 0; s < len; ++s) target = L.increment(target, path[s]);
      out.c_[target] += av * bv;
    }
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * jet_recip(b); }

Jet operator+(const Jet& a, double s) {
  Jet out(a);
  out.c_[0] += s;
  return out;
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(const Jet& a, double s) {
  Jet out(a);
  return out *= s;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) {
  if (s == 0.0) throw domain_error("jet division by zero scalar");
  return a * (1.0 / s);
}
Jet operator/(double s, const Jet& a) { return jet_recip(a) * s; }

Jet Jet::compose_series(const std::vector<double>& series) const {
  // Horner in u = this - value(); u has zero constant term, so powers beyond
  // the truncation order vanish and K multiplications suffice.
  Jet u(*this);
  u.c_[0] = 0.0;
  Jet acc = Jet::constant(layout_, series.empty() ? 0.0 : series.back());
  for (int m = static_cast<int>(series.size()) - 2; m >= 0; --m) {
    acc = acc * u;
    acc.c_[0] += series[m];
  }
  return acc;
}

Jet jet_exp(const Jet& a) {
  int K = a.order();
  double e = std::exp(a.value());
  std::vector<double> s(K + 1);
  double f = 1.0;
  for (int m = 0; m <= K; ++m) {
    s[m] = e / f;
    f *= (m + 1);
  }
  return a.compose_series(s);
}

Jet jet_log(const Jet& a) {
  double v = a.value();
  if (v <= 0.0) throw domain_error("log of a nonpositive value");
  int K = a.order();
  std::vector<double> s(K + 1);
  s[0] = std::log(v);
  double ip = 1.0 / v;  // 1/v^m accumulator
  for (int m = 1; m <= K; ++m) {
    s[m] = ((m % 2 == 1) ? 1.0 : -1.0) * ip / m;
    ip /= v;
  }
  return a.compose_series(s);
}

Jet jet_sqrt(const Jet& a) {
  double v = a.value();
  if (v <= 0.0) throw domain_error("sqrt of a nonpositive value");
  int K = a.order();
  std::vector<double> s(K + 1);
  // Binomial series: sqrt(v) * C(1/2, m) * v^-m.
  double coef = std::sqrt(v);
  s[0] = coef;
  double binom = 1.0;
  double ip = 1.0;
  for (int m = 1; m <= K; ++m) {
    binom *= (0.5 - (m - 1)) / m;
    ip /= v;
    s[m] = std::sqrt(v) * binom * ip;
  }
  return a.compose_series(s);
}

Jet jet_sin(const Jet& a) {
  int K = a.order();
  double sv = std::sin(a.value()), cv = std::cos(a.value());
  std::vector<double> s(K + 1);
  double f = 1.0;
  for (int m = 0; m <= K; ++m) {
    double d;
    switch (m % 4) {
      case 0: d = sv; break;
      case 1: d = cv; break;
      case 2: d = -sv; break;
      default: d = -cv; break;
    }
    s[m] = d / f;
    f *= (m + 1);
  }
  return a.compose_series(s);
}

Jet jet_cos(const Jet& a) {
  int K = a.order();
  double sv = std::sin(a.value()), cv = std::cos(a.value());
  std::vector<double> s(K + 1);
  double f = 1.0;
  for (int m = 0; m <= K; ++m) {
    double d;
    switch (m % 4) {
      case 0: d = cv; break;
      case 1: d = -sv; break;
      case 2: d = -cv; break;
      default: d = sv; break;
    }
    s[m] = d / f;
    f *= (m + 1);
  }
  return a.compose_series(s);
}

Jet jet_tan(const Jet& a) {
  Jet c = jet_cos(a);
  if (c.value() == 0.0) throw domain_error("tan at a pole of cosine");
  return jet_sin(a) / c;
}

Jet jet_abs(const Jet& a) {
  double v = a.value();
  if (v == 0.0) throw domain_error("abs is not differentiable at zero");
  return v > 0.0 ? a : -a;
}

Jet jet_recip(const Jet& a) {
  double v = a.value();
  if (v == 0.0) throw domain_error("division by a jet with zero constant term");
  int K = a.order();
  std::vector<double> s(K + 1);
  double ip = 1.0 / v;
  for (int m = 0; m <= K; ++m) {
    s[m] = ((m % 2 == 0) ? 1.0 : -1.0) * ip;
    ip /= v;
  }
  return a.compose_series(s);
}

Jet jet_pow_int(const Jet& a, long long p) {
  if (p == 0) return Jet::constant(a.layout_ptr(), 1.0);
  Jet base = p > 0 ? a : jet_recip(a);
  unsigned long long e = static_cast<unsigned long long>(p > 0 ? p : -p);
  Jet acc = Jet::constant(a.layout_ptr(), 1.0);
  while (e > 0) {
    if (e & 1ull) acc = acc * base;
    base = (e >>= 1) ? base * base : base;
  }
  return acc;
}

Jet jet_pow(const Jet& a, double p) {
  if (a.value() <= 0.0)
    throw domain_error("pow with non-integer exponent needs a positive base");
  return jet_exp(jet_log(a) * p);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double multi_factorial(const std::vector<int>& alpha) {
  double r = 1.0;
  for (int v : alpha) r *= factorial(v);
  return r;
}

}  // namespace cgl
