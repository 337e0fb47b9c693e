#include "tensor.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cgl {

bool tensor_verbose = false;

namespace {

size_t ipow(int base, int exp) {
  size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<size_t>(base);
  return r;
}

void check_variance(const std::vector<int>& variance) {
  if (variance.size() > 8) throw std::invalid_argument("tensor rank above 8 is not supported");
  for (int v : variance)
    if (v != UP && v != LO) throw std::invalid_argument("variance flags must be UP or LO");
}

}  // namespace

Tensor::Tensor(int dim_, std::vector<int> variance_) : dim(dim_), variance(std::move(variance_)) {
  if (dim < 1) throw std::invalid_argument("tensor dimension must be positive");
  check_variance(variance);
  data.assign(ipow(dim, rank()), 0.0);
}

size_t Tensor::flat(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw std::invalid_argument("index tuple length does not match tensor rank");
  size_t f = 0;
  for (size_t s = 0; s < idx.size(); ++s) {
    if (idx[s] < 0 || idx[s] >= dim) throw std::invalid_argument("tensor index out of range");
    f = f * static_cast<size_t>(dim) + static_cast<size_t>(idx[s]);
  }
  return f;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (dim != o.dim || variance != o.variance)
    throw std::invalid_argument("tensor shape mismatch in +=");
  for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (dim != o.dim || variance != o.variance)
    throw std::invalid_argument("tensor shape mismatch in -=");
  for (size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data) v *= s;
  return *this;
}

JetTensor::JetTensor(int dim_, std::vector<int> variance_,
                     const std::shared_ptr<const JetLayout>& layout)
    : dim(dim_), variance(std::move(variance_)) {
  if (dim < 1) throw std::invalid_argument("tensor dimension must be positive");
  check_variance(variance);
  data.assign(ipow(dim, rank()), Jet(layout));
}

size_t JetTensor::flat(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw std::invalid_argument("index tuple length does not match tensor rank");
  size_t f = 0;
  for (size_t s = 0; s < idx.size(); ++s) {
    if (idx[s] < 0 || idx[s] >= dim) throw std::invalid_argument("tensor index out of range");
    f = f * static_cast<size_t>(dim) + static_cast<size_t>(idx[s]);
  }
  return f;
}

Tensor JetTensor::values() const {
  Tensor out(dim, variance);
  for (size_t i = 0; i < data.size(); ++i) out.data[i] = data[i].value();
  return out;
}

Tensor PointFrame::g_values() const {
  Tensor out(dim, {LO, LO});
  for (size_t i = 0; i < g.size(); ++i) out.data[i] = g[i].value();
  return out;
}

Tensor PointFrame::ginv_values() const {
  Tensor out(dim, {UP, UP});
  for (size_t i = 0; i < ginv.size(); ++i) out.data[i] = ginv[i].value();
  return out;
}

// ---------------------------------------------------------------------------
// Jet linear algebra and frame construction
// ---------------------------------------------------------------------------

std::vector<Jet> jet_matrix_inverse(const std::vector<Jet>& a, int n, Jet* det_out) {
  if (static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("matrix size does not match dimension");
  auto layout = a[0].layout_ptr();

  // Augmented system [A | I], reduced in place by Gauss-Jordan.
  std::vector<Jet> m(static_cast<size_t>(n) * (2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[static_cast<size_t>(i * 2 * n + j)] = a[(size_t)(i * n + j)];
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i * 2 * n + n + j)] = Jet::constant(layout, i == j ? 1.0 : 0.0);
  }

  Jet det = Jet::constant(layout, 1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(m[(size_t)(r * 2 * n + col)].value()) >
          std::fabs(m[(size_t)(piv * 2 * n + col)].value()))
        piv = r;
    if (m[(size_t)(piv * 2 * n + col)].value() == 0.0)
      throw domain_error("matrix is singular at the evaluation point");
    if (piv != col) {
      for (int j = 0; j < 2 * n; ++j)
        std::swap(m[(size_t)(piv * 2 * n + j)], m[(size_t)(col * 2 * n + j)]);
      det *= -1.0;
    }
    det = det * m[(size_t)(col * 2 * n + col)];
    Jet inv_p = jet_recip(m[(size_t)(col * 2 * n + col)]);
    for (int j = col; j < 2 * n; ++j)
      m[(size_t)(col * 2 * n + j)] = m[(size_t)(col * 2 * n + j)] * inv_p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet factor = m[(size_t)(r * 2 * n + col)];
      if (factor.value() == 0.0) {
        bool all_zero = true;
        for (int p = 0; p < factor.size() && all_zero; ++p)
          if (factor.coeff_at(p) != 0.0) all_zero = false;
        if (all_zero) continue;
      }
      for (int j = col; j < 2 * n; ++j)
        m[(size_t)(r * 2 * n + j)] =
            m[(size_t)(r * 2 * n + j)] - factor * m[(size_t)(col * 2 * n + j)];
    }
  }

  std::vector<Jet> inv(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[(size_t)(i * n + j)] = m[(size_t)(i * 2 * n + n + j)];
  if (det_out) *det_out = det;
  return inv;
}

PointFrame build_frame(const MetricField& field, const std::vector<double>& point, int order) {
  if (order < 2) throw order_error("frames need jet order at least 2");
  PointFrame f;
  f.dim = field.dim();
  f.order = order;
  f.point = point;
  f.signature = field.signature();
  f.g = field.eval_matrix(point, order);
  f.ginv = jet_matrix_inverse(f.g, f.dim, &f.det_g);

  int n = f.dim;
  f.gamma.resize(ipow(n, 3));
  // Precompute first partials of the metric components.
  std::vector<Jet> dg(ipow(n, 3));  // dg[(i*n+j)*n+l] = d_l g_ij
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Jet d = f.g_at(i, j).derivative(l);
        dg[(size_t)((i * n + j) * n + l)] = d;
        dg[(size_t)((j * n + i) * n + l)] = d;
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet sum;
        bool started = false;
        for (int l = 0; l < n; ++l) {
          Jet term = f.ginv_at(k, l) * (dg[(size_t)((j * n + l) * n + i)] +
                                        dg[(size_t)((i * n + l) * n + j)] -
                                        dg[(size_t)((i * n + j) * n + l)]);
          if (started) {
            sum += term;
          } else {
            sum = term;
            started = true;
          }
        }
        sum *= 0.5;
        f.gamma[(size_t)((k * n + i) * n + j)] = sum;
        f.gamma[(size_t)((k * n + j) * n + i)] = sum;
      }
  return f;
}

// ---------------------------------------------------------------------------
// Contractions
// ---------------------------------------------------------------------------

namespace {

// Advances a multi-index through all dim^len combinations; returns false when
// it wraps around to all zeros.
bool advance(std::vector<int>& idx, int dim) {
  for (int s = static_cast<int>(idx.size()) - 1; s >= 0; --s) {
    if (++idx[(size_t)s] < dim) return true;
    idx[(size_t)s] = 0;
  }
  return false;
}

}  // namespace

Tensor contract(const Tensor& t, int slot_a, int slot_b, const PointFrame& frame) {
  int r = t.rank();
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= r || slot_b >= r)
    throw std::invalid_argument("contract: bad slot pair");
  if (t.dim != frame.dim) throw std::invalid_argument("contract: tensor/frame dimension mismatch");

  bool metric_insertion = t.variance[(size_t)slot_a] == t.variance[(size_t)slot_b];
  const Tensor* m2 = nullptr;
  Tensor g_ll, g_uu;
  if (metric_insertion) {
    if (t.variance[(size_t)slot_a] == LO) {
      g_uu = frame.ginv_values();
      m2 = &g_uu;
    } else {
      g_ll = frame.g_values();
      m2 = &g_ll;
    }
    if (tensor_verbose)
      std::fprintf(stderr, "contract: inserting %s for slots (%d,%d)\n",
                   t.variance[(size_t)slot_a] == LO ? "inverse metric" : "metric", slot_a, slot_b);
  }

  std::vector<int> out_var;
  for (int s = 0; s < r; ++s)
    if (s != slot_a && s != slot_b) out_var.push_back(t.variance[(size_t)s]);
  Tensor out(t.dim, out_var);

  std::vector<int> oidx(out_var.size(), 0);
  std::vector<int> tidx((size_t)r, 0);
  size_t of = 0;
  do {
    int w = 0;
    for (int s = 0; s < r; ++s)
      if (s != slot_a && s != slot_b) tidx[(size_t)s] = oidx[(size_t)w], ++w;
    double sum = 0.0;
    if (metric_insertion) {
      for (int p = 0; p < t.dim; ++p)
        for (int q = 0; q < t.dim; ++q) {
          tidx[(size_t)slot_a] = p;
          tidx[(size_t)slot_b] = q;
          sum += m2->data[(size_t)(p * t.dim + q)] * t.data[t.flat(tidx)];
        }
    } else {
      for (int p = 0; p < t.dim; ++p) {
        tidx[(size_t)slot_a] = p;
        tidx[(size_t)slot_b] = p;
        sum += t.data[t.flat(tidx)];
      }
    }
    out.data[of++] = sum;
  } while (advance(oidx, t.dim));
  return out;
}

Tensor raise_lower(const Tensor& t, int slot, const PointFrame& frame) {
  int r = t.rank();
  if (slot < 0 || slot >= r) throw std::invalid_argument("raise_lower: slot out of range");
  if (t.dim != frame.dim)
    throw std::invalid_argument("raise_lower: tensor/frame dimension mismatch");

  Tensor m2 = t.variance[(size_t)slot] == LO ? frame.ginv_values() : frame.g_values();
  std::vector<int> out_var = t.variance;
  out_var[(size_t)slot] = -out_var[(size_t)slot];
  Tensor out(t.dim, out_var);

  size_t stride = 1;
  for (int s = r - 1; s > slot; --s) stride *= (size_t)t.dim;
  for (size_t f = 0; f < out.data.size(); ++f) {
    int a = static_cast<int>((f / stride) % (size_t)t.dim);
    size_t base = f - (size_t)a * stride;
    double sum = 0.0;
    for (int b = 0; b < t.dim; ++b)
      sum += m2.data[(size_t)(a * t.dim + b)] * t.data[base + (size_t)b * stride];
    out.data[f] = sum;
  }
  return out;
}

double full_contract(const Tensor& a, const Tensor& b) {
  if (a.dim != b.dim || a.rank() != b.rank())
    throw std::invalid_argument("full_contract: shape mismatch");
  for (int s = 0; s < a.rank(); ++s)
    if (a.variance[(size_t)s] != -b.variance[(size_t)s])
      throw std::invalid_argument("full_contract: variances must be slotwise opposite");
  double sum = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) sum += a.data[i] * b.data[i];
  return sum;
}

double metric_norm2(const Tensor& t, const PointFrame& frame) {
  Tensor flipped = t;
  for (int s = 0; s < t.rank(); ++s) flipped = raise_lower(flipped, s, frame);
  return full_contract(flipped, t);
}

// ---------------------------------------------------------------------------
// Covariant calculus
// ---------------------------------------------------------------------------

JetTensor covariant_derivative(const JetTensor& t, const PointFrame& frame) {
  if (t.dim != frame.dim)
    throw std::invalid_argument("covariant_derivative: tensor/frame dimension mismatch");
  if (t.data.empty() || t.data[0].empty())
    throw std::invalid_argument("covariant_derivative: empty jet tensor");
  if (t.data[0].order() < 1)
    throw order_error("covariant_derivative: component jets have no derivative left");

  int n = t.dim;
  int r = t.rank();
  JetTensor out;
  out.dim = n;
  out.variance.assign(1, LO);
  out.variance.insert(out.variance.end(), t.variance.begin(), t.variance.end());
  out.data.resize((size_t)n * t.data.size());

  std::vector<int> idx((size_t)r, 0);
  std::vector<int> idx2((size_t)r, 0);
  size_t fi = 0;
  do {
    for (int c = 0; c < n; ++c) {
      Jet term = t.data[fi].derivative(c);
      for (int s = 0; s < r; ++s) {
        idx2 = idx;
        for (int p = 0; p < n; ++p) {
          idx2[(size_t)s] = p;
          if (t.variance[(size_t)s] == LO)
            term = term - frame.gamma_at(p, c, idx[(size_t)s]) * t.data[t.flat(idx2)];
          else
            term = term + frame.gamma_at(idx[(size_t)s], c, p) * t.data[t.flat(idx2)];
        }
      }
      out.data[(size_t)c * t.data.size() + fi] = term;
    }
    ++fi;
  } while (advance(idx, n));
  if (fi != t.data.size()) throw std::logic_error("covariant_derivative: enumeration mismatch");
  return out;
}

Jet laplacian_of_jet(const Jet& f, const PointFrame& frame) {
  if (f.empty() || f.order() < 2)
    throw order_error("laplacian needs a jet of order at least 2");
  if (f.nvars() != frame.dim)
    throw std::invalid_argument("laplacian: jet variable count differs from frame dimension");

  int n = frame.dim;
  std::vector<Jet> df((size_t)n);
  for (int k = 0; k < n; ++k) df[(size_t)k] = f.derivative(k);

  Jet acc;
  bool started = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet inner = df[(size_t)i].derivative(j);
      for (int k = 0; k < n; ++k) inner = inner - frame.gamma_at(k, i, j) * df[(size_t)k];
      Jet term = frame.ginv_at(i, j) * inner;
      if (started) {
        acc += term;
      } else {
        acc = term;
        started = true;
      }
    }
  return -acc;
}

double laplacian_scalar(const ExprPtr& f, const PointFrame& frame) {
  Jet jf = eval_jet(f, frame.point, frame.order);
  return laplacian_of_jet(jf, frame).value();
}

}  // namespace cgl
