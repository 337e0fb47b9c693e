#pragma once

#include <memory>
#include <vector>

#include "jet.hpp"
#include "metric.hpp"

namespace cgl {

// Raised when an operation needs more jet orders than a frame or jet carries.
class order_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Slot variance flags.
inline constexpr int UP = +1;  // contravariant (upper index)
inline constexpr int LO = -1;  // covariant (lower index)

// When set, metric insertions performed implicitly by contract() are logged
// to stderr; debugging aid for index-convention mistakes.
extern bool tensor_verbose;

// Dense real tensor at a point with per-slot variance bookkeeping.
// Row-major storage, slot 0 slowest; data length is dim^rank exactly.
struct Tensor {
  int dim = 0;
  std::vector<int> variance;  // UP or LO per slot
  std::vector<double> data;

  Tensor() = default;
  Tensor(int dim, std::vector<int> variance);

  int rank() const { return static_cast<int>(variance.size()); }
  size_t flat(const std::vector<int>& idx) const;
  double& at(const std::vector<int>& idx) { return data[flat(idx)]; }
  double at(const std::vector<int>& idx) const { return data[flat(idx)]; }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);
};

// Tensor whose components are jets (position-dependent tensor known through
// its Taylor data at the frame's base point).  Same layout rules as Tensor.
struct JetTensor {
  int dim = 0;
  std::vector<int> variance;
  std::vector<Jet> data;

  JetTensor() = default;
  // Components start as zero jets on `layout`.
  JetTensor(int dim, std::vector<int> variance, const std::shared_ptr<const JetLayout>& layout);

  int rank() const { return static_cast<int>(variance.size()); }
  size_t flat(const std::vector<int>& idx) const;
  Jet& at(const std::vector<int>& idx) { return data[flat(idx)]; }
  const Jet& at(const std::vector<int>& idx) const { return data[flat(idx)]; }

  // Value part: the same tensor with each jet replaced by its constant term.
  Tensor values() const;
};

// Everything needed to do pointwise tensor calculus for a metric at one
// point: jets of g_ij, g^{ij} (order K), the Christoffel symbols Gamma^k_ij
// as jets of order K-1 (their value and partials to order K-1), and det g.
struct PointFrame {
  int dim = 0;
  int order = 0;  // jet order K of the metric jets
  std::vector<double> point;
  std::vector<int> signature;
  std::vector<Jet> g;      // dim*dim, row-major
  std::vector<Jet> ginv;   // dim*dim
  std::vector<Jet> gamma;  // dim^3, [k][i][j] with Gamma^k_ij = gamma[(k*dim+i)*dim+j]
  Jet det_g;

  const Jet& g_at(int i, int j) const { return g[static_cast<size_t>(i * dim + j)]; }
  const Jet& ginv_at(int i, int j) const { return ginv[static_cast<size_t>(i * dim + j)]; }
  const Jet& gamma_at(int k, int i, int j) const {
    return gamma[static_cast<size_t>((k * dim + i) * dim + j)];
  }

  // Value parts as rank-2 tensors (LL and UU respectively).
  Tensor g_values() const;
  Tensor ginv_values() const;
};

// Inverts an n x n matrix of jets by Gauss-Jordan elimination with partial
// pivoting on the constant terms.  Throws domain_error if the value matrix is
// singular.  If det_out is non-null it receives the determinant jet.
std::vector<Jet> jet_matrix_inverse(const std::vector<Jet>& a, int n, Jet* det_out = nullptr);

// Evaluates metric, inverse metric and Christoffel jets at `point`.
// Requires order >= 2 and an invertible metric at the point.
PointFrame build_frame(const MetricField& field, const std::vector<double>& point, int order);

// Contracts slots a and b of t.  Opposite variances: plain trace.  Equal
// variances: the frame's g (for two upper slots) or g^{ij} (two lower slots)
// is inserted.  Rank drops by two.
Tensor contract(const Tensor& t, int slot_a, int slot_b, const PointFrame& frame);

// Flips the variance of one slot using g or g^{ij}; involutive.
Tensor raise_lower(const Tensor& t, int slot, const PointFrame& frame);

// Sum over all indices of a.data[i]*b.data[i]; requires identical dims and
// slotwise opposite variances.
double full_contract(const Tensor& a, const Tensor& b);

// |t|^2 = full contraction of t with itself after raising/lowering every
// slot; works for any variance pattern.
double metric_norm2(const Tensor& t, const PointFrame& frame);

// Covariant derivative of a jet tensor: rank+1 with the NEW covariant slot
// FIRST, (grad T)_{c I} = d_c T_I + variance-signed Gamma corrections.  The
// component jets lose one order.
JetTensor covariant_derivative(const JetTensor& t, const PointFrame& frame);

// Scalar Laplacian with the geometer's (positive) sign applied to a jet:
// (Lap f) = -g^{ij}(d_i d_j f - Gamma^k_ij d_k f).  Consumes two jet orders.
Jet laplacian_of_jet(const Jet& f, const PointFrame& frame);

// Convenience: Lap_g f evaluated at frame.point for an expression f.
double laplacian_scalar(const ExprPtr& f, const PointFrame& frame);

}  // namespace cgl
