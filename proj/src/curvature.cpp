#include "curvature.hpp"

namespace cgl {

CurvatureBundle curvature(const PointFrame& frame) {
  const int n = frame.dim;
  const int K = frame.order;

  CurvatureBundle b;
  b.frame = frame;
  const PointFrame& f = b.frame;

  auto rlayout = JetLayout::get(n, K - 2);

  // Rup^l_{ijk}, antisymmetric in (i,j); only i < j is computed.
  std::vector<Jet> rup(static_cast<size_t>(n) * n * n * n, Jet(rlayout));
  auto at4 = [n](int a, int bb, int c, int d) {
    return static_cast<size_t>(((a * n + bb) * n + c) * n + d);
  };
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Jet t = f.gamma_at(l, j, k).derivative(i) - f.gamma_at(l, i, k).derivative(j);
          for (int m = 0; m < n; ++m)
            t += f.gamma_at(l, i, m) * f.gamma_at(m, j, k) -
                 f.gamma_at(l, j, m) * f.gamma_at(m, i, k);
          rup[at4(l, i, j, k)] = t;
          rup[at4(l, j, i, k)] = -t;
        }

  // Lower the frame index: R_ijkl = g_lm Rup^m_{ijk}.
  b.riemann = JetTensor(n, {LO, LO, LO, LO}, rlayout);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Jet t = f.g_at(l, 0) * rup[at4(0, i, j, k)];
          for (int m = 1; m < n; ++m) t += f.g_at(l, m) * rup[at4(m, i, j, k)];
          b.riemann.at({i, j, k, l}) = t;
          b.riemann.at({j, i, k, l}) = -t;
        }

  // Ric_ij = g^{pq} R_{p i j q}; symmetric.
  b.ricci = JetTensor(n, {LO, LO}, rlayout);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet t(rlayout);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          if (p == i) continue;  // R_{p i j q} vanishes identically for p == i
          t += f.ginv_at(p, q) * b.riemann.at({p, i, j, q});
        }
      b.ricci.at({i, j}) = t;
      b.ricci.at({j, i}) = t;
    }

  // kappa = g^{ij} Ric_ij.
  b.kappa = Jet(rlayout);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.kappa += f.ginv_at(i, j) * b.ricci.at({i, j});

  if (K >= 3) {
    b.gradR = covariant_derivative(b.riemann, f);
    b.has_gradR = true;
  }
  if (K >= 4) {
    b.lap_kappa = laplacian_of_jet(b.kappa, f).value();
    b.has_lap_kappa = true;
  }
  return b;
}

JetTensor second_covariant_riemann(const CurvatureBundle& bundle) {
  if (!bundle.has_gradR)
    throw order_error("second covariant derivative of curvature needs frame order >= 4");
  return covariant_derivative(bundle.gradR, bundle.frame);
}

}  // namespace cgl
