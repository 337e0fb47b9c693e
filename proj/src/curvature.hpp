#pragma once

#include "tensor.hpp"

namespace cgl {

// Curvature data at a frame's base point.  Tensor components are kept as
// jets so covariant derivatives and the Laplacian of the scalar curvature
// can be formed afterwards, order permitting; the value parts are what the
// invariant evaluators contract.
struct CurvatureBundle {
  PointFrame frame;
  JetTensor riemann;  // R_ijkl, all-covariant, jets of order K-2
  JetTensor ricci;    // Ric_ij, jets of order K-2
  Jet kappa;          // scalar curvature jet, order K-2

  bool has_gradR = false;
  JetTensor gradR;  // (grad R)_{m ijkl}, new slot first; present when K >= 3

  bool has_lap_kappa = false;
  double lap_kappa = 0.0;  // Lap_g kappa; present when K >= 4

  Tensor R() const { return riemann.values(); }
  Tensor Ric() const { return ricci.values(); }
  double kappa_value() const { return kappa.value(); }
};

// Curvature from the frame's Christoffel jets, with the convention
//   R(d_i, d_j) d_k = Rup^l_{ijk} d_l,
//   Rup^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//                 + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik},
//   R_ijkl = g_lm Rup^m_{ijk},
//   Ric_ij = g^{pq} R_{pijq},   kappa = g^{ij} Ric_ij.
// The orientation is pinned by the unit round sphere: kappa(S^n) = n(n-1),
// Ric = (n-1) g, and R_ijkl = g_jk g_il - g_ik g_jl there.
CurvatureBundle curvature(const PointFrame& frame);

// (grad grad R)_{p m ijkl}: second covariant derivative of the Riemann
// tensor, outermost derivative slot first.  Needs frame order K >= 4.
JetTensor second_covariant_riemann(const CurvatureBundle& bundle);

}  // namespace cgl
