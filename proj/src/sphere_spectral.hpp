#pragma once

namespace cgl {

// Spectral data of the GJMS operator P_k on the round unit n-sphere.  The
// eigenvalues come from the Einstein product formula with lambda = 1
// (Ric = (n-1) g): on the degree-l eigenspace of the Laplacian,
//   Lambda_l = prod_{j=1..k} ( mu_l + 1/4 (n+2j-2)(n-2j) )
//            = prod_{m=0..2k-1} ( l + n/2 - k + m ),
// with mu_l = l(l+n-1), a rising product of 2k consecutive numbers.
struct SphereSpectrum {
  int n = 0;        // sphere dimension
  int k = 1;        // operator order index (P_k has leading part Lap^k)
  int l_max = 2000; // eigenvalue-ladder truncation for the zeta sum
};

// Laplacian eigenvalue mu_l = l(l+n-1) on the degree-l space.
double sphere_mu(int n, int l);

// Multiplicity of the degree-l eigenspace,
//   m_l = C(n+l, n) - C(n+l-2, n) = (2l+n-1)/(n-1)! prod_{i=1..n-2} (l+i),
// evaluated in the cancellation-free product form.
double sphere_multiplicity(int n, int l);

// GJMS eigenvalue Lambda_l (see SphereSpectrum).  Zero exactly on the
// kernel of the critical operator (l = 0, k = n/2).
double sphere_gjms_eigenvalue(int n, int k, int l);

// Vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

struct ZetaResidue {
  double residue = 0.0;
  // Gap between the estimates at l_max and l_max/2 (truncation-doubling
  // stability); the dominant honest error signal.
  double error_estimate = 0.0;
  // Euler-Maclaurin tail (integral plus three correction terms) of the
  // model-subtracted summand beyond l_max; near zero when the asymptotic
  // subtraction captured the summand.
  double remainder_tail = 0.0;
  int excluded_modes = 0;  // modes with Lambda_l <= 0, left out of the sum
  bool converged = false;  // both error signals within tolerance
};

// Residue at s = 1 of zeta_P(s) = sum_l m_l Lambda_l^{-s} (nonpositive
// modes excluded, matching the kernel-projection convention).  The summand
// at s = 1 has a large-l expansion in odd powers of w = l + (n-1)/2,
//   m_l / Lambda_l = sum_r c_r w^{n-1-2k-2r},
// whose w^{-1} coefficient is what the analytic continuation turns into
// the pole: Res = c_{(n-2k)/2} / (2k).  The coefficients are extracted
// numerically from the summand on a geometric ladder of l-values below
// l_max; the model is then subtracted and the convergent remainder's
// Euler-Maclaurin tail (three correction terms) plus an l_max-doubling
// rerun supply the error report.  Non-convergence is reported through
// `converged`, never silently dropped.
// Requires n >= 2, k >= 1, n - 2k in {0, 2, 4}, l_max >= 200.
ZetaResidue zeta_residue_at_1(const SphereSpectrum& spec);

}  // namespace cgl
