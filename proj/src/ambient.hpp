#pragma once

#include <vector>

#include "expr.hpp"
#include "metric.hpp"

namespace cgl {

// The Einstein-case ambient space: for a base (M, g) with
// Ric(g) = 2 lambda (n-1) g, the metric
//   g~ = 2 rho dt^2 + 2 t dt drho + t^2 (1 + lambda rho)^2 g_ij(x) dx^i dx^j
// on coordinates (t, x^1..x^n, rho) is Ricci-flat (to all orders reachable
// here) and dilation-homogeneous of degree 2, and powers of its Laplacian
// restrict to the conformally covariant operators of the base.
struct AmbientField {
  MetricField base;     // dim n, Riemannian
  double lambda = 0.0;  // Einstein constant: Ric(base) = 2 lambda (n-1) base
  MetricField ambient;  // dim n+2, coords (t, <base coords>, rho)
};

// Assembles the ambient metric by expression composition.  The base must be
// Einstein with the given constant, verified at `probe_point` (the origin
// for the two-argument overload) via max |Ric - 2 lambda (n-1) g| <=
// 1e-8 max(1, |Ric|); non-Einstein bases are refused.  Base coordinates
// named "t" or "rho" are refused (they would collide with the fiber
// coordinates).  The stored signature metadata is (+1,...,+1,-1): the
// (t, rho) block contributes one negative direction.
AmbientField build_ambient(const MetricField& base, double lambda);
AmbientField build_ambient(const MetricField& base, double lambda,
                           const std::vector<double>& probe_point);

// P_k u at `point`, computed from the ambient Laplacian:
//   P_k u = t^{n/2+k} Lap~^k ( t^{k-n/2} u~ ) |_{rho=0},
// where u~ extends u independently of (t, rho).  The right-hand side is
// independent of t; evaluation is at the supplied t (default 1, where the
// outer factor is trivial), and the t-independence is assertable by varying
// it.  The Einstein condition is re-verified at `point`.  Requires k >= 1,
// t > 0, and k <= n/2 when n is even (the construction breaks down beyond
// the critical power).  Jets of order 2k on the (n+2)-dimensional frame
// supply everything.
double ambient_laplacian_power(const AmbientField& af, int k, const ExprPtr& u,
                               const std::vector<double>& point, double t = 1.0);

struct ExtensionCheck {
  bool pass = false;
  double unperturbed = 0.0;  // value with the (t, rho)-independent extension
  double perturbed = 0.0;    // value with u~ + perturbation
  double rel_gap = 0.0;      // |difference| / max(1, |unperturbed|)
};

// Re-runs ambient_laplacian_power with the extension u~ + perturbation and
// reports agreement to 1e-6 relative.  `perturbation` is an expression over
// the ambient coordinates (t, x, rho); it must vanish at rho = 0 (so the
// perturbed extension still restricts to u — checked at the evaluation
// point and refused otherwise, e.g. the constant 1) and must not involve t
// (extensions stay dilation-homogeneous); rho * (anything in x, rho) is the
// typical shape.
ExtensionCheck extension_independence_check(const AmbientField& af, int k, const ExprPtr& u,
                                            const std::vector<double>& point,
                                            const ExprPtr& perturbation);

}  // namespace cgl
