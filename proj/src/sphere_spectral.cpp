#include "sphere_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgl {

namespace {

void check_dimension(int n) {
  if (n < 2) throw std::invalid_argument("sphere dimension must be at least 2");
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Multiplicity and eigenvalue extended to real degree x; both are
// polynomials in x, which is what makes the Euler-Maclaurin tail of the
// model-subtracted summand evaluable between the integers.
double multiplicity_real(int n, double x) {
  double prod = 1.0;
  for (int i = 1; i <= n - 2; ++i) prod *= x + i;
  return (2.0 * x + n - 1.0) / factorial(n - 1) * prod;
}

double eigenvalue_real(int n, int k, double x) {
  double prod = 1.0;
  for (int m = 0; m < 2 * k; ++m) prod *= x + 0.5 * n - k + m;
  return prod;
}

// Extended-precision w * m / Lambda, the even rational function of
// w = x + (n-1)/2 whose constant y-coefficient (y = w^2) carries the
// residue.  The fit subtracts terms several orders below the leading
// y^{jstar} growth, so the summand itself must be carried at better than
// double precision.
long double scaled_summand_l(int n, int k, long double x) {
  const long double w = x + 0.5L * (n - 1);
  long double m = 2.0L * x + (n - 1);
  for (int i = 1; i <= n - 2; ++i) m *= x + i;
  m /= (long double)factorial(n - 1);
  long double lam = 1.0L;
  for (int j = 0; j < 2 * k; ++j) lam *= x + 0.5L * n - k + j;
  return w * m / lam;
}

// Solve the square system A c = b by Gaussian elimination with partial
// pivoting in extended precision.  The system is tiny (at most 6x6).
std::vector<long double> solve_square(std::vector<std::vector<long double>> a,
                                      std::vector<long double> b) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::fabs((double)a[r][col]) > std::fabs((double)a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    if (a[col][col] == 0.0L)
      throw std::runtime_error("degenerate ladder system in residue fit");
    for (std::size_t r = col + 1; r < m; ++r) {
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> x(m, 0.0L);
  for (std::size_t r = m; r-- > 0;) {
    long double s = b[r];
    for (std::size_t c = r + 1; c < m; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

struct LadderFit {
  // c_r for y^{jstar-r}, r = 0..nbasis-1; kept in extended precision so
  // the model subtraction can cancel the summand to below the clip floor.
  std::vector<long double> coeff;
  int jstar = 0;
};

// Fit G(y) = w * m_l / Lambda_l = sum_r c_r y^{jstar - r}, y = w^2,
// w = l + (n-1)/2, on a geometric ladder of degrees below l_top.  The
// exponent ladder jstar, jstar-1, ..., jstar-(nbasis-1) reaches three
// orders past the constant term, so the subtracted model leaves a
// remainder decaying like w^{-8} or faster.  Each row is deflated by
// y^{jstar}, turning the system into a Vandermonde in z = 1/y with O(1)
// right-hand sides; otherwise the growing leading term drowns the
// constant coefficient that carries the residue.
LadderFit ladder_fit(int n, int k, int l_top) {
  LadderFit fit;
  fit.jstar = (n - 2 * k) / 2;
  const int nbasis = fit.jstar + 4;
  const double a = 0.5 * (n - 1);

  std::vector<double> nodes;
  double l = l_top;
  for (int i = 0; i < nbasis; ++i) {
    nodes.push_back(std::floor(l + 0.5));
    l *= 0.5;
  }

  // z_ref is the largest z value (the lowest node), so the scaled
  // Vandermonde entries stay within [0, 1].
  const long double w_bot = (long double)nodes.back() + (long double)a;
  const long double z_ref = 1.0L / (w_bot * w_bot);
  std::vector<std::vector<long double>> mat(nbasis,
                                            std::vector<long double>(nbasis));
  std::vector<long double> rhs(nbasis);
  for (int i = 0; i < nbasis; ++i) {
    const long double w = (long double)nodes[i] + (long double)a;
    const long double z = 1.0L / (w * w);
    long double entry = 1.0L;
    for (int r = 0; r < nbasis; ++r) {
      mat[i][r] = entry;
      entry *= z / z_ref;
    }
    rhs[i] = scaled_summand_l(n, k, (long double)nodes[i]) *
             powl(z, (long double)fit.jstar);
  }
  std::vector<long double> scaled = solve_square(mat, rhs);
  fit.coeff.resize(nbasis);
  for (int r = 0; r < nbasis; ++r)
    fit.coeff[r] = scaled[r] * powl(z_ref, (long double)-r);
  return fit;
}

// Model-subtracted remainder at real degree x, evaluated in extended
// precision and clipped at the cancellation noise floor: beyond the fit
// window the model's growing terms and the summand agree to relative
// machine precision, and whatever survives below the floor is numerical
// dust, not signal.
double remainder_value(const LadderFit& fit, int n, int k, double x) {
  const long double w = (long double)x + 0.5L * (n - 1);
  const long double y = w * w;
  long double model = 0.0L;
  long double scale = 0.0L;
  for (std::size_t r = 0; r < fit.coeff.size(); ++r) {
    const long double term =
        fit.coeff[r] * powl(y, (long double)(fit.jstar - (int)r));
    model += term;
    scale += fabsl(term);
  }
  const long double g = scaled_summand_l(n, k, (long double)x);
  long double diff = g - model;
  const long double floor = 64.0L * 1e-19L * (fabsl(g) + scale);
  if (fabsl(diff) < floor) diff = 0.0L;
  return (double)(diff / w);
}

// Euler-Maclaurin value of sum_{l >= a} g(l) for the fast-decaying
// model-subtracted remainder: integral plus three correction terms
//   1/2 g(a) - 1/12 g'(a) + 1/720 g'''(a).
double euler_maclaurin_tail(int n, int k, const LadderFit& fit, double a) {
  auto g = [&](double x) { return remainder_value(fit, n, k, x); };
  // Integral over [a, infinity) via x = a/u on (0, 1], Simpson rule.
  const int panels = 128;
  double integral = 0.0;
  const double h = 1.0 / panels;
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double x = a / u;
    return g(x) * a / (u * u);
  };
  for (int i = 0; i < panels; ++i) {
    const double u0 = i * h, u1 = (i + 1) * h;
    integral += h / 6.0 *
                (integrand(u0) + 4.0 * integrand(0.5 * (u0 + u1)) + integrand(u1));
  }
  const double d1 = 0.5 * (g(a + 1.0) - g(a - 1.0));
  const double d3 =
      0.5 * (g(a + 2.0) - 2.0 * g(a + 1.0) + 2.0 * g(a - 1.0) - g(a - 2.0));
  return integral + 0.5 * g(a) - d1 / 12.0 + d3 / 720.0;
}

double residue_estimate(int n, int k, int l_top) {
  const LadderFit fit = ladder_fit(n, k, l_top);
  // The y^0 coefficient is the w^{-1} coefficient of the summand, and the
  // analytic continuation of sum_l w^{-(1 + 2k(s-1))} has residue 1/(2k).
  return (double)fit.coeff[(std::size_t)fit.jstar] / (2.0 * k);
}

}  // namespace

double sphere_mu(int n, int l) {
  check_dimension(n);
  if (l < 0) throw std::invalid_argument("degree l must be nonnegative");
  return (double)l * (l + n - 1.0);
}

double sphere_multiplicity(int n, int l) {
  check_dimension(n);
  if (l < 0) throw std::invalid_argument("degree l must be nonnegative");
  return multiplicity_real(n, (double)l);
}

double sphere_gjms_eigenvalue(int n, int k, int l) {
  check_dimension(n);
  if (k < 1) throw std::invalid_argument("operator order k must be positive");
  if (l < 0) throw std::invalid_argument("degree l must be nonnegative");
  return eigenvalue_real(n, k, (double)l);
}

double sphere_volume(int n) {
  check_dimension(n);
  return 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

ZetaResidue zeta_residue_at_1(const SphereSpectrum& spec) {
  check_dimension(spec.n);
  if (spec.k < 1)
    throw std::invalid_argument("operator order k must be positive");
  const int diff = spec.n - 2 * spec.k;
  if (diff != 0 && diff != 2 && diff != 4)
    throw std::invalid_argument(
        "zeta residue ladder supports n - 2k in {0, 2, 4}, got n = " +
        std::to_string(spec.n) + ", k = " + std::to_string(spec.k));
  if (spec.l_max < 200)
    throw std::invalid_argument("l_max must be at least 200");

  ZetaResidue out;
  for (int l = 0; l <= spec.l_max; ++l) {
    if (sphere_gjms_eigenvalue(spec.n, spec.k, l) <= 0.0) ++out.excluded_modes;
  }

  out.residue = residue_estimate(spec.n, spec.k, spec.l_max);
  const double half = residue_estimate(spec.n, spec.k, spec.l_max / 2);
  out.error_estimate = std::fabs(out.residue - half);

  const LadderFit fit = ladder_fit(spec.n, spec.k, spec.l_max);
  out.remainder_tail =
      euler_maclaurin_tail(spec.n, spec.k, fit, (double)spec.l_max + 1.0);

  out.converged =
      out.error_estimate < 1e-5 && std::fabs(out.remainder_tail) < 1e-4;
  return out;
}

}  // namespace cgl
