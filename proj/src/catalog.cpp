#include "catalog.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"

namespace cgl {

namespace {

std::vector<std::string> cartesian_coords(int n) {
  std::vector<std::string> coords;
  for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
  return coords;
}

std::string squared_radius(int n) {
  std::string r2;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) r2 += " + ";
    r2 += "x" + std::to_string(i) + "^2";
  }
  return r2;
}

// delta_ij scaled by a common conformal factor given as an expression
// string over x1..xn.
MetricField conformal_diagonal(int n, const std::string& factor) {
  MetricField m(n, cartesian_coords(n));
  const ExprPtr e = parse_expr(factor, m.coords(), {});
  for (int i = 0; i < n; ++i) m.set_entry(i, i, e);
  return m;
}

void require_dim(bool ok, const std::string& name, int n,
                 const std::string& constraint) {
  if (!ok)
    throw std::invalid_argument("builtin metric '" + name +
                                "' needs dimension " + constraint + ", got " +
                                std::to_string(n));
}

std::vector<double> spread_point(int n, double scale) {
  const std::vector<double> pool = {0.3, -0.2, 0.5,  0.1,
                                    -0.4, 0.25, 0.15, -0.35};
  std::vector<double> p;
  for (int i = 0; i < n; ++i) p.push_back(scale * pool[i % pool.size()]);
  return p;
}

MetricField tangherlini_metric(int n, double r0) {
  std::vector<std::string> coords = {"tau", "r"};
  for (int a = 1; a <= n - 2; ++a) coords.push_back("t" + std::to_string(a));
  MetricField m(n, coords);
  m.set_param("r0", r0);
  const std::string f =
      "1 - (r0/r)^" + std::to_string(n - 3);
  m.set_entry(0, 0, parse_expr(f, coords, {"r0"}));
  m.set_entry(1, 1, parse_expr("1/(" + f + ")", coords, {"r0"}));
  // Round (n-2)-sphere in nested spherical angles, warped by r^2:
  // the angle t_a carries r^2 sin^2(t_1) ... sin^2(t_{a-1}).
  std::string warp = "r^2";
  for (int a = 1; a <= n - 2; ++a) {
    m.set_entry(1 + a, 1 + a, parse_expr(warp, coords, {"r0"}));
    warp += "*sin(t" + std::to_string(a) + ")^2";
  }
  return m;
}

MetricField product_spheres_metric() {
  const std::vector<std::string> coords = {"x1", "x2", "y1", "y2"};
  MetricField m(4, coords);
  const ExprPtr first = parse_expr("4/(1 + x1^2 + x2^2)^2", coords, {});
  const ExprPtr second = parse_expr("4/(1 + y1^2 + y2^2)^2", coords, {});
  m.set_entry(0, 0, first);
  m.set_entry(1, 1, first);
  m.set_entry(2, 2, second);
  m.set_entry(3, 3, second);
  return m;
}

const char* kDefaultUpsilon = "0.1*sin(x1)*cos(x2) + 0.05*x1";

}  // namespace

std::vector<std::string> catalog_names() {
  return {"flat",
          "round_sphere_stereographic",
          "hyperbolic_ball",
          "conformally_flat",
          "schwarzschild_tangherlini",
          "product_sphere_sphere"};
}

MetricField builtin_metric(const std::string& name, int n,
                           const CatalogParams& params) {
  if (name == "flat") {
    require_dim(n >= 1, name, n, ">= 1");
    return conformal_diagonal(n, "1");
  }
  if (name == "round_sphere_stereographic") {
    require_dim(n >= 2, name, n, ">= 2");
    return conformal_diagonal(n, "4/(1 + " + squared_radius(n) + ")^2");
  }
  if (name == "hyperbolic_ball") {
    require_dim(n >= 2, name, n, ">= 2");
    return conformal_diagonal(n, "4/(1 - (" + squared_radius(n) + "))^2");
  }
  if (name == "conformally_flat") {
    require_dim(n >= 2, name, n, ">= 2");
    const std::string ups =
        params.upsilon.empty() ? kDefaultUpsilon : params.upsilon;
    return conformal_diagonal(n, "exp(2*(" + ups + "))");
  }
  if (name == "schwarzschild_tangherlini") {
    require_dim(n >= 4, name, n, ">= 4");
    if (!(params.r0 > 0.0))
      throw std::invalid_argument(
          "schwarzschild_tangherlini needs a positive horizon radius r0");
    return tangherlini_metric(n, params.r0);
  }
  if (name == "product_sphere_sphere") {
    require_dim(n == 4, name, n, "= 4");
    return product_spheres_metric();
  }
  std::string known;
  for (const auto& k : catalog_names()) known += " " + k;
  throw std::invalid_argument("unknown builtin metric '" + name +
                              "'; known names:" + known);
}

CatalogEntry catalog_entry(const std::string& name, int n,
                           const CatalogParams& params) {
  CatalogEntry e{name, n, builtin_metric(name, n, params)};
  if (name == "flat") {
    e.flat = true;
    e.conformally_flat = true;
    e.einstein = true;
    e.einstein_lambda = 0.0;
    e.ricci_flat = true;
    e.safe_points = {std::vector<double>(n, 0.0), spread_point(n, 1.0)};
  } else if (name == "round_sphere_stereographic") {
    e.conformally_flat = true;
    e.einstein = true;
    e.einstein_lambda = 1.0;
    e.safe_points = {std::vector<double>(n, 0.0), spread_point(n, 1.0)};
  } else if (name == "hyperbolic_ball") {
    e.conformally_flat = true;
    e.einstein = true;
    e.einstein_lambda = -1.0;
    // Stay well inside the unit ball.
    e.safe_points = {std::vector<double>(n, 0.0), spread_point(n, 0.6)};
  } else if (name == "conformally_flat") {
    e.conformally_flat = true;
    e.safe_points = {std::vector<double>(n, 0.0), spread_point(n, 1.0)};
  } else if (name == "schwarzschild_tangherlini") {
    e.ricci_flat = true;
    e.einstein = true;
    e.einstein_lambda = 0.0;
    e.weyl_nonzero = true;
    // tau free, r outside the horizon, angles away from the sin poles.
    for (double rr : {2.0, 3.0}) {
      std::vector<double> p(n, 0.0);
      p[1] = rr * params.r0;
      for (int a = 0; a < n - 2; ++a) p[2 + a] = 1.0 + 0.1 * a;
      e.safe_points.push_back(p);
    }
  } else if (name == "product_sphere_sphere") {
    e.einstein = true;
    // Each unit 2-sphere factor has Ric = g, so Ric = g = 1/3 * (n-1) g.
    e.einstein_lambda = 1.0 / 3.0;
    e.weyl_nonzero = true;
    e.safe_points = {std::vector<double>(4, 0.0), spread_point(4, 1.0)};
  }
  return e;
}

std::vector<CatalogEntry> catalog_default_entries() {
  return {
      catalog_entry("flat", 6),
      catalog_entry("round_sphere_stereographic", 4),
      catalog_entry("hyperbolic_ball", 5),
      catalog_entry("conformally_flat", 4),
      catalog_entry("schwarzschild_tangherlini", 5),
      catalog_entry("product_sphere_sphere", 4),
  };
}

}  // namespace cgl
