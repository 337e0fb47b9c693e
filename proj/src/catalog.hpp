#pragma once

#include <string>
#include <vector>

#include "metric.hpp"

namespace cgl {

// Optional knobs for the built-in families.
struct CatalogParams {
  // Horizon radius of the Schwarzschild-Tangherlini family (stored as the
  // metric parameter r0).
  double r0 = 1.0;
  // Conformal exponent expression over the coordinates x1..xn for the
  // conformally_flat family; a curved default is used when empty.
  std::string upsilon;
};

// A built-in metric together with the properties it claims and points that
// avoid its chart singularities.  The flags are claims checked by the test
// suite at every safe point, not trusted data.
struct CatalogEntry {
  std::string name;
  int dim = 0;
  MetricField metric;
  bool flat = false;
  bool conformally_flat = false;
  bool einstein = false;
  // Ric = einstein_lambda * (n-1) * g when `einstein` is set (round unit
  // sphere: +1; unit-curvature hyperbolic ball: -1; Ricci-flat: 0).
  double einstein_lambda = 0.0;
  bool ricci_flat = false;
  bool weyl_nonzero = false;
  std::vector<std::vector<double>> safe_points;
};

// Names accepted by builtin()/catalog_entry():
//   flat, round_sphere_stereographic, hyperbolic_ball, conformally_flat,
//   schwarzschild_tangherlini, product_sphere_sphere.
std::vector<std::string> catalog_names();

// The metric of the named family in dimension n.  Components:
//   flat                      delta_ij                          (n >= 1)
//   round_sphere_stereographic  4/(1+|x|^2)^2 delta_ij          (n >= 2)
//   hyperbolic_ball           4/(1-|x|^2)^2 delta_ij            (n >= 2)
//   conformally_flat          e^{2 Upsilon} delta_ij            (n >= 2)
//   schwarzschild_tangherlini f dtau^2 + f^{-1} dr^2 + r^2 dOmega^2,
//                             f = 1 - (r0/r)^{n-3}              (n >= 4)
//   product_sphere_sphere     two stereographic unit 2-spheres  (n = 4)
// Throws std::invalid_argument for an unknown name or a dimension the
// family does not admit.
MetricField builtin_metric(const std::string& name, int n,
                           const CatalogParams& params = {});

// builtin_metric plus the property claims and safe evaluation points.
CatalogEntry catalog_entry(const std::string& name, int n,
                           const CatalogParams& params = {});

// One entry per family at a representative dimension; the standing corpus
// the verification suites sweep.
std::vector<CatalogEntry> catalog_default_entries();

}  // namespace cgl
