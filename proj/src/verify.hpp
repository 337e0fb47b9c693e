#pragma once

#include <string>
#include <vector>

namespace cgl {

// One named check inside a verification suite.  The verdict is always
// pass == (observed <= tolerance): `observed` is a residual (or a 0/1
// indicator for exact structural checks) and `tolerance` the threshold it
// was held to.  `detail` is a one-line human-readable account of what was
// measured and where.
struct VerifyCheck {
  std::string name;  // stable snake_case identifier, unique within the suite
  bool pass = false;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Result of one suite run.  Checks appear in a fixed, deterministic order:
// the same suite name always yields the same sequence of check names.
struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool all_pass = false;
  double elapsed_seconds = 0.0;
};

// The available suite names, in canonical order:
//   symmetries            - tensor symmetry residuals (Riemann antisymmetry,
//                           pair interchange, first Bianchi, Ricci symmetry,
//                           Weyl trace-freeness) across the builtin corpus
//   weights               - homogeneity under constant rescaling for every
//                           curvature invariant, and conformal weight laws
//                           for the Weyl-built scalars
//   conformal-covariance  - two-sided Yamabe/Paneitz covariance residuals
//   fg-rule               - the Poincare-metric rewrite: symbolic identities
//                           for the conformal heat coefficients plus numeric
//                           agreement on a Ricci-flat metric
//   ricci-flat-consistency- the two formula paths for the logarithmic
//                           coefficient agree on Ricci-flat metrics
//   ambient               - ambient-Laplacian powers reproduce the conformal
//                           operators, with t- and extension-independence
//   spectral              - sphere zeta residues match the geometric side
const std::vector<std::string>& verify_suite_names();

// Runs one named suite.  Throws std::invalid_argument for an unknown name.
// An unexpected exception inside a suite body is converted into a failing
// check (name "<suite>_execution") rather than propagating, so a verify run
// always produces a report.
VerifyReport run_verify_suite(const std::string& suite);

// Runs every suite in canonical order.
std::vector<VerifyReport> run_all_verify_suites();

}  // namespace cgl
