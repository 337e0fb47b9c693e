#include "cgl/cgl.h"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "conformal.hpp"
#include "curvature.hpp"
#include "expr.hpp"
#include "green_log.hpp"
#include "invariants.hpp"
#include "jet.hpp"
#include "metric.hpp"
#include "tensor.hpp"
#include "verify.hpp"

using nlohmann::ordered_json;

struct cgl_metric {
  cgl::MetricField field;
  std::string identity;
};

namespace {

thread_local std::string t_error;

char* dup_cstring(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// FNV-1a 64-bit content fingerprint (identity for non-builtin metrics; a
// stable report label, not a cryptographic digest).
std::string fingerprint(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

// Exception-to-status boundary shared by every API entry point.  Inputs are
// validated with std::invalid_argument (or the parser's parse_error), which
// mean malformed requests; order_error/domain_error mean the computation hit
// a numeric-domain wall (singular point, jets too shallow); anything else is
// an internal bug surfaced as such.
template <typename Fn>
cgl_status guarded(Fn&& fn) {
  t_error.clear();
  try {
    return fn();
  } catch (const cgl::parse_error& e) {
    t_error = e.what();
    return CGL_PARSE_ERROR;
  } catch (const cgl::order_error& e) {
    t_error = e.what();
    return CGL_DOMAIN_ERROR;
  } catch (const cgl::domain_error& e) {
    t_error = e.what();
    return CGL_DOMAIN_ERROR;
  } catch (const std::invalid_argument& e) {
    t_error = e.what();
    return CGL_PARSE_ERROR;
  } catch (const std::exception& e) {
    t_error = e.what();
    return CGL_INTERNAL_ERROR;
  } catch (...) {
    t_error = "unknown failure";
    return CGL_INTERNAL_ERROR;
  }
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<double> read_point(const cgl_metric* metric, const double* point, int point_len) {
  require(point != nullptr, "point must not be null");
  require(point_len == metric->field.dim(),
          "point has " + std::to_string(point_len) + " components, metric dimension is " +
              std::to_string(metric->field.dim()));
  return std::vector<double>(point, point + point_len);
}

bool is_ricci_flat(const cgl::CurvatureBundle& b) {
  const cgl::Tensor ric = b.Ric();
  double m = 0.0;
  for (double x : ric.data) m = std::max(m, std::fabs(x));
  return m < 1e-10;
}

ordered_json metric_block(const cgl_metric* metric) {
  ordered_json j;
  j["identity"] = metric->identity;
  j["dim"] = metric->field.dim();
  return j;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ordered_json quantity(const char* name, int weight, double value, bool partial,
                      const char* formula_path) {
  ordered_json q;
  q["name"] = name;
  q["weight"] = weight;
  q["value"] = value;
  q["partial"] = partial;
  q["formula_path"] = formula_path;
  return q;
}

constexpr const char* kRiemannian = "riemannian_curvature";
constexpr const char* kConformal = "conformal_decomposition";
constexpr const char* kHeat = "heat_expansion";

cgl_status emit(const ordered_json& report, char** out_json) {
  char* text = dup_cstring(report.dump(2));
  if (text == nullptr) {
    t_error = "out of memory";
    return CGL_INTERNAL_ERROR;
  }
  *out_json = text;
  return CGL_OK;
}

}  // namespace

extern "C" {

const char* cgl_version(void) { return CGL_VERSION_STRING; }

const char* cgl_last_error(void) { return t_error.c_str(); }

void cgl_string_free(char* s) { std::free(s); }

cgl_status cgl_metric_builtin(const char* name, int dim, double r0, const char* upsilon,
                              cgl_metric** out) {
  return guarded([&]() {
    require(name != nullptr, "builtin name must not be null");
    require(out != nullptr, "output handle must not be null");
    cgl::CatalogParams params;
    params.r0 = r0;
    if (upsilon != nullptr) params.upsilon = upsilon;
    cgl::MetricField field = cgl::builtin_metric(name, dim, params);
    *out = new cgl_metric{std::move(field), std::string("builtin:") + name};
    return CGL_OK;
  });
}

cgl_status cgl_metric_from_file(const char* path, cgl_metric** out) {
  return guarded([&]() {
    require(path != nullptr, "path must not be null");
    require(out != nullptr, "output handle must not be null");
    cgl::MetricField field = cgl::MetricField::from_file(path);
    const std::string base = [&] {
      const std::string p(path);
      const std::size_t slash = p.find_last_of('/');
      return slash == std::string::npos ? p : p.substr(slash + 1);
    }();
    const std::string canonical = field.to_text();
    *out = new cgl_metric{std::move(field),
                          "file:" + base + "@fnv1a:" + fingerprint(canonical)};
    return CGL_OK;
  });
}

cgl_status cgl_metric_from_text(const char* text, cgl_metric** out) {
  return guarded([&]() {
    require(text != nullptr, "text must not be null");
    require(out != nullptr, "output handle must not be null");
    cgl::MetricField field = cgl::MetricField::from_text(text);
    const std::string canonical = field.to_text();
    *out = new cgl_metric{std::move(field), "text@fnv1a:" + fingerprint(canonical)};
    return CGL_OK;
  });
}

cgl_status cgl_metric_to_text(const cgl_metric* metric, char** out_text) {
  return guarded([&]() {
    require(metric != nullptr, "metric handle must not be null");
    require(out_text != nullptr, "output must not be null");
    char* text = dup_cstring(metric->field.to_text());
    if (text == nullptr) {
      t_error = "out of memory";
      return CGL_INTERNAL_ERROR;
    }
    *out_text = text;
    return CGL_OK;
  });
}

int cgl_metric_dim(const cgl_metric* metric) { return metric == nullptr ? -1 : metric->field.dim(); }

const char* cgl_metric_identity(const cgl_metric* metric) {
  return metric == nullptr ? "" : metric->identity.c_str();
}

void cgl_metric_free(cgl_metric* metric) { delete metric; }

cgl_status cgl_invariants_json(const cgl_metric* metric, const double* point, int point_len,
                               const int* weights, int weights_len, int order, char** out_json) {
  return guarded([&]() {
    const auto start = std::chrono::steady_clock::now();
    require(metric != nullptr, "metric handle must not be null");
    require(out_json != nullptr, "output must not be null");
    const std::vector<double> p = read_point(metric, point, point_len);
    require(order >= 2, "jet order must be at least 2, got " + std::to_string(order));

    std::set<int> selected;
    if (weights == nullptr || weights_len == 0) {
      selected = {0, 2, 4, 6};
    } else {
      for (int i = 0; i < weights_len; ++i) {
        require(weights[i] == 0 || weights[i] == 2 || weights[i] == 4 || weights[i] == 6,
                "weights must be in {0, 2, 4, 6}, got " + std::to_string(weights[i]));
        selected.insert(weights[i]);
      }
    }
    const int max_weight = *selected.rbegin();
    const int needed_order = max_weight >= 4 ? 4 : 2;
    if (order < needed_order) {
      throw cgl::order_error("jet order " + std::to_string(order) + " is too low for weight-" +
                             std::to_string(max_weight) + " quantities (needs at least " +
                             std::to_string(needed_order) + ")");
    }

    const int n = metric->field.dim();
    cgl::CurvatureBundle b = cgl::curvature(cgl::build_frame(metric->field, p, order));
    const bool ricci_flat = is_ricci_flat(b);
    const bool conformal = n >= 3;
    std::optional<cgl::ConformalBundle> cb;
    if (conformal && selected.count(4) + selected.count(6) > 0) {
      cb = cgl::conformal_bundle(b);
    }

    ordered_json quantities = ordered_json::array();
    using cgl::InvariantName;
    auto riem = [&](const char* label, int w, InvariantName name) {
      quantities.push_back(quantity(label, w, cgl::eval_invariant(name, b), false, kRiemannian));
    };
    auto heat = [&](int j) {
      const cgl::HeatValue h = cgl::heat_invariant(j, b, ricci_flat);
      quantities.push_back(quantity(("a" + std::to_string(2 * j)).c_str(), 2 * j, h.value,
                                    h.partial, kHeat));
    };
    if (selected.count(0) != 0) heat(0);
    if (selected.count(2) != 0) {
      riem("kappa", 2, InvariantName::Kappa);
      heat(1);
    }
    if (selected.count(4) != 0) {
      riem("kappa_sq", 4, InvariantName::KappaSq);
      riem("ric_sq", 4, InvariantName::RicSq);
      riem("riem_sq", 4, InvariantName::RiemSq);
      riem("lap_kappa", 4, InvariantName::LapKappa);
      if (conformal) quantities.push_back(quantity("weyl_sq", 4, cb.weylSq, false, kConformal));
      heat(2);
    }
    if (selected.count(6) != 0) {
      riem("grad_riem_sq", 6, InvariantName::GradRiemSq);
      riem("cubic1", 6, InvariantName::Cubic1);
      riem("cubic2", 6, InvariantName::Cubic2);
      if (conformal) {
        quantities.push_back(quantity("cubic_w1", 6, cb.cubicW1, false, kConformal));
        quantities.push_back(quantity("cubic_w2", 6, cb.cubicW2, false, kConformal));
        quantities.push_back(quantity("cotton_sq", 6, cb.cottonSq, false, kConformal));
        quantities.push_back(quantity("phi", 6, cb.phi, false, kConformal));
      }
      heat(3);
    }

    ordered_json report;
    report["command"] = "invariants";
    report["tool_version"] = CGL_VERSION_STRING;
    report["metric"] = metric_block(metric);
    report["point"] = p;
    report["order"] = order;
    report["weights"] = std::vector<int>(selected.begin(), selected.end());
    report["ricci_flat"] = ricci_flat;
    report["quantities"] = quantities;
    report["timing_seconds"] = seconds_since(start);
    return emit(report, out_json);
  });
}

cgl_status cgl_gamma_json(const cgl_metric* metric, const double* point, int point_len, double k,
                          int order, char** out_json) {
  return guarded([&]() {
    const auto start = std::chrono::steady_clock::now();
    require(metric != nullptr, "metric handle must not be null");
    require(out_json != nullptr, "output must not be null");
    const std::vector<double> p = read_point(metric, point, point_len);
    require(order >= 2, "jet order must be at least 2, got " + std::to_string(order));

    const int n = metric->field.dim();
    // Admissibility (k > 0, half-integer, n/2 - k a nonnegative integer,
    // weight n - 2k <= 6) is enforced by the evaluation calls below; the
    // weight is recomputed here only to pick the jet order requirement.
    const double weight = n - 2.0 * k;

    cgl::CurvatureBundle b = cgl::curvature(cgl::build_frame(metric->field, p, order));
    const bool ricci_flat = is_ricci_flat(b);
    const int conformal_need = weight >= 6.0 ? 4 : 2;
    const int heat_need = weight >= 4.0 ? (weight >= 6.0 ? 3 : 4) : 2;
    const int needed_order = std::max(conformal_need, ricci_flat ? heat_need : 0);
    if (order < needed_order) {
      throw cgl::order_error("jet order " + std::to_string(order) +
                             " is too low for the weight-" + std::to_string(n - 2 * static_cast<int>(k)) +
                             " coefficient (needs at least " + std::to_string(needed_order) + ")");
    }

    ordered_json paths = ordered_json::array();
    auto render = [](const cgl::GammaResult& g) {
      ordered_json j;
      j["formula_path"] = cgl::formula_path_label(g.formula_path);
      j["value"] = g.value;
      j["partial"] = g.partial;
      j["expression"] = g.expression;
      return j;
    };

    const cgl::GammaResult conf = n >= 3
                                      ? cgl::gamma_gjms(k, cgl::conformal_bundle(b))
                                      : cgl::gamma_gjms(k, metric->field, p);
    paths.push_back(render(conf));
    double agreement_gap = 0.0;
    if (ricci_flat) {
      const cgl::GammaResult heat = cgl::gamma_power_laplacian(k, b);
      paths.push_back(render(heat));
      agreement_gap = std::fabs(conf.value - heat.value);
    }

    ordered_json report;
    report["command"] = "gamma";
    report["tool_version"] = CGL_VERSION_STRING;
    report["metric"] = metric_block(metric);
    report["point"] = p;
    report["order"] = order;
    report["k"] = k;
    report["weight"] = n - 2.0 * k;
    report["ricci_flat"] = ricci_flat;
    report["paths"] = paths;
    report["agreement_gap"] = agreement_gap;
    report["timing_seconds"] = seconds_since(start);
    return emit(report, out_json);
  });
}

cgl_status cgl_verify_json(const char* suite, char** out_json) {
  return guarded([&]() {
    require(suite != nullptr, "suite name must not be null");
    require(out_json != nullptr, "output must not be null");
    const cgl::VerifyReport result = cgl::run_verify_suite(suite);

    ordered_json checks = ordered_json::array();
    int failed = 0;
    for (const cgl::VerifyCheck& c : result.checks) {
      ordered_json j;
      j["name"] = c.name;
      j["pass"] = c.pass;
      j["observed"] = c.observed;
      j["tolerance"] = c.tolerance;
      j["detail"] = c.detail;
      checks.push_back(std::move(j));
      if (!c.pass) ++failed;
    }

    ordered_json report;
    report["command"] = "verify";
    report["tool_version"] = CGL_VERSION_STRING;
    report["suite"] = result.suite;
    report["checks"] = checks;
    report["total"] = result.checks.size();
    report["failed"] = failed;
    report["all_pass"] = result.all_pass;
    report["timing_seconds"] = result.elapsed_seconds;
    const cgl_status emitted = emit(report, out_json);
    if (emitted != CGL_OK) return emitted;
    return result.all_pass ? CGL_OK : CGL_VERIFY_FAILED;
  });
}

}  // extern "C"
