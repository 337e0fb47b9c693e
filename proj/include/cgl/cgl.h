/* cgl - conformal geometry laboratory: public C API.
 *
 * Every function is safe to call from any thread; error text is kept in
 * thread-local storage.  All pointers returned through `char**` outputs are
 * heap-allocated and must be released with cgl_string_free().  Opaque
 * cgl_metric handles must be released with cgl_metric_free().
 *
 * Status discipline: functions return CGL_OK (0) on success.  On failure
 * they return a nonzero cgl_status, leave every output untouched, and store
 * a human-readable message retrievable via cgl_last_error().  The one
 * deliberate exception: cgl_verify_json() fills its JSON output both when
 * the suite passes (CGL_OK) and when checks fail (CGL_VERIFY_FAILED), so
 * the caller can render the failing report.
 */
#ifndef CGL_H
#define CGL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CGL_BUILDING_SHARED) && defined(__GNUC__)
#define CGL_API __attribute__((visibility("default")))
#else
#define CGL_API
#endif

#define CGL_VERSION_STRING "0.1.0"

typedef enum cgl_status {
  CGL_OK = 0,             /* success */
  CGL_VERIFY_FAILED = 1,  /* a verification suite ran and at least one check failed */
  CGL_PARSE_ERROR = 2,    /* malformed input or invalid argument combination */
  CGL_DOMAIN_ERROR = 3,   /* numeric domain: singular point, insufficient jet order */
  CGL_INTERNAL_ERROR = 4  /* unexpected failure; report a bug */
} cgl_status;

/* Opaque handle to a metric field: dimension, coordinate names, symbolic
 * component expressions, parameter values, and a stable identity string. */
typedef struct cgl_metric cgl_metric;

/* Version string of the library, e.g. "0.1.0".  Static storage; do not free. */
CGL_API const char* cgl_version(void);

/* Message for the most recent failure on this thread ("" when the last call
 * succeeded).  Static thread-local storage; do not free. */
CGL_API const char* cgl_last_error(void);

/* Releases a string returned through a char** output.  NULL is a no-op. */
CGL_API void cgl_string_free(char* s);

/* Builds one of the built-in metric families at the given dimension.
 * Names: flat, round_sphere_stereographic, hyperbolic_ball,
 * conformally_flat, schwarzschild_tangherlini, product_sphere_sphere.
 * `r0` is the horizon-scale parameter of the Tangherlini family (pass 1.0
 * for the default; ignored elsewhere).  `upsilon` is the conformal-factor
 * expression of the conformally_flat family (pass NULL for the default;
 * ignored elsewhere). */
CGL_API cgl_status cgl_metric_builtin(const char* name, int dim, double r0,
                                      const char* upsilon, cgl_metric** out);

/* Reads a metric definition file (the plain-text format of
 * cgl_metric_to_text). */
CGL_API cgl_status cgl_metric_from_file(const char* path, cgl_metric** out);

/* Parses a metric definition from memory. */
CGL_API cgl_status cgl_metric_from_text(const char* text, cgl_metric** out);

/* Renders the metric in the definition-file format (round-trip stable). */
CGL_API cgl_status cgl_metric_to_text(const cgl_metric* metric, char** out_text);

/* Dimension of the metric, or -1 for NULL. */
CGL_API int cgl_metric_dim(const cgl_metric* metric);

/* Identity string used in reports: "builtin:<name>" for built-ins, or a
 * content fingerprint for files/text.  Lives as long as the handle. */
CGL_API const char* cgl_metric_identity(const cgl_metric* metric);

CGL_API void cgl_metric_free(cgl_metric* metric);

/* Scalar invariant report at one point, as a JSON document (see
 * docs/report-schema.md).  `point` must carry exactly the metric's
 * dimension.  `weights` selects which invariant weights to include, each in
 * {0, 2, 4, 6}; pass NULL/0 for all four.  `order` is the jet truncation
 * order used for every evaluation (6 is the conventional default; too low
 * an order for the requested weights fails with CGL_DOMAIN_ERROR). */
CGL_API cgl_status cgl_invariants_json(const cgl_metric* metric, const double* point,
                                       int point_len, const int* weights, int weights_len,
                                       int order, char** out_json);

/* Logarithmic-singularity coefficient report for the order-2k operator at
 * one point, as a JSON document.  `k` is a positive (half-)integer with
 * n/2 - k a nonnegative integer and n - 2k <= 6.  The report always renders
 * the conformal formula path; on a metric that is Ricci-flat at the point
 * it renders the Riemannian heat path alongside, with their agreement gap. */
CGL_API cgl_status cgl_gamma_json(const cgl_metric* metric, const double* point, int point_len,
                                  double k, int order, char** out_json);

/* Runs one verification suite and renders its report as a JSON document.
 * Suites: symmetries, weights, conformal-covariance, fg-rule,
 * ricci-flat-consistency, ambient, spectral.  Returns CGL_OK when every
 * check passes, CGL_VERIFY_FAILED when the suite ran but a check failed
 * (JSON is filled either way), CGL_PARSE_ERROR for an unknown suite name. */
CGL_API cgl_status cgl_verify_json(const char* suite, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* CGL_H */
