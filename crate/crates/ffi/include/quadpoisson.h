#ifndef QUADPOISSON_H
#define QUADPOISSON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_INVALID_ARGUMENT = 2,
  QP_STATUS_PARSE_ERROR = 3,
  QP_STATUS_NOT_POISSON = 4,
  QP_STATUS_NOT_ADMISSIBLE = 5,
  QP_STATUS_THEOREM_UNAVAILABLE = 6,
  QP_STATUS_UNSUPPORTED = 7,
  QP_STATUS_VERIFICATION_FAILED = 8,
  QP_STATUS_INTERNAL = 9,
} QpStatus;

typedef enum QpComplex {
  QP_COMPLEX_R = 0,
  QP_COMPLEX_P = 1,
  QP_COMPLEX_S = 2,
} QpComplex;

typedef enum QpMode {
  QP_MODE_COMPUTE = 0,
  QP_MODE_VERIFY = 1,
  QP_MODE_LES_CHECK = 2,
  QP_MODE_STABILIZER = 3,
  QP_MODE_YANG_BAXTER = 4,
} QpMode;

typedef enum QpFormat {
  QP_FORMAT_JSON = 0,
  QP_FORMAT_MARKDOWN = 1,
  QP_FORMAT_CSV = 2,
} QpFormat;

/**
 * Opaque structure handle.
 */
typedef struct QpStructure QpStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates structure 2 from exact rationals such as `"3/2"`.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
 */
enum QpStatus qp_structure_dh2(const char *a, const char *b, struct QpStructure **out);

/**
 * Creates structure 7 from exact rationals.
 *
 * # Safety
 * `a`, `b`, `c` must be NUL-terminated strings and `out` a valid pointer.
 */
enum QpStatus qp_structure_dh7(const char *a,
                               const char *b,
                               const char *c,
                               struct QpStructure **out);

/**
 * Creates a custom structure from a bivector in the multivector grammar,
 * e.g. `"(x1*x3)*d23 + (x1^2 + x2^2)*d12"`.
 *
 * # Safety
 * `tensor` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QpStatus qp_structure_custom(const char *tensor, struct QpStructure **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` must come from a `qp_structure_*` constructor and not be used again.
 */
void qp_structure_free(struct QpStructure *s);

/**
 * Dimension of the cohomology slice of degree `d` and bigrade `(k, r)`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum QpStatus qp_slice_dim(const struct QpStructure *s,
                           enum QpComplex complex,
                           uint32_t d,
                           uint32_t k,
                           uint32_t r,
                           size_t *out);

/**
 * Closed-form dimension of the R-slice, for the preset families.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum QpStatus qp_expected_dim(const struct QpStructure *s,
                              uint32_t d,
                              uint32_t k,
                              uint32_t r,
                              size_t *out);

/**
 * Runs a full report over `k <= r <= rmax` and returns it rendered in
 * `format`. The string must be released with `qp_string_free`. A report
 * with failed checks is still returned, together with
 * `QpStatus::VerificationFailed`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum QpStatus qp_report(const struct QpStructure *s,
                        enum QpMode mode,
                        uint32_t rmax,
                        enum QpFormat format,
                        char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used again.
 */
void qp_string_free(char *p);

/**
 * Message of the most recent failure on this thread, or an empty string.
 * Valid until the next call into the library from the same thread.
 */
const char *qp_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADPOISSON_H */
