#ifndef ISODEFORM_H
#define ISODEFORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsodeformStatus {
  ISODEFORM_STATUS_OK = 0,
  /**
   * A suite ran and at least one check failed.
   */
  ISODEFORM_STATUS_CHECK_FAILED = 1,
  /**
   * Malformed or unsupported configuration.
   */
  ISODEFORM_STATUS_CONFIG_ERROR = 2,
  ISODEFORM_STATUS_NULL_POINTER = 3,
  ISODEFORM_STATUS_INVALID_UTF8 = 4,
  /**
   * An algebraic operation was rejected (rank or grading mismatch, ...).
   */
  ISODEFORM_STATUS_ALGEBRA_ERROR = 5,
  /**
   * A panic was caught at the boundary.
   */
  ISODEFORM_STATUS_INTERNAL = 6,
} IsodeformStatus;

/**
 * Result of a suite run.
 */
typedef struct IsodeformReport IsodeformReport;

/**
 * Exact cyclotomic scalar.
 */
typedef struct IsodeformScalar IsodeformScalar;

/**
 * Noncommutative torus `C(T^l_θ)`.
 */
typedef struct IsodeformTorus IsodeformTorus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The caller owns
 * the returned string.
 */
char *isodeform_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void isodeform_string_free(char *s);

/**
 * Runs a suite described by a JSON config such as
 * `{"suite": "hopf", "group": "u2", "theta": "1/3", "max_degree": 2}`.
 * On `Ok` or `CheckFailed` a report handle is written to `out`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `out` must be writable.
 */
enum IsodeformStatus isodeform_run_suite(const char *config_json, struct IsodeformReport **out);

/**
 * 1 if every check passed, 0 otherwise (also for a null handle).
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
int isodeform_report_passed(const struct IsodeformReport *report);

/**
 * Number of checks in the report.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
uintptr_t isodeform_report_num_checks(const struct IsodeformReport *report);

/**
 * Report as JSON. With `canonical` nonzero, wall times are omitted so the
 * text is identical across reruns.
 *
 * # Safety
 * `report` must be a live report handle; `out` must be writable.
 */
enum IsodeformStatus isodeform_report_json(const struct IsodeformReport *report,
                                           int canonical,
                                           char **out);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void isodeform_report_free(struct IsodeformReport *report);

/**
 * The rational `num/den`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IsodeformStatus isodeform_scalar_rational(int64_t num,
                                               int64_t den,
                                               struct IsodeformScalar **out);

/**
 * The root of unity `e^{2πi num/den}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IsodeformStatus isodeform_scalar_phase(int64_t num, int64_t den, struct IsodeformScalar **out);

/**
 * # Safety
 * `a`, `b` must be live scalar handles; `out` must be writable.
 */
enum IsodeformStatus isodeform_scalar_add(const struct IsodeformScalar *a,
                                          const struct IsodeformScalar *b,
                                          struct IsodeformScalar **out);

/**
 * # Safety
 * `a`, `b` must be live scalar handles; `out` must be writable.
 */
enum IsodeformStatus isodeform_scalar_mul(const struct IsodeformScalar *a,
                                          const struct IsodeformScalar *b,
                                          struct IsodeformScalar **out);

/**
 * # Safety
 * `a` must be a live scalar handle; `out` must be writable.
 */
enum IsodeformStatus isodeform_scalar_conj(const struct IsodeformScalar *a,
                                           struct IsodeformScalar **out);

/**
 * 1 if the scalars are equal as cyclotomic numbers, 0 otherwise.
 *
 * # Safety
 * `a`, `b` must be null or live scalar handles.
 */
int isodeform_scalar_equal(const struct IsodeformScalar *a, const struct IsodeformScalar *b);

/**
 * Floating-point value of the scalar.
 *
 * # Safety
 * `a` must be a live scalar handle; `re`, `im` must be writable.
 */
enum IsodeformStatus isodeform_scalar_to_complex(const struct IsodeformScalar *a,
                                                 double *re,
                                                 double *im);

/**
 * Exact text form of the scalar.
 *
 * # Safety
 * `a` must be a live scalar handle.
 */
char *isodeform_scalar_to_string(const struct IsodeformScalar *a);

/**
 * # Safety
 * `a` must be null or a handle not yet freed.
 */
void isodeform_scalar_free(struct IsodeformScalar *a);

/**
 * Torus of rank `l`; `theta` is a scalar `p/q` (the same value on every
 * pair) or a bracketed skew matrix.
 *
 * # Safety
 * `theta` must be a NUL-terminated string; `out` must be writable.
 */
enum IsodeformStatus isodeform_torus_new(const char *theta,
                                         uintptr_t l,
                                         struct IsodeformTorus **out);

/**
 * The phase `c` in `U_j × U_k = c · U_k × U_j` (0-based `j`, `k`).
 *
 * # Safety
 * `torus` must be a live torus handle; `out` must be writable.
 */
enum IsodeformStatus isodeform_torus_commutation(const struct IsodeformTorus *torus,
                                                 uintptr_t j,
                                                 uintptr_t k,
                                                 struct IsodeformScalar **out);

/**
 * The cocycle value `σ(r, s)` with `U^r × U^s = σ(r,s) U^{r+s}`; `r` and `s`
 * point to `l` integers each.
 *
 * # Safety
 * `torus` must be a live torus handle; `r`, `s` must point to `l` values;
 * `out` must be writable.
 */
enum IsodeformStatus isodeform_torus_sigma(const struct IsodeformTorus *torus,
                                           const int64_t *r,
                                           const int64_t *s,
                                           struct IsodeformScalar **out);

/**
 * # Safety
 * `t` must be null or a handle not yet freed.
 */
void isodeform_torus_free(struct IsodeformTorus *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISODEFORM_H */
