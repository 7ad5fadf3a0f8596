#ifndef THETAZETA_H
#define THETAZETA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Partial derivative in the lattice parameter.
 */
typedef enum TzDerivative {
  TZ_DERIVATIVE_VALUE = 0,
  TZ_DERIVATIVE_X = 1,
  TZ_DERIVATIVE_Y = 2,
  TZ_DERIVATIVE_XY = 3,
  TZ_DERIVATIVE_XYY = 4,
} TzDerivative;

typedef enum TzFunctional {
  TZ_FUNCTIONAL_THETA = 0,
  TZ_FUNCTIONAL_ZETA = 1,
} TzFunctional;

/**
 * Result code of every fallible call.
 */
typedef enum TzStatus {
  TZ_STATUS_OK = 0,
  TZ_STATUS_INVALID_DOMAIN = 1,
  TZ_STATUS_TOLERANCE_NOT_MET = 2,
  TZ_STATUS_DEGENERATE_DENOMINATOR = 3,
  TZ_STATUS_QUADRATURE_NOT_CONVERGED = 4,
  TZ_STATUS_NOT_CONVERGED = 5,
  TZ_STATUS_NON_TERMINATION = 6,
  TZ_STATUS_VIOLATION = 7,
  TZ_STATUS_NULL_POINTER = 8,
  TZ_STATUS_INVALID_ARGUMENT = 9,
  TZ_STATUS_PANIC = 10,
} TzStatus;

typedef enum TzTarget {
  TZ_TARGET_THETA_X = 0,
  TZ_TARGET_THETA_Y = 1,
  TZ_TARGET_THETA_XY = 2,
  TZ_TARGET_THETA_XYY = 3,
  TZ_TARGET_ZETA_X = 4,
  TZ_TARGET_ZETA_Y = 5,
  TZ_TARGET_ZETA_XY = 6,
  TZ_TARGET_ZETA_XYY = 7,
} TzTarget;

/**
 * Partial derivative of the 1-d theta function in (width, phase).
 */
typedef enum TzTheta1dKind {
  TZ_THETA1D_KIND_VALUE = 0,
  TZ_THETA1D_KIND_DX = 1,
  TZ_THETA1D_KIND_DY = 2,
  TZ_THETA1D_KIND_DXY = 3,
  TZ_THETA1D_KIND_DXXY = 4,
} TzTheta1dKind;

/**
 * Certificates produced by [`tz_certify`].
 */
typedef struct TzCertificates TzCertificates;

/**
 * Truncation settings plus the last error message.
 */
typedef struct TzContext TzContext;

/**
 * A value with a bound on its absolute error.
 */
typedef struct TzValue {
  double value;
  double err;
} TzValue;

typedef struct TzReduction {
  double x;
  double y;
  /**
   * Number of generators applied, translations counted one by one.
   */
  size_t word_length;
} TzReduction;

typedef struct TzMinimum {
  double x;
  double y;
  double value;
  size_t evaluations;
} TzMinimum;

/**
 * Summary of one sign certificate.
 */
typedef struct TzCertificate {
  enum TzTarget target;
  /**
   * `alpha` for theta targets, `s` for zeta targets.
   */
  double param;
  /**
   * +1 or -1.
   */
  int32_t claimed_sign;
  bool passed;
  double worst_margin;
  double err_at_worst;
  double worst_x;
  double worst_y;
  size_t samples;
  size_t skipped;
} TzCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *tz_version(void);

/**
 * Creates a context with absolute tolerance `abs_tol` and term cap
 * `max_terms`. Pass 0 for either to take the library default.
 *
 * # Safety
 * `out` must be a valid pointer. The context is released with
 * [`tz_context_free`].
 */
enum TzStatus tz_context_new(double abs_tol, size_t max_terms, struct TzContext **out);

/**
 * # Safety
 * `ctx` must come from [`tz_context_new`] and not be used afterwards. Null is ignored.
 */
void tz_context_free(struct TzContext *ctx);

/**
 * Message of the last failed call on `ctx`, or an empty string.
 *
 * # Safety
 * `ctx` must be null or a live context.
 */
const char *tz_last_error(const struct TzContext *ctx);

/**
 * Lattice theta function `θ(α; z)` or one of its partials, `z = x + iy`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TzStatus tz_theta(struct TzContext *ctx,
                       double alpha,
                       double x,
                       double y,
                       enum TzDerivative d,
                       struct TzValue *out);

/**
 * Epstein zeta function `ζ(s; z)` or one of its partials, `s > 1`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TzStatus tz_zeta(struct TzContext *ctx,
                      double s,
                      double x,
                      double y,
                      enum TzDerivative d,
                      struct TzValue *out);

/**
 * `ζ(s; z)` by direct lattice summation. Slow; meant for cross-checks.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TzStatus tz_zeta_direct(struct TzContext *ctx,
                             double s,
                             double x,
                             double y,
                             struct TzValue *out);

/**
 * 1-d Jacobi theta function at width `width > 0` and phase `phase`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TzStatus tz_theta1d(struct TzContext *ctx,
                         double width,
                         double phase,
                         enum TzTheta1dKind kind,
                         struct TzValue *out);

/**
 * Maps `x + iy` into the closed fundamental domain.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TzStatus tz_reduce(struct TzContext *ctx, double x, double y, struct TzReduction *out);

/**
 * Minimizes `θ(param; ·)` or `ζ(param; ·)` over the fundamental domain,
 * starting from the reduction of `x0 + i y0`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum TzStatus tz_minimize(struct TzContext *ctx,
                          enum TzFunctional functional,
                          double param,
                          double x0,
                          double y0,
                          struct TzMinimum *out);

/**
 * Certifies a sign claim on an `n x n` grid: `claim` is one of `prop1`,
 * `prop2`, `prop3`, `prop4`, `thm1-1`, `thm1-2`. Theta cases run over
 * `alphas`, zeta cases over `ss`; either list may be empty.
 *
 * A claim that fails on the grid still returns `TZ_STATUS_OK`; inspect the
 * certificates.
 *
 * # Safety
 * `ctx` must be a live context, `claim` a NUL-terminated string, the arrays
 * valid for their lengths (or null with length 0) and `out` a valid pointer.
 * The handle is released with [`tz_certificates_free`].
 */
enum TzStatus tz_certify(struct TzContext *ctx,
                         const char *claim,
                         const double *alphas,
                         size_t n_alphas,
                         const double *ss,
                         size_t n_ss,
                         size_t grid,
                         double y_cap,
                         struct TzCertificates **out);

/**
 * # Safety
 * `h` must come from [`tz_certify`] and not be used afterwards. Null is ignored.
 */
void tz_certificates_free(struct TzCertificates *h);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
size_t tz_certificates_len(const struct TzCertificates *h);

/**
 * True when every certificate passed. False for null or empty handles.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
bool tz_certificates_passed(const struct TzCertificates *h);

/**
 * Copies certificate `i` into `out`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum TzStatus tz_certificates_get(const struct TzCertificates *h,
                                  size_t i,
                                  struct TzCertificate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETAZETA_H */
