#ifndef QUOTSERIES_H
#define QUOTSERIES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_NULL_POINTER = 1,
  QS_STATUS_INVALID_ARGUMENT = 2,
  QS_STATUS_BEYOND_PRECISION = 3,
  QS_STATUS_UNSUPPORTED = 4,
  QS_STATUS_OUT_OF_RANGE = 5,
  QS_STATUS_COMPUTATION_FAILED = 6,
  QS_STATUS_PANIC = 7,
} QsStatus;

/**
 * Opaque truncated power series with rational coefficients.
 */
typedef struct QsSeries QsSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *qs_last_error(void);

/**
 * The series `U_N` through `q^order`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum QsStatus qs_u_series(uint32_t n, uint32_t order, struct QsSeries **out);

/**
 * Virtual Euler characteristics of zero-dimensional Quot schemes of a
 * surface with the given `K^2`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum QsStatus qs_euler_dim0(uint32_t n, int64_t ksq, uint32_t order, struct QsSeries **out);

/**
 * Series for a minimal surface of general type with a canonical curve of
 * genus `g`, quotients of rank `n - l`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum QsStatus qs_general_type(uint32_t n,
                              uint32_t l,
                              int64_t g,
                              int64_t chi,
                              uint32_t order,
                              struct QsSeries **out);

/**
 * Generating series on a curve of genus `genus` for classes with the given
 * ranks, degrees and integer twists.
 *
 * # Safety
 * `ranks`, `degrees` and `twists` must each point to `len` readable values
 * (they may be NULL when `len` is zero); `out` must be valid for a pointer write.
 */
enum QsStatus qs_curve(int64_t genus,
                       uint32_t n,
                       const int64_t *ranks,
                       const int64_t *degrees,
                       const int64_t *twists,
                       size_t len,
                       uint32_t order,
                       struct QsSeries **out);

/**
 * Localization oracle for Segre series on Quot schemes of `P^1`, using the
 * standard weights.
 *
 * # Safety
 * `degrees` must point to `len` readable values; `out` must be valid for a
 * pointer write.
 */
enum QsStatus qs_oracle_segre(uint32_t n,
                              const int64_t *degrees,
                              size_t len,
                              uint32_t order,
                              struct QsSeries **out);

/**
 * The Kawai-Yoshioka number `N_{g,n}` as a decimal string.
 *
 * # Safety
 * `out` must be valid for a pointer write; free the result with `qs_string_free`.
 */
enum QsStatus qs_ky_number(int64_t g, int64_t n, char **out);

/**
 * # Safety
 * `s` must be a live handle.
 */
int64_t qs_series_valuation(const struct QsSeries *s);

/**
 * Exclusive precision: coefficients below this exponent are known.
 *
 * # Safety
 * `s` must be a live handle.
 */
int64_t qs_series_precision(const struct QsSeries *s);

/**
 * Coefficient of `q^k` as a reduced fraction string such as `-3/4`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for a pointer write.
 */
enum QsStatus qs_series_coeff(const struct QsSeries *s, int64_t k, char **out);

/**
 * Human readable form, e.g. `1 + 2*q^2 + O(q^4)`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for a pointer write.
 */
enum QsStatus qs_series_render(const struct QsSeries *s, char **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed; NULL is ignored.
 */
void qs_series_free(struct QsSeries *s);

/**
 * # Safety
 * `s` must come from this library and not have been freed; NULL is ignored.
 */
void qs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUOTSERIES_H */
