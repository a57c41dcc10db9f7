#ifndef DIVFROB_H
#define DIVFROB_H

/* Generated by cbindgen from the divfrob-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum DfStatus {
  /**
   * Success.
   */
  DF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DF_STATUS_NULL_ARGUMENT = 1,
  /**
   * The curve failed a validity hypothesis.
   */
  DF_STATUS_INVALID_CURVE = 2,
  /**
   * An internal identity failed; not caused by input.
   */
  DF_STATUS_INTERNAL = 3,
  /**
   * An index was outside the matrix dimensions.
   */
  DF_STATUS_OUT_OF_RANGE = 4,
} DfStatus;

/**
 * Opaque handle to a computed matrix. Create with [`df_matrix_compute`],
 * release with [`df_matrix_free`].
 */
typedef struct DfMatrix DfMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Computes the full `2g × 2g` divided-Frobenius matrix for the curve
 * `y^n = f(t)` over `F_p` and stores a handle in `out`.
 *
 * `f` points to `f_len` signed coefficients, ascending degree. A nonzero
 * `isotypic` groups rows and columns by isotypic class; zero keeps the
 * filtration order.
 *
 * # Safety
 *
 * `f` must be readable for `f_len` elements, and `out` must be a valid
 * pointer to a pointer. On [`DfStatus::Ok`] the caller owns the handle
 * and must release it with [`df_matrix_free`] exactly once.
 */
enum DfStatus df_matrix_compute(uint64_t p,
                                uint64_t n,
                                const int64_t *f,
                                size_t f_len,
                                int isotypic,
                                struct DfMatrix **out);

/**
 * Releases a handle. A null pointer is a no-op.
 *
 * # Safety
 *
 * `matrix` must be null or a handle from [`df_matrix_compute`] not yet
 * freed.
 */
void df_matrix_free(struct DfMatrix *matrix);

/**
 * The dimension `2g` of the matrix, or 0 for a null handle.
 *
 * # Safety
 *
 * `matrix` must be null or a live handle.
 */
size_t df_matrix_dim(const struct DfMatrix *matrix);

/**
 * The genus `g` of the curve, or 0 for a null handle.
 *
 * # Safety
 *
 * `matrix` must be null or a live handle.
 */
uint64_t df_matrix_genus(const struct DfMatrix *matrix);

/**
 * Reads the entry at `(row, col)`, reduced mod `p`, into `value`.
 *
 * # Safety
 *
 * `matrix` must be null or a live handle; `value` must be writable.
 */
enum DfStatus df_matrix_entry(const struct DfMatrix *matrix,
                              size_t row,
                              size_t col,
                              uint64_t *value);

/**
 * The NUL-terminated label of basis element `index` (for example
 * `"t^2*y^-2*dt"` or `"t^-3*y^2"`), or null when out of range. The
 * pointer stays valid until the handle is freed.
 *
 * # Safety
 *
 * `matrix` must be null or a live handle.
 */
const char *df_matrix_label(const struct DfMatrix *matrix, size_t index);

/**
 * A static description of a status code.
 */
const char *df_status_message(enum DfStatus status);

/**
 * The crate version as a static NUL-terminated string.
 */
const char *df_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DIVFROB_H */
