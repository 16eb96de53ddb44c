#ifndef BMW2K_H
#define BMW2K_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  BMW2K_STATUS_OK = 0,
  BMW2K_STATUS_NULL_POINTER = 1,
  BMW2K_STATUS_INVALID_UTF8 = 2,
  BMW2K_STATUS_INVALID_PARAMS = 3,
  BMW2K_STATUS_INVALID_WORD = 4,
  BMW2K_STATUS_ALGEBRA_ERROR = 5,
  BMW2K_STATUS_PANIC = 6,
} Bmw2kStatus;

typedef enum {
  BMW2K_SIGN_PLUS = 0,
  BMW2K_SIGN_MINUS = 1,
} Bmw2kSign;

/**
 * Opaque algebra with its cached multiplication tables.
 */
typedef struct Bmw2kAlgebra Bmw2kAlgebra;

/**
 * Opaque parameter set.
 */
typedef struct Bmw2kParams Bmw2kParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next call into this library.
 */
const char *bmw2k_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void bmw2k_string_free(char *s);

/**
 * Parses a parameter file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
Bmw2kStatus bmw2k_params_from_json(const char *json, Bmw2kParams **out);

/**
 * Generic admissible parameters over a rational function field.
 *
 * # Safety
 * `out` must be writable.
 */
Bmw2kStatus bmw2k_params_generic(size_t k, Bmw2kSign sign, Bmw2kParams **out);

/**
 * Seeded admissible parameters over `F_p`.
 *
 * # Safety
 * `out` must be writable.
 */
Bmw2kStatus bmw2k_params_finite_field(size_t k, uint64_t p, uint64_t seed, Bmw2kParams **out);

/**
 * # Safety
 * `params` must come from this library and not have been freed. Null is ignored.
 */
void bmw2k_params_free(Bmw2kParams *params);

/**
 * `k` of a parameter set, or 0 for a null handle.
 *
 * # Safety
 * `params` must be null or a live handle.
 */
size_t bmw2k_params_k(const Bmw2kParams *params);

/**
 * Serializes a parameter set in the parameter file format.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable.
 */
Bmw2kStatus bmw2k_params_to_json(const Bmw2kParams *params, char **out);

/**
 * Writes the admissibility report as JSON and, if `admissible` is non-null,
 * the verdict.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable; `admissible` may be null.
 */
Bmw2kStatus bmw2k_admissibility(const Bmw2kParams *params, bool *admissible, char **out);

/**
 * Builds the algebra for a parameter set. The parameter handle may be freed
 * afterwards.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable.
 */
Bmw2kStatus bmw2k_algebra_new(const Bmw2kParams *params, Bmw2kAlgebra **out);

/**
 * # Safety
 * `algebra` must come from this library and not have been freed. Null is ignored.
 */
void bmw2k_algebra_free(Bmw2kAlgebra *algebra);

/**
 * Rank `3k²` of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a live handle.
 */
size_t bmw2k_algebra_dim(const Bmw2kAlgebra *algebra);

/**
 * Basis expansion of a word, as a JSON object from basis labels to
 * coefficients.
 *
 * # Safety
 * `algebra` must be a live handle; `word` a NUL-terminated string; `out` writable.
 */
Bmw2kStatus bmw2k_reduce_word(const Bmw2kAlgebra *algebra, const char *word, char **out);

/**
 * Product of the reductions of `count` words, left to right.
 *
 * # Safety
 * `algebra` must be a live handle; `words` must point to `count`
 * NUL-terminated strings; `out` must be writable.
 */
Bmw2kStatus bmw2k_multiply_words(const Bmw2kAlgebra *algebra,
                                 const char *const *words,
                                 size_t count,
                                 char **out);

/**
 * Runs every module and basis check. `passed` receives the verdict; `out`,
 * if non-null, receives the full report.
 *
 * # Safety
 * `algebra` must be a live handle; `passed` writable; `out` null or writable.
 */
Bmw2kStatus bmw2k_verify(const Bmw2kAlgebra *algebra, bool *passed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BMW2K_H */
