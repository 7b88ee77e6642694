#ifndef NEARMISS_H
#define NEARMISS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum NmStatus {
  NM_STATUS_OK = 0,
  NM_STATUS_NULL_POINTER = 1,
  NM_STATUS_INVALID_INPUT = 2,
  NM_STATUS_PARSE_ERROR = 3,
  NM_STATUS_DOMAIN_ERROR = 4,
  NM_STATUS_DISCRIMINANT_MISMATCH = 5,
  NM_STATUS_INTERNAL_ERROR = 6,
  NM_STATUS_OUT_OF_RANGE = 7,
  NM_STATUS_PANIC = 8,
} NmStatus;

typedef enum NmTripletField {
  NM_TRIPLET_FIELD_N = 0,
  NM_TRIPLET_FIELD_X = 1,
  NM_TRIPLET_FIELD_Y = 2,
  NM_TRIPLET_FIELD_Z = 3,
} NmTripletField;

/**
 * Encoding for the `*_render` functions; matches the CLI `--format`.
 */
typedef enum NmFormat {
  NM_FORMAT_TSV = 0,
  NM_FORMAT_JSONL = 1,
} NmFormat;

typedef enum NmHitField {
  NM_HIT_FIELD_X = 0,
  NM_HIT_FIELD_Y = 1,
  NM_HIT_FIELD_Z = 2,
  NM_HIT_FIELD_DELTA = 3,
} NmHitField;

/**
 * Search results sorted by `(y, x, z)`.
 */
typedef struct NmHits NmHits;

/**
 * Element of `Q(sqrt(D))`.
 */
typedef struct NmQuad NmQuad;

/**
 * Members `n = 0 .. len - 1` of the near-miss family.
 */
typedef struct NmTriplets NmTriplets;

/**
 * Scan parameters. `exact_residual` is used only when `has_exact_residual`
 * is set, and then `threshold` must be at least its magnitude.
 */
typedef struct NmSearchParams {
  uint64_t min_x;
  uint64_t max_x;
  uint64_t threshold;
  bool has_exact_residual;
  int64_t exact_residual;
  uint32_t workers;
} NmSearchParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string. Do not free.
 */
const char *nm_version(void);

/**
 * Message for the most recent failure on this thread, or `NULL`. The pointer
 * stays valid until the next failing call on the same thread. Do not free.
 */
const char *nm_last_error(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be `NULL` or a pointer obtained from this library that has not
 * been freed yet.
 */
void nm_string_free(char *s);

/**
 * Floor square root of a non-negative decimal integer.
 *
 * # Safety
 * `s` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum NmStatus nm_isqrt(const char *s, char **out);

/**
 * Parses `"p + q*sqrt(D)"`, e.g. `"11 + 265/577*sqrt(577)"`.
 *
 * # Safety
 * `s` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum NmStatus nm_quad_parse(const char *s, struct NmQuad **out);

/**
 * `p + q*sqrt(d)` from rational strings `"num"` or `"num/den"`.
 *
 * # Safety
 * `p`, `q` must be valid NUL-terminated strings and `out` a valid pointer.
 */
enum NmStatus nm_quad_new(const char *p, const char *q, uint32_t d, struct NmQuad **out);

/**
 * # Safety
 * `q` must be `NULL` or a handle from this library that has not been freed.
 */
void nm_quad_free(struct NmQuad *q);

/**
 * Canonical `"p + q*sqrt(D)"` text.
 *
 * # Safety
 * `q` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_quad_to_string(const struct NmQuad *q, char **out);

/**
 * # Safety
 * `q` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_quad_discriminant(const struct NmQuad *q, uint32_t *out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum NmStatus nm_quad_add(const struct NmQuad *a, const struct NmQuad *b, struct NmQuad **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum NmStatus nm_quad_sub(const struct NmQuad *a, const struct NmQuad *b, struct NmQuad **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum NmStatus nm_quad_mul(const struct NmQuad *a, const struct NmQuad *b, struct NmQuad **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum NmStatus nm_quad_div(const struct NmQuad *a, const struct NmQuad *b, struct NmQuad **out);

/**
 * `a^k`; negative `k` requires `a != 0`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_quad_pow(const struct NmQuad *a, int64_t k, struct NmQuad **out);

/**
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_quad_conj(const struct NmQuad *a, struct NmQuad **out);

/**
 * Norm `p^2 - D q^2` as a rational string.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_quad_norm(const struct NmQuad *a, char **out);

/**
 * Generates members `n = 0 .. count - 1` by recurrence. `count` must be >= 1.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NmStatus nm_triplets_generate(uint64_t count, struct NmTriplets **out);

/**
 * Number of triplets in the handle, 0 for `NULL`.
 *
 * # Safety
 * `t` must be `NULL` or a live handle.
 */
size_t nm_triplets_len(const struct NmTriplets *t);

/**
 * One field of triplet `index` as a decimal string.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_triplets_get(const struct NmTriplets *t,
                              size_t index,
                              enum NmTripletField field,
                              char **out);

/**
 * All triplets encoded exactly as `nearmiss gen` prints them.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_triplets_render(const struct NmTriplets *t, enum NmFormat format, char **out);

/**
 * # Safety
 * `t` must be `NULL` or a handle from this library that has not been freed.
 */
void nm_triplets_free(struct NmTriplets *t);

/**
 * `x^4 + y^4 - 8 - z^2` for decimal inputs.
 *
 * # Safety
 * `x`, `y`, `z` must be valid NUL-terminated strings and `out` a valid pointer.
 */
enum NmStatus nm_residual(const char *x, const char *y, const char *z, char **out);

/**
 * `x_n`, `y_n`, `z_n` from the exact closed forms. Each out-pointer receives
 * a string to free with [`nm_string_free`].
 *
 * # Safety
 * `x`, `y`, `z` must be valid pointers.
 */
enum NmStatus nm_closed_form(uint64_t n, char **x, char **y, char **z);

/**
 * Checks the residual and the closed forms for `n < count`. `first_failure`
 * (may be `NULL`) receives the first failing index, or `count` if none.
 *
 * # Safety
 * `all_passed` must be a valid pointer; `first_failure` may be `NULL`.
 */
enum NmStatus nm_verify(uint64_t count, bool *all_passed, uint64_t *first_failure);

/**
 * The full identity report (same JSON as `nearmiss identities`).
 *
 * # Safety
 * `json` and `all_passed` must be valid pointers.
 */
enum NmStatus nm_identities_report(char **json, bool *all_passed);

/**
 * Runs the exhaustive scan.
 *
 * # Safety
 * `params` and `out` must be valid pointers.
 */
enum NmStatus nm_search_run(const struct NmSearchParams *params, struct NmHits **out);

/**
 * # Safety
 * `h` must be `NULL` or a live handle.
 */
size_t nm_hits_len(const struct NmHits *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_hits_get(const struct NmHits *h, size_t index, enum NmHitField field, char **out);

/**
 * All hits encoded exactly as `nearmiss search` prints them.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum NmStatus nm_hits_render(const struct NmHits *h, enum NmFormat format, char **out);

/**
 * # Safety
 * `h` must be `NULL` or a handle from this library that has not been freed.
 */
void nm_hits_free(struct NmHits *h);

/**
 * Recomputes `x^4 + y^4 - z^2` and compares it with `delta`.
 *
 * # Safety
 * The four strings must be valid and NUL-terminated; `out` a valid pointer.
 */
enum NmStatus nm_verify_hit(const char *x,
                            const char *y,
                            const char *z,
                            const char *delta,
                            bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEARMISS_H */
