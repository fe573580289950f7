#ifndef GENSET_H
#define GENSET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GensetStatus {
  GENSET_STATUS_OK = 0,
  GENSET_STATUS_NULL_POINTER = 1,
  GENSET_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input document or argument.
   */
  GENSET_STATUS_PARSE_ERROR = 3,
  /**
   * Well-formed input that the operation rejects.
   */
  GENSET_STATUS_INPUT_ERROR = 4,
  /**
   * The criterion does not apply and fallback was disallowed.
   */
  GENSET_STATUS_FALLBACK_FORBIDDEN = 5,
  GENSET_STATUS_PANIC = 6,
} GensetStatus;

/**
 * Opaque certification result.
 */
typedef struct GensetVerdict GensetVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer is valid until the next library call on this thread.
 */
const char *genset_last_error(void);

/**
 * Certifies the elements of an input document against its declared group.
 * `charset` may be null for `auto`.
 *
 * # Safety
 * `text` and a non-null `charset` must be NUL-terminated strings; `out`
 * must be a valid pointer.
 */
enum GensetStatus genset_certify_text(const char *text,
                                      bool symmetrize,
                                      const char *charset,
                                      bool allow_fallback,
                                      struct GensetVerdict **out);

/**
 * 1 if the set generates, 0 if not, -1 for a null handle.
 *
 * # Safety
 * `v` must be null or a handle from `genset_certify_text`.
 */
int32_t genset_verdict_generates(const struct GensetVerdict *v);

/**
 * 1 if decided by the character criterion, 0 if by the oracle fallback,
 * -1 for a null handle.
 *
 * # Safety
 * `v` must be null or a handle from `genset_certify_text`.
 */
int32_t genset_verdict_used_criterion(const struct GensetVerdict *v);

/**
 * Number of checks in the verdict, 0 for a null handle.
 *
 * # Safety
 * `v` must be null or a handle from `genset_certify_text`.
 */
size_t genset_verdict_check_count(const struct GensetVerdict *v);

/**
 * The verdict as JSON, or its text report when `json` is false. Null for a
 * null handle.
 *
 * # Safety
 * `v` must be null or a handle from `genset_certify_text`.
 */
char *genset_verdict_report(const struct GensetVerdict *v, bool json);

/**
 * # Safety
 * `v` must be null or a handle from `genset_certify_text` not yet freed.
 */
void genset_verdict_free(struct GensetVerdict *v);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void genset_string_free(char *s);

/**
 * Kostka number `K_{mu lambda}` for partitions written like `3,1,1`.
 *
 * # Safety
 * `mu` and `lambda` must be NUL-terminated strings; `out` a valid pointer.
 */
enum GensetStatus genset_kostka(const char *mu, const char *lambda, uint64_t *out);

/**
 * `X(G)` for the abelian group with the given invariant factors.
 *
 * # Safety
 * `factors` must point to `len` values; `out` must be a valid pointer.
 */
enum GensetStatus genset_xmin_abelian(const uint64_t *factors, size_t len, uint64_t *out);

/**
 * Number of partial flags of type `parts` over `F_q`, as a decimal string.
 *
 * # Safety
 * `parts` must point to `len` values; `out` must be a valid pointer.
 */
enum GensetStatus genset_flag_count(const uint32_t *parts, size_t len, uint64_t q, char **out);

/**
 * Decomposition of `theta1`, `theta2` or `theta2_ind` as lines
 * `partition: coefficient`.
 *
 * # Safety
 * `variant` must be a NUL-terminated string; `out` a valid pointer.
 */
enum GensetStatus genset_decompose_theta(uint32_t n, const char *variant, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENSET_H */
