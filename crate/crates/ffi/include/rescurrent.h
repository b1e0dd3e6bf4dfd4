#ifndef RESCURRENT_H
#define RESCURRENT_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  RC_STATUS_INVALID_UTF8 = 2,
  RC_STATUS_PARSE = 3,
  RC_STATUS_ENGINE = 4,
  RC_STATUS_BUFFER_TOO_SMALL = 5,
  RC_STATUS_PANIC = 6,
} RcStatus;

/**
 * A finite free complex.
 */
typedef struct RcComplex RcComplex;

/**
 * An ideal, optionally over a quotient ring.
 */
typedef struct RcIdeal RcIdeal;

/**
 * A polynomial ring `Q[x_1, ..., x_n]` with a monomial order.
 */
typedef struct RcRing RcRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. Valid until the next call
 * into this library on the same thread.
 */
const char *rc_last_error(void);

/**
 * Library version as a static string.
 */
const char *rc_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void rc_string_free(char *s);

/**
 * Creates a ring from comma-separated variable names and an order (`lex`, `grlex`, `grevlex`;
 * null means `grevlex`).
 *
 * # Safety
 * `vars` and `order` must be null or valid C strings; `out` must be writable.
 */
enum RcStatus rc_ring_new(const char *vars, const char *order, struct RcRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from [`rc_ring_new`] not yet freed.
 */
void rc_ring_free(struct RcRing *ring);

/**
 * Creates the ideal generated by `n` polynomial strings. With `quotient_gens` non-null the
 * ideal lives in the quotient by the `m` given relations.
 *
 * # Safety
 * `ring` must be a live ring handle; `gens` must hold `n` valid C strings and
 * `quotient_gens` (if non-null) `m`; `out` must be writable.
 */
enum RcStatus rc_ideal_new(const struct RcRing *ring,
                           const char *const *gens,
                           size_t n,
                           const char *const *quotient_gens,
                           size_t m,
                           struct RcIdeal **out);

/**
 * # Safety
 * `ideal` must be null or a handle from [`rc_ideal_new`] not yet freed.
 */
void rc_ideal_free(struct RcIdeal *ideal);

/**
 * Ideal membership (modulo the quotient relations, if any).
 *
 * # Safety
 * `ideal` must be a live handle, `poly` a valid C string, `out` writable.
 */
enum RcStatus rc_ideal_contains(const struct RcIdeal *ideal, const char *poly, bool *out);

/**
 * Minimal free resolution with at most `cap` differentials.
 *
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum RcStatus rc_resolve(const struct RcIdeal *ideal, size_t cap, struct RcComplex **out);

/**
 * # Safety
 * `complex` must be null or a handle from [`rc_resolve`] not yet freed.
 */
void rc_complex_free(struct RcComplex *complex);

/**
 * Copies the module ranks into `buf` (capacity `len`) and stores their number in `count`.
 * With a null or short buffer only `count` is written and `RC_STATUS_BUFFER_TOO_SMALL` returned.
 *
 * # Safety
 * `complex` must be a live handle; `buf` must be null or hold `len` entries; `count` writable.
 */
enum RcStatus rc_complex_ranks(const struct RcComplex *complex,
                               size_t *buf,
                               size_t len,
                               size_t *count);

/**
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum RcStatus rc_complex_is_truncated(const struct RcComplex *complex, bool *out);

/**
 * Canonical JSON `{"ranks": [...], "diffs": [...]}`; free with [`rc_string_free`].
 *
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum RcStatus rc_complex_to_json(const struct RcComplex *complex, char **out);

/**
 * Exactness criterion; `failing_level` is 0 when it passes.
 *
 * # Safety
 * `complex` must be a live handle; `passed` and `failing_level` writable.
 */
enum RcStatus rc_complex_exactness(const struct RcComplex *complex,
                                   bool *passed,
                                   size_t *failing_level);

/**
 * Runs a script. The canonical JSON report goes to `json_out` (free with
 * [`rc_string_free`]) and the script exit code (0, 1 or 2) to `exit_code`. The call
 * itself returns `RC_STATUS_OK` whenever the report was produced.
 *
 * # Safety
 * `script` must be a valid C string; `json_out` and `exit_code` writable.
 */
enum RcStatus rc_run_script(const char *script, char **json_out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESCURRENT_H */
