#ifndef TPFOREST_H
#define TPFOREST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define TPF_OK 0

#define TPF_FAIL 1

#define TPF_NULL_POINTER 2

#define TPF_BAD_UTF8 3

#define TPF_OUT_OF_RANGE 4

#define TPF_PANIC 5

/**
 * Opaque square polynomial matrix.
 */
typedef struct TpfMatrix TpfMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last non-OK status on this thread. Valid until the next
 * call into the library on the same thread; do not free.
 */
const char *tpf_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void tpf_string_free(char *s);

/**
 * Build the leading `n x n` window of a named triangle.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `bindings` null or one, and
 * `out` a valid pointer.
 */
int32_t tpf_triangle_new(const char *name, const char *bindings, size_t n, struct TpfMatrix **out);

/**
 * Production matrix of a lower-triangular matrix; one size smaller.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
int32_t tpf_production_matrix(const struct TpfMatrix *m, struct TpfMatrix **out);

/**
 * # Safety
 * `m` must be null or a live handle; it is invalid afterwards.
 */
void tpf_matrix_free(struct TpfMatrix *m);

/**
 * Side length, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t tpf_matrix_size(const struct TpfMatrix *m);

/**
 * Entry `(i, j)` as a polynomial string.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
int32_t tpf_matrix_entry(const struct TpfMatrix *m, size_t i, size_t j, char **out);

/**
 * Check all minors of order `<= r` in the leading `window x window` part.
 * Returns `TPF_OK` or `TPF_FAIL` with a JSON report in `report_json`.
 *
 * # Safety
 * `m` must be a live handle and `report_json` a valid pointer.
 */
int32_t tpf_check_tp(const struct TpfMatrix *m, size_t r, size_t window, char **report_json);

/**
 * Hankel total-positivity check of a named sequence on an `n x n` window.
 *
 * # Safety
 * `seq` must be a NUL-terminated string, `bindings` null or one, and
 * `report_json` a valid pointer.
 */
int32_t tpf_check_hankel(const char *seq,
                         const char *bindings,
                         size_t n,
                         size_t r,
                         char **report_json);

/**
 * Run the command-line front end on `argv[0..argc]` (without a program
 * name). Returns its exit code; the emission goes to `output`.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings and `output` be valid.
 */
int32_t tpf_cli_run(size_t argc, const char *const *argv, char **output);

/**
 * Library version as a static string; do not free.
 */
const char *tpf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TPFOREST_H */
