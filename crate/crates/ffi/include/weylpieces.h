#ifndef WEYLPIECES_H
#define WEYLPIECES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define WP_OK 0

/**
 * Bad input: unparsable type, subset, word or automorphism, or a violated precondition.
 */
#define WP_ERR_CONFIG 2

/**
 * The requested enumeration exceeds the size guard.
 */
#define WP_ERR_GUARD 3

/**
 * A checked invariant failed.
 */
#define WP_ERR_CONTRACT 4

#define WP_ERR_NULL_POINTER 5

#define WP_ERR_INVALID_UTF8 6

/**
 * A Rust panic was caught at the boundary.
 */
#define WP_ERR_PANIC 7

/**
 * Opaque root system handle.
 */
typedef struct WpRootSystem WpRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *wp_last_error_message(void);

/**
 * Format version of the JSON documents, as a static string.
 */
const char *wp_format_version(void);

/**
 * Builds the root system of a Cartan type such as `"B3"` or `"A2xA2"`.
 *
 * # Safety
 * `cartan_type` must be a nul-terminated string and `out` a valid pointer.
 */
int32_t wp_root_system_new(const char *cartan_type, struct WpRootSystem **out);

/**
 * Sets the largest enumeration size the handle will attempt.
 *
 * # Safety
 * `rs` must come from [`wp_root_system_new`].
 */
int32_t wp_root_system_set_guard(struct WpRootSystem *rs, uint64_t guard);

/**
 * # Safety
 * `rs` must come from [`wp_root_system_new`] and not be used afterwards.
 */
void wp_root_system_free(struct WpRootSystem *rs);

/**
 * Rank, or 0 for a null handle.
 *
 * # Safety
 * `rs` must be null or come from [`wp_root_system_new`].
 */
size_t wp_root_system_rank(const struct WpRootSystem *rs);

/**
 * Number of roots, or 0 for a null handle.
 *
 * # Safety
 * `rs` must be null or come from [`wp_root_system_new`].
 */
size_t wp_root_system_num_roots(const struct WpRootSystem *rs);

/**
 * Order of the Weyl group.
 *
 * # Safety
 * `rs` must come from [`wp_root_system_new`] and `out` be a valid pointer.
 */
int32_t wp_root_system_weyl_order(const struct WpRootSystem *rs, uint64_t *out);

/**
 * Pieces for every `w ∈ W^{δ(J)}` as a JSON document.
 *
 * `j` is a 1-based index list such as `"1,3"`; `delta` is `id`, `flip`,
 * `neg`, `productSwap`, or `@path` to a matrix file.
 *
 * # Safety
 * Pointers must be valid; strings nul-terminated. Free `*out_json` with
 * [`wp_string_free`].
 */
int32_t wp_enumerate_pieces_json(const struct WpRootSystem *rs,
                                 const char *j,
                                 const char *delta,
                                 char **out_json);

/**
 * `ε_{J,δ}(w)` with its witness and dual sequence as a JSON document.
 *
 * # Safety
 * As [`wp_enumerate_pieces_json`]; `w` is a word such as `"1,2"` or `"e"`.
 */
int32_t wp_epsilon_json(const struct WpRootSystem *rs,
                        const char *j,
                        const char *delta,
                        const char *w,
                        char **out_json);

/**
 * The piece index of `x` with its trace as a JSON document.
 *
 * # Safety
 * As [`wp_epsilon_json`].
 */
int32_t wp_classify_json(const struct WpRootSystem *rs,
                         const char *j,
                         const char *delta,
                         const char *x,
                         char **out_json);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library, freed once.
 */
void wp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLPIECES_H */
