#ifndef NERVELAB_H
#define NERVELAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum NlStatus {
  NL_STATUS_OK = 0,
  NL_STATUS_NULL_POINTER = 1,
  NL_STATUS_INVALID_UTF8 = 2,
  NL_STATUS_MALFORMED = 3,
  NL_STATUS_CONTRACT = 4,
  NL_STATUS_PARSE = 5,
  NL_STATUS_IO = 6,
  NL_STATUS_BUFFER_TOO_SMALL = 7,
  NL_STATUS_PANIC = 8,
} NlStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct NlComplex NlComplex;

/**
 * Opaque finite metric measure space.
 */
typedef struct NlSpace NlSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. Owned by the library.
 */
const char *nl_last_error(void);

/**
 * Library version, a static NUL-terminated string.
 */
const char *nl_version(void);

/**
 * Parses the text complex format (one simplex per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NlStatus nl_complex_parse(const char *text, struct NlComplex **out);

/**
 * Builds a complex from `count` simplices stored back to back in
 * `vertices`, the `i`-th having `sizes[i]` vertices.
 *
 * # Safety
 * `vertices` must hold the sum of `sizes[0..count]` entries and `out` must be valid.
 */
enum NlStatus nl_complex_from_simplices(const uint32_t *vertices,
                                        const size_t *sizes,
                                        size_t count,
                                        size_t max_dim,
                                        struct NlComplex **out);

/**
 * # Safety
 * `complex` must come from this library and not be used afterwards. Null is ignored.
 */
void nl_complex_free(struct NlComplex *complex);

/**
 * Number of vertices, 0 for null.
 *
 * # Safety
 * `complex` must be null or a live handle.
 */
size_t nl_complex_vertex_count(const struct NlComplex *complex);

/**
 * Number of `d`-simplices, 0 for null.
 *
 * # Safety
 * `complex` must be null or a live handle.
 */
size_t nl_complex_count(const struct NlComplex *complex, size_t d);

/**
 * Writes `b_0..=b_up_to` into `out`, which must have room for `up_to + 1` values.
 *
 * # Safety
 * `complex` must be a live handle and `out` must point to `out_len` writable values.
 */
enum NlStatus nl_complex_betti(const struct NlComplex *complex,
                               size_t up_to,
                               size_t *out,
                               size_t out_len);

/**
 * Parses the text space format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NlStatus nl_space_parse(const char *text, struct NlSpace **out);

/**
 * Circle of circumference `length_num / length_den` sampled every `step_num / step_den`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NlStatus nl_space_circle(int64_t length_num,
                              int64_t length_den,
                              int64_t step_num,
                              int64_t step_den,
                              struct NlSpace **out);

/**
 * Square flat torus of side `side_num / side_den` sampled every `step_num / step_den`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NlStatus nl_space_torus(int64_t side_num,
                             int64_t side_den,
                             int64_t step_num,
                             int64_t step_den,
                             struct NlSpace **out);

/**
 * # Safety
 * `space` must come from this library and not be used afterwards. Null is ignored.
 */
void nl_space_free(struct NlSpace *space);

/**
 * Number of points, 0 for null.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t nl_space_len(const struct NlSpace *space);

/**
 * Runs the net-to-nerve pipeline with default parameters for `eps` and
 * writes the Betti numbers `b_0..b_{len-1}` to `out`; `len` receives the count.
 *
 * # Safety
 * `space` must be a live handle, `out` must have `out_len` writable values and `len` must be valid.
 */
enum NlStatus nl_nerve_betti(const struct NlSpace *space,
                             double eps,
                             uint64_t seed,
                             size_t *out,
                             size_t out_len,
                             size_t *len);

/**
 * Radius-`r` Cheeger constant as an exact fraction. `heuristic` selects the
 * seeded upper bound instead of exhaustive enumeration.
 *
 * # Safety
 * `space` must be a live handle; `num` and `den` must be valid.
 */
enum NlStatus nl_cheeger(const struct NlSpace *space,
                         double r,
                         bool heuristic,
                         uint64_t seed,
                         int64_t *num,
                         int64_t *den);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NERVELAB_H */
