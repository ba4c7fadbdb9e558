#ifndef CYCGRAPH_H
#define CYCGRAPH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define CG_OK 0

/**
 * A required pointer argument was null.
 */
#define CG_ERR_NULL -1

/**
 * An argument was out of range or otherwise invalid.
 */
#define CG_ERR_INVALID -2

/**
 * Text input could not be parsed.
 */
#define CG_ERR_PARSE -3

/**
 * A size or resource cap was exceeded.
 */
#define CG_ERR_LIMIT -4

#define CG_ERR_INTERNAL -255

/**
 * Automorphism group and canonical form of a graph.
 */
typedef struct CgAut CgAut;

/**
 * Mutable graph under construction, or a finished graph.
 */
typedef struct CgGraph CgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cg_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next `cg_*` call on the same thread.
 */
const char *cg_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cg_string_free(char *s);

/**
 * Creates an edgeless graph on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
int32_t cg_graph_new(size_t n, struct CgGraph **out);

/**
 * Parses one graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
int32_t cg_graph_from_graph6(const char *text, struct CgGraph **out);

/**
 * Builds the graph on `2^n_exp + 6` vertices with cyclic automorphism
 * group of order `2^n_exp`.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t cg_gamma_build(uint32_t n_exp, struct CgGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void cg_graph_free(struct CgGraph *g);

/**
 * Adds the edge `{i, j}` (idempotent).
 *
 * # Safety
 * `g` must be a live graph handle.
 */
int32_t cg_graph_add_edge(struct CgGraph *g, size_t i, size_t j);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
int32_t cg_graph_vertex_count(const struct CgGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
int32_t cg_graph_edge_count(const struct CgGraph *g, size_t *out);

/**
 * graph6 encoding of `g`; free the result with `cg_string_free`.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
int32_t cg_graph_to_graph6(const struct CgGraph *g, char **out);

/**
 * Computes the automorphism group of `g`. `max_vertices` of 0 selects
 * the default limit.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
int32_t cg_aut_compute(const struct CgGraph *g, size_t max_vertices, struct CgAut **out);

/**
 * Releases an automorphism result. Null is ignored.
 *
 * # Safety
 * `a` must come from this library and not have been freed.
 */
void cg_aut_free(struct CgAut *a);

/**
 * Group order; `CG_ERR_LIMIT` if it does not fit in 64 bits.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
int32_t cg_aut_order(const struct CgAut *a, uint64_t *out);

/**
 * Group order in decimal; free with `cg_string_free`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
int32_t cg_aut_order_string(const struct CgAut *a, char **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
int32_t cg_aut_is_cyclic(const struct CgAut *a, bool *out);

/**
 * Number of vertex orbits.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
int32_t cg_aut_orbit_count(const struct CgAut *a, size_t *out);

/**
 * Orbit index of every vertex: `orbit_of[v]` for `v < len`. `len` must
 * equal the vertex count.
 *
 * # Safety
 * `a` must be a live handle; `orbit_of` must hold `len` writable entries.
 */
int32_t cg_aut_orbits(const struct CgAut *a, size_t *orbit_of, size_t len);

/**
 * Number of generators (0 for the trivial group).
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
int32_t cg_aut_generator_count(const struct CgAut *a, size_t *out);

/**
 * Images of generator `index`: `images[v]` receives the image of `v`.
 * `len` must equal the vertex count.
 *
 * # Safety
 * `a` must be a live handle; `images` must hold `len` writable entries.
 */
int32_t cg_aut_generator(const struct CgAut *a, size_t index, size_t *images, size_t len);

/**
 * Canonical graph6 form; free with `cg_string_free`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
int32_t cg_aut_canonical_form(const struct CgAut *a, char **out);

/**
 * Exhaustive search over all graphs on `n_max` vertices for those whose
 * automorphism group has order `order` (and is cyclic if `cyclic`).
 * Writes the number of classes examined, hits, and hits up to
 * complementation. `jobs` of 0 means 1.
 *
 * # Safety
 * All out-pointers must be writable.
 */
int32_t cg_search(uint64_t order,
                  bool cyclic,
                  size_t n_max,
                  size_t jobs,
                  uint64_t *out_total,
                  size_t *out_hits,
                  size_t *out_up_to_complement);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCGRAPH_H */
