#ifndef TONAL_H
#define TONAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Coverage levels for [`tonal_extremal_exact`].
#define TONAL_LEVEL_TONE 0

#define TONAL_LEVEL_CLASS 1

// Result of every fallible call.
typedef enum TonalStatus {
  TONAL_STATUS_OK = 0,
  TONAL_STATUS_NULL_POINTER = 1,
  TONAL_STATUS_INVALID_ARGUMENT = 2,
  TONAL_STATUS_PARSE = 3,
  TONAL_STATUS_SIZE_LIMIT = 4,
  TONAL_STATUS_DOMAIN = 5,
  TONAL_STATUS_INCOMPLETE = 6,
  TONAL_STATUS_BUFFER_TOO_SMALL = 7,
  TONAL_STATUS_INTERNAL = 8,
} TonalStatus;

// An uncoloured graph.
typedef struct TonalGraph TonalGraph;

// A 2-coloured complete graph.
typedef struct TonalHost TonalHost;

// A graph with every edge coloured red or blue.
typedef struct TonalPattern TonalPattern;

typedef struct TonalExtremal {
  // Largest min{|R|,|B|} over colourings that fail coverage.
  uint64_t value;
  bool saturated;
  // Blue-edge mask of the first witness, edges in lexicographic order.
  uint64_t witness_index;
  uint64_t colourings;
} TonalExtremal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the
// library; valid until the next call.
const char *tonal_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void tonal_string_free(char *s);

// Parses an edge list or graph6 string.
//
// # Safety
// `input` must be a nul-terminated string; `out` must be writable.
enum TonalStatus tonal_graph_parse(const char *input, struct TonalGraph **out);

// # Safety
// `g` must come from [`tonal_graph_parse`] and not be freed twice.
void tonal_graph_free(struct TonalGraph *g);

// # Safety
// `g` must be a live handle.
uint64_t tonal_graph_order(const struct TonalGraph *g);

// # Safety
// `g` must be a live handle.
uint64_t tonal_graph_edge_count(const struct TonalGraph *g);

// # Safety
// `g` must be a live handle; `out` writable.
enum TonalStatus tonal_graph_is_star_forest(const struct TonalGraph *g, bool *out);

// Number of colourings of `g` up to automorphism.
//
// # Safety
// `g` must be a live handle; `out` writable.
enum TonalStatus tonal_graph_class_count(const struct TonalGraph *g, uint64_t *out);

// Builds the colouring that blocks `g` from canonical hosts. Writes null
// when `g` is a star forest.
//
// # Safety
// `g` must be a live handle; `out` writable.
enum TonalStatus tonal_graph_witness(const struct TonalGraph *g, struct TonalPattern **out);

// Parses a coloured edge list.
//
// # Safety
// `input` must be a nul-terminated string; `out` must be writable.
enum TonalStatus tonal_pattern_parse(const char *input, struct TonalPattern **out);

// # Safety
// `p` must come from this library and not be freed twice.
void tonal_pattern_free(struct TonalPattern *p);

// # Safety
// `p` must be a live handle.
uint64_t tonal_pattern_order(const struct TonalPattern *p);

// # Safety
// `a`, `b` must be live handles; `out` writable.
enum TonalStatus tonal_pattern_equivalent(const struct TonalPattern *a,
                                          const struct TonalPattern *b,
                                          bool *out);

// Serializes a pattern as a coloured edge list. Free with [`tonal_string_free`].
//
// # Safety
// `p` must be a live handle; `out` writable.
enum TonalStatus tonal_pattern_write(const struct TonalPattern *p, char **out);

// Parses a coloured edge list that colours every pair.
//
// # Safety
// `input` must be a nul-terminated string; `out` must be writable.
enum TonalStatus tonal_host_parse(const char *input, struct TonalHost **out);

// The balanced red-clique colouring of K_n; fails with `Domain` when none exists.
//
// # Safety
// `out` must be writable.
enum TonalStatus tonal_host_canonical(uint64_t n, struct TonalHost **out);

// # Safety
// `h` must come from this library and not be freed twice.
void tonal_host_free(struct TonalHost *h);

// # Safety
// `h` must be a live handle.
uint64_t tonal_host_order(const struct TonalHost *h);

// # Safety
// `h` must be a live handle.
uint64_t tonal_host_red_count(const struct TonalHost *h);

// # Safety
// `h` must be a live handle.
uint64_t tonal_host_blue_count(const struct TonalHost *h);

// Serializes a host as a coloured edge list. Free with [`tonal_string_free`].
//
// # Safety
// `h` must be a live handle; `out` writable.
enum TonalStatus tonal_host_write(const struct TonalHost *h, char **out);

// Reports whether the host contains a red-blue-red P4 and a triangle with
// two red edges and one blue.
//
// # Safety
// `h` must be a live handle; both outputs writable.
enum TonalStatus tonal_host_obstructions(const struct TonalHost *h, bool *rbr_p4, bool *k3_two_one);

// Searches for a colour-preserving copy of `p` in `h`. On success writes
// `found`, and when found, `map[i]` = host vertex of pattern vertex `i`.
//
// # Safety
// Handles must be live; `map` must hold `capacity` entries; `found` writable.
enum TonalStatus tonal_find_embedding(const struct TonalHost *h,
                                      const struct TonalPattern *p,
                                      uint64_t *map,
                                      size_t capacity,
                                      bool *found);

// Greedy embedding of a coloured star forest; fails with `Domain` when the
// host is too small or too unbalanced for the guarantee.
//
// # Safety
// Handles must be live; `map` must hold `capacity` entries.
enum TonalStatus tonal_star_forest_embed(const struct TonalHost *h,
                                         const struct TonalPattern *p,
                                         uint64_t *map,
                                         size_t capacity);

// Closed form for stars K_{1,k}.
//
// # Safety
// `out` must be writable.
enum TonalStatus tonal_star_formula(uint64_t n, uint64_t k, uint64_t *out);

// Upper bound for the star forest with star sizes `parts[0..len]`.
//
// # Safety
// `parts` must hold `len` entries; `out` writable.
enum TonalStatus tonal_star_forest_bound(uint64_t n,
                                         const uint64_t *parts,
                                         size_t len,
                                         uint64_t *out);

// Exhaustive threshold search over all colourings of K_n.
// `level` is [`TONAL_LEVEL_TONE`] or [`TONAL_LEVEL_CLASS`]; `workers` = 0
// uses every core. Hosts with more than 30 edges need `force`.
//
// # Safety
// `g` must be a live handle; `out` writable.
enum TonalStatus tonal_extremal_exact(uint64_t n,
                                      const struct TonalGraph *g,
                                      uint32_t level,
                                      uint32_t workers,
                                      bool force,
                                      struct TonalExtremal *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TONAL_H */
