#ifndef GRAPHON_BAND_H
#define GRAPHON_BAND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GbStatus {
  GB_STATUS_OK = 0,
  GB_STATUS_NULL_POINTER = 1,
  GB_STATUS_INVALID_UTF8 = 2,
  GB_STATUS_INVALID_INPUT = 3,
  GB_STATUS_OUT_OF_RANGE = 4,
  GB_STATUS_PARTITION_MISMATCH = 5,
  GB_STATUS_NOT_SYMMETRIC = 6,
  GB_STATUS_GUARD_EXCEEDED = 7,
  GB_STATUS_INTERNAL = 8,
  GB_STATUS_PANIC = 9,
} GbStatus;

typedef enum GbMethod {
  GB_METHOD_EXACT_BLOCKS = 0,
  GB_METHOD_EXACT_HOM = 1,
  GB_METHOD_MONTE_CARLO = 2,
} GbMethod;

/**
 * Finite simple graph used as a pattern.
 */
typedef struct GbGraph GbGraph;

/**
 * Symmetric step fuzzy set.
 */
typedef struct GbGraphon GbGraphon;

/**
 * Fuzzy set on the unit square, constant on the blocks of a partition.
 */
typedef struct GbStep GbStep;

typedef struct GbEstimate {
  double value;
  double std_error;
  uint64_t samples;
  enum GbMethod method;
} GbEstimate;

typedef struct GbNorms {
  double l1;
  double cut0;
  size_t blocks;
} GbNorms;

typedef struct GbBoundReport {
  double lhs;
  double rhs;
  double cut0;
  double l1;
  size_t edge_count;
  double sup_w;
  double sup_f;
  double delta_area;
  double slack;
  bool holds;
  bool chain_holds;
} GbBoundReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null after a
 * successful call. Valid until the next library call on the same thread.
 */
const char *gb_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gb_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gb_string_free(char *s);

/**
 * Parses `{"breakpoints": [...], "values": [[...], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GbStatus gb_step_from_json(const char *json, struct GbStep **out);

/**
 * Builds a step fuzzy set from `blocks + 1` breakpoints and `blocks * blocks`
 * row-major block values.
 *
 * # Safety
 * `breakpoints` and `values` must point to arrays of the stated lengths.
 */
enum GbStatus gb_step_from_values(size_t blocks,
                                  const double *breakpoints,
                                  const double *values,
                                  struct GbStep **out);

/**
 * # Safety
 * `step` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_step_to_json(const struct GbStep *step, char **out);

/**
 * # Safety
 * `step` must be null or a live handle; it is invalid afterwards.
 */
void gb_step_free(struct GbStep *step);

/**
 * Number of blocks of the partition, or 0 for a null handle.
 *
 * # Safety
 * `step` must be null or a live handle.
 */
size_t gb_step_blocks(const struct GbStep *step);

/**
 * # Safety
 * `step` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_step_sup(const struct GbStep *step, double *out);

/**
 * Value at the point `(x, y)` of the unit square.
 *
 * # Safety
 * `step` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_step_evaluate(const struct GbStep *step, double x, double y, double *out);

/**
 * `min(step, level)` pointwise.
 *
 * # Safety
 * `step` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_step_cap(const struct GbStep *step, double level, struct GbStep **out);

/**
 * Max-min composition `f o g`.
 *
 * # Safety
 * `f` and `g` must be live handles; `out` must be writable.
 */
enum GbStatus gb_step_compose(const struct GbStep *f, const struct GbStep *g, struct GbStep **out);

/**
 * Fails with `NotSymmetric` unless the step function is symmetric.
 *
 * # Safety
 * `step` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_graphon_from_step(const struct GbStep *step, struct GbGraphon **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GbStatus gb_graphon_from_json(const char *json, struct GbGraphon **out);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_graphon_to_json(const struct GbGraphon *w, char **out);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum GbStatus gb_graphon_sup(const struct GbGraphon *w, double *out);

/**
 * # Safety
 * `w` must be null or a live handle; it is invalid afterwards.
 */
void gb_graphon_free(struct GbGraphon *w);

/**
 * `f o W`, again a graphon.
 *
 * # Safety
 * `f` and `w` must be live handles; `out` must be writable.
 */
enum GbStatus gb_left_act(const struct GbStep *f,
                          const struct GbGraphon *w,
                          struct GbGraphon **out);

/**
 * Parses a pattern such as `k3`, `c5`, `p4`, `star6`, `e2` or the edge list
 * `1-2,2-3`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum GbStatus gb_graph_parse(const char *spec, struct GbGraph **out);

/**
 * # Safety
 * `g` must be null or a live handle; it is invalid afterwards.
 */
void gb_graph_free(struct GbGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gb_graph_vertex_count(const struct GbGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gb_graph_edge_count(const struct GbGraph *g);

/**
 * Exact homomorphism density by enumeration of block maps. Fails with
 * `GuardExceeded` when the enumeration is too large.
 *
 * # Safety
 * `pattern` and `w` must be live handles; `out` must be writable.
 */
enum GbStatus gb_t_step_exact(const struct GbGraph *pattern,
                              const struct GbGraphon *w,
                              struct GbEstimate *out);

/**
 * Monte-Carlo homomorphism density; deterministic for a given seed.
 *
 * # Safety
 * `pattern` and `w` must be live handles; `out` must be writable.
 */
enum GbStatus gb_t_monte_carlo(const struct GbGraph *pattern,
                               const struct GbGraphon *w,
                               uint64_t samples,
                               uint64_t seed,
                               struct GbEstimate *out);

/**
 * L1 and cut-style norms of `a`, or of `a - b` when `b` is not null.
 *
 * # Safety
 * `a` must be a live handle, `b` null or a live handle; `out` must be writable.
 */
enum GbStatus gb_norms(const struct GbStep *a, const struct GbStep *b, struct GbNorms *out);

/**
 * Evaluates both sides of the density-gap bound for `(W, f, F)`.
 *
 * # Safety
 * All handles must be live; `out` must be writable.
 */
enum GbStatus gb_verify_main_bound(const struct GbGraphon *w,
                                   const struct GbStep *f,
                                   const struct GbGraph *pattern,
                                   struct GbBoundReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHON_BAND_H */
