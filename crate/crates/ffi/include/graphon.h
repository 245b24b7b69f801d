#ifndef GRAPHON_H
#define GRAPHON_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum GraphonStatus {
  GRAPHON_STATUS_OK = 0,
  GRAPHON_STATUS_NULL_POINTER = 1,
  GRAPHON_STATUS_INVALID_ARGUMENT = 2,
  GRAPHON_STATUS_PARSE = 3,
  /**
   * The input is outside the range in which the operation is exact.
   */
  GRAPHON_STATUS_ENVELOPE = 4,
  GRAPHON_STATUS_GEOMETRY = 5,
  GRAPHON_STATUS_IO = 6,
  /**
   * A string argument is not valid UTF-8.
   */
  GRAPHON_STATUS_UTF8 = 7,
  GRAPHON_STATUS_PANIC = 8,
} GraphonStatus;

typedef enum GraphonClass {
  GRAPHON_CLASS_STRING = 0,
  GRAPHON_CLASS_OUTERSTRING = 1,
  GRAPHON_CLASS_COMPARABILITY = 2,
  GRAPHON_CLASS_INCOMPARABILITY = 3,
  GRAPHON_CLASS_TWOCLIQUE = 4,
} GraphonClass;

/**
 * Three-valued class membership.
 */
typedef enum GraphonVerdict {
  GRAPHON_VERDICT_MEMBER = 0,
  GRAPHON_VERDICT_NON_MEMBER = 1,
  GRAPHON_VERDICT_UNKNOWN = 2,
} GraphonVerdict;

/**
 * Opaque finite simple graph.
 */
typedef struct GraphonGraph GraphonGraph;

/**
 * Opaque polygonal representation.
 */
typedef struct GraphonRepresentation GraphonRepresentation;

/**
 * Opaque step graphon.
 */
typedef struct GraphonStep GraphonStep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the last failure on this thread. Valid until the next
 * call on the same thread; never NULL.
 */
const char *graphon_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void graphon_string_free(char *s);

/**
 * Parses the graph text format (`n m`, then `u v` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum GraphonStatus graphon_graph_parse(const char *text, struct GraphonGraph **out_graph);

/**
 * `kind` is `'G'`, `'B'` or `'H'`.
 *
 * # Safety
 * `out_graph` must be writable.
 */
enum GraphonStatus graphon_graph_make_special(char kind, size_t k, struct GraphonGraph **out_graph);

/**
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
void graphon_graph_free(struct GraphonGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t graphon_graph_vertex_count(const struct GraphonGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t graphon_graph_edge_count(const struct GraphonGraph *g);

/**
 * False for out-of-range vertices.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
bool graphon_graph_has_edge(const struct GraphonGraph *g, size_t u, size_t v);

/**
 * Graph text format; free with [`graphon_string_free`].
 *
 * # Safety
 * `g` must be a live graph handle and `out_text` writable.
 */
enum GraphonStatus graphon_graph_to_text(const struct GraphonGraph *g, char **out_text);

/**
 * Parses the step graphon text format: `k`, the `k` block measures, then
 * `k` rows of values, all as rationals `p/q`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out_step` writable.
 */
enum GraphonStatus graphon_step_parse(const char *text, struct GraphonStep **out_step);

/**
 * `W^k_a` with `a = a_num / a_den`.
 *
 * # Safety
 * `out_step` must be writable.
 */
enum GraphonStatus graphon_step_make_wka(size_t k,
                                         int64_t a_num,
                                         int64_t a_den,
                                         struct GraphonStep **out_step);

/**
 * # Safety
 * `w` must be NULL or a live step graphon handle.
 */
void graphon_step_free(struct GraphonStep *w);

/**
 * Entropy in bits.
 *
 * # Safety
 * `w` must be a live handle and `out_value` writable.
 */
enum GraphonStatus graphon_step_entropy(const struct GraphonStep *w, double *out_value);

/**
 * Exact edge density as `"p/q"`; free with [`graphon_string_free`].
 *
 * # Safety
 * `w` must be a live handle and `out_text` writable.
 */
enum GraphonStatus graphon_step_edge_density(const struct GraphonStep *w, char **out_text);

/**
 * Exact induced density of `g` in `w` as `"p/q"`; free with
 * [`graphon_string_free`].
 *
 * # Safety
 * Handles must be live and `out_text` writable.
 */
enum GraphonStatus graphon_t_ind_exact(const struct GraphonGraph *g,
                                       const struct GraphonStep *w,
                                       char **out_text);

/**
 * Samples `G(n, W)`. When `out_blocks` is not NULL it receives the block of
 * each of the `n` vertices.
 *
 * # Safety
 * `w` must be live, `out_graph` writable and `out_blocks` NULL or valid
 * for `n` writes.
 */
enum GraphonStatus graphon_sample(const struct GraphonStep *w,
                                  size_t n,
                                  uint64_t seed,
                                  struct GraphonGraph **out_graph,
                                  size_t *out_blocks);

/**
 * Sets `*out_found` and, when found and `out_blocks` is not NULL, writes
 * one block per vertex of `g`.
 *
 * # Safety
 * Handles must be live, `out_found` writable and `out_blocks` NULL or
 * valid for one write per vertex of `g`.
 */
enum GraphonStatus graphon_is_constructible(const struct GraphonGraph *g,
                                            const struct GraphonStep *w,
                                            bool *out_found,
                                            size_t *out_blocks);

/**
 * Evidence for membership of `g` in `class`. When `out_certificate` is not
 * NULL it receives the verdict and certificate in the text form printed by
 * the command line tool; free it with [`graphon_string_free`].
 *
 * # Safety
 * `g` must be live, `out_verdict` writable and `out_certificate` NULL or
 * writable.
 */
enum GraphonStatus graphon_classify(const struct GraphonGraph *g,
                                    enum GraphonClass class_,
                                    enum GraphonVerdict *out_verdict,
                                    char **out_certificate);

/**
 * Parses the representation text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out_rep` writable.
 */
enum GraphonStatus graphon_rep_parse(const char *text, struct GraphonRepresentation **out_rep);

/**
 * # Safety
 * `r` must be NULL or a live representation handle.
 */
void graphon_rep_free(struct GraphonRepresentation *r);

/**
 * # Safety
 * `r` must be live and `out_graph` writable.
 */
enum GraphonStatus graphon_rep_intersection_graph(const struct GraphonRepresentation *r,
                                                  struct GraphonGraph **out_graph);

/**
 * Whether the sets meet in finitely many proper crossings with no triple
 * points.
 *
 * # Safety
 * `r` must be live and `out_pass` writable.
 */
enum GraphonStatus graphon_rep_general_position(const struct GraphonRepresentation *r,
                                                bool *out_pass);

/**
 * Simple open polygonal curves in general position with the same
 * intersection graph.
 *
 * # Safety
 * `r` must be live and `out_rep` writable.
 */
enum GraphonStatus graphon_rep_normalize(const struct GraphonRepresentation *r,
                                         uint64_t seed,
                                         struct GraphonRepresentation **out_rep);

/**
 * Representation text format; free with [`graphon_string_free`].
 *
 * # Safety
 * `r` must be live and `out_text` writable.
 */
enum GraphonStatus graphon_rep_to_text(const struct GraphonRepresentation *r, char **out_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHON_H */
