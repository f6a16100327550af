/* C interface for the bei binomial edge ideal toolkit. */

#ifndef BEI_CAPI_H
#define BEI_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum BeiStatus {
  /**
   * success
   */
  BEI_OK = 0,
  /**
   * malformed input (JSON or numbers)
   */
  BEI_ERR_PARSE = 1,
  /**
   * input violates a precondition (not a tree, no rule applies, ...)
   */
  BEI_ERR_PRECONDITION = 2,
  /**
   * computation hit its budget before reaching a verdict
   */
  BEI_ERR_INCONCLUSIVE = 3,
  /**
   * a required pointer argument was null
   */
  BEI_ERR_NULL_ARGUMENT = 4,
  /**
   * internal panic (a bug; the library state is still consistent)
   */
  BEI_ERR_PANIC = 5,
} BeiStatus;

/**
 * Opaque graph handle.
 */
typedef struct BeiGraph BeiGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph from `{"n": ..., "edges": [[i, j], ...]}` JSON and writes
 * a new handle to `out`. The handle must be released with `bei_graph_free`.
 */
enum BeiStatus bei_graph_from_json(const char *json, struct BeiGraph **out);

/**
 * Releases a graph handle. Passing null is a no-op.
 */
void bei_graph_free(struct BeiGraph *g);

/**
 * Releases a string returned by this library. Passing null is a no-op.
 */
void bei_string_free(char *s);

/**
 * Classifies a tree into the d-sequence degree-sequence families; writes
 * `{"classification": ..., "internal_vertices": ...}` JSON to `out`.
 */
enum BeiStatus bei_classify_json(const struct BeiGraph *g, char **out);

/**
 * Searches for a d-sequence ordering of the edge binomials over `F_p`
 * (`fp_prime = 0` selects the rationals) with an optional budget of
 * Groebner runs (`budget = 0` means unlimited); writes the verdict JSON.
 */
enum BeiStatus bei_dseq_check_json(const struct BeiGraph *g,
                                   uint32_t fp_prime,
                                   uint64_t budget,
                                   char **out);

/**
 * Computes (and, when a closed form applies, predicts) the regularity of
 * `S/J_G^power`; writes the report JSON including the Betti table.
 */
enum BeiStatus bei_regularity_json(const struct BeiGraph *g,
                                   uint32_t power,
                                   uint32_t fp_prime,
                                   char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BEI_CAPI_H */
