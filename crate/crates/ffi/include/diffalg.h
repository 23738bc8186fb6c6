#ifndef DIFFALG_H
#define DIFFALG_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum DiffalgStatus {
  DIFFALG_STATUS_OK = 0,
  DIFFALG_STATUS_NULL_ARGUMENT = 1,
  DIFFALG_STATUS_INVALID_UTF8 = 2,
  DIFFALG_STATUS_PARSE_ERROR = 3,
  DIFFALG_STATUS_INVALID_ARGUMENT = 4,
  DIFFALG_STATUS_COMPUTATION_ERROR = 5,
  DIFFALG_STATUS_PANIC = 6,
} DiffalgStatus;

/**
 * A parsed relation. Opaque to C.
 */
typedef struct DiffalgRelation DiffalgRelation;

/**
 * A parsed term. Opaque to C.
 */
typedef struct DiffalgTerm DiffalgTerm;

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *diffalg_last_error(void);

/**
 * Library version as a static string.
 */
const char *diffalg_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void diffalg_string_free(char *s);

/**
 * Parses a term.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum DiffalgStatus diffalg_term_parse(const char *src, struct DiffalgTerm **out);

/**
 * Releases a term. NULL is ignored.
 *
 * # Safety
 * `t` must come from this library and not have been freed.
 */
void diffalg_term_free(struct DiffalgTerm *t);

/**
 * Canonical concrete syntax of a term.
 *
 * # Safety
 * `t` must be a live term; `out` must be writable.
 */
enum DiffalgStatus diffalg_term_render(const struct DiffalgTerm *t, char **out);

/**
 * Number of nodes in the term.
 *
 * # Safety
 * `t` must be a live term; `out` must be writable.
 */
enum DiffalgStatus diffalg_term_size(const struct DiffalgTerm *t, size_t *out);

/**
 * New term using only `0`, `1`, variables and `-`.
 *
 * # Safety
 * `t` must be a live term; `out` must be writable.
 */
enum DiffalgStatus diffalg_term_desugar(const struct DiffalgTerm *t, struct DiffalgTerm **out);

/**
 * Truth table as a string of `0`/`1`, row `r` setting variable `i` (sorted by
 * name) to bit `i` of `r`. The sorted variable names go to `vars_out`,
 * comma-separated.
 *
 * # Safety
 * `t` must be a live term; both out-pointers must be writable.
 */
enum DiffalgStatus diffalg_term_truth_table(const struct DiffalgTerm *t,
                                            char **bits_out,
                                            char **vars_out);

/**
 * Whether `lhs = rhs` holds in every Boolean assignment.
 *
 * # Safety
 * Both terms must be live; `out` must be writable.
 */
enum DiffalgStatus diffalg_identity_valid(const struct DiffalgTerm *lhs,
                                          const struct DiffalgTerm *rhs,
                                          bool *out);

/**
 * Parses a relation (`=`, `<=`, `/\`, `\/`).
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum DiffalgStatus diffalg_relation_parse(const char *src, struct DiffalgRelation **out);

/**
 * Releases a relation. NULL is ignored.
 *
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void diffalg_relation_free(struct DiffalgRelation *r);

/**
 * Canonical concrete syntax of a relation.
 *
 * # Safety
 * `r` must be a live relation; `out` must be writable.
 */
enum DiffalgStatus diffalg_relation_render(const struct DiffalgRelation *r, char **out);

/**
 * The term `t` such that the relation is equivalent to `t = 0`.
 *
 * # Safety
 * `r` must be a live relation; `out` must be writable.
 */
enum DiffalgStatus diffalg_relation_equation(const struct DiffalgRelation *r,
                                             struct DiffalgTerm **out);

/**
 * Whether two relations hold under exactly the same assignments.
 *
 * # Safety
 * Both relations must be live; `out` must be writable.
 */
enum DiffalgStatus diffalg_relation_equivalent(const struct DiffalgRelation *a,
                                               const struct DiffalgRelation *b,
                                               bool *out);

/**
 * Simplest equivalent conjunction of inclusions, via a minimal sum of products.
 *
 * # Safety
 * `r` must be a live relation; `out` must be writable.
 */
enum DiffalgStatus diffalg_relation_derive(const struct DiffalgRelation *r,
                                           struct DiffalgRelation **out);

/**
 * Replays every lemma in a proof corpus given as source text.
 *
 * # Safety
 * `src` must be a NUL-terminated string; the out-pointers must be writable.
 */
enum DiffalgStatus diffalg_corpus_verify(const char *src,
                                         size_t *total_out,
                                         size_t *proved_out,
                                         bool *all_ok_out);

/**
 * Numeric law matrix. `mode` is `"mod"` or `"sum"`. Law ids that hold and
 * that fail are written comma-separated.
 *
 * # Safety
 * `mode` must be a NUL-terminated string; both out-pointers must be writable.
 */
enum DiffalgStatus diffalg_numeric_matrix(const char *mode,
                                          size_t samples,
                                          uint64_t seed,
                                          char **holding_out,
                                          char **failing_out);

#endif  /* DIFFALG_H */
