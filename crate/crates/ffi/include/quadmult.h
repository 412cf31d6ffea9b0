#ifndef QUADMULT_H
#define QUADMULT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QmStatus {
  QM_STATUS_OK = 0,
  QM_STATUS_NULL_POINTER = 1,
  QM_STATUS_INVALID_ARGUMENT = 2,
  QM_STATUS_FAILED = 3,
  QM_STATUS_PANIC = 4,
} QmStatus;

/**
 * Result of a classification run.
 */
typedef struct QmReport QmReport;

/**
 * Positive representations `(x, y)` of one integer.
 */
typedef struct QmRepresentations QmRepresentations;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *qm_last_error(void);

/**
 * Classifies the multiplicative functions commuting with `a x² + b xy + c y²`
 * on `[1, limit]`. Zero caps select the defaults.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum QmStatus qm_classify(int64_t a,
                          int64_t b,
                          int64_t c,
                          uint64_t limit,
                          uint32_t threads,
                          uint32_t degree_cap,
                          uint32_t max_depth,
                          uint32_t max_branches,
                          struct QmReport **out);

/**
 * Number of leaves (consistent and stuck).
 *
 * # Safety
 * `report` must be null or a live handle from [`qm_classify`].
 */
size_t qm_report_leaf_count(const struct QmReport *report);

/**
 * # Safety
 * As [`qm_report_leaf_count`].
 */
size_t qm_report_consistent_count(const struct QmReport *report);

/**
 * # Safety
 * As [`qm_report_leaf_count`].
 */
size_t qm_report_stuck_count(const struct QmReport *report);

/**
 * Consistent leaves that match no known family.
 *
 * # Safety
 * As [`qm_report_leaf_count`].
 */
size_t qm_report_unexplained_count(const struct QmReport *report);

/**
 * Whether a depth or branch cap cut the search short.
 *
 * # Safety
 * As [`qm_report_leaf_count`].
 */
bool qm_report_incomplete(const struct QmReport *report);

/**
 * The report as JSON; null if `report` is null.
 *
 * # Safety
 * As [`qm_report_leaf_count`]. Free the result with [`qm_string_free`].
 */
char *qm_report_to_json(const struct QmReport *report);

/**
 * # Safety
 * `report` must be null or a handle from [`qm_classify`] not yet freed.
 */
void qm_report_free(struct QmReport *report);

/**
 * Checks a family ("identity", "const1", "fp:<p>") on `[1, bound]²`. On failure
 * `*passed` is false and `(*x, *y)` is the first failing pair.
 *
 * # Safety
 * `family` must be a nul-terminated string; the out pointers must be writable.
 */
enum QmStatus qm_verify_family(int64_t a,
                               int64_t b,
                               int64_t c,
                               const char *family,
                               uint64_t bound,
                               bool *passed,
                               uint64_t *x,
                               uint64_t *y);

/**
 * Representations of `n` with `x, y ≥ 1`, in lexicographic order.
 *
 * # Safety
 * `out` must be writable.
 */
enum QmStatus qm_representations(int64_t a,
                                 int64_t b,
                                 int64_t c,
                                 uint64_t n,
                                 struct QmRepresentations **out);

/**
 * # Safety
 * `list` must be null or a live handle from [`qm_representations`].
 */
size_t qm_representations_len(const struct QmRepresentations *list);

/**
 * # Safety
 * `list` must be a live handle; `x` and `y` writable.
 */
enum QmStatus qm_representations_get(const struct QmRepresentations *list,
                                     size_t index,
                                     uint64_t *x,
                                     uint64_t *y);

/**
 * # Safety
 * `list` must be null or a handle from [`qm_representations`] not yet freed.
 */
void qm_representations_free(struct QmRepresentations *list);

/**
 * Runs replay 1 or 2 and returns its step table as JSON; null on failure.
 */
char *qm_replay_json(uint32_t theorem);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void qm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADMULT_H */
