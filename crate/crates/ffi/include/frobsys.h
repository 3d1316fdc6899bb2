#ifndef FROBSYS_H
#define FROBSYS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Binary operations on two charpolys.
 */
typedef enum FrobsysBinaryOp {
  FROBSYS_BINARY_OP_SUM = 0,
  FROBSYS_BINARY_OP_TENSOR = 1,
  FROBSYS_BINARY_OP_HOM = 2,
} FrobsysBinaryOp;

/**
 * Result of a call.
 */
typedef enum FrobsysStatus {
  FROBSYS_STATUS_OK = 0,
  FROBSYS_STATUS_NULL_POINTER = 1,
  FROBSYS_STATUS_INVALID_ARGUMENT = 2,
  FROBSYS_STATUS_INVALID_POLYNOMIAL = 3,
  FROBSYS_STATUS_INVALID_FIELD = 4,
  FROBSYS_STATUS_DATASET = 5,
  FROBSYS_STATUS_IO = 6,
  FROBSYS_STATUS_CURVE = 7,
  FROBSYS_STATUS_NOT_SPLIT = 8,
  FROBSYS_STATUS_PRECISION_EXHAUSTED = 9,
  FROBSYS_STATUS_INCOMPATIBLE = 10,
  FROBSYS_STATUS_OTHER = 11,
  FROBSYS_STATUS_PANIC = 12,
} FrobsysStatus;

/**
 * Monic characteristic polynomial over `Q`.
 */
typedef struct FrobsysCharPoly FrobsysCharPoly;

/**
 * A parsed dataset.
 */
typedef struct FrobsysDataset FrobsysDataset;

/**
 * Outcome of a torus rank computation.
 */
typedef struct FrobsysTorusRank {
  size_t rank_estimate;
  size_t rank_certified_upper;
  bool certified;
  uint32_t precision_bits_used;
  size_t dimension;
} FrobsysTorusRank;

/**
 * Summary of a compatibility check.
 */
typedef struct FrobsysCheckSummary {
  size_t cells;
  size_t compatible;
  size_t incompatible;
  size_t excluded;
  bool strong_quasi_compatible;
} FrobsysCheckSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next library call on this thread.
 */
const char *frobsys_last_error(void);

/**
 * Library version, a static string.
 */
const char *frobsys_version(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void frobsys_string_free(char *s);

/**
 * Polynomial from `len` integer coefficients, ascending, leading 1 included.
 *
 * # Safety
 * `coeffs` must point to `len` readable values; `out` must be writable.
 */
enum FrobsysStatus frobsys_charpoly_from_ints(const int64_t *coeffs,
                                              size_t len,
                                              struct FrobsysCharPoly **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void frobsys_charpoly_free(struct FrobsysCharPoly *p);

/**
 * Degree of `p`, or 0 for a null handle.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
size_t frobsys_charpoly_degree(const struct FrobsysCharPoly *p);

/**
 * Coefficient `index` (ascending) as a rational string such as `-3/2`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FrobsysStatus frobsys_charpoly_coefficient(const struct FrobsysCharPoly *p,
                                                size_t index,
                                                char **out);

/**
 * Human-readable rendering in the variable `t`.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
char *frobsys_charpoly_to_string(const struct FrobsysCharPoly *p);

/**
 * Charpoly of the `n`-th power.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FrobsysStatus frobsys_charpoly_power(const struct FrobsysCharPoly *p,
                                          uint64_t n,
                                          struct FrobsysCharPoly **out);

/**
 * Charpoly of the inverse operator.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FrobsysStatus frobsys_charpoly_dual(const struct FrobsysCharPoly *p,
                                         struct FrobsysCharPoly **out);

/**
 * Charpoly of the direct sum, tensor product or Hom of two operators.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum FrobsysStatus frobsys_charpoly_combine(enum FrobsysBinaryOp op,
                                            const struct FrobsysCharPoly *a,
                                            const struct FrobsysCharPoly *b,
                                            struct FrobsysCharPoly **out);

/**
 * Whether two polynomials are equal.
 *
 * # Safety
 * `a` and `b` must be live handles or null.
 */
bool frobsys_charpoly_equal(const struct FrobsysCharPoly *a, const struct FrobsysCharPoly *b);

/**
 * Frobenius torus rank of `p`. `exact` selects exact verification of the
 * relations found; otherwise the result is heuristic.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum FrobsysStatus frobsys_torus_rank(const struct FrobsysCharPoly *p,
                                      bool exact,
                                      uint32_t precision_bits,
                                      uint32_t relation_bound,
                                      struct FrobsysTorusRank *out);

/**
 * Trace of Frobenius `a_p` of `y² = x³ + a x + b` over `F_p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FrobsysStatus frobsys_count_points(int64_t a, int64_t b, uint64_t p, int64_t *out);

/**
 * Reads a dataset file.
 *
 * # Safety
 * `path` must be a nul-terminated string; `out` must be writable.
 */
enum FrobsysStatus frobsys_dataset_load(const char *path, struct FrobsysDataset **out);

/**
 * Parses dataset text.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum FrobsysStatus frobsys_dataset_parse(const char *text, struct FrobsysDataset **out);

/**
 * # Safety
 * `d` must come from this library and not have been freed.
 */
void frobsys_dataset_free(struct FrobsysDataset *d);

/**
 * Canonical dataset text.
 *
 * # Safety
 * `d` must be a live handle or null.
 */
char *frobsys_dataset_to_string(const struct FrobsysDataset *d);

/**
 * Writes the canonical dataset text to `path`.
 *
 * # Safety
 * `d` must be a live handle; `path` a nul-terminated string.
 */
enum FrobsysStatus frobsys_dataset_store(const struct FrobsysDataset *d, const char *path);

/**
 * Number of sheets in the dataset, or 0 for a null handle.
 *
 * # Safety
 * `d` must be a live handle or null.
 */
size_t frobsys_dataset_sheet_count(const struct FrobsysDataset *d);

/**
 * Quasi-compatibility check across all sheet pairs with witness levels up
 * to `n_max`. Returns `FROBSYS_STATUS_INCOMPATIBLE` (with the summary
 * filled in) when some place fails, and `first_failure`, if non-null,
 * receives the earliest failing place label (or null).
 *
 * # Safety
 * `d` must be a live handle; `summary` must be writable; `first_failure`
 * writable or null.
 */
enum FrobsysStatus frobsys_dataset_check(const struct FrobsysDataset *d,
                                         uint64_t n_max,
                                         struct FrobsysCheckSummary *summary,
                                         char **first_failure);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FROBSYS_H */
