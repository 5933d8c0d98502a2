#ifndef POLYCHROME_H
#define POLYCHROME_H

/* Generated by cbindgen from the polychrome-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PcStatus {
  /**
   * Success; for checks and searches, the positive outcome.
   */
  PC_STATUS_OK = 0,
  /**
   * Not polychromatic, or no coloring exists.
   */
  PC_STATUS_NEGATIVE = 1,
  /**
   * Bad argument or input data.
   */
  PC_STATUS_INVALID = 2,
  /**
   * Budget or resource limit reached before a verdict.
   */
  PC_STATUS_UNDECIDED = 3,
  /**
   * A required pointer was null.
   */
  PC_STATUS_NULL = 4,
  /**
   * The library panicked; this is a bug.
   */
  PC_STATUS_PANIC = 5,
} PcStatus;

/**
 * Opaque coloring handle.
 */
typedef struct PcColoring PcColoring;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a coloring over `Z/moduli[0] ⊕ … ⊕ Z/moduli[rank-1]` from `ell+1`
 * columns stored row by row in `columns` (`(ell+1) * rank` entries, any sign).
 *
 * # Safety
 * `moduli` must point to `rank` values, `columns` to `(ell+1) * rank` values
 * (either may be null when `rank` is 0) and `out` must be writable.
 */
enum PcStatus pc_coloring_new(size_t ell,
                              const uint64_t *moduli,
                              size_t rank,
                              const int64_t *columns,
                              struct PcColoring **out);

/**
 * Parses a coloring spec (or certificate) from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum PcStatus pc_coloring_from_json(const char *json, struct PcColoring **out);

/**
 * Loads a built-in coloring such as `"chi26"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum PcStatus pc_coloring_fixture(const char *name, struct PcColoring **out);

/**
 * # Safety
 * `c` must be null or a handle from this library that has not been freed.
 */
void pc_coloring_free(struct PcColoring *c);

/**
 * Number of colors, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
uint64_t pc_coloring_colors(const struct PcColoring *c);

/**
 * Number of group components.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t pc_coloring_rank(const struct PcColoring *c);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
size_t pc_coloring_ell(const struct PcColoring *c);

/**
 * Colors the counting vector `v` (`ell+1` entries) and writes the `rank` residues to `out`.
 *
 * # Safety
 * `c` must be a live handle, `v` must hold `len` values and `out` must hold `out_len` values.
 */
enum PcStatus pc_coloring_evaluate(const struct PcColoring *c,
                                   const uint64_t *v,
                                   size_t len,
                                   uint64_t *out,
                                   size_t out_len);

/**
 * Checks whether `c` is `d`-polychromatic. Returns `PC_STATUS_OK` if it is and
 * `PC_STATUS_NEGATIVE` if not; in the latter case the witness counting vector
 * (`d+1` entries) is copied to `witness` when `witness_cap` allows and its
 * length is stored in `witness_len`. Either output may be null.
 *
 * # Safety
 * `c` must be a live handle; `witness` must hold `witness_cap` values.
 */
enum PcStatus pc_is_polychromatic(const struct PcColoring *c,
                                  size_t d,
                                  bool paper_range,
                                  uint64_t *witness,
                                  size_t witness_cap,
                                  size_t *witness_len);

/**
 * Searches all linear `Q_ell`-colorings with `colors` colors. `threads = 0`
 * uses every core; `budget = 0` means unlimited. On `PC_STATUS_OK` the first
 * polychromatic coloring is stored in `out`; `PC_STATUS_NEGATIVE` means none
 * exists and `PC_STATUS_UNDECIDED` that the budget ran out.
 *
 * # Safety
 * `out` must be writable.
 */
enum PcStatus pc_find_coloring(size_t ell,
                               size_t d,
                               uint64_t colors,
                               size_t threads,
                               uint64_t budget,
                               struct PcColoring **out);

/**
 * Colors of the best basic coloring, or 0 outside `1 <= ell <= d`.
 */
uint64_t pc_p_bas(uint64_t ell, uint64_t d);

/**
 * `C(d+1, ell+1)`, or 0 outside `1 <= ell <= d`.
 */
uint64_t pc_upper_os(uint64_t ell, uint64_t d);

/**
 * Verifies `c` at dimension `d` and stores the certificate JSON in `out`
 * (release with [`pc_string_free`]). The status reflects the verdict as in
 * [`pc_is_polychromatic`].
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum PcStatus pc_certificate_json(const struct PcColoring *c, size_t d, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pc_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *pc_last_error(void);

/**
 * Library version as a static string.
 */
const char *pc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYCHROME_H */
