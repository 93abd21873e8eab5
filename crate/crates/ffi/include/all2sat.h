#ifndef ALL2SAT_H
#define ALL2SAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of a fallible call.
 */
typedef enum All2satStatus {
  ALL2SAT_STATUS_OK = 0,
  /**
   * The stream is exhausted; nothing was written.
   */
  ALL2SAT_STATUS_END = 1,
  ALL2SAT_STATUS_NULL_POINTER = -1,
  ALL2SAT_STATUS_PARSE_ERROR = -2,
  ALL2SAT_STATUS_INVALID_ARGUMENT = -3,
  /**
   * The output buffer holds fewer entries than the formula has
   * variables.
   */
  ALL2SAT_STATUS_BUFFER_TOO_SMALL = -4,
  /**
   * An internal error was caught at the boundary.
   */
  ALL2SAT_STATUS_PANIC = -5,
} All2satStatus;

/**
 * Lazy stream of disjoint model cubes.
 */
typedef struct All2satCubeStream All2satCubeStream;

/**
 * A parsed 2-CNF formula.
 */
typedef struct All2satFormula All2satFormula;

/**
 * Lazy stream of models.
 */
typedef struct All2satModelStream All2satModelStream;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static NUL-terminated version string.
 */
const char *all2sat_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on this thread.
 */
const char *all2sat_last_error(void);

/**
 * Parses DIMACS text holding clauses of width one or two.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum All2satStatus all2sat_formula_parse(const char *text, struct All2satFormula **out);

/**
 * Builds a formula from `len` DIMACS literals where each clause of width
 * one or two is terminated by `0`.
 *
 * # Safety
 * `literals` must point to `len` readable values (or be null when `len`
 * is zero) and `out` must be writable.
 */
enum All2satStatus all2sat_formula_from_literals(size_t num_vars,
                                                 const int64_t *literals,
                                                 size_t len,
                                                 struct All2satFormula **out);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live formula handle.
 */
size_t all2sat_formula_num_vars(const struct All2satFormula *f);

/**
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void all2sat_formula_free(struct All2satFormula *f);

/**
 * # Safety
 * `f` must be a live formula handle and `out` writable.
 */
enum All2satStatus all2sat_formula_is_satisfiable(const struct All2satFormula *f, bool *out);

/**
 * Writes the exact model count as a decimal string, to be released with
 * [`all2sat_string_free`].
 *
 * # Safety
 * `f` must be a live formula handle and `out` writable.
 */
enum All2satStatus all2sat_formula_count(const struct All2satFormula *f, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void all2sat_string_free(char *s);

/**
 * Starts a model stream. The stream does not borrow `f`.
 *
 * # Safety
 * `f` must be a live formula handle and `out` writable.
 */
enum All2satStatus all2sat_models_new(const struct All2satFormula *f,
                                      struct All2satModelStream **out);

/**
 * Writes the next model as `num_vars` bytes, `values[i]` being the value
 * of variable `i + 1`, or returns [`All2satStatus::End`].
 *
 * # Safety
 * `s` must be a live stream and `values` must hold `len` writable bytes.
 */
enum All2satStatus all2sat_models_next(struct All2satModelStream *s, uint8_t *values, size_t len);

/**
 * # Safety
 * `s` must be null or a stream not yet freed.
 */
void all2sat_models_free(struct All2satModelStream *s);

/**
 * Starts a cube stream. The stream does not borrow `f`.
 *
 * # Safety
 * `f` must be a live formula handle and `out` writable.
 */
enum All2satStatus all2sat_cubes_new(const struct All2satFormula *f,
                                     struct All2satCubeStream **out);

/**
 * Writes the next cube as one byte per variable (0, 1, or 2 for
 * don't-care) and its weight exponent: the cube holds `2^num_twos`
 * models. Variables in one strong component share their 2, so
 * `num_twos` can be smaller than the number of 2 bytes.
 *
 * # Safety
 * `s` must be a live stream, `trits` must hold `len` writable bytes and
 * `num_twos` must be null or writable.
 */
enum All2satStatus all2sat_cubes_next(struct All2satCubeStream *s,
                                      uint8_t *trits,
                                      size_t len,
                                      uint32_t *num_twos);

/**
 * # Safety
 * `s` must be null or a stream not yet freed.
 */
void all2sat_cubes_free(struct All2satCubeStream *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALL2SAT_H */
