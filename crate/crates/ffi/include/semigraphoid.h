#ifndef SEMIGRAPHOID_H
#define SEMIGRAPHOID_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE_ERROR = 3,
  SG_STATUS_INVALID_ARGUMENT = 4,
  SG_STATUS_NOT_SEMIGRAPHOID = 5,
  SG_STATUS_INTERNAL = 6,
  SG_STATUS_PANIC = 7,
} SgStatus;

/**
 * Opaque set of CI statements over a fixed ground set.
 */
typedef struct SgStatementSet SgStatementSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *sg_last_error(void);

/**
 * Parses whitespace- or comma-separated `i.j|K` tokens. `n == 0` infers the
 * ground set from the largest element mentioned.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_statement_set_parse(const char *text, uint32_t n, struct SgStatementSet **out);

/**
 * # Safety
 * `set` must be null or a pointer from this library not yet freed.
 */
void sg_statement_set_free(struct SgStatementSet *set);

/**
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_statement_set_len(const struct SgStatementSet *set, size_t *out);

/**
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_statement_set_ground(const struct SgStatementSet *set, uint32_t *out);

/**
 * One statement per line in canonical order. Free with [`sg_string_free`].
 *
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_statement_set_to_text(const struct SgStatementSet *set, char **out);

/**
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_is_semigraphoid(const struct SgStatementSet *set, bool *out);

/**
 * Writes a new set; free it with [`sg_statement_set_free`].
 *
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_closure(const struct SgStatementSet *set, struct SgStatementSet **out);

/**
 * Fails with `NotSemigraphoid` when the input is not closed.
 *
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_is_submodular(const struct SgStatementSet *set, bool *out);

/**
 * Fails with `NotSemigraphoid` when the input is not closed.
 *
 * # Safety
 * `set` and `out` must be valid pointers.
 */
enum SgStatus sg_is_coarsest(const struct SgStatementSet *set, bool *out);

/**
 * Number of CI statements over `[n]`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SgStatus sg_gamma(uint32_t n, size_t *out);

/**
 * Runs the reproduction suite on the embedded fixtures. `full` adds the
 * n=4 sweep. The rendered report goes to `report` when it is non-null.
 *
 * # Safety
 * `passed` must be valid; `report` may be null.
 */
enum SgStatus sg_verify_fixtures(bool full, bool *passed, char **report);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void sg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIGRAPHOID_H */
