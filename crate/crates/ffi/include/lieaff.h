#ifndef LIEAFF_H
#define LIEAFF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LieaffStatus {
  LIEAFF_STATUS_OK = 0,
  LIEAFF_STATUS_NULL_POINTER = 1,
  LIEAFF_STATUS_INVALID_UTF8 = 2,
  LIEAFF_STATUS_PARSE = 3,
  LIEAFF_STATUS_DIMENSION_MISMATCH = 4,
  LIEAFF_STATUS_SINGULAR_MATRIX = 5,
  LIEAFF_STATUS_BAD_PARAMETER = 6,
  LIEAFF_STATUS_NOT_AUTOMORPHISM = 7,
  LIEAFF_STATUS_FIELD_EXTENSION_REQUIRED = 8,
  LIEAFF_STATUS_UNVERIFIED_PAIR = 9,
  LIEAFF_STATUS_NOT_CATALOG_ALGEBRA = 10,
  /**
   * An axiom check found a counterexample.
   */
  LIEAFF_STATUS_VIOLATION = 11,
  LIEAFF_STATUS_INTERNAL = 12,
  LIEAFF_STATUS_PANIC = 13,
} LieaffStatus;

/**
 * Opaque affgebra handle.
 */
typedef struct LieaffAffgebra LieaffAffgebra;

/**
 * Opaque normal-form handle.
 */
typedef struct LieaffCanonicalForm LieaffCanonicalForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library from the same thread.
 */
const char *lieaff_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void lieaff_string_free(char *s);

/**
 * Dimension of the space of pairs `(f, g)` on a catalog algebra. `lambda`
 * may be null except for `"r3lambda"`.
 *
 * # Safety
 * `tag` and `lambda` must be null or nul-terminated; `out` must be writable.
 */
enum LieaffStatus lieaff_solve_dimension(const char *tag, const char *lambda, uintptr_t *out);

/**
 * Parses the JSON document accepted by the command-line tool.
 *
 * # Safety
 * `json` must be nul-terminated; `out` must be writable.
 */
enum LieaffStatus lieaff_affgebra_from_json(const char *json, struct LieaffAffgebra **out);

/**
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum LieaffStatus lieaff_affgebra_to_json(const struct LieaffAffgebra *x, char **out);

/**
 * Checks both axioms on the grid. Returns `LIEAFF_STATUS_VIOLATION` with
 * the counterexample as the error message when one fails.
 *
 * # Safety
 * `x` must be a live handle.
 */
enum LieaffStatus lieaff_affgebra_check_axioms(const struct LieaffAffgebra *x);

/**
 * # Safety
 * `x` must be null or a handle not yet freed.
 */
void lieaff_affgebra_free(struct LieaffAffgebra *x);

/**
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum LieaffStatus lieaff_canonicalize(const struct LieaffAffgebra *x,
                                      struct LieaffCanonicalForm **out);

/**
 * Readable form such as `F1(2, 3, 5, 0, 0)`.
 *
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum LieaffStatus lieaff_canonical_form_display(const struct LieaffCanonicalForm *form, char **out);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum LieaffStatus lieaff_canonical_form_to_json(const struct LieaffCanonicalForm *form, char **out);

/**
 * The affgebra the normal form names.
 *
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum LieaffStatus lieaff_canonical_form_representative(const struct LieaffCanonicalForm *form,
                                                       struct LieaffAffgebra **out);

/**
 * # Safety
 * `form` must be null or a handle not yet freed.
 */
void lieaff_canonical_form_free(struct LieaffCanonicalForm *form);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEAFF_H */
