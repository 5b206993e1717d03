#ifndef WIDEREC_H
#define WIDEREC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Selects one of the three module categories of a context.
 */
typedef enum WrAlgebra {
  WR_ALGEBRA_WHOLE = 0,
  WR_ALGEBRA_QUOTIENT = 1,
  WR_ALGEBRA_CORNER = 2,
} WrAlgebra;

/**
 * Same numbering as the command-line exit codes, plus FFI-only cases.
 */
typedef enum WrStatus {
  WR_STATUS_OK = 0,
  WR_STATUS_CHECK_FAILED = 1,
  WR_STATUS_INVALID_INPUT = 2,
  WR_STATUS_BUDGET_EXCEEDED = 3,
  WR_STATUS_NULL_POINTER = 4,
  WR_STATUS_INTERNAL = 5,
} WrStatus;

/**
 * Opaque handle: the algebra, its idempotent and the three catalogs.
 */
typedef struct WrContext WrContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON problem description and builds the catalogs.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum WrStatus wr_context_new(const char *spec_json, struct WrContext **out);

/**
 * # Safety
 * `handle` must come from [`wr_context_new`] and not be used afterwards. Null is ignored.
 */
void wr_context_free(struct WrContext *handle);

/**
 * Number of indecomposables in the selected catalog.
 *
 * # Safety
 * `handle` must be a live context and `out` writable.
 */
enum WrStatus wr_catalog_size(const struct WrContext *handle, enum WrAlgebra which, size_t *out);

/**
 * Number of wide subcategories of the whole algebra, optionally only those
 * containing the image of the quotient category.
 *
 * # Safety
 * `handle` must be a live context and `out` writable.
 */
enum WrStatus wr_wide_count(const struct WrContext *handle, bool containing_image, size_t *out);

/**
 * Runs one verifier suite ("2.4", "2.5", "3.1", "3.4", "3.5", "3.8" or "all")
 * and writes its JSON report to `report_out`, if non-null. Returns
 * `CheckFailed` when a check fails; the report is written either way.
 *
 * # Safety
 * `handle` must be a live context, `theorem` NUL-terminated, and
 * `report_out` null or writable. The report must be freed with [`wr_string_free`].
 */
enum WrStatus wr_check(const struct WrContext *handle, const char *theorem, char **report_out);

/**
 * Writes the correspondence between wide subcategories containing the
 * quotient image and wide subcategories of the corner as JSON.
 *
 * # Safety
 * `handle` must be a live context and `out` writable. Free the result with [`wr_string_free`].
 */
enum WrStatus wr_bijection_json(const struct WrContext *handle, char **out);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void wr_string_free(char *s);

/**
 * Message for the last failure on this thread; empty if none. Valid until the
 * next call into this library on the same thread.
 */
const char *wr_last_error(void);

const char *wr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WIDEREC_H */
