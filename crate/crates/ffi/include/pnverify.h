#ifndef PNVERIFY_H
#define PNVERIFY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PnvConvention {
  PNV_CONVENTION_RIGHT = 0,
  PNV_CONVENTION_LEFT = 1,
} PnvConvention;

typedef enum PnvStatus {
  PNV_STATUS_OK = 0,
  PNV_STATUS_NULL_ARGUMENT = 1,
  PNV_STATUS_INVALID_UTF8 = 2,
  PNV_STATUS_PARSE = 3,
  PNV_STATUS_INVALID_ARGUMENT = 4,
  PNV_STATUS_PANIC = 5,
} PnvStatus;

/**
 * The ordered results of running a `PnvSpec`.
 */
typedef struct PnvReport PnvReport;

/**
 * A parsed input file.
 */
typedef struct PnvSpec PnvSpec;

typedef struct PnvOptions {
  /**
   * Seed for the numeric oracle, unless the file sets one.
   */
  uint64_t seed;
  /**
   * Random points per oracle instance; must be at least 1.
   */
  uint64_t trials;
  /**
   * Convention for checks that do not name one.
   */
  enum PnvConvention convention;
} PnvOptions;

typedef struct PnvSummary {
  size_t pass;
  size_t fail;
  size_t error;
  size_t informational;
} PnvSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *pnv_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pnv_version(void);

struct PnvOptions pnv_options_default(void);

/**
 * Parses the text of an input file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PnvStatus pnv_spec_parse(const char *text, struct PnvSpec **out);

/**
 * # Safety
 * `spec` must be NULL or a handle from `pnv_spec_parse` not yet freed.
 */
void pnv_spec_free(struct PnvSpec *spec);

/**
 * Canonical form of a parsed file.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum PnvStatus pnv_spec_format(const struct PnvSpec *spec, char **out);

/**
 * Runs every check of `spec`. `options` may be NULL for the defaults.
 *
 * # Safety
 * `spec` must be a live handle, `options` NULL or valid, and `out` a valid pointer.
 */
enum PnvStatus pnv_run(const struct PnvSpec *spec,
                       const struct PnvOptions *options,
                       struct PnvReport **out);

/**
 * # Safety
 * `report` must be NULL or a handle from `pnv_run` not yet freed.
 */
void pnv_report_free(struct PnvReport *report);

/**
 * 0 when every non-informational entry passes, 1 otherwise, -1 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
int32_t pnv_report_exit_code(const struct PnvReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum PnvStatus pnv_report_summary(const struct PnvReport *report, struct PnvSummary *out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum PnvStatus pnv_report_json(const struct PnvReport *report, char **out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum PnvStatus pnv_report_text(const struct PnvReport *report, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void pnv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PNVERIFY_H */
