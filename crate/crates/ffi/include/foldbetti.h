#ifndef FOLDBETTI_H
#define FOLDBETTI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FbCommand {
  FB_COMMAND_BETTI = 0,
  FB_COMMAND_TUTTE = 1,
  FB_COMMAND_HAMMING = 2,
  FB_COMMAND_HEIGHT = 3,
  FB_COMMAND_HILBERT = 4,
  FB_COMMAND_VERIFY = 5,
} FbCommand;

typedef enum FbMethod {
  FB_METHOD_AUTO = 0,
  FB_METHOD_RECURSION = 1,
  FB_METHOD_TUTTE_HK = 2,
  FB_METHOD_ORACLE = 3,
} FbMethod;

typedef enum FbStatus {
  FB_STATUS_OK = 0,
  FB_STATUS_NULL_POINTER = 1,
  FB_STATUS_INVALID_UTF8 = 2,
  FB_STATUS_PARSE = 3,
  FB_STATUS_INVALID_ARGUMENT = 4,
  FB_STATUS_FOLD_OUT_OF_RANGE = 5,
  FB_STATUS_PRECONDITION = 6,
  FB_STATUS_UNSUPPORTED = 7,
  FB_STATUS_GUARDRAIL = 8,
  FB_STATUS_BUFFER_TOO_SMALL = 9,
  FB_STATUS_INTERNAL = 10,
} FbStatus;

/**
 * A parsed instance together with its memo tables.
 */
typedef struct FbInstance FbInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next call into the library.
 */
const char *fb_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fb_version(void);

/**
 * Parses instance JSON and stores a new handle in `*out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FbStatus fb_instance_from_json(const char *json, struct FbInstance **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `inst` must come from [`fb_instance_from_json`] and not be used afterwards.
 */
void fb_instance_free(struct FbInstance *inst);

/**
 * Number of forms counted with multiplicity, or 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t fb_instance_n(const struct FbInstance *inst);

/**
 * Rank of the span of the forms, the length of every Betti table; 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t fb_instance_rank(const struct FbInstance *inst);

/**
 * Writes `b_1, ..., b_r` of `I_a` into `out`, where `r` is the rank.
 * `*written` receives `r` even when the buffer is too small.
 *
 * # Safety
 * `inst` must be a live handle, `out` must hold `cap` values, `written` may be NULL.
 */
enum FbStatus fb_betti(const struct FbInstance *inst,
                       size_t a,
                       enum FbMethod method,
                       uint64_t *out,
                       size_t cap,
                       size_t *written);

/**
 * Writes the generalized Hamming weights `d_1, ..., d_r`.
 *
 * # Safety
 * As for [`fb_betti`].
 */
enum FbStatus fb_hamming_weights(const struct FbInstance *inst,
                                 size_t *out,
                                 size_t cap,
                                 size_t *written);

/**
 * Height of `I_a` for `1 <= a <= n`.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum FbStatus fb_height(const struct FbInstance *inst, size_t a, size_t *out);

/**
 * Runs a command and returns its key-sorted JSON report in `*out`, to be
 * released with [`fb_string_free`]. `fold == 0` selects every fold.
 * The report is returned even when a computation inside it failed; check its `ok` field.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum FbStatus fb_report_json(const struct FbInstance *inst,
                             enum FbCommand command,
                             size_t fold,
                             enum FbMethod method,
                             char **out);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void fb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLDBETTI_H */
