#ifndef VSING_H
#define VSING_H

/* This file is generated by cbindgen from vsing-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every C-ABI call.
 */
typedef enum VsStatus {
  VS_STATUS_OK = 0,
  VS_STATUS_NULL_POINTER = 1,
  VS_STATUS_UTF8 = 2,
  VS_STATUS_INVALID_ARGUMENT = 3,
  VS_STATUS_DOMAIN = 4,
  VS_STATUS_CHECK_FAILED = 5,
  VS_STATUS_PANIC = 6,
} VsStatus;

/*
 Opaque handle to a validated parameter tuple `(p, zeta_0..zeta_r)`.
 */
typedef struct VsParams VsParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the most recent failure on this thread, or null.
 The pointer stays valid until the next failing call on the thread.
 */
const char *vs_last_error_message(void);

/*
 Releases a string returned by this library.

 # Safety
 `ptr` must have been returned by a `vs_*` function and not freed yet.
 */
void vs_string_free(char *ptr);

/*
 Builds a parameter handle from `p >= 2` and a comma-separated rational
 tuple, e.g. `"0,2"` or `"1/2,1/3"`.

 # Safety
 `zeta_csv` must be a valid NUL-terminated string; `out` must be a valid
 pointer to a pointer slot.
 */
enum VsStatus vs_params_new(uint32_t p, const char *zeta_csv, struct VsParams **out);

/*
 Releases a parameter handle.

 # Safety
 `ptr` must have been returned by [`vs_params_new`] and not freed yet.
 */
void vs_params_free(struct VsParams *ptr);

/*
 Classification record of the tuple as JSON:
 `{"p", "zeta", "lambda", "q", "partner_zeta"}`, all rationals exact.
 Requires `r >= 1` and `zeta_r != 0`.

 # Safety
 `params` must be a live handle from [`vs_params_new`]; `out_json` must
 be a valid pointer slot.
 */
enum VsStatus vs_classification_json(const struct VsParams *params, char **out_json);

/*
 Graded kernel reports of the screening operator for weights
 `0..=max_weight`, as a JSON array of
 `{"weight", "dim", "kernel_dim", "basis"}`.

 # Safety
 `out_json` must be a valid pointer slot.
 */
enum VsStatus vs_kernel_json(uint32_t p, uint32_t max_weight, char **out_json);

/*
 Solves the generator relation; JSON
 `{"p", "coefficient", "residual_terms"}`.

 # Safety
 `out_json` must be a valid pointer slot.
 */
enum VsStatus vs_relation_json(uint32_t p, char **out_json);

/*
 Runs the full verification suite. Writes the JSON report and sets
 `*all_pass` to 1 when every check passed, 0 otherwise.

 # Safety
 `out_json` and `all_pass` must be valid pointer slots.
 */
enum VsStatus vs_verify_json(uint32_t p,
                             uint32_t max_weight,
                             uint32_t mode_window,
                             uint64_t seed,
                             char **out_json,
                             int *all_pass);

/*
 Parses a state in the versioned text format and returns its canonical
 serialization (a parse-print round trip).

 # Safety
 `text` must be a valid NUL-terminated string; `out_text` must be a
 valid pointer slot.
 */
enum VsStatus vs_state_roundtrip(const char *text, char **out_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VSING_H */
