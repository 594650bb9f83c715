#ifndef CELLKERNEL_H
#define CELLKERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CkStatus {
  CK_STATUS_OK = 0,
  CK_STATUS_INVALID_ARGUMENT = 1,
  CK_STATUS_SIZE_GUARD = 2,
  CK_STATUS_PARSE = 3,
  CK_STATUS_MISMATCH = 4,
  CK_STATUS_RING = 5,
  CK_STATUS_ASSERTION = 6,
  CK_STATUS_NULL_POINTER = 7,
  CK_STATUS_PANIC = 8,
  // The check ran and its report says it failed.
  CK_STATUS_CHECK_FAILED = 9,
} CkStatus;

// A partition diagram.
typedef struct CkDiagram CkDiagram;

// A tensor-space instance `(n, r, ε, ring)`.
typedef struct CkInstance CkInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates an instance. `ring` is `"Z"`, `"Q"` or `"Fp:P"`; `eps_half`
// selects `ε = ½`.
//
// # Safety
// `ring` must be a nul-terminated string and `out` a valid pointer.
enum CkStatus ck_instance_new(uint32_t n,
                              uint32_t r,
                              bool eps_half,
                              const char *ring,
                              struct CkInstance **out);

// # Safety
// `inst` must come from [`ck_instance_new`] and not be used afterwards. Null is ignored.
void ck_instance_free(struct CkInstance *inst);

// Rank of the kernel of the group action over the instance's ring.
//
// # Safety
// `inst` must be a live handle and `out_rank` a valid pointer.
enum CkStatus ck_kernel_rank(const struct CkInstance *inst, uint64_t *out_rank);

// Kernel rank and basis as a JSON object `{"rank", "basis"}`.
//
// # Safety
// `inst` must be a live handle and `out_json` a valid pointer; release the
// string with [`ck_string_free`].
enum CkStatus ck_kernel_json(const struct CkInstance *inst, char **out_json);

// Runs a named check that takes a tensor-space instance and writes its
// JSON report. Returns `CK_STATUS_CHECK_FAILED` (with the report still
// written) when the check fails.
//
// # Safety
// `name` must be a nul-terminated string, `inst` a live handle and
// `out_json` a valid pointer.
enum CkStatus ck_run_check(const char *name, const struct CkInstance *inst, char **out_json);

// Parses a diagram such as `"1,2'|2,1'"`.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum CkStatus ck_diagram_parse(const char *text, struct CkDiagram **out);

// Concatenates `left` on top of `right`. The product is
// `δ^out_middle · out`; the scalar is left to the caller.
//
// # Safety
// `left` and `right` must be live handles; `out_middle` and `out` valid pointers.
enum CkStatus ck_diagram_mul(const struct CkDiagram *left,
                             const struct CkDiagram *right,
                             uint32_t *out_middle,
                             struct CkDiagram **out);

// Canonical text of a diagram.
//
// # Safety
// `diagram` must be a live handle and `out` a valid pointer.
enum CkStatus ck_diagram_to_string(const struct CkDiagram *diagram, char **out);

// # Safety
// `diagram` must come from this library and not be used afterwards. Null is ignored.
void ck_diagram_free(struct CkDiagram *diagram);

// # Safety
// `s` must be a string returned by this library, released once. Null is ignored.
void ck_string_free(char *s);

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *ck_last_error(void);

// Library version as a static string.
const char *ck_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CELLKERNEL_H */
