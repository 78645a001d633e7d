#ifndef RGKERNEL_H
#define RGKERNEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The first four match the `rgk` exit codes.
typedef enum RgkStatus {
  // Every check passed.
  RGK_STATUS_OK = 0,
  // A check failed within the bound.
  RGK_STATUS_FAIL = 1,
  // Configuration or parse error.
  RGK_STATUS_INVALID = 2,
  // A violation exists only beyond the bound.
  RGK_STATUS_BOUND_INSUFFICIENT = 3,
  // A required pointer argument was null or not UTF-8.
  RGK_STATUS_BAD_ARGUMENT = 4,
  // The library panicked; the handle may be unusable.
  RGK_STATUS_INTERNAL = 5,
} RgkStatus;

// How guarantees are read.
typedef enum RgkGuarantee {
  // Only the steps the program takes in context must lie in the guarantee.
  RGK_GUARANTEE_CONTEXTUAL = 0,
  // Every program letter must lie in the guarantee.
  RGK_GUARANTEE_LITERAL = 1,
} RgkGuarantee;

// A state space: named variables over values `0..domain`.
typedef struct RgkSpace RgkSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a state space. `vars` is a comma-separated list of variable
// names. On success `*out` receives a handle.
//
// # Safety
// `vars` is a NUL-terminated string and `out` is a valid pointer.
enum RgkStatus rgk_space_new(const char *vars, uint32_t domain, struct RgkSpace **out);

// Number of states in the space, or 0 for a null handle.
//
// # Safety
// `space` is null or a live handle from [`rgk_space_new`].
size_t rgk_space_size(const struct RgkSpace *space);

// Releases a space. Null is ignored.
//
// # Safety
// `space` is null or a live handle that is not used afterwards.
void rgk_space_free(struct RgkSpace *space);

// Checks `program` against `spec` by exploration up to `bound` letters.
// On `Ok`, `Fail` and `BoundInsufficient`, `*report` receives a JSON
// report; otherwise it is set to null.
//
// # Safety
// `space` is a live handle, `program` and `spec` are NUL-terminated
// strings and `report` is a valid pointer.
enum RgkStatus rgk_verify(const struct RgkSpace *space,
                          const char *program,
                          const char *spec,
                          size_t bound,
                          enum RgkGuarantee guarantee,
                          char **report);

// Checks a JSON proof outline: every rule application and every
// brute-force leaf. Reports like [`rgk_verify`].
//
// # Safety
// As for [`rgk_verify`], with `outline` a NUL-terminated string.
enum RgkStatus rgk_verify_outline(const struct RgkSpace *space,
                                  const char *outline,
                                  size_t bound,
                                  enum RgkGuarantee guarantee,
                                  char **report);

// Message for the last error on this thread, or null. The pointer stays
// valid until the next call into the library on this thread.
const char *rgk_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` is null or was returned by this library and not yet freed.
void rgk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RGKERNEL_H */
