#ifndef D4_GRADINGS_H
#define D4_GRADINGS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum D4Status {
  D4_STATUS_OK = 0,
  D4_STATUS_NULL_POINTER = 1,
  D4_STATUS_INVALID_UTF8 = 2,
  D4_STATUS_INVALID_ARGUMENT = 3,
  D4_STATUS_CONDUCTOR = 4,
  D4_STATUS_SPEC = 5,
  D4_STATUS_NON_COMMUTING = 6,
  D4_STATUS_VERIFICATION_FAILED = 7,
  D4_STATUS_BUFFER_TOO_SMALL = 8,
  D4_STATUS_INTERNAL = 9,
  D4_STATUS_PANIC = 10,
} D4Status;

// A computed grading.
typedef struct D4Grading D4Grading;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent call on this thread if it failed, else NULL. Owned by the library.
const char *d4_last_error(void);

// Fix the conductor N of Q(ζ_N). Must precede any other call; repeating the same N is allowed.
enum D4Status d4_init(uint32_t conductor);

// Number of elements of the isometry group.
enum D4Status d4_isometry_group_len(uintptr_t *out);

// Writes the 4×4 matrix of σ_index (row i is the image of αᵢ) row-major into `out[16]`.
//
// # Safety
// `out` must point to 16 writable ints.
enum D4Status d4_isometry_matrix(uintptr_t index, int32_t *out);

// Compute a named grading: Q1..Q14 or P1..P4.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum D4Status d4_grading_named(const char *name, struct D4Grading **out);

// Compute the grading of a quasitorus described by a JSON spec document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum D4Status d4_grading_from_spec(const char *json, struct D4Grading **out);

// Release a grading. NULL is ignored.
//
// # Safety
// `g` must come from this library and not be used afterwards.
void d4_grading_free(struct D4Grading *g);

// Free rank, identity-component dimension and number of components.
//
// # Safety
// `g` must be a live handle; outputs must be writable.
enum D4Status d4_grading_summary(const struct D4Grading *g,
                                 uintptr_t *rank,
                                 uintptr_t *dim_identity,
                                 uintptr_t *components);

// Invariant factors of the torsion part of the grading group. `*len` always receives the count.
//
// # Safety
// `g` must be a live handle; `buf` must hold `cap` values.
enum D4Status d4_grading_torsion(const struct D4Grading *g,
                                 uintptr_t *buf,
                                 uintptr_t cap,
                                 uintptr_t *len);

// The type (h₁, …, h_l) of the grading. `*len` always receives l.
//
// # Safety
// `g` must be a live handle; `buf` must hold `cap` values.
enum D4Status d4_grading_type(const struct D4Grading *g,
                              uintptr_t *buf,
                              uintptr_t cap,
                              uintptr_t *len);

// The full grading report as JSON. Release with [`d4_string_free`].
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum D4Status d4_grading_json(const struct D4Grading *g, char **out);

// Run acceptance suites. `only` is a comma-separated list or NULL for all.
// Writes the JSON report to `out` and returns D4_STATUS_VERIFICATION_FAILED if any check failed.
//
// # Safety
// `only` is NULL or a NUL-terminated string; `out` must be writable.
enum D4Status d4_verify(const char *only, char **out);

// Release a string returned by the library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void d4_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* D4_GRADINGS_H */
