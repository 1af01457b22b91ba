#ifndef SUPERCHAR_H
#define SUPERCHAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call.
typedef enum SupercharStatus {
  SUPERCHAR_STATUS_OK = 0,
  // Malformed arc, label or node-set text.
  SUPERCHAR_STATUS_PARSE = 1,
  SUPERCHAR_STATUS_NOT_PRIME = 2,
  // Node sets or arcs violate a precondition.
  SUPERCHAR_STATUS_PRECONDITION = 3,
  // A closed form's hypothesis does not hold.
  SUPERCHAR_STATUS_HYPOTHESIS = 4,
  SUPERCHAR_STATUS_GUARD_EXCEEDED = 5,
  SUPERCHAR_STATUS_OVERFLOW = 6,
  SUPERCHAR_STATUS_NULL_POINTER = 7,
  SUPERCHAR_STATUS_INVALID_UTF8 = 8,
  // A coefficient does not fit in 64 bits.
  SUPERCHAR_STATUS_OUT_OF_RANGE = 9,
  SUPERCHAR_STATUS_PANIC = 10,
} SupercharStatus;

// Opaque decomposition handle.
typedef struct SupercharCombination SupercharCombination;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Free with
// [`superchar_string_free`].
char *superchar_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void superchar_string_free(char *s);

// Library version as a static string.
const char *superchar_version(void);

// Restriction of `χ^arcs` from `U_L(q)` to `U_K(q)`.
//
// # Safety
// String arguments must be valid NUL-terminated strings; `out` must be writable.
enum SupercharStatus superchar_restrict(uint32_t q,
                                        const char *l,
                                        const char *k,
                                        const char *arcs,
                                        struct SupercharCombination **out);

// Decomposition of `χ^a ⊗ χ^b` over `U_K(q)`.
//
// # Safety
// As for [`superchar_restrict`].
enum SupercharStatus superchar_tensor(uint32_t q,
                                      const char *k,
                                      const char *a,
                                      const char *b,
                                      struct SupercharCombination **out);

// Decomposition of the character of an arc multiset over `U_K(q)`.
//
// # Safety
// As for [`superchar_restrict`].
enum SupercharStatus superchar_expand(uint32_t q,
                                      const char *k,
                                      const char *arcs,
                                      struct SupercharCombination **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must be null or a live handle from this library.
void superchar_combination_free(struct SupercharCombination *h);

// Number of terms with nonzero coefficient; 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t superchar_combination_len(const struct SupercharCombination *h);

// Coefficient of `χ^nu` (a partition of the handle's node set).
//
// # Safety
// `h` must be a live handle, `nu` a valid string and `out` writable.
enum SupercharStatus superchar_combination_coefficient(const struct SupercharCombination *h,
                                                       const char *nu,
                                                       uint64_t *out);

// JSON object mapping canonical partition strings to coefficients, or null.
// Free with [`superchar_string_free`].
//
// # Safety
// `h` must be null or a live handle.
char *superchar_combination_to_json(const struct SupercharCombination *h);

// Whether the trivial character occurs in the restriction of `χ^arcs` to `U_K`.
//
// # Safety
// As for [`superchar_restrict`].
enum SupercharStatus superchar_trivial_nonzero(uint32_t q,
                                               const char *l,
                                               const char *k,
                                               const char *arcs,
                                               bool *out);

// Whether `χ^nu` occurs in `χ^a ⊗ χ^b`.
//
// # Safety
// As for [`superchar_restrict`].
enum SupercharStatus superchar_tensor_nonzero(uint32_t q,
                                              const char *k,
                                              const char *a,
                                              const char *b,
                                              const char *nu,
                                              bool *out);

// Whether `χ^mu` occurs in the restriction of `χ^arcs` from `U_L` to `U_K`.
//
// # Safety
// As for [`superchar_restrict`].
enum SupercharStatus superchar_restriction_nonzero(uint32_t q,
                                                   const char *l,
                                                   const char *k,
                                                   const char *arcs,
                                                   const char *mu,
                                                   bool *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUPERCHAR_H */
