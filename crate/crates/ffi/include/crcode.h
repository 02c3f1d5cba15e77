#ifndef CRCODE_H
#define CRCODE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CrcodeStatus {
  CRCODE_STATUS_OK = 0,
  CRCODE_STATUS_NULL_POINTER = 1,
  CRCODE_STATUS_INVALID_ARGUMENT = 2,
  CRCODE_STATUS_TOO_LARGE = 3,
  CRCODE_STATUS_BUFFER_TOO_SMALL = 4,
  CRCODE_STATUS_INTERNAL = 5,
  CRCODE_STATUS_PANIC = 6,
} CrcodeStatus;

/**
 * One code of the chain, optionally extended.
 */
typedef struct CrcodeCode CrcodeCode;

/**
 * GF(2^m) with its quadratic decomposition over GF(2^u).
 */
typedef struct CrcodeField CrcodeField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; never null. Valid until
 * the next failing call on the same thread.
 */
const char *crcode_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *crcode_version(void);

/**
 * Creates the field for even `m` in 4..=12 with default primitive
 * polynomials, or with the given ones when nonzero.
 */
enum CrcodeStatus crcode_field_new(uint32_t m,
                                   uint32_t prim_poly_m,
                                   uint32_t prim_poly_u,
                                   struct CrcodeField **out);

/**
 * Releases a field; null is ignored. Codes created from it stay valid.
 */
void crcode_field_free(struct CrcodeField *field);

/**
 * Det_u((a1, a2), (b1, b2)) = a1 b2 + b1 a2 in GF(2^u).
 */
enum CrcodeStatus crcode_field_det_u(const struct CrcodeField *field,
                                     uint16_t a1,
                                     uint16_t a2,
                                     uint16_t b1,
                                     uint16_t b2,
                                     uint16_t *out);

/**
 * Builds C^(level) for the chain on the standard basis of GF(2^u), or the
 * chain whose leading basis vectors are given as comma-separated 0/1 strings
 * in `subspace_basis` (may be null).
 */
enum CrcodeStatus crcode_code_new(const struct CrcodeField *field,
                                  uint32_t level,
                                  bool extended,
                                  const char *subspace_basis,
                                  struct CrcodeCode **out);

void crcode_code_free(struct CrcodeCode *code);

enum CrcodeStatus crcode_code_length(const struct CrcodeCode *code, size_t *out);

enum CrcodeStatus crcode_code_dimension(const struct CrcodeCode *code, size_t *out);

/**
 * Membership of a vector given as `len` bytes, one per coordinate (0 or 1).
 */
enum CrcodeStatus crcode_code_is_member(const struct CrcodeCode *code,
                                        const uint8_t *bits,
                                        size_t len,
                                        bool *out);

/**
 * Computes the intersection array (b_0..b_{D-1}; c_1..c_D) from the cosets.
 * `b` and `c` must hold `capacity` entries; the diameter D is always written
 * to `diameter`, and `BUFFER_TOO_SMALL` is returned when D > capacity.
 */
enum CrcodeStatus crcode_code_intersection_array(const struct CrcodeCode *code,
                                                 uint64_t *b,
                                                 uint64_t *c,
                                                 size_t capacity,
                                                 size_t *diameter,
                                                 bool *completely_regular);

/**
 * The coset graph in graph6 form as a new string; release it with
 * [`crcode_string_free`].
 */
enum CrcodeStatus crcode_code_graph6(const struct CrcodeCode *code, char **out);

void crcode_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRCODE_H */
