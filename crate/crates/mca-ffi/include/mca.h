#ifndef MCA_H
#define MCA_H

/* Generated by cbindgen from the mca-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Rounding mode selector.
 */
typedef enum McaRound {
  MCA_ROUND_NEAREST = 0,
  MCA_ROUND_ZERO = 1,
  MCA_ROUND_UP = 2,
  MCA_ROUND_DOWN = 3,
} McaRound;

/**
 * Result code of every fallible FFI call.
 */
typedef enum McaStatus {
  MCA_STATUS_OK = 0,
  MCA_STATUS_NULL_ARGUMENT = 1,
  MCA_STATUS_INVALID_UTF8 = 2,
  MCA_STATUS_PARSE_ERROR = 3,
  MCA_STATUS_INVALID_ARGUMENT = 4,
  MCA_STATUS_MATH_ERROR = 5,
  MCA_STATUS_CANNOT_DECIDE = 6,
  MCA_STATUS_INTERNAL_PANIC = 7,
} McaStatus;

/**
 * Direction of the returned value relative to the exact result.
 */
typedef enum McaTernary {
  MCA_TERNARY_EXACT = 0,
  MCA_TERNARY_LOW = 1,
  MCA_TERNARY_HIGH = 2,
} McaTernary;

/**
 * Opaque correctly rounded float.
 */
typedef struct McaFloat McaFloat;

/**
 * Opaque arbitrary-precision integer.
 */
typedef struct McaInt McaInt;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Releases a string returned by any `*_to_str` / `*_to_decimal` call.
 */
void mca_str_free(char *s);

/**
 * Parses an integer in the given base (2..=36); a `0x` prefix is honored
 * when base is 16.
 */
enum McaStatus mca_int_from_str(const char *s, uint32_t base, struct McaInt **out);

enum McaStatus mca_int_to_str(const struct McaInt *x, uint32_t base, char **out);

void mca_int_free(struct McaInt *x);

/**
 * Truncating division; the remainder has the dividend's sign.
 */
enum McaStatus mca_int_divrem(const struct McaInt *a,
                              const struct McaInt *b,
                              struct McaInt **quot,
                              struct McaInt **rem);

enum McaStatus mca_int_cmp(const struct McaInt *a, const struct McaInt *b, int *out);

enum McaStatus mca_int_gcd(const struct McaInt *a, const struct McaInt *b, struct McaInt **out);

/**
 * a^e mod n for non-negative a, e and n >= 2.
 */
enum McaStatus mca_int_powmod(const struct McaInt *a,
                              const struct McaInt *e,
                              const struct McaInt *n,
                              struct McaInt **out);

/**
 * Modular inverse of a mod n; fails with `MCA_STATUS_MATH_ERROR` when
 * gcd(a, n) != 1.
 */
enum McaStatus mca_int_invmod(const struct McaInt *a, const struct McaInt *n, struct McaInt **out);

void mca_float_free(struct McaFloat *x);

/**
 * Parses a decimal string ("1.25e-3") and rounds it once to `prec` bits.
 */
enum McaStatus mca_float_from_decimal(const char *s,
                                      uint32_t prec,
                                      enum McaRound round,
                                      struct McaFloat **out,
                                      enum McaTernary *flag_out);

/**
 * Renders the value with `digits` significant decimal digits.
 */
enum McaStatus mca_float_to_decimal(const struct McaFloat *x,
                                    size_t digits,
                                    enum McaRound round,
                                    char **out);

/**
 * Exact textual form (`+0x<hex>p<exp>:<prec>`), reparsable bit for bit.
 */
enum McaStatus mca_float_to_interchange(const struct McaFloat *x, char **out);

enum McaStatus mca_float_from_interchange(const char *s, struct McaFloat **out);

enum McaStatus mca_float_sqrt(const struct McaFloat *a,
                              uint32_t prec,
                              enum McaRound round,
                              struct McaFloat **out,
                              enum McaTernary *flag_out);

/**
 * Numeric comparison; fails with `MCA_STATUS_MATH_ERROR` when either side
 * is NaN. +0 and -0 compare equal.
 */
enum McaStatus mca_float_cmp(const struct McaFloat *a, const struct McaFloat *b, int *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MCA_H */
