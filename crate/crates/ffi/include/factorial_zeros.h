#ifndef FACTORIAL_ZEROS_H
#define FACTORIAL_ZEROS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum FzStatus {
  FZ_STATUS_OK = 0,
  FZ_STATUS_NULL_POINTER = 1,
  FZ_STATUS_INVALID_ARGUMENT = 2,
  FZ_STATUS_NOT_PRIME = 3,
  FZ_STATUS_PRECONDITION = 4,
  FZ_STATUS_OVERFLOW = 5,
  FZ_STATUS_BUFFER_TOO_SMALL = 6,
  FZ_STATUS_PANIC = 7,
} FzStatus;

/**
 * Values for [`FzFamilyParams::kind`].
 */
typedef enum FzFamilyKind {
  FZ_FAMILY_KIND_PROP3A = 0,
  FZ_FAMILY_KIND_PROP3B = 1,
  FZ_FAMILY_KIND_PROP7 = 2,
  FZ_FAMILY_KIND_COR2 = 3,
  FZ_FAMILY_KIND_COR3 = 4,
  FZ_FAMILY_KIND_PROP8 = 5,
} FzFamilyKind;

/**
 * Opaque handle to a factored base.
 */
typedef struct FzBase FzBase;

typedef struct FzMembership {
  bool member;
  /**
   * Least n with Z_b(n) = z; valid when `member`.
   */
  uint64_t witness;
  /**
   * Least n with Z_b(n) > z; valid when not `member`.
   */
  uint64_t n_star;
  uint64_t z_before;
  uint64_t z_at;
} FzMembership;

typedef struct FzDensity {
  uint64_t p;
  uint64_t n;
  uint64_t a_exact;
  uint64_t a_jump_walk;
  uint64_t a_direct_scan;
  /**
   * Whether `a_formula` and `k` are meaningful (N + 1 is a power of p).
   */
  bool has_formula;
  uint32_t k;
  int64_t a_formula;
  bool divergence;
} FzDensity;

/**
 * Parameters for [`fz_family_values`]; fields a family does not use are
 * ignored.
 */
typedef struct FzFamilyParams {
  /**
   * One of the `FzFamilyKind` values.
   */
  uint32_t kind;
  uint64_t p;
  uint64_t n;
  uint64_t k;
  uint32_t r;
  uint64_t l;
  uint64_t q;
  /**
   * Cor3 only: literal form instead of the verified one.
   */
  bool as_printed;
} FzFamilyParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library; static, do not free.
 */
const char *fz_version(void);

/**
 * Message for the last failing call on this thread, or NULL. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *fz_last_error(void);

/**
 * Factor `base` and return a handle in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum FzStatus fz_base_new(uint64_t base, struct FzBase **out);

/**
 * Release a handle from [`fz_base_new`]. NULL is ignored.
 *
 * # Safety
 * `base` must be NULL or a handle not yet freed.
 */
void fz_base_free(struct FzBase *base);

/**
 * Number of distinct primes of the base.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum FzStatus fz_base_factor_count(const struct FzBase *base, size_t *out);

/**
 * The `index`-th prime power `prime^exponent` of the base, primes increasing.
 *
 * # Safety
 * `base` must be a live handle; `prime` and `exponent` must be writable.
 */
enum FzStatus fz_base_factor(const struct FzBase *base,
                             size_t index,
                             uint64_t *prime,
                             uint32_t *exponent);

/**
 * Trailing zeroes of `n!` in the handle's base.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum FzStatus fz_zeros(const struct FzBase *base, uint64_t n, uint64_t *out);

/**
 * Arbitrary-precision form of [`fz_zeros`]: `n` is a NUL-terminated decimal
 * string and `*out` receives a decimal string to release with
 * [`fz_string_free`].
 *
 * # Safety
 * `base` must be a live handle, `n` a valid C string, `out` writable.
 */
enum FzStatus fz_zeros_decimal(const struct FzBase *base, const char *n, char **out);

/**
 * Release a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void fz_string_free(char *s);

/**
 * `Z_b(n+1) - Z_b(n)`.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum FzStatus fz_jump_amplitude(const struct FzBase *base, uint64_t n, uint64_t *out);

/**
 * Whether `z` is the trailing-zero count of some factorial.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum FzStatus fz_member(const struct FzBase *base, uint64_t z, struct FzMembership *out);

/**
 * Values up to `z_max` missing from the image, ascending.
 *
 * # Safety
 * `base` must be a live handle; `buf` must hold `cap` values; `out_len`
 * must be writable.
 */
enum FzStatus fz_gaps(const struct FzBase *base,
                      uint64_t z_max,
                      uint64_t *buf,
                      size_t cap,
                      size_t *out_len);

/**
 * Exact count of image members of `Z_p` in `[0, n]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FzStatus fz_density(uint64_t p, uint64_t n, struct FzDensity *out);

/**
 * Values of a non-image family. When `verify` is true, `members` (capacity
 * `cap`) receives, per value, whether it was found in the image.
 *
 * # Safety
 * `params` must be valid; `buf` (and `members` when verifying) must hold
 * `cap` entries; `out_len` must be writable.
 */
enum FzStatus fz_family_values(const struct FzFamilyParams *params,
                               uint64_t *buf,
                               bool *members,
                               size_t cap,
                               size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FACTORIAL_ZEROS_H */
