#ifndef LOOPDIRAC_H
#define LOOPDIRAC_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum LdStatus {
  LD_STATUS_OK = 0,
  LD_STATUS_NULL_POINTER = 1,
  LD_STATUS_INVALID_TYPE = 2,
  LD_STATUS_INVALID_ARGUMENT = 3,
  LD_STATUS_NOT_IN_ALCOVE = 4,
  LD_STATUS_INSUFFICIENT_TRUNCATION = 5,
  LD_STATUS_AMBIGUOUS = 6,
  LD_STATUS_BUFFER_TOO_SMALL = 7,
  LD_STATUS_INTERNAL = 8,
  LD_STATUS_PANIC = 9,
} LdStatus;

/**
 * Opaque handle to a root system.
 */
typedef struct LdRootSystem LdRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ld_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ld_last_error_message(void);

/**
 * Builds the root system named like `"A2"` or `"G2"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LdStatus ld_root_system_new(const char *name, struct LdRootSystem **out);

/**
 * Releases a handle; NULL is ignored.
 *
 * # Safety
 * `rs` must come from `ld_root_system_new` and not have been freed.
 */
void ld_root_system_free(struct LdRootSystem *rs);

/**
 * Rank of the root system, or 0 for a NULL handle.
 *
 * # Safety
 * `rs` must be NULL or a live handle.
 */
size_t ld_root_system_rank(const struct LdRootSystem *rs);

/**
 * Dual Coxeter number, or 0 for a NULL handle.
 *
 * # Safety
 * `rs` must be NULL or a live handle.
 */
int64_t ld_root_system_dual_coxeter(const struct LdRootSystem *rs);

/**
 * Number of positive roots, or 0 for a NULL handle.
 *
 * # Safety
 * `rs` must be NULL or a live handle.
 */
size_t ld_root_system_num_positive_roots(const struct LdRootSystem *rs);

/**
 * Weights of the level-`level` alcove, flattened row by row (`rank` integers
 * per weight) in canonical order. `out_len` receives the number of integers
 * required even when the buffer is too small.
 *
 * # Safety
 * `buf` must have room for `len` integers; `out_len` must be writable.
 */
enum LdStatus ld_alcove_weights(const struct LdRootSystem *rs,
                                int64_t level,
                                int64_t *buf,
                                size_t len,
                                size_t *out_len);

/**
 * Index vector of the conjugacy class through `exp(eta / level)`, one entry
 * per alcove weight in the order of `ld_alcove_weights`, computed with
 * energy truncation `n`. On `LD_STATUS_INSUFFICIENT_TRUNCATION` the required
 * truncation is written to `required_n` when it is non-NULL.
 *
 * # Safety
 * `eta` must point to `rank` integers, `buf` to `len` writable integers,
 * `out_len` must be writable and `required_n` NULL or writable.
 */
enum LdStatus ld_quantize(const struct LdRootSystem *rs,
                          int64_t level,
                          const int64_t *eta,
                          uint32_t n,
                          int64_t *buf,
                          size_t len,
                          size_t *out_len,
                          uint32_t *required_n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOOPDIRAC_H */
