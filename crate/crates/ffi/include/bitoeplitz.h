#ifndef BITOEPLITZ_H
#define BITOEPLITZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. `BT_STATUS_OK` is zero.
 */
typedef enum BtStatus {
  BT_STATUS_OK = 0,
  BT_STATUS_NULL_POINTER = 1,
  BT_STATUS_INVALID_UTF8 = 2,
  BT_STATUS_PARSE = 3,
  BT_STATUS_IO = 4,
  BT_STATUS_UNKNOWN_MODEL = 5,
  BT_STATUS_AXIOM_VIOLATION = 6,
  BT_STATUS_STRUCTURAL = 7,
  BT_STATUS_INVALID_MODULE = 8,
  BT_STATUS_OUT_OF_RANGE = 9,
  BT_STATUS_OUTSIDE_WINDOW = 10,
  BT_STATUS_NOT_ADJOINTABLE = 11,
  BT_STATUS_NOT_CREATION_OPERATOR = 12,
  BT_STATUS_NOT_FULL = 13,
  BT_STATUS_NOT_TOEPLITZ = 14,
  BT_STATUS_PANIC = 15,
} BtStatus;

/**
 * A validated model with its tensor-power ladder.
 */
typedef struct BtModel BtModel;

/**
 * A block matrix on the window `[-N, N]`.
 */
typedef struct BtOperator BtOperator;

/**
 * A finitely supported cross-section.
 */
typedef struct BtSection BtSection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *bt_last_error_message(void);

/**
 * Builds a builtin model (`scalar`, `flip`, `perm3`, `m2-inner`) with window `radius`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BtStatus bt_model_builtin(const char *name, size_t radius, struct BtModel **out);

/**
 * Loads a model file, or a builtin if `source` names one.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BtStatus bt_model_load(const char *source, struct BtModel **out);

/**
 * # Safety
 * `model` must be NULL or a handle from this library, not yet freed.
 */
void bt_model_free(struct BtModel *model);

/**
 * Window radius the model was built with.
 *
 * # Safety
 * `model` and `out` must be valid pointers.
 */
enum BtStatus bt_model_window(const struct BtModel *model, size_t *out);

/**
 * Dimension of the tensor power of degree `n`.
 *
 * # Safety
 * `model` and `out` must be valid pointers.
 */
enum BtStatus bt_model_level_dim(const struct BtModel *model, int32_t n, size_t *out);

/**
 * An empty section.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BtStatus bt_section_new(struct BtSection **out);

/**
 * Sets `f(k)` from `len` complex coefficients stored as interleaved `re, im` pairs.
 *
 * # Safety
 * `coeffs` must point to `2 * len` readable doubles.
 */
enum BtStatus bt_section_set(const struct BtModel *model,
                             struct BtSection *section,
                             int32_t k,
                             const double *coeffs,
                             size_t len);

/**
 * Copies `f(k)` into `out` as interleaved pairs; `len` must equal the level dimension.
 * Writes zeros when `k` is off the support.
 *
 * # Safety
 * `out` must point to `2 * len` writable doubles.
 */
enum BtStatus bt_section_get(const struct BtModel *model,
                             const struct BtSection *section,
                             int32_t k,
                             double *out,
                             size_t len);

/**
 * # Safety
 * All pointers must be valid; `path` NUL-terminated.
 */
enum BtStatus bt_section_load(const struct BtModel *model,
                              const char *path,
                              struct BtSection **out);

/**
 * # Safety
 * All pointers must be valid; `path` NUL-terminated.
 */
enum BtStatus bt_section_save(const struct BtSection *section, const char *path);

/**
 * # Safety
 * `section` must be NULL or a handle from this library, not yet freed.
 */
void bt_section_free(struct BtSection *section);

/**
 * Left regular representation of `section` on the window `[-radius, radius]`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum BtStatus bt_lambda(const struct BtModel *model,
                        const struct BtSection *section,
                        int32_t radius,
                        struct BtOperator **out);

/**
 * Toeplitz predicate: `is_toeplitz` and the largest interior residual.
 *
 * # Safety
 * All pointers must be valid.
 */
enum BtStatus bt_operator_is_toeplitz(const struct BtModel *model,
                                      const struct BtOperator *op,
                                      double tol,
                                      bool *is_toeplitz,
                                      double *max_residual);

/**
 * Recovers a section from a Toeplitz operator. Fails with
 * `BT_STATUS_NOT_TOEPLITZ` when the predicate rejects `op` at `tol`.
 *
 * # Safety
 * All pointers must be valid. `max_spread` may be NULL.
 */
enum BtStatus bt_synthesize(const struct BtModel *model,
                            const struct BtOperator *op,
                            int32_t radius,
                            double tol,
                            struct BtSection **out,
                            double *max_spread);

/**
 * # Safety
 * All pointers must be valid; `path` NUL-terminated.
 */
enum BtStatus bt_operator_load(const struct BtModel *model,
                               const char *path,
                               struct BtOperator **out);

/**
 * # Safety
 * All pointers must be valid; `path` NUL-terminated.
 */
enum BtStatus bt_operator_save(const struct BtOperator *op, const char *path);

/**
 * Window radius of the operator.
 *
 * # Safety
 * All pointers must be valid.
 */
enum BtStatus bt_operator_radius(const struct BtOperator *op, int32_t *out);

/**
 * # Safety
 * `op` must be NULL or a handle from this library, not yet freed.
 */
void bt_operator_free(struct BtOperator *op);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BITOEPLITZ_H */
