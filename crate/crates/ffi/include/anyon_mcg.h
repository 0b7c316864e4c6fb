#ifndef ANYON_MCG_H
#define ANYON_MCG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AmcgStatus {
  AMCG_STATUS_OK = 0,
  AMCG_STATUS_NULL_POINTER = 1,
  AMCG_STATUS_INVALID_ARGUMENT = 2,
  AMCG_STATUS_PARSE = 3,
  AMCG_STATUS_NON_MODULAR = 4,
  AMCG_STATUS_BOUND_EXCEEDED = 5,
  AMCG_STATUS_NOT_NORMALIZER = 6,
  AMCG_STATUS_BUFFER_TOO_SMALL = 7,
  AMCG_STATUS_THEOREM_VIOLATED = 8,
  AMCG_STATUS_INTERNAL = 9,
  AMCG_STATUS_PANIC = 10,
} AmcgStatus;

typedef enum AmcgBackend {
  AMCG_BACKEND_STABILIZER = 0,
  AMCG_BACKEND_DENSE = 1,
} AmcgBackend;

/**
 * Opaque circuit handle.
 */
typedef struct AmcgCircuit AmcgCircuit;

/**
 * Opaque model handle.
 */
typedef struct AmcgModel AmcgModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *amcg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *amcg_version(void);

/**
 * Builtin model by name: `semion`, `z3`, `z4`, `toric` or `trivial`.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum AmcgStatus amcg_model_builtin(const char *name, struct AmcgModel **out);

/**
 * `Z/n` with `q(x) = p·x²/(2n)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AmcgStatus amcg_model_cyclic(uint32_t n, int64_t p, struct AmcgModel **out);

/**
 * Model from the text of a YAML model-spec file.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum AmcgStatus amcg_model_from_spec(const char *spec, struct AmcgModel **out);

/**
 * # Safety
 * `model` must come from an `amcg_model_*` constructor and not be freed twice.
 */
void amcg_model_free(struct AmcgModel *model);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_model_order(const struct AmcgModel *model, size_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_model_is_modular(const struct AmcgModel *model, bool *out);

/**
 * Gauss-sum anchor phase `Σ θ_a⁻¹ / √|G|`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_model_anchor_phase(const struct AmcgModel *model, double *re, double *im);

/**
 * Dimension `|G|^genus` of the image of Humphries twist `k`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_gate_dim(const struct AmcgModel *model, size_t genus, size_t k, size_t *out);

/**
 * Writes the image of Humphries twist `k` into `buf`, which must hold
 * `2·dim²` doubles.
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum AmcgStatus amcg_gate_matrix(const struct AmcgModel *model,
                                 size_t genus,
                                 size_t k,
                                 double *buf,
                                 size_t len);

/**
 * Whether every Humphries image at `genus` is a Clifford operator.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_clifford_check(const struct AmcgModel *model, size_t genus, bool *out);

/**
 * New empty circuit on `|init⟩`; `init` holds `genus · (number of factors)`
 * coordinates, or is null for `|0…0⟩`.
 *
 * # Safety
 * `init` must point to `init_len` values when non-null; `out` must be valid.
 */
enum AmcgStatus amcg_circuit_new(const struct AmcgModel *model,
                                 size_t genus,
                                 const uint32_t *init,
                                 size_t init_len,
                                 struct AmcgCircuit **out);

/**
 * Appends the Humphries twist `T_k`.
 *
 * # Safety
 * `circuit` must be a live handle.
 */
enum AmcgStatus amcg_circuit_push_twist(struct AmcgCircuit *circuit, size_t k);

/**
 * Number of Fourier-type twists in the circuit.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_circuit_qft_count(const struct AmcgCircuit *circuit, size_t *out);

/**
 * Outcome probabilities in lexicographic order of `G^g`; `probs` must hold
 * `|G|^g` doubles.
 *
 * # Safety
 * `probs` must point to `len` writable doubles.
 */
enum AmcgStatus amcg_circuit_simulate(const struct AmcgCircuit *circuit,
                                      enum AmcgBackend backend,
                                      double *probs,
                                      size_t len);

/**
 * Total-variation distance between the stabilizer and dense backends.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AmcgStatus amcg_circuit_compare(const struct AmcgCircuit *circuit, double *out);

/**
 * # Safety
 * `circuit` must come from [`amcg_circuit_new`] and not be freed twice.
 */
void amcg_circuit_free(struct AmcgCircuit *circuit);

/**
 * Minimum projective distance between the basis-normalized Fibonacci `S`
 * and the 24 one-qubit Clifford classes.
 *
 * # Safety
 * `out` must be valid.
 */
enum AmcgStatus amcg_fib_min_distance(double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANYON_MCG_H */
