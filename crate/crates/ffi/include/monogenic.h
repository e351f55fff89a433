#ifndef MONOGENIC_H
#define MONOGENIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MgStatus {
  MG_STATUS_OK = 0,
  MG_STATUS_NULL_POINTER = 1,
  MG_STATUS_INVALID_UTF8 = 2,
  MG_STATUS_PARSE = 3,
  MG_STATUS_INVALID_INPUT = 4,
  MG_STATUS_DIMENSION_MISMATCH = 5,
  MG_STATUS_NOT_INVERTIBLE = 6,
  MG_STATUS_POLE = 7,
  MG_STATUS_CONTOUR_DEGENERATE = 8,
  MG_STATUS_PANIC = 9,
} MgStatus;

// An algebra 𝔸ₙᵐ.
typedef struct MgAlgebra MgAlgebra;

// A frame `e_1 = 1, e_2, …, e_k` bound to an algebra.
typedef struct MgFrame MgFrame;

// A monogenic function together with its algebra and frame.
typedef struct MgMonogenic MgMonogenic;

typedef struct MgComplex {
  double re;
  double im;
} MgComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into this library from the same thread.
const char *mg_last_error_message(void);

// Releases a string returned by this library.
void mg_string_free(char *s);

// Parses an algebra spec from JSON.
enum MgStatus mg_algebra_from_json(const char *json, struct MgAlgebra **out);

void mg_algebra_free(struct MgAlgebra *a);

// Writes the number of idempotents `m` and the dimension `n`.
enum MgStatus mg_algebra_dim(const struct MgAlgebra *a, size_t *m, size_t *n);

// Checks associativity; `valid` receives the verdict.
enum MgStatus mg_algebra_is_valid(const struct MgAlgebra *a, bool *valid);

// Validation report as JSON; free with [`mg_string_free`].
enum MgStatus mg_algebra_validation_json(const struct MgAlgebra *a, char **out);

// `out = a · b`; all buffers have length `n`.
enum MgStatus mg_mul(const struct MgAlgebra *alg,
                     const struct MgComplex *a,
                     const struct MgComplex *b,
                     struct MgComplex *out,
                     size_t n);

// `out = b⁻¹`.
enum MgStatus mg_invert(const struct MgAlgebra *alg,
                        const struct MgComplex *b,
                        struct MgComplex *out,
                        size_t n);

// Parses a frame spec against an algebra.
enum MgStatus mg_frame_from_json(const struct MgAlgebra *alg,
                                 const char *json,
                                 struct MgFrame **out);

void mg_frame_free(struct MgFrame *f);

// Number of real variables `k`.
enum MgStatus mg_frame_k(const struct MgFrame *f, size_t *k);

// `out = (t e_1 − ζ)⁻¹` with `ζ = Σ x_j e_j`; `x` has length `k`.
enum MgStatus mg_resolvent(const struct MgAlgebra *alg,
                           const struct MgFrame *frame,
                           const double *x,
                           size_t k,
                           struct MgComplex t,
                           struct MgComplex *out,
                           size_t n);

// Parses a monogenic function spec; the handle keeps its own copies of the
// algebra and frame.
enum MgStatus mg_monogenic_from_json(const struct MgAlgebra *alg,
                                     const struct MgFrame *frame,
                                     const char *json,
                                     struct MgMonogenic **out);

void mg_monogenic_free(struct MgMonogenic *f);

// `out = Φ(x)` in closed residue form.
enum MgStatus mg_monogenic_eval(const struct MgMonogenic *f,
                                const double *x,
                                size_t k,
                                struct MgComplex *out,
                                size_t n);

// `out = Φ(x)` by contour quadrature with at most `max_nodes` nodes per
// circle (0 selects the default).
enum MgStatus mg_monogenic_eval_contour(const struct MgMonogenic *f,
                                        const double *x,
                                        size_t k,
                                        size_t max_nodes,
                                        struct MgComplex *out,
                                        size_t n,
                                        bool *converged);

// Largest Cauchy–Riemann residual at `x` with central-difference step `h`.
enum MgStatus mg_check_cauchy_riemann(const struct MgMonogenic *f,
                                      const double *x,
                                      size_t k,
                                      double h,
                                      double *max_residual);

// Runs the bundled fixture suite; the JSON report is freed with
// [`mg_string_free`]. `passed` receives the overall verdict.
enum MgStatus mg_selftest_json(uint64_t seed, char **out, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOGENIC_H */
