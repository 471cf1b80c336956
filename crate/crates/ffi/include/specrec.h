#ifndef SPECREC_H
#define SPECREC_H

/* Generated by cbindgen from specrec-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum SpecrecStatus {
  SPECREC_STATUS_OK = 0,
  SPECREC_STATUS_NULL_POINTER = 1,
  SPECREC_STATUS_INVALID_ARGUMENT = 2,
  SPECREC_STATUS_DOMAIN_ERROR = 3,
  SPECREC_STATUS_POLE_PROXIMITY = 4,
  SPECREC_STATUS_NONCONVERGENCE = 5,
  SPECREC_STATUS_INTERNAL_PANIC = 6,
} SpecrecStatus;

/**
 * Kernel family selector.
 */
typedef enum SpecrecKernelKind {
  SPECREC_KERNEL_KIND_PLUS = 0,
  SPECREC_KERNEL_KIND_MINUS = 1,
  SPECREC_KERNEL_KIND_HOL = 2,
} SpecrecKernelKind;

/**
 * Test-function family selector.
 */
typedef enum SpecrecTripleKind {
  SPECREC_TRIPLE_KIND_DYADIC = 0,
  SPECREC_TRIPLE_KIND_RECONSTRUCTED = 1,
  SPECREC_TRIPLE_KIND_SHORT_INTERVAL = 2,
} SpecrecTripleKind;

/**
 * Opaque dual-moment transform evaluator.
 */
typedef struct SpecrecDualMoment SpecrecDualMoment;

/**
 * Opaque test-function triple.
 */
typedef struct SpecrecTriple SpecrecTriple;

/**
 * Complex number with explicit parts.
 */
typedef struct SpecrecComplex {
  double re;
  double im;
} SpecrecComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Principal-branch log Γ(z).
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_log_gamma(struct SpecrecComplex z, struct SpecrecComplex *out);

/**
 * Completed gamma factor π^{−s/2} Γ(s/2).
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_gamma_r(struct SpecrecComplex s, struct SpecrecComplex *out);

/**
 * Riemann zeta.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_zeta(struct SpecrecComplex s, struct SpecrecComplex *out);

/**
 * Hurwitz zeta ζ(s, a) for 0 < a ≤ 1.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_hurwitz_zeta(struct SpecrecComplex s,
                                        double a,
                                        struct SpecrecComplex *out);

/**
 * Paired gamma factor G^±(s) = (2π)^{−s} Γ(s) e^{±iπs/2}; `plus_sign` ≠ 0
 * selects the plus branch.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_g_pm(struct SpecrecComplex s,
                                int32_t plus_sign,
                                struct SpecrecComplex *out);

/**
 * Triple gamma product built from spectral parameters (mu_re[i], mu_im[i]).
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_script_g(struct SpecrecComplex s,
                                    const struct SpecrecComplex *mu,
                                    int32_t plus_sign,
                                    struct SpecrecComplex *out);

/**
 * Complete exponential sum over units mod c.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_kloosterman(int64_t m, int64_t n, uint64_t c, double *out);

/**
 * Σ_{d | (c,n)} d·μ(c/d).
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_ramanujan_sum(uint64_t c, int64_t n, int64_t *out);

/**
 * Eisenstein Hecke eigenvalue Σ_{ab=n} (a/b)^{it}.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_divisor_eigenvalue(uint64_t n, double t, double *out);

/**
 * Bessel kernel of the summation formulas at x > 0. `order` is the spectral
 * parameter for plus/minus and the (even) weight for hol.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_kernel(enum SpecrecKernelKind kind, double order, double x, double *out);

/**
 * Closed-form Mellin transform of a kernel.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_mellin_kernel(enum SpecrecKernelKind kind,
                                         double order,
                                         struct SpecrecComplex s,
                                         struct SpecrecComplex *out);

/**
 * Spectral-expansion weight H(t) and its asymptotic main term.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_big_h(double t, double t_g, double *out_value, double *out_main);

/**
 * Smoothed functional-equation weight V_±; `plus_sign` selects the branch.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_afe_weight(double x,
                                      double t,
                                      int32_t eps,
                                      double t_g,
                                      double big_x,
                                      int32_t plus_sign,
                                      double sigma,
                                      struct SpecrecComplex *out);

/**
 * Stationary-phase double integral over the given x-window.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_stat_integral(double t,
                                         double t_g,
                                         double u,
                                         uint32_t c,
                                         double x_lo,
                                         double x_hi,
                                         double *out);

/**
 * Continuous-spectrum integral of the summation formula for an even
 * Gaussian-pair weight centred at ±center.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_continuous_part(uint64_t m,
                                           uint64_t n,
                                           double center,
                                           double width,
                                           double *out);

/**
 * Create a triple; `u` is ignored unless the kind is the short-interval one.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_triple_new(enum SpecrecTripleKind kind,
                                      uint32_t m,
                                      double t,
                                      double u,
                                      struct SpecrecTriple **out);

/**
 * Release a triple handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be a pointer previously returned by `specrec_triple_new`
 * that has not been freed.
 */
void specrec_triple_free(struct SpecrecTriple *handle);

/**
 * Evaluate h⁻(t), h⁺(t), or hʰᵒˡ(k) of the triple: `component` 0 = minus,
 * 1 = plus, 2 = hol (argument rounded to an even weight).
 *
 * # Safety
 * `handle` must be a live pointer from `specrec_triple_new`.
 */
enum SpecrecStatus specrec_triple_eval(const struct SpecrecTriple *handle,
                                       int32_t component,
                                       double arg,
                                       double *out);

/**
 * Geometric-side profile H⁺(x) of the reconstructed triple (zero for the
 * bump triples).
 *
 * # Safety
 * `handle` must be a live pointer from `specrec_triple_new`.
 */
enum SpecrecStatus specrec_triple_profile(const struct SpecrecTriple *handle,
                                          double x,
                                          double *out);

/**
 * Build the evaluator for a triple at spectral parameter t_g on the vertical
 * line Re s = sigma; `identity_quality` ≠ 0 selects the tight grid.
 *
 * # Safety
 * All pointer arguments must be valid for the duration of the call;
 * out-pointers must be writable. Null pointers are rejected with a
 * status code.
 */
enum SpecrecStatus specrec_dual_moment_new(const struct SpecrecTriple *triple,
                                           double t_g,
                                           double sigma,
                                           int32_t identity_quality,
                                           struct SpecrecDualMoment **out);

/**
 * Release an evaluator handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be a pointer previously returned by
 * `specrec_dual_moment_new` that has not been freed.
 */
void specrec_dual_moment_free(struct SpecrecDualMoment *handle);

/**
 * First-moment transform ℋ(t).
 *
 * # Safety
 * `handle` must be a live pointer from `specrec_dual_moment_new`.
 */
enum SpecrecStatus specrec_dual_moment_hcal(const struct SpecrecDualMoment *handle,
                                            double t,
                                            struct SpecrecComplex *out);

/**
 * Mixed-moment transform h̃^±(t); `plus_sign` selects the kernel family.
 *
 * # Safety
 * `handle` must be a live pointer from `specrec_dual_moment_new`.
 */
enum SpecrecStatus specrec_dual_moment_tilde(const struct SpecrecDualMoment *handle,
                                             int32_t plus_sign,
                                             double t,
                                             struct SpecrecComplex *out);

/**
 * Holomorphic mixed-moment transform h̃ʰᵒˡ(k) for even k ≥ 2.
 *
 * # Safety
 * `handle` must be a live pointer from `specrec_dual_moment_new`.
 */
enum SpecrecStatus specrec_dual_moment_tilde_hol(const struct SpecrecDualMoment *handle,
                                                 uint32_t k,
                                                 struct SpecrecComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECREC_H */
