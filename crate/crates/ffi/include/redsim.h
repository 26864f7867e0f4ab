#ifndef REDSIM_H
#define REDSIM_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum RedsimStatus {
  REDSIM_STATUS_OK = 0,
  /**
   * A parameter violated its documented range.
   */
  REDSIM_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A required pointer was null.
   */
  REDSIM_STATUS_NULL_POINTER = 2,
  /**
   * The curves do not cross.
   */
  REDSIM_STATUS_NO_THRESHOLD = 3,
  /**
   * Index outside a handle's bounds.
   */
  REDSIM_STATUS_OUT_OF_BOUNDS = 4,
  /**
   * Internal failure; see the last error message.
   */
  REDSIM_STATUS_INTERNAL = 5,
} RedsimStatus;

typedef enum RedsimResource {
  REDSIM_RESOURCE_W = 0,
  REDSIM_RESOURCE_GHZ = 1,
  REDSIM_RESOURCE_TWO_CENTERED_ROBUST = 2,
  REDSIM_RESOURCE_TWO_CENTERED_STRICT = 3,
} RedsimResource;

/**
 * Opaque transition matrix.
 */
typedef struct RedsimChain RedsimChain;

/**
 * Opaque sampled curve.
 */
typedef struct RedsimCurve RedsimCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. The pointer stays valid
 * until the next failing call on the same thread; do not free it.
 */
const char *redsim_last_error_message(void);

/**
 * Samples a resource's figure of merit on a uniform ε grid.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RedsimStatus redsim_curve_new(enum RedsimResource resource,
                                   size_t n,
                                   size_t rounds,
                                   double start,
                                   double stop,
                                   size_t points,
                                   struct RedsimCurve **out);

/**
 * Number of grid points; 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle from [`redsim_curve_new`].
 */
size_t redsim_curve_len(const struct RedsimCurve *curve);

/**
 * # Safety
 * `curve` must be a live handle; `epsilon` and `value` valid for writes.
 */
enum RedsimStatus redsim_curve_point(const struct RedsimCurve *curve,
                                     size_t index,
                                     double *epsilon,
                                     double *value);

/**
 * # Safety
 * `curve` must be null or a handle not yet freed.
 */
void redsim_curve_free(struct RedsimCurve *curve);

/**
 * Loss probability where curve `a` first overtakes curve `b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `epsilon` valid for writes.
 */
enum RedsimStatus redsim_threshold(const struct RedsimCurve *a,
                                   const struct RedsimCurve *b,
                                   double *epsilon);

/**
 * Loss-averaged, κ-optimized W-state figure of merit at one ε.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RedsimStatus redsim_fom_lower_bound(size_t n, size_t rounds, double epsilon, double *out);

/**
 * Closed-form GHZ or two-centered benchmark at one ε.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RedsimStatus redsim_benchmark(enum RedsimResource resource,
                                   size_t n,
                                   double epsilon,
                                   double *out);

/**
 * Best single κ for an `(m, wW, w0)` branch over `rounds` rounds.
 *
 * # Safety
 * `kappa_star` and `value` must be valid for writes.
 */
enum RedsimStatus redsim_optimize_kappa(size_t m,
                                        double w_w,
                                        double w_0,
                                        size_t rounds,
                                        double tol,
                                        double *kappa_star,
                                        double *value);

/**
 * Lossless chain over `W_n … W_3, Bell, sep` (in that index order).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RedsimStatus redsim_chain_new(size_t n, double kappa, struct RedsimChain **out);

/**
 * Number of chain states; 0 for a null handle.
 *
 * # Safety
 * `chain` must be null or a live handle.
 */
size_t redsim_chain_dim(const struct RedsimChain *chain);

/**
 * Entry `(row, col)` of `P^steps`.
 *
 * # Safety
 * `chain` must be a live handle; `out` valid for writes.
 */
enum RedsimStatus redsim_chain_entry(const struct RedsimChain *chain,
                                     uint32_t steps,
                                     size_t row,
                                     size_t col,
                                     double *out);

/**
 * # Safety
 * `chain` must be null or a handle not yet freed.
 */
void redsim_chain_free(struct RedsimChain *chain);

/**
 * Seeded Monte Carlo estimate with one κ for every loss branch.
 *
 * # Safety
 * `mean` and `standard_error` must be valid for writes.
 */
enum RedsimStatus redsim_mc_estimate(size_t n,
                                     size_t rounds,
                                     double kappa,
                                     double epsilon,
                                     uint64_t samples,
                                     uint64_t seed,
                                     double *mean,
                                     double *standard_error);

/**
 * Wootters concurrence of a 4×4 density matrix given as row-major real and
 * imaginary parts (16 entries each).
 *
 * # Safety
 * `re` and `im` must each point to 16 readable doubles; `out` valid for writes.
 */
enum RedsimStatus redsim_concurrence(const double *re, const double *im, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REDSIM_H */
