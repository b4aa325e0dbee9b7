/* lodm: identifiability analysis, simulation and quasi-likelihood fitting of
 * linearly observation-driven time-series models (GARCH, log-linear Poisson
 * GARCH, NBIN-GARCH).
 *
 * C interface of the shared library. All functions return lodm_status;
 * LODM_OK means success and any other value leaves a human-readable message
 * retrievable through lodm_last_error() (thread local). Objects are opaque
 * handles created and destroyed through this interface. Output arrays are
 * caller allocated at the documented lengths; strings returned through
 * char** outputs must be released with lodm_string_free().
 */

#ifndef LODM_H
#define LODM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LODM_API __declspec(dllexport)
#else
#define LODM_API __attribute__((visibility("default")))
#endif

typedef enum lodm_status {
  LODM_OK = 0,
  LODM_ERR_ARG = 1,            /* invalid argument or malformed input */
  LODM_ERR_DOMAIN = 2,         /* domain violation (signs, counts, ranges) */
  LODM_ERR_NOT_INVERTIBLE = 3, /* a outside the stability region */
  LODM_ERR_NO_CURVE = 4,       /* parameters identifiable, no curve exists */
  LODM_ERR_RUNTIME = 5         /* numerical failure or internal error */
} lodm_status;

typedef enum lodm_family {
  LODM_GARCH_GAUSSIAN = 0, /* Y | X ~ Normal(0, X) */
  LODM_LOGLIN_POISSON = 1, /* Y | X ~ Poisson(exp(X)) */
  LODM_NBIN_GARCH = 2      /* Y | X ~ NegBinomial(shape r, mean r*X) */
} lodm_family;

typedef enum lodm_verdict {
  LODM_IDENTIFIABLE = 0,
  LODM_NOT_IDENTIFIABLE = 1,
  LODM_INVERTIBILITY_FAILS = 2
} lodm_verdict;

/* A model: family, orders (p, q) and parameters (omega, a, b[, phi]). */
typedef struct lodm_model lodm_model;

/* A one-parameter curve of observationally equivalent parameters. */
typedef struct lodm_curve lodm_curve;

LODM_API const char* lodm_version(void);

/* Message describing the most recent failure on this thread. */
LODM_API const char* lodm_last_error(void);

LODM_API void lodm_string_free(char* str);

/* -------------------------------------------------------------------- */
/* Model lifecycle                                                       */
/* -------------------------------------------------------------------- */

/* a has length p >= 1, b length q >= 1. phi points to the NBIN shape r and
 * must be NULL for the other families. Sign constraints are enforced for
 * the GARCH and NBIN families. */
LODM_API lodm_status lodm_model_create(lodm_family family, int p, int q,
                                       double omega, const double* a,
                                       const double* b, const double* phi,
                                       lodm_model** out_model);
LODM_API void lodm_model_destroy(lodm_model* model);

/* 1 when a lies in the stability region (the invertibility condition). */
LODM_API lodm_status lodm_model_invertible(const lodm_model* model,
                                           int* out_flag);

/* 1 when sum(a) + sum(b) < 1, the standard stationarity sufficient
 * condition used for warnings on the sign-constrained families. */
LODM_API lodm_status lodm_model_moment_condition(const lodm_model* model,
                                                 int* out_flag);

/* -------------------------------------------------------------------- */
/* Simulation and state-space diagnostics                                */
/* -------------------------------------------------------------------- */

/* Simulates n observations after discarding burn_in steps. y_out has length
 * n; x_out, when non-NULL, receives the matching latent values. Identical
 * inputs produce identical output. */
LODM_API lodm_status lodm_simulate(const lodm_model* model, long n,
                                   long burn_in, uint64_t seed, double* y_out,
                                   double* x_out);

/* Impulse response h_k of the companion-form recursion, k = 0..k_max;
 * h_out has length k_max + 1. */
LODM_API lodm_status lodm_impulse_response(const lodm_model* model, long k_max,
                                           double* h_out);

LODM_API lodm_status lodm_spectral_radius(const lodm_model* model,
                                          double* out_value);

/* Geometric gain 1 / (1 - sum a_k); fails outside the stability region. */
LODM_API lodm_status lodm_geometric_gain(const lodm_model* model,
                                         double* out_value);

/* Lipschitz constant of the n-fold iterated link (see documentation). */
LODM_API lodm_status lodm_lipschitz(const lodm_model* model, long n,
                                    double* out_value);

/* Monte Carlo estimate of E[ln+ |upsilon(Y)|] over a simulated path. */
LODM_API lodm_status lodm_moment_check(const lodm_model* model, long n_mc,
                                       uint64_t seed, double* out_estimate,
                                       double* out_std_error);

/* -------------------------------------------------------------------- */
/* Identifiability                                                       */
/* -------------------------------------------------------------------- */

/* Decides identifiability of the linear parameters at tolerance tol
 * (pass 0 for the default). out_json, when non-NULL, receives the full
 * report {invertible, coprime, common_roots, verdict}. */
LODM_API lodm_status lodm_check_identifiable(const lodm_model* model,
                                             double tol,
                                             lodm_verdict* out_verdict,
                                             char** out_json);

/* Builds the equivalence curve through a non-identifiable model. Fails with
 * LODM_ERR_NO_CURVE when the model is identifiable and with
 * LODM_ERR_NOT_INVERTIBLE when the stability condition fails. */
LODM_API lodm_status lodm_curve_create(const lodm_model* model, double tol,
                                       lodm_curve** out_curve);
LODM_API void lodm_curve_destroy(lodm_curve* curve);

/* Feasible parameter range [d_lo, d_hi] of the curve coordinate;
 * out_interior is 1 when 0 lies strictly inside. Any output may be NULL. */
LODM_API lodm_status lodm_curve_range(const lodm_curve* curve, double* out_lo,
                                      double* out_hi, int* out_interior);

/* Parameters at curve coordinate d: omega_out scalar, a_out length p,
 * b_out length q. Fails when d is outside the feasible range. */
LODM_API lodm_status lodm_curve_point(const lodm_curve* curve, double d,
                                      double* omega_out, double* a_out,
                                      double* b_out);

/* Curve as JSON: {base, dir_a, dir_b, d_range, interior}. */
LODM_API lodm_status lodm_curve_json(const lodm_curve* curve, char** out_json);

/* -------------------------------------------------------------------- */
/* Latent reconstruction and likelihood                                  */
/* -------------------------------------------------------------------- */

/* Latent path recovered from the observations by the link recursion started
 * at the model's default initialization; xhat_out has length n. */
LODM_API lodm_status lodm_latent_path(const lodm_model* model, const double* y,
                                      long n, double* xhat_out);

/* Truncated-series reconstruction of the latent value one step after the
 * window y[0..n-1] (higher indices are more recent). */
LODM_API lodm_status lodm_latent_reconstruct(const lodm_model* model,
                                             const double* y, long n,
                                             double* out_x);

/* Mean per-observation conditional log-likelihood with the first `discard`
 * terms dropped. */
LODM_API lodm_status lodm_conditional_loglik(const lodm_model* model,
                                             const double* y, long n,
                                             long discard, double* out_loglik);

/* Quasi-maximum-likelihood fit started at `start`. Outputs: omega_out
 * scalar, a_out length p, b_out length q, phi_out the fitted NBIN shape
 * (untouched for other families; may be NULL), plus the achieved mean
 * log-likelihood, iteration count and convergence flag (each may be NULL).
 * Pass max_iter = 0 for the default budget. Deterministic. */
LODM_API lodm_status lodm_fit_mle(const lodm_model* start, const double* y,
                                  long n, long discard, long max_iter,
                                  double* omega_out, double* a_out,
                                  double* b_out, double* phi_out,
                                  double* loglik_out, long* iterations_out,
                                  int* converged_out);

#ifdef __cplusplus
}
#endif

#endif /* LODM_H */
