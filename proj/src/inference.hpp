#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ident.hpp"
#include "params.hpp"

namespace lodm {

struct FitOptions {
  long max_iter = 2000;
  double ftol = 1e-9;
  double step = 0.2;     // initial simplex displacement in transformed space
  int restarts = 2;      // re-runs of the simplex from the incumbent best
  long discard = 100;    // likelihood terms dropped to wash out initialization
};

struct FitResult {
  LodmParams theta_hat;
  double loglik = 0.0;  // conditional_loglik at theta_hat on the fitted data
  long iterations = 0;
  bool converged = false;
  LodmParams start;
};

/// Mean per-observation conditional log-likelihood: the latent path is
/// recovered from z0 by the link recursion and the first `discard` terms are
/// dropped. Throws when a is outside the stability region.
double conditional_loglik(const ModelSpec& spec, const LodmParams& params,
                          std::span<const double> y, const InitPoint& z0,
                          long discard);

/// Same, initialized at default_init(spec, params).
double conditional_loglik(const ModelSpec& spec, const LodmParams& params,
                          std::span<const double> y, long discard);

/// Quasi-maximum-likelihood fit by Nelder-Mead in a transformed parameter
/// space (log coordinates for the positivity-constrained families, which
/// also fit the NBIN shape r). Proposals outside the stability region score
/// -infinity, so the maximized function is exactly the likelihood on the
/// feasible set. Deterministic for fixed inputs. The start must be strictly
/// feasible (interior of the sign constraints, a in the stability region).
FitResult fit_mle(const ModelSpec& spec, std::span<const double> y,
                  const LodmParams& start, const FitOptions& opts = {});

/// Conditional log-likelihood at curve_point(d) for every d in d_grid, all
/// evaluated with the same initialization (the base point's default) and the
/// same discard.
std::vector<std::pair<double, double>> profile_along_curve(
    const ModelSpec& spec, std::span<const double> y, const EquivCurve& curve,
    std::span<const double> d_grid, long discard);

}  // namespace lodm
