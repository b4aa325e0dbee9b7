#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "params.hpp"

namespace lodm {

/// Latent values x_hat_0 .. x_hat_n recovered by running the link recursion
/// over y_0 .. y_{n-1} from the initialization z0 (x_hat_0 = z0.x_init).
std::vector<double> link_path(const ModelSpec& spec, const LodmParams& params,
                              std::span<const double> y, const InitPoint& z0);

/// The iterated link f applied to y_0..y_k from z0, i.e. the last entry of
/// link_path: the latent value one step after the final observation.
double iterate_link(const ModelSpec& spec, const LodmParams& params,
                    std::span<const double> y, const InitPoint& z0);

/// Truncated series reconstruction of the latent value one step after the
/// window: sum_{k=0..n} e_p^T A^k (omega + upsilon_y[n-k] * b) where
/// upsilon_y holds the transformed observations of Y_{-n}..Y_0 in time
/// order. The truncation error decays geometrically in n. Throws when a is
/// outside the stability region (the series does not converge).
double latent_reconstruct(const LodmParams& params,
                          std::span<const double> upsilon_y);

/// Exact Lipschitz constant of the n-fold iterated linear link with respect
/// to the max metric on initializations: the l1 norm of the row e_p^T A^n.
double lipschitz_estimate(const LodmParams& params, int n);

/// Smallest window length whose geometric truncation bound falls below tol;
/// heuristic helper for choosing latent_reconstruct windows.
int suggest_window(const LodmParams& params, double tol);

struct MomentCheck {
  double estimate = 0.0;   // Monte Carlo mean of ln+ |upsilon(Y)|
  double std_error = 0.0;  // standard error of the mean
  long n = 0;
};

/// Monte Carlo estimate of the stationary moment E[ln+ |upsilon(Y)|] from a
/// simulated path of length n_mc after burn-in.
MomentCheck moment_check(const ModelSpec& spec, const LodmParams& params,
                         long n_mc, std::uint64_t seed);

}  // namespace lodm
