#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "params.hpp"

namespace lodm {

/// A simulated path. x holds the latent values matching y; meta fields
/// record how the path was produced.
struct Trajectory {
  std::vector<double> y;
  std::vector<double> x;
  std::uint64_t seed = 0;
  long burn_in = 0;
  LodmParams params;
};

/// Observation transform through which the link sees the data:
/// y^2 (GARCH), log(1+y) (log-linear Poisson), y (NBIN).
/// Count families reject negative or non-integer observations.
double upsilon(Family family, double y);

/// log g(x; y) of the family's observation kernel. Finite for all in-domain
/// (x, y); domain violations throw.
double log_density(const ModelSpec& spec, const std::optional<double>& phi,
                   double x, double y);

/// One draw from the observation kernel at latent value x.
double sample_obs(const ModelSpec& spec, const std::optional<double>& phi,
                  double x, std::mt19937_64& rng);

/// Fixed point of the noiseless recursion: x = omega * gain(a) when a is in
/// the stability region (omega otherwise), u = upsilon(default observation 0).
InitPoint default_init(const ModelSpec& spec, const LodmParams& params);

/// Iterates the model recursion from init (default: default_init), discards
/// burn_in steps and returns n observations with their latent values.
/// Identical inputs give identical output. Does not require a in the
/// stability region (callers are expected to warn); throws if the latent
/// path diverges.
Trajectory simulate(const ModelSpec& spec, const LodmParams& params, long n,
                    long burn_in, std::uint64_t seed,
                    const std::optional<InitPoint>& init = std::nullopt);

/// Standard sufficient moment condition sum(a) + sum(b) < 1 used to warn
/// about likely non-stationarity of the sign-constrained families.
bool standard_moment_condition(const LodmParams& params);

}  // namespace lodm
