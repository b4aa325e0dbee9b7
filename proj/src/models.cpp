#include "models.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "poly.hpp"
#include "statespace.hpp"

namespace lodm {

namespace {

constexpr double kMaxLogIntensity = 700.0;  // exp() overflows just above this

void require_count(double y) {
  if (y < 0.0 || std::floor(y) != y)
    throw std::domain_error("count families require nonnegative integer observations");
}

double require_shape(const std::optional<double>& phi) {
  if (!phi || !(*phi > 0.0))
    throw std::domain_error("NbinGarch requires shape parameter r > 0");
  return *phi;
}

}  // namespace

double upsilon(Family family, double y) {
  switch (family) {
    case Family::GarchGaussian:
      return y * y;
    case Family::LogLinPoisson:
      require_count(y);
      return std::log1p(y);
    case Family::NbinGarch:
      require_count(y);
      return y;
  }
  throw std::invalid_argument("unknown family");
}

double log_density(const ModelSpec& spec, const std::optional<double>& phi,
                   double x, double y) {
  switch (spec.family) {
    case Family::GarchGaussian: {
      if (!(x > 0.0)) throw std::domain_error("GarchGaussian requires variance x > 0");
      return -0.5 * (std::log(2.0 * M_PI * x) + y * y / x);
    }
    case Family::LogLinPoisson: {
      require_count(y);
      if (std::abs(x) > kMaxLogIntensity)
        throw std::domain_error("log intensity out of representable range");
      return x * y - std::exp(x) - std::lgamma(y + 1.0);
    }
    case Family::NbinGarch: {
      const double r = require_shape(phi);
      require_count(y);
      if (!(x > 0.0)) throw std::domain_error("NbinGarch requires mean scale x > 0");
      return std::lgamma(r + y) - std::lgamma(y + 1.0) - std::lgamma(r) -
             r * std::log1p(x) + y * (std::log(x) - std::log1p(x));
    }
  }
  throw std::invalid_argument("unknown family");
}

double sample_obs(const ModelSpec& spec, const std::optional<double>& phi,
                  double x, std::mt19937_64& rng) {
  switch (spec.family) {
    case Family::GarchGaussian: {
      if (!(x > 0.0)) throw std::domain_error("GarchGaussian requires variance x > 0");
      std::normal_distribution<double> normal(0.0, std::sqrt(x));
      return normal(rng);
    }
    case Family::LogLinPoisson: {
      if (std::abs(x) > kMaxLogIntensity)
        throw std::domain_error("log intensity out of representable range");
      std::poisson_distribution<long long> poisson(std::exp(x));
      return static_cast<double>(poisson(rng));
    }
    case Family::NbinGarch: {
      const double r = require_shape(phi);
      if (!(x > 0.0)) throw std::domain_error("NbinGarch requires mean scale x > 0");
      // Gamma-Poisson mixture: G ~ Gamma(shape r, scale x), Y | G ~ Poisson(G).
      std::gamma_distribution<double> gamma(r, x);
      const double g = gamma(rng);
      if (!(g > 0.0)) return 0.0;
      std::poisson_distribution<long long> poisson(g);
      return static_cast<double>(poisson(rng));
    }
  }
  throw std::invalid_argument("unknown family");
}

InitPoint default_init(const ModelSpec& spec, const LodmParams& params) {
  const double u0 = upsilon(spec.family, 0.0);
  double x0 = params.omega;
  if (in_stability_region(params.a)) x0 = params.omega * geometric_gain(params.a);
  return {x0, u0};
}

Trajectory simulate(const ModelSpec& spec, const LodmParams& params, long n,
                    long burn_in, std::uint64_t seed,
                    const std::optional<InitPoint>& init) {
  validate_params(spec, params);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");

  const int p = spec.p;
  const int q = spec.q;
  const InitPoint z0 = init ? *init : default_init(spec, params);
  const long total = burn_in + n;

  std::vector<double> xs(static_cast<size_t>(total) + 1);
  std::vector<double> ys(static_cast<size_t>(total));
  std::vector<double> us(static_cast<size_t>(total));
  xs[0] = z0.x_init;

  auto x_at = [&](long t) { return t >= 0 ? xs[static_cast<size_t>(t)] : z0.x_init; };
  auto u_at = [&](long t) { return t >= 0 ? us[static_cast<size_t>(t)] : z0.u_init; };

  std::mt19937_64 rng(seed);
  for (long k = 0; k < total; ++k) {
    const double xk = xs[static_cast<size_t>(k)];
    const double yk = sample_obs(spec, params.phi, xk, rng);
    ys[static_cast<size_t>(k)] = yk;
    us[static_cast<size_t>(k)] = upsilon(spec.family, yk);
    double next = params.omega;
    for (int i = 1; i <= p; ++i)
      next += params.a[static_cast<size_t>(i) - 1] * x_at(k + 1 - i);
    for (int j = 1; j <= q; ++j)
      next += params.b[static_cast<size_t>(j) - 1] * u_at(k + 1 - j);
    if (!std::isfinite(next))
      throw std::runtime_error("simulation diverged (latent value not finite)");
    xs[static_cast<size_t>(k) + 1] = next;
  }

  Trajectory traj;
  traj.y.assign(ys.begin() + burn_in, ys.end());
  traj.x.assign(xs.begin() + burn_in, xs.end() - 1);
  traj.seed = seed;
  traj.burn_in = burn_in;
  traj.params = params;
  return traj;
}

bool standard_moment_condition(const LodmParams& params) {
  const double sa = std::accumulate(params.a.begin(), params.a.end(), 0.0);
  const double sb = std::accumulate(params.b.begin(), params.b.end(), 0.0);
  return sa + sb < 1.0;
}

}  // namespace lodm
