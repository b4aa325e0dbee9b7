#include "invert.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "models.hpp"
#include "poly.hpp"
#include "statespace.hpp"

namespace lodm {

std::vector<double> link_path(const ModelSpec& spec, const LodmParams& params,
                              std::span<const double> y, const InitPoint& z0) {
  if (y.empty()) throw std::invalid_argument("observation sequence is empty");
  if (params.a.size() != static_cast<size_t>(spec.p) ||
      params.b.size() != static_cast<size_t>(spec.q))
    throw std::invalid_argument("parameter lengths must match (p, q)");

  const long n = static_cast<long>(y.size());
  std::vector<double> xs(static_cast<size_t>(n) + 1);
  std::vector<double> us(static_cast<size_t>(n));
  xs[0] = z0.x_init;
  auto x_at = [&](long t) { return t >= 0 ? xs[static_cast<size_t>(t)] : z0.x_init; };
  auto u_at = [&](long t) { return t >= 0 ? us[static_cast<size_t>(t)] : z0.u_init; };

  const bool constrained = sign_constrained(spec.family);
  for (long k = 0; k < n; ++k) {
    us[static_cast<size_t>(k)] = upsilon(spec.family, y[static_cast<size_t>(k)]);
    double next = params.omega;
    for (int i = 1; i <= spec.p; ++i)
      next += params.a[static_cast<size_t>(i) - 1] * x_at(k + 1 - i);
    for (int j = 1; j <= spec.q; ++j)
      next += params.b[static_cast<size_t>(j) - 1] * u_at(k + 1 - j);
    if (!std::isfinite(next))
      throw std::runtime_error("link iteration diverged (latent value not finite)");
    if (constrained && !(next > 0.0))
      throw std::domain_error("link iteration left the latent domain");
    xs[static_cast<size_t>(k) + 1] = next;
  }
  return xs;
}

double iterate_link(const ModelSpec& spec, const LodmParams& params,
                    std::span<const double> y, const InitPoint& z0) {
  return link_path(spec, params, y, z0).back();
}

double latent_reconstruct(const LodmParams& params,
                          std::span<const double> upsilon_y) {
  if (upsilon_y.empty()) throw std::invalid_argument("observation window is empty");
  if (!in_stability_region(params.a))
    throw NotInvertibleError("not invertible (L-1 fails)");
  const Companion comp = build_companion(params.omega, params.a, params.b);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(comp.dim());
  row(comp.p - 1) = 1.0;
  const long n = static_cast<long>(upsilon_y.size()) - 1;
  double acc = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double u = upsilon_y[static_cast<size_t>(n - k)];
    acc += row.dot(comp.omega_vec + u * comp.b_vec);
    row = row * comp.A;
  }
  return acc;
}

double lipschitz_estimate(const LodmParams& params, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const Companion comp = build_companion(params.omega, params.a, params.b);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(comp.dim());
  row(comp.p - 1) = 1.0;
  for (int k = 0; k < n; ++k) row = row * comp.A;
  return row.lpNorm<1>();
}

int suggest_window(const LodmParams& params, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!in_stability_region(params.a))
    throw NotInvertibleError("not invertible (L-1 fails)");
  const Companion comp = build_companion(params.omega, params.a, params.b);
  const double sr = spectral_radius(comp);
  const double tail_factor = 1.0 / std::max(1e-12, 1.0 - sr);
  constexpr int kMaxWindow = 100000;
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(comp.dim());
  row(comp.p - 1) = 1.0;
  for (int n = 1; n <= kMaxWindow; ++n) {
    row = row * comp.A;
    if (row.lpNorm<1>() * tail_factor <= tol) return n;
  }
  return kMaxWindow;
}

MomentCheck moment_check(const ModelSpec& spec, const LodmParams& params,
                         long n_mc, std::uint64_t seed) {
  if (n_mc < 1) throw std::invalid_argument("n_mc must be >= 1");
  constexpr long kBurnIn = 1000;
  const Trajectory traj = simulate(spec, params, n_mc, kBurnIn, seed);
  double sum = 0.0, sumsq = 0.0;
  for (double yv : traj.y) {
    const double mag = std::abs(upsilon(spec.family, yv));
    const double v = mag > 1.0 ? std::log(mag) : 0.0;
    sum += v;
    sumsq += v * v;
  }
  const double n = static_cast<double>(n_mc);
  const double mean = sum / n;
  const double var = std::max(0.0, sumsq / n - mean * mean);
  MomentCheck out;
  out.estimate = mean;
  out.std_error = n_mc > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  out.n = n_mc;
  return out;
}

}  // namespace lodm
