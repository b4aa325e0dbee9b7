#include "inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "invert.hpp"
#include "models.hpp"
#include "poly.hpp"
#include "simplex.hpp"

namespace lodm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log coordinates for the families whose linear parameters are constrained
// positive; identity coordinates for the log-linear Poisson model. NBIN also
// carries log r as its last coordinate.
std::vector<double> encode(const ModelSpec& spec, const LodmParams& params) {
  std::vector<double> t;
  t.reserve(params.a.size() + params.b.size() + 2);
  const bool logspace = sign_constrained(spec.family);
  auto push = [&](double v, const char* what) {
    if (logspace) {
      if (!(v > 0.0))
        throw std::invalid_argument(std::string("fit start: ") + what +
                                    " must be strictly positive for this family");
      t.push_back(std::log(v));
    } else {
      t.push_back(v);
    }
  };
  push(params.omega, "omega");
  for (double v : params.a) push(v, "a coefficients");
  for (double v : params.b) push(v, "b coefficients");
  if (spec.family == Family::NbinGarch) {
    if (!params.phi || !(*params.phi > 0.0))
      throw std::invalid_argument("fit start: NbinGarch requires phi > 0");
    t.push_back(std::log(*params.phi));
  }
  return t;
}

LodmParams decode(const ModelSpec& spec, const std::vector<double>& t) {
  const bool logspace = sign_constrained(spec.family);
  auto pull = [&](double v) { return logspace ? std::exp(v) : v; };
  LodmParams params;
  size_t i = 0;
  params.omega = pull(t[i++]);
  params.a.resize(static_cast<size_t>(spec.p));
  for (double& v : params.a) v = pull(t[i++]);
  params.b.resize(static_cast<size_t>(spec.q));
  for (double& v : params.b) v = pull(t[i++]);
  if (spec.family == Family::NbinGarch) params.phi = std::exp(t[i++]);
  return params;
}

}  // namespace

double conditional_loglik(const ModelSpec& spec, const LodmParams& params,
                          std::span<const double> y, const InitPoint& z0,
                          long discard) {
  const long n = static_cast<long>(y.size());
  if (discard < 0 || discard >= n)
    throw std::invalid_argument("discard must satisfy 0 <= discard < n");
  if (!in_stability_region(params.a))
    throw NotInvertibleError("conditional likelihood requires a in the stability region");
  const std::vector<double> xhat = link_path(spec, params, y, z0);
  double sum = 0.0;
  for (long k = discard; k < n; ++k)
    sum += log_density(spec, params.phi, xhat[static_cast<size_t>(k)],
                       y[static_cast<size_t>(k)]);
  return sum / static_cast<double>(n - discard);
}

double conditional_loglik(const ModelSpec& spec, const LodmParams& params,
                          std::span<const double> y, long discard) {
  return conditional_loglik(spec, params, y, default_init(spec, params), discard);
}

FitResult fit_mle(const ModelSpec& spec, std::span<const double> y,
                  const LodmParams& start, const FitOptions& opts) {
  validate_params(spec, start);
  if (!in_stability_region(start.a))
    throw std::invalid_argument("fit start: a must be in the stability region");
  if (opts.discard < 0 || opts.discard >= static_cast<long>(y.size()))
    throw std::invalid_argument("discard must satisfy 0 <= discard < n");

  auto objective = [&](const std::vector<double>& t) -> double {
    LodmParams cand = decode(spec, t);
    if (!std::isfinite(cand.omega)) return kInf;
    for (double v : cand.a)
      if (!std::isfinite(v)) return kInf;
    for (double v : cand.b)
      if (!std::isfinite(v)) return kInf;
    if (!in_stability_region(cand.a)) return kInf;
    try {
      return -conditional_loglik(spec, cand, y, opts.discard);
    } catch (const std::exception&) {
      return kInf;
    }
  };

  SimplexOptions sopts;
  sopts.max_iter = opts.max_iter;
  sopts.ftol = opts.ftol;
  sopts.step = opts.step;

  std::vector<double> t = encode(spec, start);
  SimplexResult best = nelder_mead(objective, t, sopts);
  long total_iter = best.iterations;
  for (int r = 0; r < opts.restarts; ++r) {
    SimplexResult next = nelder_mead(objective, best.x, sopts);
    total_iter += next.iterations;
    const bool improved = next.fval < best.fval - sopts.ftol * (1.0 + std::abs(best.fval));
    if (next.fval < best.fval) best = next;
    if (!improved) break;
  }

  FitResult result;
  result.theta_hat = decode(spec, best.x);
  result.loglik = -best.fval;
  result.iterations = total_iter;
  result.converged = best.converged;
  result.start = start;
  return result;
}

std::vector<std::pair<double, double>> profile_along_curve(
    const ModelSpec& spec, std::span<const double> y, const EquivCurve& curve,
    std::span<const double> d_grid, long discard) {
  const InitPoint z0 = default_init(spec, curve.base);
  std::vector<std::pair<double, double>> profile;
  profile.reserve(d_grid.size());
  for (double d : d_grid) {
    const LodmParams point = curve_point(curve, d);
    profile.emplace_back(d, conditional_loglik(spec, point, y, z0, discard));
  }
  return profile;
}

}  // namespace lodm
