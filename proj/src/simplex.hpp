#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace lodm {

struct SimplexOptions {
  long max_iter = 2000;
  double ftol = 1e-9;   // relative spread of simplex values at convergence
  double step = 0.2;    // initial per-coordinate displacement
};

struct SimplexResult {
  std::vector<double> x;
  double fval = std::numeric_limits<double>::infinity();
  long iterations = 0;
  bool converged = false;
};

/// Nelder-Mead downhill simplex minimization. The objective may return
/// +infinity to reject infeasible points. Fully deterministic.
inline SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const SimplexOptions& opts) {
  const size_t n = x0.size();
  constexpr double kAlpha = 1.0, kGamma = 2.0, kRho = 0.5, kSigma = 0.5;

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.step;
  std::vector<double> fv(n + 1);
  for (size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  auto order = [&]() {
    std::vector<size_t> idx(n + 1);
    for (size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t u, size_t v) { return fv[u] < fv[v]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> f2(n + 1);
    for (size_t i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      f2[i] = fv[idx[i]];
    }
    pts.swap(p2);
    fv.swap(f2);
  };

  SimplexResult res;
  long iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    order();
    if (std::isfinite(fv[0]) && std::isfinite(fv[n]) &&
        std::abs(fv[n] - fv[0]) <= opts.ftol * (1.0 + std::abs(fv[0]))) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);

    auto affine = [&](const std::vector<double>& from, double t) {
      std::vector<double> out(n);
      for (size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (from[j] - centroid[j]);
      return out;
    };

    const std::vector<double> xr = affine(pts[n], -kAlpha);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const std::vector<double> xe = affine(pts[n], -kAlpha * kGamma);
      const double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      const std::vector<double> xc =
          outside ? affine(pts[n], -kAlpha * kRho) : affine(pts[n], kRho);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[n])) {
        pts[n] = xc;
        fv[n] = fc;
      } else {
        for (size_t i = 1; i <= n; ++i) {
          for (size_t j = 0; j < n; ++j)
            pts[i][j] = pts[0][j] + kSigma * (pts[i][j] - pts[0][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.fval = fv[0];
  res.iterations = iter;
  return res;
}

}  // namespace lodm
