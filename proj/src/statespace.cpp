#include "statespace.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "errors.hpp"
#include "poly.hpp"

namespace lodm {

Companion build_companion(double omega, std::span<const double> a,
                          std::span<const double> b) {
  const int p = static_cast<int>(a.size());
  const int q = static_cast<int>(b.size());
  if (p < 1 || q < 1) throw std::invalid_argument("order must be >= 1");

  Companion comp;
  comp.p = p;
  comp.q = q;
  comp.omega = omega;
  comp.a.assign(a.begin(), a.end());
  comp.b.assign(b.begin(), b.end());

  const int n = p + q - 1;
  comp.A = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j + 1 < p; ++j) comp.A(j, j + 1) = 1.0;  // x-block shift
  for (int i = 1; i <= p; ++i) comp.A(p - 1, p - i) = a[static_cast<size_t>(i) - 1];
  for (int j = p; j < n; ++j) comp.A(p - 1, j) = b[static_cast<size_t>(p + q - 1 - j)];
  for (int j = p; j + 1 < n; ++j) comp.A(j, j + 1) = 1.0;  // u-block shift

  comp.b_vec = Eigen::VectorXd::Zero(n);
  comp.b_vec(p - 1) = b[0];
  if (q > 1) comp.b_vec(n - 1) += 1.0;

  comp.omega_vec = Eigen::VectorXd::Zero(n);
  comp.omega_vec(p - 1) = omega;
  return comp;
}

std::vector<double> impulse_response(const Companion& comp, int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  std::vector<double> h(static_cast<size_t>(k_max) + 1);
  Eigen::VectorXd v = comp.b_vec;
  h[0] = v(comp.p - 1);
  for (int k = 1; k <= k_max; ++k) {
    v = comp.A * v;
    h[static_cast<size_t>(k)] = v(comp.p - 1);
  }
  return h;
}

double geometric_gain(std::span<const double> a) {
  if (!in_stability_region(a))
    throw NotInvertibleError("gain undefined outside stability region");
  const double s = std::accumulate(a.begin(), a.end(), 0.0);
  return 1.0 / (1.0 - s);
}

double geometric_gain_resolvent(std::span<const double> a) {
  if (!in_stability_region(a))
    throw NotInvertibleError("gain undefined outside stability region");
  const int p = static_cast<int>(a.size());
  const std::vector<double> unit_b{1.0};
  const Companion comp = build_companion(0.0, a, unit_b);  // q=1: p-square block
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p) - comp.A;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(p);
  e(p - 1) = 1.0;
  return e.dot(m.fullPivLu().solve(e));
}

std::vector<double> arma_recursion(std::span<const double> a,
                                   std::span<const double> b,
                                   std::span<const double> y,
                                   std::span<const double> x_pre,
                                   std::span<const double> y_pre, int k_max) {
  const int p = static_cast<int>(a.size());
  const int q = static_cast<int>(b.size());
  if (p < 1 || q < 1) throw std::invalid_argument("order must be >= 1");
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  if (static_cast<int>(y.size()) < k_max + 1)
    throw std::invalid_argument("observation sequence too short to drive the recursion");

  auto x_at = [&](const std::vector<double>& x, int t) -> double {
    if (t >= 0) return x[static_cast<size_t>(t)];
    const int lag = -t;  // x_{-lag}
    if (lag <= static_cast<int>(x_pre.size())) return x_pre[static_cast<size_t>(lag) - 1];
    return 0.0;
  };
  auto y_at = [&](int t) -> double {
    if (t >= 0) return y[static_cast<size_t>(t)];
    const int lag = -t;
    if (lag <= static_cast<int>(y_pre.size())) return y_pre[static_cast<size_t>(lag) - 1];
    return 0.0;
  };

  std::vector<double> x;
  x.reserve(static_cast<size_t>(k_max) + 1);
  for (int t = 0; t <= k_max; ++t) {
    double v = 0.0;
    for (int i = 1; i <= p; ++i) v += a[static_cast<size_t>(i) - 1] * x_at(x, t - i);
    for (int j = 1; j <= q; ++j) v += b[static_cast<size_t>(j) - 1] * y_at(t + 1 - j);
    x.push_back(v);
  }
  return x;
}

double spectral_radius(const Companion& comp) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp.A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed");
  double r = 0.0;
  for (int i = 0; i < comp.A.rows(); ++i) r = std::max(r, std::abs(solver.eigenvalues()(i)));
  return r;
}

}  // namespace lodm
