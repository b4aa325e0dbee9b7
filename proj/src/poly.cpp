#include "poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lodm {

namespace {

std::vector<double> strip_leading_zeros(std::vector<double> c) {
  size_t k = 0;
  while (k < c.size() && c[k] == 0.0) ++k;
  c.erase(c.begin(), c.begin() + static_cast<long>(k));
  return c;
}

}  // namespace

Poly::Poly(std::vector<double> coeffs)
    : coeffs_(strip_leading_zeros(std::move(coeffs))) {}

double Poly::coeff(int power) const {
  if (power < 0 || power > degree() || is_zero()) return 0.0;
  return coeffs_[coeffs_.size() - 1 - static_cast<size_t>(power)];
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::complex<double> Poly::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (double c : coeffs_) acc = acc * z + c;
  return acc;
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * x + c;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero())
    throw std::invalid_argument("monic: zero polynomial has no normalization");
  std::vector<double> c = coeffs_;
  const double lead = c.front();
  for (double& v : c) v /= lead;
  c.front() = 1.0;
  return Poly(std::move(c));
}

Poly Poly::truncate_leading(double eps) const {
  std::vector<double> c = coeffs_;
  size_t k = 0;
  while (k < c.size() && std::abs(c[k]) <= eps) ++k;
  c.erase(c.begin(), c.begin() + static_cast<long>(k));
  return Poly(std::move(c));
}

Poly operator+(const Poly& lhs, const Poly& rhs) {
  const size_t n = std::max(lhs.coeffs_.size(), rhs.coeffs_.size());
  std::vector<double> c(n, 0.0);
  for (size_t i = 0; i < lhs.coeffs_.size(); ++i)
    c[n - lhs.coeffs_.size() + i] += lhs.coeffs_[i];
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i)
    c[n - rhs.coeffs_.size() + i] += rhs.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& lhs, const Poly& rhs) { return lhs + (-1.0 * rhs); }

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return Poly{};
  std::vector<double> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
      c[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return Poly(std::move(c));
}

Poly operator*(double s, const Poly& poly) {
  std::vector<double> c = poly.coeffs_;
  for (double& v : c) v *= s;
  return Poly(std::move(c));
}

Poly ar_polynomial(std::span<const double> a) {
  if (a.empty()) throw std::invalid_argument("order must be >= 1");
  std::vector<double> c(a.size() + 1);
  c[0] = 1.0;
  for (size_t k = 0; k < a.size(); ++k) c[k + 1] = -a[k];
  return Poly(std::move(c));
}

Poly ma_polynomial(std::span<const double> b) {
  if (b.empty()) throw std::invalid_argument("order must be >= 1");
  return Poly(std::vector<double>(b.begin(), b.end()));
}

std::vector<std::complex<double>> roots(const Poly& poly) {
  if (poly.is_zero() || poly.degree() == 0)
    throw std::invalid_argument("no roots defined");
  const Poly m = poly.monic();
  const int n = m.degree();
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<size_t>(n));
  if (n == 1) {
    out.emplace_back(-m.coeffs()[1], 0.0);
    return out;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -m.coeffs()[static_cast<size_t>(j) + 1];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("root finding failed to converge");
  for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return out;
}

bool in_stability_region(std::span<const double> a, double margin) {
  const Poly P = ar_polynomial(a);
  if (P.degree() == 0) throw std::invalid_argument("order must be >= 1");
  for (const auto& r : roots(P))
    if (std::abs(r) >= 1.0 - margin) return false;
  return true;
}

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
  if (den.is_zero())
    throw std::invalid_argument("poly_divmod: division by zero polynomial");
  if (num.is_zero() || num.degree() < den.degree()) return {Poly{}, num};
  std::vector<double> rem(num.coeffs());
  const std::vector<double>& d = den.coeffs();
  const size_t qn = rem.size() - d.size() + 1;
  std::vector<double> quot(qn, 0.0);
  for (size_t i = 0; i < qn; ++i) {
    const double f = rem[i] / d[0];
    quot[i] = f;
    for (size_t j = 1; j < d.size(); ++j) rem[i + j] -= f * d[j];
    rem[i] = 0.0;
  }
  return {Poly(std::move(quot)),
          Poly(std::vector<double>(rem.begin() + static_cast<long>(qn), rem.end()))};
}

Poly poly_gcd(const Poly& P, const Poly& Q, double tol) {
  if (P.is_zero() && Q.is_zero())
    throw std::invalid_argument("poly_gcd: both polynomials are zero");
  if (P.is_zero()) return Q.monic();
  if (Q.is_zero()) return P.monic();

  Poly r0 = P.monic();
  Poly r1 = Q.monic();
  if (r0.degree() < r1.degree()) std::swap(r0, r1);
  while (true) {
    if (r1.degree() == 0) return Poly::constant(1.0);
    auto [quot, rem] = poly_divmod(r0, r1);
    (void)quot;
    const double scale = std::max({1.0, r0.max_abs_coeff(), r1.max_abs_coeff()});
    const Poly clipped = rem.truncate_leading(tol * scale);
    if (clipped.is_zero() || clipped.max_abs_coeff() <= tol * scale)
      return r1.monic();
    r0 = r1;
    r1 = clipped.monic();
  }
}

bool coprime(const Poly& P, const Poly& Q, double tol) {
  return poly_gcd(P, Q, tol).degree() == 0;
}

Poly poly_divide_exact(const Poly& P, const Poly& U, double tol) {
  if (U.is_zero())
    throw std::invalid_argument("poly_divide_exact: division by zero polynomial");
  if (P.is_zero()) return Poly{};
  auto [quot, rem] = poly_divmod(P, U);
  const double scale = std::max(1.0, P.max_abs_coeff());
  if (rem.max_abs_coeff() > tol * scale)
    throw std::invalid_argument("not divisible");
  return quot;
}

}  // namespace lodm
