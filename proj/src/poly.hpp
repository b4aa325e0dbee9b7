#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace lodm {

/// Default relative tolerance for numerically deciding divisibility and
/// coprimality. Exact algebra does not survive floating point; every GCD
/// style decision below is made relative to coefficient max-norm scale.
inline constexpr double kCoprimeTol = 1e-9;

/// Real-coefficient polynomial in one complex variable.
///
/// Coefficients are stored highest degree first. The representation is
/// canonical: the leading coefficient is nonzero, and the zero polynomial
/// is the empty coefficient vector. Evaluation is Horner's scheme.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);

  static Poly constant(double c) { return Poly({c}); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const {
    return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
  }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.front(); }
  /// Coefficient of z^power (0 when power exceeds the degree or poly is zero).
  double coeff(int power) const;
  double max_abs_coeff() const;

  std::complex<double> operator()(std::complex<double> z) const;
  double operator()(double x) const;

  /// Same roots, leading coefficient 1. Error on the zero polynomial.
  Poly monic() const;

  /// Drops leading coefficients with |c| <= eps; all below eps gives zero.
  Poly truncate_leading(double eps) const;

  friend Poly operator+(const Poly& lhs, const Poly& rhs);
  friend Poly operator-(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(double s, const Poly& poly);

 private:
  std::vector<double> coeffs_;  // highest degree first; empty == zero
};

/// Monic lag polynomial of the autoregressive part:
///   z^p - a_1 z^{p-1} - ... - a_p.
/// Its roots lie strictly inside the unit circle exactly when a is in the
/// stability region.
Poly ar_polynomial(std::span<const double> a);

/// Observation-side polynomial b_1 z^{q-1} + b_2 z^{q-2} + ... + b_q,
/// normalized (leading zero b's lower the degree; all-zero b is the zero
/// polynomial).
Poly ma_polynomial(std::span<const double> b);

/// All complex roots with multiplicity, computed as eigenvalues of the
/// monic companion matrix. Deterministic for fixed input; sorted by
/// (real, imag). Error on zero or constant polynomials.
std::vector<std::complex<double>> roots(const Poly& poly);

/// True when every root of ar_polynomial(a) has modulus < 1 - margin.
/// Equivalently 1 - sum a_k z^k has no zero in the closed unit disk.
bool in_stability_region(std::span<const double> a, double margin = 0.0);

/// Numerically tolerant Euclidean GCD, returned monic. Remainders whose
/// max-norm falls below tol (relative to coefficient scale) are treated as
/// zero. A degree-0 result means the inputs are coprime. A zero Q returns
/// monic P (every root of P is common). Error when both inputs are zero.
Poly poly_gcd(const Poly& P, const Poly& Q, double tol = kCoprimeTol);

/// True when poly_gcd(P, Q, tol) has degree 0, i.e. P and Q share no
/// complex root at the given tolerance.
bool coprime(const Poly& P, const Poly& Q, double tol = kCoprimeTol);

/// Quotient P / U when U divides P within tol (relative to the scale of P);
/// error "not divisible" otherwise. Zero P divides exactly into zero.
Poly poly_divide_exact(const Poly& P, const Poly& U, double tol = kCoprimeTol);

/// Quotient and remainder of polynomial long division by a nonzero divisor.
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den);

}  // namespace lodm
