#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "poly.hpp"
#include "test_util.hpp"

using lodm::Poly;
using lodm::ar_polynomial;
using lodm::coprime;
using lodm::in_stability_region;
using lodm::ma_polynomial;
using lodm::poly_divide_exact;
using lodm::poly_gcd;
using lodm::roots;

namespace {

bool close(double u, double v, double tol = 1e-12) { return std::abs(u - v) <= tol; }

bool coeffs_close(const Poly& poly, const std::vector<double>& expect,
                  double tol = 1e-12) {
  if (poly.coeffs().size() != expect.size()) return false;
  for (size_t i = 0; i < expect.size(); ++i)
    if (!close(poly.coeffs()[i], expect[i], tol)) return false;
  return true;
}

}  // namespace

TEST_CASE("ar_polynomial builds the monic lag polynomial") {
  CHECK(coeffs_close(ar_polynomial(std::vector<double>{0.7, -0.1}), {1.0, -0.7, 0.1}));
  CHECK(coeffs_close(ar_polynomial(std::vector<double>{0.0}), {1.0, 0.0}));
  CHECK(coeffs_close(ar_polynomial(std::vector<double>{0.5, 0.4}), {1.0, -0.5, -0.4}));
  CHECK_THROWS_AS(ar_polynomial(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ma_polynomial normalizes leading zero coefficients") {
  CHECK(coeffs_close(ma_polynomial(std::vector<double>{0.4, -0.2}), {0.4, -0.2}));
  CHECK(ma_polynomial(std::vector<double>{0.0}).is_zero());
  const Poly q = ma_polynomial(std::vector<double>{0.0, 0.3});
  CHECK(q.degree() == 0);
  CHECK(coeffs_close(q, {0.3}));
  CHECK_THROWS_AS(ma_polynomial(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("roots match the quadratic-formula oracle") {
  // (z - 0.5)(z - 0.2) expanded; oracle fixes the expected values.
  const auto [r1, r2] = testutil::quadratic_roots(-0.7, 0.1);
  CHECK(close(r1.real(), 0.2, 1e-12));
  CHECK(close(r2.real(), 0.5, 1e-12));
  const auto rs = roots(Poly({1.0, -0.7, 0.1}));
  REQUIRE(rs.size() == 2);
  CHECK(close(rs[0].real(), 0.2, 1e-10));
  CHECK(close(rs[0].imag(), 0.0, 1e-10));
  CHECK(close(rs[1].real(), 0.5, 1e-10));

  const auto lin = roots(Poly({1.0, -1.0}));
  REQUIRE(lin.size() == 1);
  CHECK(close(lin[0].real(), 1.0));

  const auto imag_pair = roots(Poly({1.0, 0.0, 0.25}));
  REQUIRE(imag_pair.size() == 2);
  CHECK(close(imag_pair[0].imag(), -0.5, 1e-10));
  CHECK(close(imag_pair[1].imag(), 0.5, 1e-10));
  CHECK(close(imag_pair[0].real(), 0.0, 1e-10));

  CHECK_THROWS_AS(roots(Poly{}), std::invalid_argument);
  CHECK_THROWS_AS(roots(Poly::constant(2.0)), std::invalid_argument);
}

TEST_CASE("roots of random stable polynomials stay inside the disk with small residual") {
  std::mt19937_64 rng(2024);
  int accepted = 0;
  while (accepted < 200) {
    std::uniform_int_distribution<int> pdist(1, 5);
    const int p = pdist(rng);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> a(static_cast<size_t>(p));
    for (double& v : a) v = unif(rng);
    if (!in_stability_region(a)) continue;
    ++accepted;
    const Poly P = ar_polynomial(a);
    const double scale = 1e-8 * (1.0 + P.max_abs_coeff());
    for (const auto& r : roots(P)) {
      CHECK(std::abs(r) < 1.0);
      CHECK(std::abs(P(r)) <= scale);
    }
  }
}

TEST_CASE("stability region membership") {
  CHECK(in_stability_region(std::vector<double>{0.5}));
  CHECK_FALSE(in_stability_region(std::vector<double>{1.0}));
  // Quadratic oracle: roots of z^2 - 0.5z - 0.4 are (0.5 +- sqrt(1.85)) / 2,
  // approximately 0.9301 and -0.4301.
  const auto [r1, r2] = testutil::quadratic_roots(-0.5, -0.4);
  CHECK(close(r2.real(), (0.5 + std::sqrt(1.85)) / 2.0, 1e-14));
  CHECK(close(r1.real(), (0.5 - std::sqrt(1.85)) / 2.0, 1e-14));
  CHECK(close(r2.real(), 0.9300735254367721, 1e-10));
  CHECK(in_stability_region(std::vector<double>{0.5, 0.4}));
  // Margin parameter tightens the disk.
  CHECK_FALSE(in_stability_region(std::vector<double>{0.5, 0.4}, 0.1));
}

TEST_CASE("stability region agrees with dense grid evaluation of 1 - sum a_k z^k") {
  // Winding-number style oracle on the unit circle: the verdict "no zero in
  // the closed disk" is equivalent to zero winding of the boundary curve.
  auto grid_stable = [](const std::vector<double>& a) {
    const int kn = 10000;
    double winding = 0.0;
    std::complex<double> prev;
    for (int i = 0; i <= kn; ++i) {
      const double lam = 2.0 * M_PI * static_cast<double>(i) / kn;
      const std::complex<double> z = std::polar(1.0, lam);
      std::complex<double> f = 1.0;
      std::complex<double> zp = 1.0;
      for (double ak : a) {
        zp *= z;
        f -= ak * zp;
      }
      if (i > 0) winding += std::arg(f / prev);
      prev = f;
    }
    return std::abs(winding) < M_PI;  // winding number 0
  };

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pdist(1, 4);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  int stable_seen = 0, unstable_seen = 0;
  while (stable_seen < 50 || unstable_seen < 50) {
    const int p = pdist(rng);
    std::vector<double> a(static_cast<size_t>(p));
    for (double& v : a) v = unif(rng);
    // Skip draws whose roots hug the unit circle; no finite grid resolves those.
    double max_mod = 0.0;
    for (const auto& r : roots(ar_polynomial(a))) max_mod = std::max(max_mod, std::abs(r));
    if (max_mod > 0.97 && max_mod < 1.03) continue;
    const bool verdict = in_stability_region(a);
    if (verdict && stable_seen >= 50) continue;
    if (!verdict && unstable_seen >= 50) continue;
    (verdict ? stable_seen : unstable_seen) += 1;
    CHECK(grid_stable(a) == verdict);
  }
}

TEST_CASE("poly_gcd recovers shared factors") {
  const Poly P({1.0, -0.7, 0.1});
  const Poly Q({0.4, -0.2});

  // Oracle: one synthetic division step shows (z - 0.5) divides P exactly.
  const auto [quot, rem] = testutil::synthetic_division({1.0, -0.7, 0.1}, 0.5);
  CHECK(close(rem, 0.0));
  CHECK(close(quot[0], 1.0));
  CHECK(close(quot[1], -0.2));

  const Poly g = poly_gcd(P, Q, 1e-9);
  CHECK(coeffs_close(g, {1.0, -0.5}, 1e-12));

  CHECK(coeffs_close(poly_gcd(P, Poly::constant(0.3), 1e-9), {1.0}));
  CHECK(coeffs_close(poly_gcd(Poly({1.0, -0.5}), Poly{}, 1e-9), {1.0, -0.5}));
  CHECK_THROWS_AS(poly_gcd(Poly{}, Poly{}, 1e-9), std::invalid_argument);
}

TEST_CASE("coprime matches the b1 != 0 rule for first order models") {
  CHECK(coprime(ar_polynomial(std::vector<double>{0.5}),
                ma_polynomial(std::vector<double>{0.3}), 1e-9));
  CHECK_FALSE(coprime(ar_polynomial(std::vector<double>{0.5}),
                      ma_polynomial(std::vector<double>{0.0}), 1e-9));
  CHECK_FALSE(coprime(Poly({1.0, -0.7, 0.1}), Poly({0.4, -0.2}), 1e-9));
}

TEST_CASE("coprime verdict is invariant under scaling of Q") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-0.9, 0.9);
  std::uniform_real_distribution<double> scale_dist(0.01, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a{unif(rng), 0.2 * unif(rng)};
    std::vector<double> b{unif(rng), unif(rng)};
    const Poly P = ar_polynomial(a);
    const Poly Q = ma_polynomial(b);
    if (Q.is_zero()) continue;
    const bool base = coprime(P, Q, 1e-9);
    const double lambda = scale_dist(rng) * (trial % 2 == 0 ? 1.0 : -1.0);
    CHECK(coprime(P, lambda * Q, 1e-9) == base);
  }
}

TEST_CASE("poly_divide_exact matches synthetic division") {
  const auto [q1, r1] = testutil::synthetic_division({1.0, -0.7, 0.1}, 0.5);
  CHECK(close(r1, 0.0));
  const Poly c1 = poly_divide_exact(Poly({1.0, -0.7, 0.1}), Poly({1.0, -0.5}), 1e-9);
  CHECK(coeffs_close(c1, q1, 1e-12));

  const auto [q2, r2] = testutil::synthetic_division({0.4, -0.2}, 0.5);
  CHECK(close(r2, 0.0));
  const Poly c2 = poly_divide_exact(Poly({0.4, -0.2}), Poly({1.0, -0.5}), 1e-9);
  CHECK(coeffs_close(c2, q2, 1e-12));

  const Poly arbitrary({2.0, -1.0, 0.25});
  CHECK(coeffs_close(poly_divide_exact(arbitrary, Poly::constant(1.0), 1e-9),
                     arbitrary.coeffs()));

  CHECK_THROWS_WITH_AS(poly_divide_exact(Poly({1.0, 0.0, 0.1}), Poly({1.0, -0.5}), 1e-9),
                       "not divisible", std::invalid_argument);
}

TEST_CASE("gcd times quotient reconstructs the product") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> deg_dist(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    auto random_poly = [&](int deg) {
      std::vector<double> c(static_cast<size_t>(deg) + 1);
      for (double& v : c) v = unif(rng);
      if (std::abs(c[0]) < 0.1) c[0] = 0.5;
      return Poly(c);
    };
    const Poly U = random_poly(deg_dist(rng));
    const Poly C = random_poly(deg_dist(rng));
    const Poly D = random_poly(deg_dist(rng));
    const Poly P = U * C;
    const Poly Q = U * D;
    const Poly g = poly_gcd(P, Q, 1e-9);
    if (g.degree() != U.degree()) continue;  // C and D accidentally shared a root
    const Poly quot = poly_divide_exact(P, g, 1e-6);
    const Poly back = g * quot;
    REQUIRE(back.coeffs().size() == P.coeffs().size());
    const double scale = std::max(1.0, P.max_abs_coeff());
    for (size_t i = 0; i < P.coeffs().size(); ++i)
      CHECK(std::abs(back.coeffs()[i] - P.coeffs()[i]) <= 1e-9 * scale);
  }
}

TEST_CASE("polynomial evaluation is Horner expansion") {
  const Poly P({2.0, -3.0, 1.0});  // 2z^2 - 3z + 1
  CHECK(close(P(2.0), 2.0 * 4.0 - 6.0 + 1.0));
  const std::complex<double> z(0.3, 0.7);
  const std::complex<double> direct = 2.0 * z * z - 3.0 * z + 1.0;
  CHECK(std::abs(P(z) - direct) < 1e-14);
}
