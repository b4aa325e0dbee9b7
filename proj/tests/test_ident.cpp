#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "ident.hpp"
#include "poly.hpp"
#include "statespace.hpp"
#include "test_util.hpp"

using lodm::EquivCurve;
using lodm::Family;
using lodm::IdentReport;
using lodm::LodmParams;
using lodm::ModelSpec;
using lodm::Poly;
using lodm::Verdict;
using lodm::check_identifiable;
using lodm::curve_point;
using lodm::equivalence_curve;
using lodm::equivalent;

namespace {

LodmParams make_params(double omega, std::vector<double> a, std::vector<double> b,
                       std::optional<double> phi = std::nullopt) {
  LodmParams params;
  params.omega = omega;
  params.a = std::move(a);
  params.b = std::move(b);
  params.phi = phi;
  return params;
}

const ModelSpec loglin22{Family::LogLinPoisson, 2, 2};

// The recurring worked example: P* = (z-0.5)(z-0.2), Q* = 0.4 (z-0.5).
LodmParams worked_example() { return make_params(0.1, {0.7, -0.1}, {0.4, -0.2}); }

}  // namespace

TEST_CASE("verdicts reproduce the first-order b1 rule") {
  const IdentReport yes = check_identifiable(make_params(0.1, {0.5}, {0.3}));
  CHECK(yes.verdict == Verdict::Identifiable);
  CHECK(yes.invertible);
  CHECK(yes.coprime);
  CHECK(yes.common_roots.empty());

  const IdentReport no = check_identifiable(make_params(0.1, {0.5}, {0.0}));
  CHECK(no.verdict == Verdict::NotIdentifiable);
  CHECK(no.invertible);
  CHECK_FALSE(no.coprime);
  REQUIRE(no.common_roots.size() == 1);
  CHECK(no.common_roots[0].real() == doctest::Approx(0.5).epsilon(1e-12));

  const IdentReport unstable = check_identifiable(make_params(0.1, {1.2}, {0.3}));
  CHECK(unstable.verdict == Verdict::InvertibilityFails);
  CHECK_FALSE(unstable.invertible);
}

TEST_CASE("shared root is detected and reported") {
  const IdentReport report = check_identifiable(worked_example());
  CHECK(report.verdict == Verdict::NotIdentifiable);
  REQUIRE(report.common_roots.size() == 1);
  CHECK(report.common_roots[0].real() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.common_roots[0].imag() == doctest::Approx(0.0));
}

TEST_CASE("verdict is invariant under scaling of b") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  std::uniform_real_distribution<double> scale(0.05, 20.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto params = make_params(0.1, {unif(rng), 0.1 * unif(rng)},
                                    {unif(rng), unif(rng)});
    const auto base = check_identifiable(params);
    auto scaled = params;
    const double lambda = scale(rng) * (trial % 2 ? -1.0 : 1.0);
    for (double& v : scaled.b) v *= lambda;
    CHECK(check_identifiable(scaled).coprime == base.coprime);
  }
}

TEST_CASE("equivalent: reflexive, discriminating, and an equivalence relation") {
  const auto base = make_params(0.1, {0.5}, {0.3});
  CHECK(equivalent(base, base));

  // Hand computation: h_1 = a*b differs (0.15 vs 0.12).
  CHECK_FALSE(equivalent(base, make_params(0.1, {0.4}, {0.3})));

  CHECK_THROWS_AS(equivalent(base, make_params(0.1, {1.1}, {0.3})),
                  lodm::NotInvertibleError);

  // Symmetry and transitivity along a constructed curve.
  const EquivCurve curve = equivalence_curve(loglin22, worked_example());
  const LodmParams p1 = curve_point(curve, 0.05);
  const LodmParams p2 = curve_point(curve, -0.08);
  CHECK(equivalent(p1, worked_example()));
  CHECK(equivalent(worked_example(), p1));
  CHECK(equivalent(p1, p2, 200, 2e-9));
}

TEST_CASE("identifiable parameters admit no accidental equivalences") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unif(-0.7, 0.7);
  int tested = 0;
  while (tested < 100) {
    const auto params = make_params(0.2 + std::abs(unif(rng)),
                                    {unif(rng), 0.2 * unif(rng)},
                                    {unif(rng), unif(rng)});
    const auto report = check_identifiable(params);
    if (report.verdict != Verdict::Identifiable) continue;
    ++tested;
    // Perturb one random coordinate well above the equivalence tolerance.
    std::uniform_int_distribution<int> which(0, 4);
    auto bumped = params;
    const double delta = 1e-6;
    switch (which(rng)) {
      case 0: bumped.omega += delta; break;
      case 1: bumped.a[0] += delta; break;
      case 2: bumped.a[1] += delta; break;
      case 3: bumped.b[0] += delta; break;
      default: bumped.b[1] += delta; break;
    }
    if (!lodm::in_stability_region(bumped.a)) continue;
    CHECK_FALSE(equivalent(params, bumped, 200, 1e-9));
  }
}

TEST_CASE("equivalence curve on the worked example") {
  // Oracle: synthetic division fixes U = z - 0.5, C = z - 0.2, D = 0.4,
  // hence a(d) = (0.7 - d, -0.1 + 0.2 d), b(d) = (0.4, -0.2 + 0.4 d) and
  // omega(d) = 0.1 (1 + 2 d).
  const auto [c_quot, c_rem] = testutil::synthetic_division({1.0, -0.7, 0.1}, 0.5);
  REQUIRE(c_rem == doctest::Approx(0.0));
  REQUIRE(c_quot.size() == 2);
  REQUIRE(c_quot[0] == doctest::Approx(1.0));
  REQUIRE(c_quot[1] == doctest::Approx(-0.2));

  const EquivCurve curve = equivalence_curve(loglin22, worked_example());
  REQUIRE(curve.dir_a.size() == 2);
  REQUIRE(curve.dir_b.size() == 1);
  CHECK(curve.dir_a[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(curve.dir_a[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(curve.dir_b[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(curve.d_lo <= -0.4);
  CHECK(curve.d_hi >= 0.4);
  CHECK(curve.interior);

  SUBCASE("d = 0 reproduces the base exactly") {
    const LodmParams at0 = curve_point(curve, 0.0);
    CHECK(at0.omega == 0.1);
    CHECK(at0.a == worked_example().a);
    CHECK(at0.b == worked_example().b);
  }
  SUBCASE("d = 0.1 matches the substituted values") {
    const LodmParams at = curve_point(curve, 0.1);
    CHECK(at.omega == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(at.a[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(at.a[1] == doctest::Approx(-0.08).epsilon(1e-12));
    CHECK(at.b[0] == 0.4);
    CHECK(at.b[1] == doctest::Approx(-0.16).epsilon(1e-12));
    CHECK(equivalent(at, worked_example(), 200, 1e-10));
  }
  SUBCASE("points on the curve stay non-identifiable with one common root") {
    for (double d : {-0.3, -0.05, 0.15, 0.35}) {
      const auto report = check_identifiable(curve_point(curve, d));
      CHECK(report.verdict == Verdict::NotIdentifiable);
      CHECK(report.common_roots.size() == 1);
    }
  }
  SUBCASE("d outside the range is rejected") {
    CHECK_THROWS_AS(curve_point(curve, curve.d_hi + 1.0), std::out_of_range);
    CHECK_THROWS_AS(curve_point(curve, curve.d_lo - 1.0), std::out_of_range);
  }
}

TEST_CASE("curve for the first-order b1 = 0 degenerate case") {
  const ModelSpec garch11{Family::GarchGaussian, 1, 1};
  const auto base = make_params(0.2, {0.5}, {0.0});
  const EquivCurve curve = equivalence_curve(garch11, base);
  REQUIRE(curve.dir_a.size() == 1);
  CHECK(curve.dir_a[0] == doctest::Approx(-1.0));
  CHECK(curve.dir_b.empty());
  // omega(d) preserves omega / (1 - a) = 0.4 along the curve.
  for (double d : {-0.2, 0.1, 0.3}) {
    const LodmParams at = curve_point(curve, d);
    CHECK(at.a[0] == doctest::Approx(0.5 - d).epsilon(1e-12));
    CHECK(at.omega / (1.0 - at.a[0]) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(at.b[0] == 0.0);
  }
  // The GARCH sign constraints clip the positive side at a(d) >= 0.
  CHECK(curve.d_hi <= 0.5 + 1e-9);
  CHECK(curve.d_hi >= 0.5 - 1e-6);
}

TEST_CASE("curve construction errors") {
  CHECK_THROWS_AS(
      equivalence_curve(ModelSpec{Family::GarchGaussian, 1, 1},
                        make_params(0.1, {0.5}, {0.3})),
      lodm::NoCurveError);
  CHECK_THROWS_AS(
      equivalence_curve(loglin22, make_params(0.1, {1.4, -0.3}, {0.4, -0.2})),
      lodm::NotInvertibleError);
}

TEST_CASE("random curves satisfy the polynomial identity and impulse equality") {
  std::mt19937_64 rng(616);
  std::uniform_real_distribution<double> root_dist(-0.85, 0.85);
  std::uniform_real_distribution<double> coef_dist(0.2, 1.5);
  int built = 0;
  while (built < 25) {
    // Construct a shared factor by giving P and Q a common root.
    const double shared = root_dist(rng);
    const double other = root_dist(rng);
    const double scale = coef_dist(rng);
    // P = (z - shared)(z - other), Q = scale (z - shared).
    const auto params = make_params(
        0.3, {shared + other, -shared * other}, {scale, -scale * shared});
    if (!lodm::in_stability_region(params.a, 0.02)) continue;
    ++built;

    const EquivCurve curve = equivalence_curve(loglin22, params);
    const Poly Pstar = lodm::ar_polynomial(params.a);
    const Poly Qstar = lodm::ma_polynomial(params.b);
    const double gain_star = lodm::geometric_gain(params.a);

    std::uniform_real_distribution<double> d_dist(curve.d_lo, curve.d_hi);
    for (int j = 0; j < 20; ++j) {
      const double d = d_dist(rng);
      const LodmParams at = curve_point(curve, d);
      // (a) polynomial identity Q* P_d == P* Q_d
      const Poly Pd = lodm::ar_polynomial(at.a);
      const Poly Qd = lodm::ma_polynomial(at.b);
      const Poly diff = Qstar * Pd - Pstar * Qd;
      CHECK(diff.max_abs_coeff() <= 1e-12);
      // (b) impulse responses agree with the base
      const auto hb = lodm::impulse_response(
          lodm::build_companion(params.omega, params.a, params.b), 200);
      const auto hd = lodm::impulse_response(
          lodm::build_companion(at.omega, at.a, at.b), 200);
      CHECK(testutil::max_abs_diff(hb, hd) <= 1e-10);
      // (c) omega * gain is constant along the curve
      CHECK(std::abs(at.omega * lodm::geometric_gain(at.a) -
                     params.omega * gain_star) <= 1e-12);
    }
  }
}

TEST_CASE("curve through a degree-two common factor stays one-dimensional") {
  // P = (z-0.3)(z+0.4)(z-0.1), Q = 0.5 (z-0.3)(z+0.4): gcd has degree 2.
  const Poly u1({1.0, -0.3});
  const Poly u2({1.0, 0.4});
  const Poly u3({1.0, -0.1});
  const Poly P = u1 * u2 * u3;
  const Poly Q = 0.5 * (u1 * u2);
  // Recover (a, b) from the polynomial coefficients.
  std::vector<double> a(3), b(3);
  for (int k = 1; k <= 3; ++k) a[static_cast<size_t>(k) - 1] = -P.coeff(3 - k);
  for (int k = 0; k <= 2; ++k) b[static_cast<size_t>(k)] = Q.coeff(2 - k);
  const auto params = make_params(0.2, a, b);
  const ModelSpec spec{Family::LogLinPoisson, 3, 3};

  const auto report = check_identifiable(params);
  CHECK(report.common_roots.size() == 2);

  const EquivCurve curve = equivalence_curve(spec, params);
  for (double d : {-0.05, 0.04}) {
    REQUIRE(curve.d_lo <= d);
    REQUIRE(d <= curve.d_hi);
    CHECK(equivalent(curve_point(curve, d), params, 150, 1e-9));
  }
}
