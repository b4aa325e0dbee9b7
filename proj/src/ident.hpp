#pragma once

#include <complex>
#include <span>
#include <vector>

#include "params.hpp"
#include "poly.hpp"

namespace lodm {

enum class Verdict { Identifiable, NotIdentifiable, InvertibilityFails };

const char* verdict_name(Verdict verdict);

/// Outcome of the identifiability decision. The linear part of a model is
/// identifiable exactly when the AR and MA polynomials are coprime and the
/// invertibility condition holds; otherwise the shared roots are reported.
struct IdentReport {
  bool invertible = false;
  bool coprime = false;
  std::vector<std::complex<double>> common_roots;
  Verdict verdict = Verdict::InvertibilityFails;
};

/// Decides identifiability of the linear parameters. invertible checks the
/// stability region, coprime checks the shared-root condition at tolerance
/// tol; an invertibility failure takes precedence in the verdict.
IdentReport check_identifiable(const LodmParams& params, double tol = kCoprimeTol);

/// Computable surrogate for observational equivalence of two stable linear
/// parameter sets: b_1 equal, impulse responses equal for k = 0..k_max, and
/// omega * gain equal, all within tol. Throws when either a-part is outside
/// the stability region.
bool equivalent(const LodmParams& lhs, const LodmParams& rhs, int k_max = 200,
                double tol = 1e-9);

/// One-parameter family d -> theta(d) of observationally equivalent linear
/// parameters through a non-identifiable base point. Directions come from
/// the quotients of the AR/MA polynomials by their common factor; omega is
/// rescaled along the curve so omega(d) * gain(a(d)) stays constant.
struct EquivCurve {
  ModelSpec spec;
  LodmParams base;
  std::vector<double> dir_a;  // a(d) = a* + d * dir_a           (length p)
  std::vector<double> dir_b;  // b_j(d) = b*_j + d * dir_b[j-2]  (length q-1)
  double d_lo = 0.0;          // maximal open interval around 0 kept feasible
  double d_hi = 0.0;
  bool interior = false;      // 0 strictly inside (d_lo, d_hi)
};

/// Builds the equivalence curve through params. Requires a verdict of
/// NotIdentifiable: throws NoCurveError for identifiable parameters and
/// NotInvertibleError when the stability condition fails. The d-range is
/// found by bisection on the root moduli of the perturbed AR polynomial
/// (with a safety margin inside the unit disk) and intersected with the
/// family sign constraints.
EquivCurve equivalence_curve(const ModelSpec& spec, const LodmParams& params,
                             double tol = kCoprimeTol);

/// Parameters at curve coordinate d; d = 0 reproduces the base exactly.
/// Throws std::out_of_range outside [d_lo, d_hi].
LodmParams curve_point(const EquivCurve& curve, double d);

}  // namespace lodm
