#include "ident.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "statespace.hpp"

namespace lodm {

namespace {

// Margin kept between the perturbed roots and the unit circle while scanning
// the curve range. Shrunk when the base point itself sits closer than that.
double safety_margin(const LodmParams& base) {
  double max_mod = 0.0;
  for (const auto& r : roots(ar_polynomial(base.a)))
    max_mod = std::max(max_mod, std::abs(r));
  return std::min(1e-3, 0.5 * (1.0 - max_mod));
}

bool point_feasible(const EquivCurve& curve, double d, double margin) {
  const size_t p = curve.base.a.size();
  std::vector<double> a(p);
  for (size_t k = 0; k < p; ++k) a[k] = curve.base.a[k] + d * curve.dir_a[k];
  if (!in_stability_region(a, margin)) return false;
  if (sign_constrained(curve.spec.family)) {
    for (double ak : a)
      if (ak < 0.0) return false;
    for (size_t j = 0; j < curve.dir_b.size(); ++j)
      if (curve.base.b[j + 1] + d * curve.dir_b[j] < 0.0) return false;
    // omega(d) = omega* gain(a*, d=0) / gain(a(d)) stays positive whenever
    // a(d) is in the stability region, so no extra check is needed.
  }
  return true;
}

// Largest t >= 0 with every d in [0, sign*t] feasible, found by doubling
// then bisection on the first exit.
double scan_range(const EquivCurve& curve, double margin, double sign) {
  constexpr double kCap = 1e6;
  double good = 0.0;
  double step = 1e-3;
  while (good + step <= kCap && point_feasible(curve, sign * (good + step), margin)) {
    good += step;
    step *= 2.0;
  }
  if (good + step > kCap) return kCap;
  double bad = good + step;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (good + bad);
    if (point_feasible(curve, sign * mid, margin))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

}  // namespace

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Identifiable: return "Identifiable";
    case Verdict::NotIdentifiable: return "NotIdentifiable";
    case Verdict::InvertibilityFails: return "InvertibilityFails";
  }
  return "unknown";
}

IdentReport check_identifiable(const LodmParams& params, double tol) {
  IdentReport report;
  report.invertible = in_stability_region(params.a);
  const Poly P = ar_polynomial(params.a);
  const Poly Q = ma_polynomial(params.b);
  const Poly gcd = poly_gcd(P, Q, tol);
  report.coprime = gcd.degree() == 0;
  if (!report.coprime) report.common_roots = roots(gcd);
  if (!report.invertible)
    report.verdict = Verdict::InvertibilityFails;
  else
    report.verdict = report.coprime ? Verdict::Identifiable : Verdict::NotIdentifiable;
  return report;
}

bool equivalent(const LodmParams& lhs, const LodmParams& rhs, int k_max, double tol) {
  if (!in_stability_region(lhs.a) || !in_stability_region(rhs.a))
    throw NotInvertibleError("equivalence is only defined on the stability region");
  if (std::abs(lhs.b[0] - rhs.b[0]) > tol) return false;
  const Companion cl = build_companion(lhs.omega, lhs.a, lhs.b);
  const Companion cr = build_companion(rhs.omega, rhs.a, rhs.b);
  const auto hl = impulse_response(cl, k_max);
  const auto hr = impulse_response(cr, k_max);
  for (int k = 0; k <= k_max; ++k)
    if (std::abs(hl[static_cast<size_t>(k)] - hr[static_cast<size_t>(k)]) > tol)
      return false;
  const double ml = lhs.omega * geometric_gain(lhs.a);
  const double mr = rhs.omega * geometric_gain(rhs.a);
  return std::abs(ml - mr) <= tol;
}

EquivCurve equivalence_curve(const ModelSpec& spec, const LodmParams& params,
                             double tol) {
  validate_params(spec, params);
  const IdentReport report = check_identifiable(params, tol);
  if (report.verdict == Verdict::InvertibilityFails)
    throw NotInvertibleError("no curve through a non-invertible point (L-1 fails)");
  if (report.verdict == Verdict::Identifiable)
    throw NoCurveError("no curve exists (L-2 holds)");

  const Poly P = ar_polynomial(params.a);
  const Poly Q = ma_polynomial(params.b);
  const Poly U = poly_gcd(P, Q, tol);
  // Loose divisibility tolerance: U carries the rounding noise of the
  // Euclidean iteration, not of the inputs.
  const double div_tol = std::max(tol, 1e3 * tol);
  const Poly C = poly_divide_exact(P, U, div_tol);
  const Poly D = Q.is_zero() ? Poly{} : poly_divide_exact(Q, U, div_tol);

  EquivCurve curve;
  curve.spec = spec;
  curve.base = params;
  const int p = spec.p;
  const int q = spec.q;
  curve.dir_a.resize(static_cast<size_t>(p));
  for (int k = 1; k <= p; ++k)
    curve.dir_a[static_cast<size_t>(k) - 1] = -C.coeff(p - k);
  curve.dir_b.resize(static_cast<size_t>(q) - 1);
  for (int j = 0; j <= q - 2; ++j)
    curve.dir_b[static_cast<size_t>(j)] = D.coeff(q - 2 - j);

  const double margin = safety_margin(params);
  curve.d_hi = scan_range(curve, margin, +1.0);
  curve.d_lo = -scan_range(curve, margin, -1.0);
  curve.interior = curve.d_lo < 0.0 && curve.d_hi > 0.0;
  return curve;
}

LodmParams curve_point(const EquivCurve& curve, double d) {
  if (d < curve.d_lo || d > curve.d_hi)
    throw std::out_of_range("d outside curve range [" + std::to_string(curve.d_lo) +
                            ", " + std::to_string(curve.d_hi) + "]");
  LodmParams point = curve.base;
  for (size_t k = 0; k < point.a.size(); ++k) point.a[k] += d * curve.dir_a[k];
  for (size_t j = 0; j < curve.dir_b.size(); ++j)
    point.b[j + 1] += d * curve.dir_b[j];
  point.omega = curve.base.omega * geometric_gain(curve.base.a) / geometric_gain(point.a);
  return point;
}

}  // namespace lodm
