#include "lodm/lodm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "ident.hpp"
#include "inference.hpp"
#include "invert.hpp"
#include "models.hpp"
#include "params.hpp"
#include "statespace.hpp"

using nlohmann::ordered_json;

struct lodm_model {
  lodm::ModelSpec spec;
  lodm::LodmParams params;
};

struct lodm_curve {
  lodm::EquivCurve curve;
};

namespace {

thread_local std::string g_last_error;

lodm_status fail(lodm_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
lodm_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const lodm::NotInvertibleError& e) {
    return fail(LODM_ERR_NOT_INVERTIBLE, e.what());
  } catch (const lodm::NoCurveError& e) {
    return fail(LODM_ERR_NO_CURVE, e.what());
  } catch (const std::out_of_range& e) {
    return fail(LODM_ERR_DOMAIN, e.what());
  } catch (const std::domain_error& e) {
    return fail(LODM_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LODM_ERR_ARG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LODM_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(LODM_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(LODM_ERR_RUNTIME, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ordered_json params_json(const lodm::LodmParams& params) {
  ordered_json j;
  j["omega"] = params.omega;
  j["a"] = params.a;
  j["b"] = params.b;
  if (params.phi)
    j["phi"] = *params.phi;
  else
    j["phi"] = nullptr;
  return j;
}

lodm_status require(bool cond, const char* message) {
  return cond ? LODM_OK : fail(LODM_ERR_ARG, message);
}

}  // namespace

extern "C" {

const char* lodm_version(void) { return "0.1.0"; }

const char* lodm_last_error(void) { return g_last_error.c_str(); }

void lodm_string_free(char* str) { std::free(str); }

lodm_status lodm_model_create(lodm_family family, int p, int q, double omega,
                              const double* a, const double* b,
                              const double* phi, lodm_model** out_model) {
  if (require(out_model && a && b, "null argument") != LODM_OK) return LODM_ERR_ARG;
  *out_model = nullptr;
  return guarded([&]() {
    lodm::ModelSpec spec;
    switch (family) {
      case LODM_GARCH_GAUSSIAN: spec.family = lodm::Family::GarchGaussian; break;
      case LODM_LOGLIN_POISSON: spec.family = lodm::Family::LogLinPoisson; break;
      case LODM_NBIN_GARCH: spec.family = lodm::Family::NbinGarch; break;
      default: return fail(LODM_ERR_ARG, "unknown family");
    }
    if (p < 1 || q < 1) return fail(LODM_ERR_ARG, "order must be >= 1");
    spec.p = p;
    spec.q = q;
    lodm::LodmParams params;
    params.omega = omega;
    params.a.assign(a, a + p);
    params.b.assign(b, b + q);
    if (phi) params.phi = *phi;
    lodm::validate_params(spec, params);
    *out_model = new lodm_model{spec, std::move(params)};
    return LODM_OK;
  });
}

void lodm_model_destroy(lodm_model* model) { delete model; }

lodm_status lodm_model_invertible(const lodm_model* model, int* out_flag) {
  if (require(model && out_flag, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    *out_flag = lodm::in_stability_region(model->params.a) ? 1 : 0;
    return LODM_OK;
  });
}

lodm_status lodm_model_moment_condition(const lodm_model* model, int* out_flag) {
  if (require(model && out_flag, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    *out_flag = lodm::standard_moment_condition(model->params) ? 1 : 0;
    return LODM_OK;
  });
}

lodm_status lodm_simulate(const lodm_model* model, long n, long burn_in,
                          uint64_t seed, double* y_out, double* x_out) {
  if (require(model && y_out, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    const lodm::Trajectory traj =
        lodm::simulate(model->spec, model->params, n, burn_in, seed);
    std::memcpy(y_out, traj.y.data(), traj.y.size() * sizeof(double));
    if (x_out) std::memcpy(x_out, traj.x.data(), traj.x.size() * sizeof(double));
    return LODM_OK;
  });
}

lodm_status lodm_impulse_response(const lodm_model* model, long k_max,
                                  double* h_out) {
  if (require(model && h_out, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    const lodm::Companion comp = lodm::build_companion(
        model->params.omega, model->params.a, model->params.b);
    const auto h = lodm::impulse_response(comp, static_cast<int>(k_max));
    std::memcpy(h_out, h.data(), h.size() * sizeof(double));
    return LODM_OK;
  });
}

lodm_status lodm_spectral_radius(const lodm_model* model, double* out_value) {
  if (require(model && out_value, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    const lodm::Companion comp = lodm::build_companion(
        model->params.omega, model->params.a, model->params.b);
    *out_value = lodm::spectral_radius(comp);
    return LODM_OK;
  });
}

lodm_status lodm_geometric_gain(const lodm_model* model, double* out_value) {
  if (require(model && out_value, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    *out_value = lodm::geometric_gain(model->params.a);
    return LODM_OK;
  });
}

lodm_status lodm_lipschitz(const lodm_model* model, long n, double* out_value) {
  if (require(model && out_value, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    *out_value = lodm::lipschitz_estimate(model->params, static_cast<int>(n));
    return LODM_OK;
  });
}

lodm_status lodm_moment_check(const lodm_model* model, long n_mc, uint64_t seed,
                              double* out_estimate, double* out_std_error) {
  if (require(model && out_estimate, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    const lodm::MomentCheck mc =
        lodm::moment_check(model->spec, model->params, n_mc, seed);
    *out_estimate = mc.estimate;
    if (out_std_error) *out_std_error = mc.std_error;
    return LODM_OK;
  });
}

lodm_status lodm_check_identifiable(const lodm_model* model, double tol,
                                    lodm_verdict* out_verdict, char** out_json) {
  if (require(model, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    const double use_tol = tol > 0.0 ? tol : lodm::kCoprimeTol;
    const lodm::IdentReport report =
        lodm::check_identifiable(model->params, use_tol);
    if (out_verdict) {
      switch (report.verdict) {
        case lodm::Verdict::Identifiable: *out_verdict = LODM_IDENTIFIABLE; break;
        case lodm::Verdict::NotIdentifiable:
          *out_verdict = LODM_NOT_IDENTIFIABLE;
          break;
        case lodm::Verdict::InvertibilityFails:
          *out_verdict = LODM_INVERTIBILITY_FAILS;
          break;
      }
    }
    if (out_json) {
      ordered_json j;
      j["invertible"] = report.invertible;
      j["coprime"] = report.coprime;
      ordered_json roots_json = ordered_json::array();
      for (const auto& r : report.common_roots)
        roots_json.push_back({r.real(), r.imag()});
      j["common_roots"] = roots_json;
      j["verdict"] = lodm::verdict_name(report.verdict);
      *out_json = dup_string(j.dump(2));
      if (!*out_json) return fail(LODM_ERR_RUNTIME, "out of memory");
    }
    return LODM_OK;
  });
}

lodm_status lodm_curve_create(const lodm_model* model, double tol,
                              lodm_curve** out_curve) {
  if (require(model && out_curve, "null argument") != LODM_OK) return LODM_ERR_ARG;
  *out_curve = nullptr;
  return guarded([&]() {
    const double use_tol = tol > 0.0 ? tol : lodm::kCoprimeTol;
    lodm::EquivCurve curve =
        lodm::equivalence_curve(model->spec, model->params, use_tol);
    *out_curve = new lodm_curve{std::move(curve)};
    return LODM_OK;
  });
}

void lodm_curve_destroy(lodm_curve* curve) { delete curve; }

lodm_status lodm_curve_range(const lodm_curve* curve, double* out_lo,
                             double* out_hi, int* out_interior) {
  if (require(curve, "null argument") != LODM_OK) return LODM_ERR_ARG;
  if (out_lo) *out_lo = curve->curve.d_lo;
  if (out_hi) *out_hi = curve->curve.d_hi;
  if (out_interior) *out_interior = curve->curve.interior ? 1 : 0;
  return LODM_OK;
}

lodm_status lodm_curve_point(const lodm_curve* curve, double d,
                             double* omega_out, double* a_out, double* b_out) {
  if (require(curve && omega_out && a_out && b_out, "null argument") != LODM_OK)
    return LODM_ERR_ARG;
  return guarded([&]() {
    const lodm::LodmParams point = lodm::curve_point(curve->curve, d);
    *omega_out = point.omega;
    std::memcpy(a_out, point.a.data(), point.a.size() * sizeof(double));
    std::memcpy(b_out, point.b.data(), point.b.size() * sizeof(double));
    return LODM_OK;
  });
}

lodm_status lodm_curve_json(const lodm_curve* curve, char** out_json) {
  if (require(curve && out_json, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    ordered_json j;
    j["base"] = params_json(curve->curve.base);
    j["dir_a"] = curve->curve.dir_a;
    j["dir_b"] = curve->curve.dir_b;
    j["d_range"] = {curve->curve.d_lo, curve->curve.d_hi};
    j["interior"] = curve->curve.interior;
    *out_json = dup_string(j.dump(2));
    return *out_json ? LODM_OK : fail(LODM_ERR_RUNTIME, "out of memory");
  });
}

lodm_status lodm_latent_path(const lodm_model* model, const double* y, long n,
                             double* xhat_out) {
  if (require(model && y && xhat_out, "null argument") != LODM_OK)
    return LODM_ERR_ARG;
  return guarded([&]() {
    if (n < 1) return fail(LODM_ERR_ARG, "n must be >= 1");
    const std::span<const double> obs(y, static_cast<size_t>(n));
    const auto path = lodm::link_path(model->spec, model->params, obs,
                                      lodm::default_init(model->spec, model->params));
    std::memcpy(xhat_out, path.data(), static_cast<size_t>(n) * sizeof(double));
    return LODM_OK;
  });
}

lodm_status lodm_latent_reconstruct(const lodm_model* model, const double* y,
                                    long n, double* out_x) {
  if (require(model && y && out_x, "null argument") != LODM_OK) return LODM_ERR_ARG;
  return guarded([&]() {
    if (n < 1) return fail(LODM_ERR_ARG, "n must be >= 1");
    std::vector<double> u(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k)
      u[static_cast<size_t>(k)] =
          lodm::upsilon(model->spec.family, y[static_cast<size_t>(k)]);
    *out_x = lodm::latent_reconstruct(model->params, u);
    return LODM_OK;
  });
}

lodm_status lodm_conditional_loglik(const lodm_model* model, const double* y,
                                    long n, long discard, double* out_loglik) {
  if (require(model && y && out_loglik, "null argument") != LODM_OK)
    return LODM_ERR_ARG;
  return guarded([&]() {
    const std::span<const double> obs(y, static_cast<size_t>(n));
    *out_loglik =
        lodm::conditional_loglik(model->spec, model->params, obs, discard);
    return LODM_OK;
  });
}

lodm_status lodm_fit_mle(const lodm_model* start, const double* y, long n,
                         long discard, long max_iter, double* omega_out,
                         double* a_out, double* b_out, double* phi_out,
                         double* loglik_out, long* iterations_out,
                         int* converged_out) {
  if (require(start && y && omega_out && a_out && b_out, "null argument") != LODM_OK)
    return LODM_ERR_ARG;
  return guarded([&]() {
    const std::span<const double> obs(y, static_cast<size_t>(n));
    lodm::FitOptions opts;
    if (discard >= 0) opts.discard = discard;
    if (max_iter > 0) opts.max_iter = max_iter;
    const lodm::FitResult result =
        lodm::fit_mle(start->spec, obs, start->params, opts);
    *omega_out = result.theta_hat.omega;
    std::memcpy(a_out, result.theta_hat.a.data(),
                result.theta_hat.a.size() * sizeof(double));
    std::memcpy(b_out, result.theta_hat.b.data(),
                result.theta_hat.b.size() * sizeof(double));
    if (phi_out && result.theta_hat.phi) *phi_out = *result.theta_hat.phi;
    if (loglik_out) *loglik_out = result.loglik;
    if (iterations_out) *iterations_out = result.iterations;
    if (converged_out) *converged_out = result.converged ? 1 : 0;
    return LODM_OK;
  });
}

}  // extern "C"
