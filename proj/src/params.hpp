#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace lodm {

/// Supported observation families.
enum class Family {
  GarchGaussian,  ///< Y | X ~ N(0, X); latent X is a conditional variance.
  LogLinPoisson,  ///< Y | X ~ Poisson(exp(X)); latent X is a log intensity.
  NbinGarch,      ///< Y | X ~ NegBinomial(shape r, mean r*X).
};

/// A model family together with the recursion orders (p, q).
struct ModelSpec {
  Family family = Family::GarchGaussian;
  int p = 1;
  int q = 1;
};

/// theta = (omega, a_1..a_p, b_1..b_q, phi). The linear part drives the
/// latent recursion; phi is the kernel shape r for NBIN-GARCH and absent
/// for the other families.
struct LodmParams {
  double omega = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  std::optional<double> phi;
};

/// Constant initialization point for the latent recursion: x_init is
/// replicated over the p state lags, u_init over the q-1 retained
/// transformed observations.
struct InitPoint {
  double x_init = 0.0;
  double u_init = 0.0;
};

const char* family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);

/// Families whose latent domain is a half line: omega > 0 and all
/// a_k, b_k >= 0 are then required so the link maps into the domain.
bool sign_constrained(Family family);

/// Checks orders, coefficient lengths, the family sign constraints and the
/// kernel parameter; throws std::invalid_argument on violation.
void validate_params(const ModelSpec& spec, const LodmParams& params);

}  // namespace lodm
