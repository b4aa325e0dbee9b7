#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace lodm {

/// Companion-form state space of the linear recursion
///   x_t = sum_{i=1..p} a_i x_{t-i} + sum_{j=1..q} b_j u_{t+1-j} + omega.
///
/// The state has dimension p+q-1 and stacks the last p latent values on top
/// of the last q-1 transformed observations. Row p of A carries
/// (a_p..a_1, b_q..b_2); rows above it shift the x block, rows below shift
/// the u block. For q = 1 the matrix reduces to its top-left p-square block.
struct Companion {
  int p = 0;
  int q = 0;
  double omega = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  Eigen::MatrixXd A;
  Eigen::VectorXd b_vec;      // b_1 e_p + e_{p+q-1}  (b_1 e_p when q = 1)
  Eigen::VectorXd omega_vec;  // omega e_p

  int dim() const { return p + q - 1; }
};

Companion build_companion(double omega, std::span<const double> a,
                          std::span<const double> b);

/// Impulse response h_k = e_p^T A^k b for k = 0..k_max, computed by iterated
/// matrix-vector products.
std::vector<double> impulse_response(const Companion& comp, int k_max);

/// sum_{k>=0} e_p^T A^k e_p = 1 / (1 - sum a_k); nonzero on the stability
/// region. Error when a is outside the stability region.
double geometric_gain(std::span<const double> a);

/// Same quantity via the resolvent e_p^T (I - A)^{-1} e_p of the p-square
/// companion block; retained as a cross-check of the closed form.
double geometric_gain_resolvent(std::span<const double> a);

/// Brute-force scalar recursion x_t = sum a_i x_{t-i} + sum b_j y_{t+1-j}
/// for t = 0..k_max. Pre-history: x_pre = (x_{-1}, .., x_{-p}) and
/// y_pre = (y_{-1}, .., y_{1-q}); pass empty spans for zero initial
/// conditions. y must supply at least k_max+1 values. This is the oracle the
/// companion-form computations are tested against.
std::vector<double> arma_recursion(std::span<const double> a,
                                   std::span<const double> b,
                                   std::span<const double> y,
                                   std::span<const double> x_pre,
                                   std::span<const double> y_pre, int k_max);

/// Largest eigenvalue modulus of A.
double spectral_radius(const Companion& comp);

}  // namespace lodm
