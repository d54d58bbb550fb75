#pragma once

#include "epsball/density.hpp"

namespace epsball {

/// Jordan decomposition of a traceless self-adjoint matrix: Delta =
/// delta_plus - delta_minus with orthogonal positive parts and support
/// projections pi_plus / pi_minus. Eigenvalues within 1e-12 of zero are
/// assigned to neither support.
struct JordanDecomposition {
  Matrix delta_plus;
  Matrix delta_minus;
  Matrix pi_plus;
  Matrix pi_minus;
};

JordanDecomposition jordan(const Matrix& delta);

/// Which entropy functional's Gateaux gradient to evaluate.
///
/// All gradients are for entropies in bits. The Renyi gradient carries the
/// 1/ln(2) chain-rule factor that base-2 S_alpha requires; the certificate
/// equality is scale-invariant either way. NegTAlpha is the concave
/// surrogate -tr(rho^alpha) used to certify Renyi maximizers for alpha > 1.
struct GradientKind {
  enum class Kind { VonNeumann, Renyi, NegTAlpha, Conditional };

  Kind kind = Kind::VonNeumann;
  double alpha = 0.0;
  int dim_a = 0;
  int dim_b = 0;

  static GradientKind von_neumann();
  static GradientKind renyi(double alpha);
  static GradientKind neg_t_alpha(double alpha);
  static GradientKind conditional(int dim_a, int dim_b);

  const char* name() const;
};

/// Gateaux gradient of the selected functional at a faithful state
/// (lambda_min > 1e-12), as a self-adjoint matrix.
Matrix gradient(const DensityMatrix& rho, const GradientKind& g);

/// Everything needed to decide whether rho maximizes the functional over
/// the eps-ball around sigma, per the boundary/flat-gradient condition and
/// the eigen-projection equations pi_pm L pi_pm = lambda_pm pi_pm.
struct OptimalityCertificate {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double pairing = 0.0;           // tr(L_rho (rho - sigma))
  double equality_gap = 0.0;      // eps (lambda_plus - lambda_minus) - pairing
  double boundary_residual = 0.0; // |td(rho, sigma) - eps|
  double gradient_flatness = 0.0; // lambda_plus - lambda_minus
  double eigen_residual_plus = 0.0;
  double eigen_residual_minus = 0.0;
  double witness_x = 0.0;         // (lambda_plus + lambda_minus)/2
  bool optimal = false;
};

/// Certify that rho maximizes the (concave) functional over B_eps(sigma).
/// rho must be faithful and inside the ball. Decision tolerance 1e-8.
OptimalityCertificate certify_max(const DensityMatrix& sigma,
                                  const DensityMatrix& rho, double eps,
                                  const GradientKind& g);

/// Certify that rho maximizes the conditional entropy over B_eps(sigma):
/// checks S(A|B)_rho - S(A|B)_sigma - D(sigma_AB||rho_AB) + D(sigma_B||rho_B)
/// against eps (lambda_plus - lambda_minus) of the conditional-entropy
/// gradient. Decision tolerance 1e-6 relative to the right-hand side.
OptimalityCertificate certify_ce(const BipartiteState& sigma,
                                 const BipartiteState& rho, double eps);

}  // namespace epsball
