#include "epsball/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epsball {

namespace {

constexpr double kKernelTol = 1e-12;
constexpr double kFaithfulTol = 1e-12;
constexpr double kBallSlack = 1e-9;
constexpr double kCertTol = 1e-8;

constexpr double kLog2E = 1.4426950408889634074;  // 1/ln(2)

/// f(A) by functional calculus on a self-adjoint matrix.
template <typename F>
Matrix apply_spectral(const Matrix& a, F&& f) {
  auto [values, basis] = eig_down(a);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (int i = 0; i < values.size(); ++i) {
    out += f(values(i)) * basis.col(i) * basis.col(i).adjoint();
  }
  return out;
}

Matrix log2m(const Matrix& a) {
  return apply_spectral(a, [](double x) { return std::log2(x); });
}

double min_eigenvalue(const Matrix& a) {
  auto [values, basis] = eig_down(a);
  return values(values.size() - 1);
}

void require_faithful(const DensityMatrix& rho, const char* who) {
  if (min_eigenvalue(rho.matrix()) <= kFaithfulTol) {
    throw NotFaithful(std::string(who) + ": state is not faithful");
  }
}

double operator_norm(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  auto [values, basis] = eig_down(Matrix(0.5 * (a + a.adjoint())));
  return values.cwiseAbs().maxCoeff();
}

}  // namespace

JordanDecomposition jordan(const Matrix& delta) {
  if (std::abs(std::real(delta.trace())) > 1e-9 ||
      std::abs(std::imag(delta.trace())) > 1e-9) {
    throw NotTraceless("jordan: input trace is not zero");
  }
  auto [values, basis] = eig_down(delta);
  const int d = static_cast<int>(delta.rows());
  JordanDecomposition j{Matrix::Zero(d, d), Matrix::Zero(d, d),
                        Matrix::Zero(d, d), Matrix::Zero(d, d)};
  for (int i = 0; i < d; ++i) {
    const Matrix proj = basis.col(i) * basis.col(i).adjoint();
    if (values(i) > kKernelTol) {
      j.delta_plus += values(i) * proj;
      j.pi_plus += proj;
    } else if (values(i) < -kKernelTol) {
      j.delta_minus += -values(i) * proj;
      j.pi_minus += proj;
    }
  }
  return j;
}

GradientKind GradientKind::von_neumann() { return {Kind::VonNeumann, 0.0, 0, 0}; }

GradientKind GradientKind::renyi(double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12) {
    throw InvalidAlpha("GradientKind::renyi: alpha must be in (0,1) or (1,inf)");
  }
  return {Kind::Renyi, alpha, 0, 0};
}

GradientKind GradientKind::neg_t_alpha(double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12) {
    throw InvalidAlpha("GradientKind::neg_t_alpha: alpha must be in (0,1) or (1,inf)");
  }
  return {Kind::NegTAlpha, alpha, 0, 0};
}

GradientKind GradientKind::conditional(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) {
    throw BadFactorization("GradientKind::conditional: bad subsystem dims");
  }
  return {Kind::Conditional, 0.0, dim_a, dim_b};
}

const char* GradientKind::name() const {
  switch (kind) {
    case Kind::VonNeumann: return "von-neumann";
    case Kind::Renyi: return "renyi";
    case Kind::NegTAlpha: return "neg-t-alpha";
    case Kind::Conditional: return "conditional";
  }
  return "?";
}

Matrix gradient(const DensityMatrix& rho, const GradientKind& g) {
  require_faithful(rho, "gradient");
  const int d = rho.dim();
  switch (g.kind) {
    case GradientKind::Kind::VonNeumann: {
      return -log2m(rho.matrix()) - kLog2E * Matrix::Identity(d, d);
    }
    case GradientKind::Kind::Renyi: {
      auto [values, basis] = eig_down(rho.matrix());
      double t = 0.0;
      for (int i = 0; i < d; ++i) t += std::pow(values(i), g.alpha);
      const double coef = kLog2E * g.alpha / ((1.0 - g.alpha) * t);
      return coef * apply_spectral(rho.matrix(), [&](double x) {
               return std::pow(x, g.alpha - 1.0);
             });
    }
    case GradientKind::Kind::NegTAlpha: {
      return -g.alpha * apply_spectral(rho.matrix(), [&](double x) {
               return std::pow(x, g.alpha - 1.0);
             });
    }
    case GradientKind::Kind::Conditional: {
      const BipartiteState bip(rho, g.dim_a, g.dim_b);
      const DensityMatrix rho_b = partial_trace(bip, Subsystem::A);
      const Matrix log_b = log2m(rho_b.matrix());
      Matrix lifted = Matrix::Zero(d, d);
      for (int a = 0; a < g.dim_a; ++a) {
        lifted.block(a * g.dim_b, a * g.dim_b, g.dim_b, g.dim_b) = log_b;
      }
      return lifted - log2m(rho.matrix());
    }
  }
  throw InvalidAlpha("gradient: unknown kind");
}

namespace {

OptimalityCertificate fill_certificate(const Matrix& gradient_matrix,
                                       const Matrix& delta, double eps,
                                       double boundary_residual) {
  OptimalityCertificate cert;
  auto [values, basis] = eig_down(gradient_matrix);
  cert.lambda_plus = values(0);
  cert.lambda_minus = values(values.size() - 1);
  cert.gradient_flatness = cert.lambda_plus - cert.lambda_minus;
  cert.pairing = std::real((gradient_matrix * delta).trace());
  cert.equality_gap = eps * cert.gradient_flatness - cert.pairing;
  cert.boundary_residual = boundary_residual;
  cert.witness_x = 0.5 * (cert.lambda_plus + cert.lambda_minus);

  const JordanDecomposition j = jordan(delta);
  cert.eigen_residual_plus = operator_norm(
      Matrix(j.pi_plus * gradient_matrix * j.pi_plus - cert.lambda_plus * j.pi_plus));
  cert.eigen_residual_minus = operator_norm(
      Matrix(j.pi_minus * gradient_matrix * j.pi_minus - cert.lambda_minus * j.pi_minus));
  return cert;
}

}  // namespace

OptimalityCertificate certify_max(const DensityMatrix& sigma,
                                  const DensityMatrix& rho, double eps,
                                  const GradientKind& g) {
  if (sigma.dim() != rho.dim()) {
    throw DimensionMismatch("certify_max: dimensions differ");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("certify_max: eps must lie in (0, 1]");
  }
  const double td = trace_distance(rho, sigma);
  if (td > eps + kBallSlack) {
    throw NotInBall("certify_max: trace distance " + std::to_string(td) +
                    " exceeds eps");
  }
  require_faithful(rho, "certify_max");

  const Matrix grad = gradient(rho, g);
  OptimalityCertificate cert = fill_certificate(
      grad, Matrix(rho.matrix() - sigma.matrix()), eps, std::abs(td - eps));
  cert.optimal = cert.equality_gap <= kCertTol &&
                 (cert.boundary_residual <= kCertTol ||
                  cert.gradient_flatness <= kCertTol) &&
                 cert.eigen_residual_plus <= kCertTol &&
                 cert.eigen_residual_minus <= kCertTol;
  return cert;
}

OptimalityCertificate certify_ce(const BipartiteState& sigma,
                                 const BipartiteState& rho, double eps) {
  if (sigma.state.dim() != rho.state.dim() || sigma.dim_a != rho.dim_a ||
      sigma.dim_b != rho.dim_b) {
    throw DimensionMismatch("certify_ce: factorizations differ");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("certify_ce: eps must lie in (0, 1]");
  }
  const double td = trace_distance(rho.state, sigma.state);
  if (td > eps + kBallSlack) {
    throw NotInBall("certify_ce: trace distance exceeds eps");
  }
  require_faithful(rho.state, "certify_ce");

  const Matrix grad =
      gradient(rho.state, GradientKind::conditional(rho.dim_a, rho.dim_b));
  OptimalityCertificate cert = fill_certificate(
      grad, Matrix(rho.state.matrix() - sigma.state.matrix()), eps,
      std::abs(td - eps));

  const DensityMatrix sigma_b = partial_trace(sigma, Subsystem::A);
  const DensityMatrix rho_b = partial_trace(rho, Subsystem::A);
  const double lhs = conditional_entropy(rho) - conditional_entropy(sigma) -
                     relative_entropy(sigma.state, rho.state) +
                     relative_entropy(sigma_b, rho_b);
  const double rhs = eps * cert.gradient_flatness;
  cert.equality_gap = rhs - lhs;
  cert.optimal = std::abs(cert.equality_gap) <= 1e-6 * std::max(1.0, rhs);
  return cert;
}

}  // namespace epsball
