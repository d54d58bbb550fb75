#include "epsball/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace epsball {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kEigenClipWindow = -1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kSupportTol = 1e-12;

double max_abs_entry(const Matrix& a) {
  return a.cwiseAbs().maxCoeff();
}

void require_hermitian(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw NotSelfAdjoint(std::string(who) + ": matrix is not square");
  }
  if (max_abs_entry(a - a.adjoint()) > kHermitianTol) {
    throw NotSelfAdjoint(std::string(who) + ": matrix is not self-adjoint");
  }
}

}  // namespace

std::pair<Vector, Matrix> eig_down(const Matrix& a) {
  require_hermitian(a, "eig_down");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix(0.5 * (a + a.adjoint())));
  if (solver.info() != Eigen::Success) {
    throw NotSelfAdjoint("eig_down: eigensolver failed to converge");
  }
  const int d = static_cast<int>(a.rows());
  Vector values(d);
  Matrix basis(d, d);
  for (int i = 0; i < d; ++i) {
    values(i) = solver.eigenvalues()(d - 1 - i);
    basis.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return {values, basis};
}

DensityMatrix::DensityMatrix(const Matrix& entries) {
  require_hermitian(entries, "DensityMatrix");
  auto [values, basis] = eig_down(entries);
  const int d = static_cast<int>(values.size());
  for (int i = 0; i < d; ++i) {
    if (values(i) < kEigenClipWindow) {
      throw NotPositiveSemidefinite(
          "DensityMatrix: eigenvalue " + std::to_string(values(i)) +
          " below the clipping window");
    }
    if (values(i) < 0.0) values(i) = 0.0;
  }
  const double trace = values.sum();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw NotNormalized("DensityMatrix: trace is " + std::to_string(trace));
  }
  values /= trace;
  entries_ = basis * values.cast<std::complex<double>>().asDiagonal() *
             basis.adjoint();
  entries_ = 0.5 * (entries_ + entries_.adjoint().eval());
}

ProbVec DensityMatrix::spectrum() const {
  auto [values, basis] = eig_down(entries_);
  return canonicalize(std::vector<double>(values.data(),
                                          values.data() + values.size()));
}

DensityMatrix DensityMatrix::diagonal(const ProbVec& p) {
  Matrix m = Matrix::Zero(p.d(), p.d());
  for (int i = 0; i < p.d(); ++i) m(i, i) = p[i];
  return DensityMatrix(m);
}

BipartiteState::BipartiteState(DensityMatrix s, int da, int db)
    : state(std::move(s)), dim_a(da), dim_b(db) {
  if (da < 1 || db < 1 || da * db != state.dim()) {
    throw BadFactorization("BipartiteState: " + std::to_string(da) + " x " +
                           std::to_string(db) + " != " +
                           std::to_string(state.dim()));
  }
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("trace_distance: dimensions differ");
  }
  auto [values, basis] = eig_down(rho.matrix() - sigma.matrix());
  const double td = 0.5 * values.cwiseAbs().sum();
  return std::clamp(td, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("fidelity: dimensions differ");
  }
  auto [values, basis] = eig_down(rho.matrix());
  Vector sqrt_values = values.cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = basis *
                          sqrt_values.cast<std::complex<double>>().asDiagonal() *
                          basis.adjoint();
  const Matrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  auto [inner_values, inner_basis] = eig_down(Matrix(0.5 * (inner + inner.adjoint())));
  double f = 0.0;
  for (int i = 0; i < inner_values.size(); ++i) {
    f += std::sqrt(std::max(0.0, inner_values(i)));
  }
  return std::clamp(f, 0.0, 1.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy(rho.spectrum(), EntropyFunctional::shannon());
}

namespace {

DensityMatrix extremal_state(const DensityMatrix& sigma, double eps,
                             bool want_flattest) {
  auto [values, basis] = eig_down(sigma.matrix());
  std::vector<double> raw(values.data(), values.data() + values.size());
  const ProbVec q = canonicalize(std::move(raw));
  const ProbVec res =
      want_flattest ? flattest(q, eps).result : steepest(q, eps).result;
  Matrix out = Matrix::Zero(sigma.dim(), sigma.dim());
  for (int i = 0; i < sigma.dim(); ++i) {
    out += res[i] * basis.col(i) * basis.col(i).adjoint();
  }
  return DensityMatrix(out);
}

}  // namespace

DensityMatrix flattest_state(const DensityMatrix& sigma, double eps) {
  return extremal_state(sigma, eps, true);
}

DensityMatrix steepest_state(const DensityMatrix& sigma, double eps) {
  return extremal_state(sigma, eps, false);
}

DensityMatrix partial_trace(const BipartiteState& rho, Subsystem over) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  const Matrix& m = rho.state.matrix();
  if (over == Subsystem::A) {
    Matrix out = Matrix::Zero(db, db);
    for (int b = 0; b < db; ++b) {
      for (int bp = 0; bp < db; ++bp) {
        for (int a = 0; a < da; ++a) {
          out(b, bp) += m(a * db + b, a * db + bp);
        }
      }
    }
    return DensityMatrix(out);
  }
  Matrix out = Matrix::Zero(da, da);
  for (int a = 0; a < da; ++a) {
    for (int ap = 0; ap < da; ++ap) {
      for (int b = 0; b < db; ++b) {
        out(a, ap) += m(a * db + b, ap * db + b);
      }
    }
  }
  return DensityMatrix(out);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("relative_entropy: dimensions differ");
  }
  auto [s_values, s_basis] = eig_down(sigma.matrix());

  // Weight of rho outside supp(sigma) forces D = +infinity.
  double kernel_weight = 0.0;
  double d_cross = 0.0;  // -tr(rho log2 sigma) restricted to supp(sigma)
  for (int i = 0; i < sigma.dim(); ++i) {
    const double weight =
        std::real((s_basis.col(i).adjoint() * rho.matrix() * s_basis.col(i))(0));
    if (s_values(i) > kSupportTol) {
      d_cross -= weight * std::log2(s_values(i));
    } else {
      kernel_weight += std::max(0.0, weight);
    }
  }
  if (kernel_weight > 1e-10) {
    return std::numeric_limits<double>::infinity();
  }
  const double d = d_cross - von_neumann_entropy(rho);
  return d < 0.0 && d > -1e-9 ? 0.0 : d;
}

double conditional_entropy(const BipartiteState& rho) {
  return von_neumann_entropy(rho.state) -
         von_neumann_entropy(partial_trace(rho, Subsystem::A));
}

}  // namespace epsball
