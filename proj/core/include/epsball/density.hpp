#pragma once

#include <Eigen/Dense>
#include <utility>

#include "epsball/extremal.hpp"
#include "epsball/spectra.hpp"

namespace epsball {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

/// Self-adjoint, positive semidefinite, unit-trace complex matrix.
///
/// Ingestion hermitizes, clips eigenvalues in [-1e-10, 0) to zero, and
/// renormalizes the trace; anything worse is rejected.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// Eigenvalues sorted non-increasing, as a validated spectrum.
  ProbVec spectrum() const;

  static DensityMatrix diagonal(const ProbVec& p);

 private:
  Matrix entries_;
};

/// Density matrix on a tensor-product space dimA x dimB.
struct BipartiteState {
  BipartiteState(DensityMatrix state, int dim_a, int dim_b);

  DensityMatrix state;
  int dim_a;
  int dim_b;
};

/// Eigendecomposition with values sorted non-increasing and the matching
/// unitary basis columns. Input must be self-adjoint within 1e-10.
std::pair<Vector, Matrix> eig_down(const Matrix& a);

/// Half the trace norm of rho - sigma, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uhlmann fidelity ||sqrt(rho) sqrt(sigma)||_1, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Maximum- and minimum-entropy states in the trace-distance ball: the
/// classical construction applied to the spectrum, reassembled in the
/// sorted eigenbasis of sigma. Output commutes with sigma.
DensityMatrix flattest_state(const DensityMatrix& sigma, double eps);
DensityMatrix steepest_state(const DensityMatrix& sigma, double eps);

enum class Subsystem { A, B };

/// Reduced state of a bipartite density matrix.
DensityMatrix partial_trace(const BipartiteState& rho, Subsystem over);

/// Relative entropy D(rho || sigma) in bits; +infinity when the support of
/// rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Conditional entropy S(A|B) = S(rho_AB) - S(rho_B) in bits.
double conditional_entropy(const BipartiteState& rho);

}  // namespace epsball
