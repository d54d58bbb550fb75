#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "epsball/bounds.hpp"
#include "epsball/certify.hpp"
#include "epsball/density.hpp"
#include "epsball/spectra.hpp"

namespace epsball {

/// Deterministic sampler of the half-l1 ball around q. Mixes three
/// strategies: convex mixtures toward random simplex points, trace-zero
/// l1-budgeted perturbations projected back to the simplex, and
/// boundary-biased samples at distance exactly eps where feasible.
/// Reproducible from (seed, parameters) and independent of worker count.
std::vector<ProbVec> sample_ball(const ProbVec& q, double eps,
                                 std::uint64_t seed, int n, int workers = 1);

struct GridResult {
  double best_value = 0.0;
  ProbVec best_point;
  double resolution = 0.0;
  SmoothDirection direction = SmoothDirection::Max;
};

enum class GridMode {
  Dense,       // exhaustive simplex lattice; d <= 3
  MultiStart,  // sampled multi-start local search (heuristic); d <= 6
};

/// Brute-force extremum of an entropy functional over the ball, by dense
/// lattice enumeration (d <= 3) or a multi-start pairwise-transfer search.
/// Results do not depend on the worker count.
GridResult grid_extremum(const ProbVec& q, double eps,
                         const EntropyFunctional& f, SmoothDirection direction,
                         double resolution, GridMode mode = GridMode::Dense,
                         std::uint64_t seed = 0, int workers = 1);

/// Joint distribution of an (X, Y) pair with prescribed marginals that
/// maximizes Pr[X = Y].
struct Coupling {
  Eigen::MatrixXd joint;  // joint(i, j) = Pr[X = i, Y = j]

  std::vector<double> row_marginal() const;  // distribution of X
  std::vector<double> col_marginal() const;  // distribution of Y
  double diagonal_mass() const;
};

/// Maximal coupling of aligned distributions p and q: diagonal min(p_i, q_i),
/// off-diagonal (p_i - q_i)_+ (q_j - p_j)_+ / (half-l1 distance). Inputs are
/// used as given; the caller controls alignment.
Coupling maximal_coupling(std::span<const double> p, std::span<const double> q);

/// H(X|Y) = H(X,Y) - H(Y) of a coupling, in bits.
double coupling_cond_entropy(const Coupling& omega);

struct AscentResult {
  BipartiteState state;
  bool converged = false;
  int iterations = 0;
  double certificate_gap = 0.0;
};

/// Projected ascent of the conditional entropy over the eps-ball around a
/// faithful sigma. Steps toward the gradient's extreme eigenvectors, then
/// projects (PSD clip, trace renormalization, radial pull-back toward
/// sigma). Accepted iterations never decrease S(A|B); convergence is
/// declared when the optimality-certificate gap closes.
AscentResult ascend_ce(const BipartiteState& sigma, double eps,
                       int max_iters = 2000, double step = 1.0);

}  // namespace epsball
