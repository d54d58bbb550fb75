#pragma once

#include "epsball/spectra.hpp"

namespace epsball {

/// Which closed-form construction produced an extremal spectrum.
enum class ExtremalBranch {
  Unchanged,          // flattest with eps == 0
  Uniform,            // flattest once the ball swallows the mixed state
  InteriorFlattest,   // two-level flattening (alpha2 top block, alpha1 bottom)
  TwoPointSteepest,   // q_d > eps: move eps from the bottom to the top
  PureSteepest,       // whole tail fits in the budget: (1, 0, ..., 0)
  TruncatedSteepest,  // zero out the ell smallest entries, trim the next one
};

const char* to_string(ExtremalBranch b);

/// Extremal spectrum plus the construction metadata that produced it.
///
/// Flattest metadata (alpha1, n, alpha2, m, r) and steepest metadata
/// (ell, q_ell) refer to pre-sort positions; the result vector itself is
/// re-sorted into canonical non-increasing form.
struct ExtremalConstruction {
  ProbVec result;
  ExtremalBranch branch;
  double epsilon = 0.0;

  // flattest branch only
  double alpha1 = 0.0;
  int n = 0;
  double alpha2 = 0.0;
  int m = 0;
  int r = 0;

  // steepest branch only
  int ell = 0;
  double q_ell = 0.0;
};

/// The completely mixed spectrum (1/d, ..., 1/d).
ProbVec uniform(int d);

/// Trace distance from q to the completely mixed spectrum, computed as the
/// partial sum of (mu_i - 1/d) over the entries above 1/d.
double mixedness_radius(const ProbVec& q);

/// Maximum-entropy (majorization-minimal) spectrum in the half-l1 ball of
/// radius eps around q. eps in [0, 1].
ExtremalConstruction flattest(const ProbVec& q, double eps);

/// Minimum-entropy (majorization-maximal) spectrum in the ball. eps in (0, 1].
ExtremalConstruction steepest(const ProbVec& q, double eps);

}  // namespace epsball
