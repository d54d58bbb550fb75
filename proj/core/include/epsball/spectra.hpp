#pragma once

#include <functional>
#include <span>
#include <vector>

#include "epsball/errors.hpp"

namespace epsball {

/// Validated probability vector, stored sorted non-increasing.
///
/// Invariants: every entry >= 0, entries sum to 1 within 1e-12, and
/// entries[i] >= entries[i+1]. All majorization and construction code in
/// this library assumes this normal form.
class ProbVec {
 public:
  int d() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }
  std::span<const double> span() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend ProbVec canonicalize(std::vector<double> raw);

 private:
  explicit ProbVec(std::vector<double> sorted) : entries_(std::move(sorted)) {}
  std::vector<double> entries_;
};

/// Normal form for raw probability data: validates, clips eigensolver
/// noise in [-1e-10, 0) to zero, renormalizes, and sorts non-increasing.
///
/// Throws NegativeEntry for entries below -1e-10 and NotNormalized when the
/// sum is off by more than 1e-9 after clipping.
ProbVec canonicalize(std::vector<double> raw);

/// True iff x majorizes y: every leading partial sum of x dominates the
/// corresponding partial sum of y (entries are already sorted). Partial-sum
/// comparisons carry a 1e-12 tolerance.
bool majorizes(const ProbVec& x, const ProbVec& y);

/// Half the l1 distance between two equal-length vectors. Does not sort:
/// the caller controls alignment.
double half_l1(std::span<const double> p, std::span<const double> q);
double half_l1(const ProbVec& p, const ProbVec& q);

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/// Classical entropy selector. All values are reported in bits.
struct EntropyFunctional {
  enum class Kind { Shannon, Renyi, Tsallis, Unified, HMin, HMax, HPhi };

  Kind kind = Kind::Shannon;
  double alpha = 0.0;  // Renyi/Tsallis/Unified order
  double s = 0.0;      // Unified parameter
  // HPhi: caller-supplied h and phi. The monotonicity/concavity conditions
  // on (h, phi) are a documented contract, not machine-checked.
  std::function<double(double)> h;
  std::function<double(double)> phi;

  static EntropyFunctional shannon();
  static EntropyFunctional renyi(double alpha);
  static EntropyFunctional tsallis(double alpha);
  static EntropyFunctional unified(double alpha, double s);
  static EntropyFunctional hmin();
  static EntropyFunctional hmax();
  static EntropyFunctional hphi(std::function<double(double)> h,
                                std::function<double(double)> phi);

  const char* name() const;
};

/// Entropy of a probability vector in bits; 0*log(0) terms evaluate to 0.
double entropy(const ProbVec& p, const EntropyFunctional& f);

/// Same, on a raw probability vector that is already valid (used by the
/// grid oracle to skip re-validation on lattice points).
double entropy_raw(std::span<const double> probs, const EntropyFunctional& f);

}  // namespace epsball
