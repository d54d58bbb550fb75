#pragma once

#include <optional>

#include "epsball/extremal.hpp"
#include "epsball/spectra.hpp"

namespace epsball {

enum class GlobalBoundKind { AF, Rastegin, TrivialLogD, None };
enum class EqualityCase { PureSigma, PeakedSigma, UniformSigma, NotTight };
enum class SmoothDirection { Max, Min };

const char* to_string(GlobalBoundKind k);
const char* to_string(EqualityCase c);

/// Local continuity bound next to its global comparator.
///
/// local = max(upward, downward); upward = entropy gain of the flattest
/// state, downward = entropy loss of the steepest state, both in bits.
struct BoundReport {
  double local = 0.0;
  double upward = 0.0;
  double downward = 0.0;
  double global = 0.0;
  GlobalBoundKind global_kind = GlobalBoundKind::None;
  EqualityCase equality_case = EqualityCase::NotTight;
};

/// Audenaert-Fannes bound: eps*log2(d-1) + h(eps) for eps < 1 - 1/d,
/// log2(d) beyond.
double af_bound(double eps, int d);

/// Rastegin's global Renyi continuity bound. Returns nullopt when alpha < 1
/// and eps >= alpha^(1/(1-alpha)), where the bound does not apply.
std::optional<double> rastegin_bound(double eps, int d, double alpha);

/// Local von Neumann continuity bound from the extremal constructions,
/// with the AF bound as global comparator and the equality-case pattern
/// classification (tolerance 1e-9 on the spectrum).
BoundReport local_vn_bound(const ProbVec& q, double eps);

/// Local Renyi continuity bound; global comparator is the Rastegin bound
/// capped at log2(d), or the trivial log2(d) where Rastegin is undefined.
BoundReport local_renyi_bound(const ProbVec& q, double eps, double alpha);

/// Smoothed entropy over the eps-ball: Max evaluates f on the flattest
/// state, Min on the steepest (exact for every Schur-concave f).
double smoothed(const ProbVec& q, double eps, const EntropyFunctional& f,
                SmoothDirection direction);

/// One-shot compression interval: the smoothed max-entropy lower bound and
/// the same plus log2(1/delta). Requires 0 < delta < eps <= 1.
std::pair<double, double> one_shot_compression_interval(const ProbVec& q,
                                                        double eps,
                                                        double delta);

}  // namespace epsball
