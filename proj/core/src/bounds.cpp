#include "epsball/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epsball {

namespace {

constexpr double kPatternTol = 1e-9;

double clamp_nonneg(double x) { return x < 0.0 ? 0.0 : x; }

// Spectrum-pattern classification for the AF equality cases. Borderline
// inputs classify NotTight.
EqualityCase classify(const ProbVec& q, double eps) {
  const int d = q.d();
  const double threshold = 1.0 - 1.0 / d;

  bool pure = std::abs(q[0] - 1.0) <= kPatternTol;
  for (int i = 1; pure && i < d; ++i) pure = q[i] <= kPatternTol;
  if (pure) return EqualityCase::PureSigma;

  if (eps < threshold && d >= 2) {
    bool peaked = std::abs(q[0] - (1.0 - eps)) <= kPatternTol;
    const double tail = eps / (d - 1);
    for (int i = 1; peaked && i < d; ++i) {
      peaked = std::abs(q[i] - tail) <= kPatternTol;
    }
    if (peaked) return EqualityCase::PeakedSigma;
  }

  if (eps >= threshold) {
    bool flat = true;
    for (int i = 0; flat && i < d; ++i) {
      flat = std::abs(q[i] - 1.0 / d) <= kPatternTol;
    }
    if (flat) return EqualityCase::UniformSigma;
  }

  return EqualityCase::NotTight;
}

}  // namespace

const char* to_string(GlobalBoundKind k) {
  switch (k) {
    case GlobalBoundKind::AF: return "AF";
    case GlobalBoundKind::Rastegin: return "Rastegin";
    case GlobalBoundKind::TrivialLogD: return "TrivialLogD";
    case GlobalBoundKind::None: return "None";
  }
  return "?";
}

const char* to_string(EqualityCase c) {
  switch (c) {
    case EqualityCase::PureSigma: return "PureSigma";
    case EqualityCase::PeakedSigma: return "PeakedSigma";
    case EqualityCase::UniformSigma: return "UniformSigma";
    case EqualityCase::NotTight: return "NotTight";
  }
  return "?";
}

double af_bound(double eps, int d) {
  if (d < 2) throw OutOfRange("af_bound: dimension must be >= 2");
  if (eps < 0.0 || eps > 1.0) {
    throw OutOfRange("af_bound: eps must lie in [0, 1], got " +
                     std::to_string(eps));
  }
  if (eps < 1.0 - 1.0 / d) {
    return eps * std::log2(static_cast<double>(d - 1)) + binary_entropy(eps);
  }
  return std::log2(static_cast<double>(d));
}

std::optional<double> rastegin_bound(double eps, int d, double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12) {
    throw InvalidAlpha("rastegin_bound: alpha must be in (0,1) or (1,inf)");
  }
  if (eps < 0.0 || eps > 1.0) {
    throw OutOfRange("rastegin_bound: eps must lie in [0, 1]");
  }
  const double c = 1.0 / (std::log(2.0) * (1.0 - alpha));
  const auto g = [&](double x) { return c * (std::pow(x, 1.0 - alpha) - 1.0); };
  const auto eta = [&](double x) { return c * (std::pow(x, alpha) - x); };
  if (alpha < 1.0) {
    if (eps >= std::pow(alpha, 1.0 / (1.0 - alpha))) return std::nullopt;
    return std::pow(2.0 * eps, alpha) * g(static_cast<double>(d)) +
           eta(2.0 * eps);
  }
  const double r = c * (std::pow(eps, alpha) + std::pow(1.0 - eps, alpha) - 1.0);
  return std::pow(static_cast<double>(d), 2.0 * (alpha - 1.0)) *
         (g(static_cast<double>(d - 1)) + r);
}

BoundReport local_vn_bound(const ProbVec& q, double eps) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("local_vn_bound: eps must lie in (0, 1]");
  }
  const auto f = EntropyFunctional::shannon();
  const double s_q = entropy(q, f);

  BoundReport report;
  report.upward = clamp_nonneg(entropy(flattest(q, eps).result, f) - s_q);
  report.downward = clamp_nonneg(s_q - entropy(steepest(q, eps).result, f));
  report.local = std::max(report.upward, report.downward);
  report.global = af_bound(eps, q.d());
  report.global_kind = GlobalBoundKind::AF;
  report.equality_case = classify(q, eps);
  return report;
}

BoundReport local_renyi_bound(const ProbVec& q, double eps, double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12) {
    throw InvalidAlpha("local_renyi_bound: alpha must be in (0,1) or (1,inf)");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("local_renyi_bound: eps must lie in (0, 1]");
  }
  const auto f = EntropyFunctional::renyi(alpha);
  const double s_q = entropy(q, f);

  BoundReport report;
  report.upward = clamp_nonneg(entropy(flattest(q, eps).result, f) - s_q);
  report.downward = clamp_nonneg(s_q - entropy(steepest(q, eps).result, f));
  report.local = std::max(report.upward, report.downward);

  const double log_d = std::log2(static_cast<double>(q.d()));
  const auto rastegin = rastegin_bound(eps, q.d(), alpha);
  if (rastegin && *rastegin <= log_d) {
    report.global = *rastegin;
    report.global_kind = GlobalBoundKind::Rastegin;
  } else {
    report.global = log_d;
    report.global_kind = GlobalBoundKind::TrivialLogD;
  }
  report.equality_case = classify(q, eps);
  return report;
}

double smoothed(const ProbVec& q, double eps, const EntropyFunctional& f,
                SmoothDirection direction) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("smoothed: eps must lie in (0, 1]");
  }
  if (direction == SmoothDirection::Max) {
    return entropy(flattest(q, eps).result, f);
  }
  return entropy(steepest(q, eps).result, f);
}

std::pair<double, double> one_shot_compression_interval(const ProbVec& q,
                                                        double eps,
                                                        double delta) {
  if (!(delta > 0.0) || !(delta < eps) || eps > 1.0) {
    throw InvalidDelta("one_shot_compression_interval: need 0 < delta < eps <= 1");
  }
  const double lower = smoothed(q, eps, EntropyFunctional::hmax(),
                                SmoothDirection::Min);
  return {lower, lower + std::log2(1.0 / delta)};
}

}  // namespace epsball
