#include "epsball/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace epsball {

namespace {

constexpr double kClipWindow = -1e-10;
constexpr double kSumTol = 1e-9;
constexpr double kPartialSumTol = 1e-12;

double log2_safe(double x) { return std::log2(x); }

}  // namespace

ProbVec canonicalize(std::vector<double> raw) {
  if (raw.empty()) {
    throw NotNormalized("canonicalize: empty input");
  }
  for (auto& v : raw) {
    if (v < kClipWindow) {
      throw NegativeEntry("canonicalize: entry " + std::to_string(v) +
                          " below clipping window");
    }
    if (v < 0.0) v = 0.0;
  }
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTol) {
    throw NotNormalized("canonicalize: entries sum to " + std::to_string(sum));
  }
  for (auto& v : raw) v /= sum;
  std::sort(raw.begin(), raw.end(), std::greater<>());
  return ProbVec(std::move(raw));
}

bool majorizes(const ProbVec& x, const ProbVec& y) {
  if (x.d() != y.d()) {
    throw DimensionMismatch("majorizes: dimensions " + std::to_string(x.d()) +
                            " vs " + std::to_string(y.d()));
  }
  double sx = 0.0, sy = 0.0;
  for (int k = 0; k < x.d() - 1; ++k) {
    sx += x[k];
    sy += y[k];
    if (sx < sy - kPartialSumTol) return false;
  }
  return true;
}

double half_l1(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("half_l1: sizes " + std::to_string(p.size()) +
                            " vs " + std::to_string(q.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

double half_l1(const ProbVec& p, const ProbVec& q) {
  return half_l1(p.span(), q.span());
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) {
    throw OutOfRange("binary_entropy: argument " + std::to_string(x));
  }
  double h = 0.0;
  if (x > 0.0) h -= x * log2_safe(x);
  if (x < 1.0) h -= (1.0 - x) * log2_safe(1.0 - x);
  return h;
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12) {
    throw InvalidFunctional("entropy order alpha must be positive and != 1, got " +
                            std::to_string(alpha));
  }
}

}  // namespace

EntropyFunctional EntropyFunctional::shannon() {
  return {Kind::Shannon, 0.0, 0.0, nullptr, nullptr};
}

EntropyFunctional EntropyFunctional::renyi(double alpha) {
  require_alpha(alpha);
  return {Kind::Renyi, alpha, 0.0, nullptr, nullptr};
}

EntropyFunctional EntropyFunctional::tsallis(double alpha) {
  require_alpha(alpha);
  return {Kind::Tsallis, alpha, 0.0, nullptr, nullptr};
}

EntropyFunctional EntropyFunctional::unified(double alpha, double s) {
  require_alpha(alpha);
  if (!(s > 0.0)) {
    throw InvalidFunctional("unified entropy requires s > 0, got " +
                            std::to_string(s));
  }
  return {Kind::Unified, alpha, s, nullptr, nullptr};
}

EntropyFunctional EntropyFunctional::hmin() {
  return {Kind::HMin, 0.0, 0.0, nullptr, nullptr};
}

EntropyFunctional EntropyFunctional::hmax() {
  return {Kind::HMax, 0.0, 0.0, nullptr, nullptr};
}

EntropyFunctional EntropyFunctional::hphi(std::function<double(double)> h,
                                          std::function<double(double)> phi) {
  if (!h || !phi) {
    throw InvalidFunctional("hphi: both h and phi must be callable");
  }
  return {Kind::HPhi, 0.0, 0.0, std::move(h), std::move(phi)};
}

const char* EntropyFunctional::name() const {
  switch (kind) {
    case Kind::Shannon: return "shannon";
    case Kind::Renyi: return "renyi";
    case Kind::Tsallis: return "tsallis";
    case Kind::Unified: return "unified";
    case Kind::HMin: return "hmin";
    case Kind::HMax: return "hmax";
    case Kind::HPhi: return "hphi";
  }
  return "?";
}

double entropy_raw(std::span<const double> probs, const EntropyFunctional& f) {
  switch (f.kind) {
    case EntropyFunctional::Kind::Shannon: {
      double h = 0.0;
      for (double p : probs) {
        if (p > 0.0) h -= p * log2_safe(p);
      }
      return h;
    }
    case EntropyFunctional::Kind::Renyi: {
      require_alpha(f.alpha);
      double t = 0.0;
      for (double p : probs) {
        if (p > 0.0) t += std::pow(p, f.alpha);
      }
      return log2_safe(t) / (1.0 - f.alpha);
    }
    case EntropyFunctional::Kind::Tsallis: {
      require_alpha(f.alpha);
      double t = 0.0;
      for (double p : probs) {
        if (p > 0.0) t += std::pow(p, f.alpha);
      }
      return (t - 1.0) / (1.0 - f.alpha);
    }
    case EntropyFunctional::Kind::Unified: {
      require_alpha(f.alpha);
      if (!(f.s > 0.0)) throw InvalidFunctional("unified entropy requires s > 0");
      double t = 0.0;
      for (double p : probs) {
        if (p > 0.0) t += std::pow(p, f.alpha);
      }
      return (std::pow(t, f.s) - 1.0) / ((1.0 - f.alpha) * f.s);
    }
    case EntropyFunctional::Kind::HMin: {
      const double top = *std::max_element(probs.begin(), probs.end());
      return -log2_safe(top);
    }
    case EntropyFunctional::Kind::HMax: {
      double t = 0.0;
      for (double p : probs) {
        if (p > 0.0) t += std::sqrt(p);
      }
      return 2.0 * log2_safe(t);
    }
    case EntropyFunctional::Kind::HPhi: {
      if (!f.h || !f.phi) throw InvalidFunctional("hphi: missing h or phi");
      double t = 0.0;
      for (double p : probs) t += f.phi(p);
      return f.h(t);
    }
  }
  throw InvalidFunctional("entropy: unknown functional kind");
}

double entropy(const ProbVec& p, const EntropyFunctional& f) {
  return entropy_raw(p.span(), f);
}

}  // namespace epsball
