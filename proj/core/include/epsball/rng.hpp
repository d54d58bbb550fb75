#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace epsball {

/// Threefry-2x64 block function (20 rounds), the counter-based generator of
/// Salmon et al. Identical output on every platform, trivially splittable:
/// every (key, counter) pair is an independent random block.
struct Threefry2x64 {
  static constexpr std::uint64_t kParity = 0x1BD11BDAA9FC1A22ULL;
  static constexpr int kRotations[8] = {16, 42, 12, 31, 16, 32, 24, 21};

  static std::array<std::uint64_t, 2> block(std::array<std::uint64_t, 2> key,
                                            std::array<std::uint64_t, 2> ctr) {
    auto rotl = [](std::uint64_t x, int r) {
      return (x << r) | (x >> (64 - r));
    };
    const std::uint64_t ks[3] = {key[0], key[1], kParity ^ key[0] ^ key[1]};
    std::uint64_t x0 = ctr[0] + ks[0];
    std::uint64_t x1 = ctr[1] + ks[1];
    for (int round = 0; round < 20; ++round) {
      x0 += x1;
      x1 = rotl(x1, kRotations[round % 8]);
      x1 ^= x0;
      if ((round & 3) == 3) {
        const std::uint64_t inject = static_cast<std::uint64_t>(round / 4 + 1);
        x0 += ks[(round / 4 + 1) % 3];
        x1 += ks[(round / 4 + 2) % 3] + inject;
      }
    }
    return {x0, x1};
  }
};

/// Deterministic stream of random values addressed by (seed, stream).
/// Streams derived from the same seed are statistically independent, so
/// per-sample streams can be evaluated concurrently in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{seed, stream}, counter_{0, 0} {}

  std::uint64_t next_u64() {
    if (cached_) {
      cached_ = false;
      return cache_;
    }
    auto out = Threefry2x64::block(key_, counter_);
    ++counter_[0];
    if (counter_[0] == 0) ++counter_[1];
    cache_ = out[1];
    cached_ = true;
    return out[0];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform01(); }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // 64-bit multiply-shift; bias is ~n / 2^64, irrelevant at our scales.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_normal_) {
      have_normal_ = false;
      return spare_normal_;
    }
    const double u1 = uniform_open_closed();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_normal_ = r * std::sin(theta);
    have_normal_ = true;
    return r * std::cos(theta);
  }

  double exponential() { return -std::log(uniform_open_closed()); }

  /// Symmetric Dirichlet(1) sample: uniform on the probability simplex.
  std::vector<double> dirichlet1(int d) {
    std::vector<double> x(static_cast<std::size_t>(d));
    double sum = 0.0;
    for (auto& xi : x) {
      xi = exponential();
      sum += xi;
    }
    for (auto& xi : x) xi /= sum;
    return x;
  }

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 2> counter_;
  std::uint64_t cache_ = 0;
  bool cached_ = false;
  double spare_normal_ = 0.0;
  bool have_normal_ = false;
};

}  // namespace epsball
