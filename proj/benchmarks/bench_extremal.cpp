#include <benchmark/benchmark.h>

#include "epsball/bounds.hpp"
#include "epsball/extremal.hpp"
#include "epsball/rng.hpp"

namespace {

epsball::ProbVec random_spectrum(int d, std::uint64_t seed) {
  epsball::CounterRng rng(seed, 0);
  return epsball::canonicalize(rng.dirichlet1(d));
}

void BM_flattest(benchmark::State& state) {
  const auto q = random_spectrum(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsball::flattest(q, 0.1));
  }
}
BENCHMARK(BM_flattest)->RangeMultiplier(2)->Range(2, 256);

void BM_steepest(benchmark::State& state) {
  const auto q = random_spectrum(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsball::steepest(q, 0.1));
  }
}
BENCHMARK(BM_steepest)->RangeMultiplier(2)->Range(2, 256);

void BM_local_vn_bound(benchmark::State& state) {
  const auto q = random_spectrum(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsball::local_vn_bound(q, 0.1));
  }
}
BENCHMARK(BM_local_vn_bound)->RangeMultiplier(2)->Range(2, 256);

}  // namespace
