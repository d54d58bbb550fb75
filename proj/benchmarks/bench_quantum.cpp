#include <benchmark/benchmark.h>

#include "epsball/certify.hpp"
#include "epsball/density.hpp"
#include "epsball/experiments.hpp"
#include "epsball/oracle.hpp"
#include "epsball/rng.hpp"

namespace {

void BM_flattest_state(benchmark::State& state) {
  epsball::CounterRng rng(5, 0);
  const auto sigma =
      epsball::random_density(rng, static_cast<int>(state.range(0)), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsball::flattest_state(sigma, 0.1));
  }
}
BENCHMARK(BM_flattest_state)->RangeMultiplier(2)->Range(2, 32);

void BM_certify_max(benchmark::State& state) {
  epsball::CounterRng rng(7, 0);
  const auto sigma =
      epsball::random_density(rng, static_cast<int>(state.range(0)), 0.1);
  const auto rho = epsball::flattest_state(sigma, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        epsball::certify_max(sigma, rho, 0.1, epsball::GradientKind::von_neumann()));
  }
}
BENCHMARK(BM_certify_max)->RangeMultiplier(2)->Range(2, 32);

void BM_sample_ball(benchmark::State& state) {
  epsball::CounterRng rng(9, 0);
  const auto q = epsball::canonicalize(rng.dirichlet1(6));
  for (auto _ : state) {
    benchmark::DoNotOptimize(epsball::sample_ball(q, 0.2, 11, 256));
  }
}
BENCHMARK(BM_sample_ball);

}  // namespace

BENCHMARK_MAIN();
