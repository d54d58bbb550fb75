#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "epsball/experiments.hpp"
#include "epsball/oracle.hpp"
#include "epsball/rng.hpp"

using namespace epsball;

namespace {

ProbVec pv(std::vector<double> v) { return canonicalize(std::move(v)); }

}  // namespace

TEST_CASE("threefry known-answer vectors") {
  // Reference vectors for threefry2x64, 20 rounds (Salmon et al. kat file).
  {
    const auto out = Threefry2x64::block({0, 0}, {0, 0});
    CHECK(out[0] == 0xc2b6e3a8c2c69865ULL);
    CHECK(out[1] == 0x6f81ed42f350084dULL);
  }
  {
    const auto out = Threefry2x64::block({0xffffffffffffffffULL, 0xffffffffffffffffULL},
                                         {0xffffffffffffffffULL, 0xffffffffffffffffULL});
    CHECK(out[0] == 0xe02cb7c4d95d277aULL);
    CHECK(out[1] == 0xd06633d0893b8b68ULL);
  }
  {
    const auto out = Threefry2x64::block({0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
                                         {0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL});
    CHECK(out[0] == 0x263c7d30bb0f0af1ULL);
    CHECK(out[1] == 0x56be8361d3311526ULL);
  }
}

TEST_CASE("counter rng streams") {
  CounterRng a(42, 0), b(42, 0), c(42, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterRng u(1, 2);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform01();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CounterRng dr(3, 4);
  const auto simplex = dr.dirichlet1(5);
  double sum = 0.0;
  for (double x : simplex) {
    CHECK(x >= 0.0);
    sum += x;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample_ball membership and determinism") {
  const ProbVec q = pv({0.55, 0.24, 0.21});

  // near-zero radius collapses onto q
  for (const auto& omega : sample_ball(q, 1e-9, 7, 30)) {
    CHECK(half_l1(omega, q) <= 1e-9 + 1e-12);
  }

  // identical seeds give identical samples
  const auto first = sample_ball(q, 0.1, 99, 200);
  const auto second = sample_ball(q, 0.1, 99, 200);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (int k = 0; k < q.d(); ++k) CHECK(first[i][k] == second[i][k]);
  }

  // worker count never changes the output
  const auto threaded = sample_ball(q, 0.1, 99, 200, 4);
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (int k = 0; k < q.d(); ++k) CHECK(first[i][k] == threaded[i][k]);
  }

  // calibration: all inside, a healthy fraction near the boundary
  const auto samples = sample_ball(q, 0.1, 2024, 1000);
  int near_boundary = 0;
  for (const auto& omega : samples) {
    const double dist = half_l1(omega, q);
    CHECK(dist <= 0.1 + 1e-12);
    if (dist >= 0.09) ++near_boundary;
  }
  CHECK(near_boundary >= 100);

  CHECK_THROWS_AS(sample_ball(q, 0.0, 1, 10), InvalidEpsilon);
  CHECK_THROWS_AS(sample_ball(q, 0.1, 1, 0), OutOfRange);
}

TEST_CASE("grid extremum agrees with the constructions") {
  const auto shannon = EntropyFunctional::shannon();
  {
    const ProbVec q = pv({0.8, 0.2});
    const auto mx = grid_extremum(q, 0.1, shannon, SmoothDirection::Max, 1e-3);
    CHECK(mx.best_point[0] == doctest::Approx(0.7).epsilon(1e-9));
    const auto mn = grid_extremum(q, 0.1, shannon, SmoothDirection::Min, 1e-3);
    CHECK(mn.best_point[0] == doctest::Approx(0.9).epsilon(1e-9));
  }
  {
    const ProbVec q = pv({0.55, 0.24, 0.21});
    const auto mx = grid_extremum(q, 0.1, shannon, SmoothDirection::Max, 1e-3);
    const double expected = entropy(pv({0.45, 0.275, 0.275}), shannon);
    CHECK(std::abs(mx.best_value - expected) <= 5e-3);
    CHECK(half_l1(mx.best_point, q) <= 0.1 + 1e-3);
  }
  CHECK_THROWS_AS(grid_extremum(uniform(4), 0.1, shannon, SmoothDirection::Max, 1e-3),
                  DimensionTooLarge);
  CHECK_THROWS_AS(grid_extremum(uniform(7), 0.1, shannon, SmoothDirection::Max, 1e-2,
                                GridMode::MultiStart),
                  DimensionTooLarge);

  // the heuristic multi-start search lands close at d = 5
  {
    CounterRng rng(15, 0);
    const ProbVec q = pv(rng.dirichlet1(5));
    const auto mx = grid_extremum(q, 0.15, shannon, SmoothDirection::Max, 1e-3,
                                  GridMode::MultiStart, 31);
    const double expected = entropy(flattest(q, 0.15).result, shannon);
    CHECK(std::abs(mx.best_value - expected) <= 2e-2);
  }

  // worker count never changes the dense result
  {
    const ProbVec q = pv({0.5, 0.3, 0.2});
    const auto serial = grid_extremum(q, 0.12, shannon, SmoothDirection::Max,
                                      1e-3, GridMode::Dense, 0, 1);
    const auto threaded = grid_extremum(q, 0.12, shannon, SmoothDirection::Max,
                                        1e-3, GridMode::Dense, 0, 4);
    CHECK(serial.best_value == threaded.best_value);
    for (int i = 0; i < 3; ++i) {
      CHECK(serial.best_point[i] == threaded.best_point[i]);
    }
  }
}

TEST_CASE("maximal coupling") {
  {
    const std::vector<double> p = {0.7, 0.3}, q = {0.5, 0.5};
    const Coupling omega = maximal_coupling(p, q);
    CHECK(omega.joint(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(omega.joint(0, 1) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(omega.joint(1, 0) == 0.0);
    CHECK(omega.joint(1, 1) == doctest::Approx(0.3).epsilon(1e-14));
  }
  {
    const std::vector<double> p = {0.4, 0.6};
    const Coupling omega = maximal_coupling(p, p);
    CHECK(omega.joint(0, 1) == 0.0);
    CHECK(omega.joint(1, 0) == 0.0);
    CHECK(omega.diagonal_mass() == doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    const std::vector<double> p = {1.0, 0.0}, q = {0.0, 1.0};
    const Coupling omega = maximal_coupling(p, q);
    CHECK(omega.joint(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega.diagonal_mass() == 0.0);
  }
  CHECK_THROWS_AS(maximal_coupling(std::vector<double>{1.0},
                                   std::vector<double>{0.5, 0.5}),
                  DimensionMismatch);

  // marginals and diagonal mass on random pairs
  CounterRng rng(17, 0);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + static_cast<int>(rng.below(7));
    const auto p = rng.dirichlet1(d);
    const auto q = rng.dirichlet1(d);
    const Coupling omega = maximal_coupling(p, q);
    const auto rows = omega.row_marginal();
    const auto cols = omega.col_marginal();
    for (int i = 0; i < d; ++i) {
      CHECK(std::abs(rows[i] - p[i]) <= 1e-12);
      CHECK(std::abs(cols[i] - q[i]) <= 1e-12);
    }
    CHECK(std::abs(omega.diagonal_mass() - (1.0 - half_l1(p, q))) <= 1e-12);
  }
}

TEST_CASE("coupling conditional entropy and Fano") {
  // diagonal coupling: X is determined by Y
  {
    const std::vector<double> p = {0.6, 0.4};
    CHECK(coupling_cond_entropy(maximal_coupling(p, p)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  // Fano equality configuration
  for (int d = 2; d <= 6; ++d) {
    const double eps = 0.3;
    std::vector<double> p(static_cast<std::size_t>(d), eps / (d - 1));
    p[0] = 1.0 - eps;
    std::vector<double> q(static_cast<std::size_t>(d), 0.0);
    q[0] = 1.0;
    const double h_xy = coupling_cond_entropy(maximal_coupling(p, q));
    CHECK(std::abs(h_xy - (binary_entropy(eps) + eps * std::log2(d - 1.0))) <=
          1e-10);
  }
  // Fano inequality with the coupling mismatch as epsilon
  CounterRng rng(19, 0);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + static_cast<int>(rng.below(7));
    const auto p = rng.dirichlet1(d);
    const auto q = rng.dirichlet1(d);
    const double mismatch = half_l1(p, q);
    const double bound = mismatch * std::log2(d - 1.0) +
                         binary_entropy(std::min(1.0, mismatch));
    CHECK(coupling_cond_entropy(maximal_coupling(p, q)) <= bound + 1e-10);
  }
}

TEST_CASE("ascend_ce") {
  // tau_AB is a fixed point
  {
    const BipartiteState tau(DensityMatrix::diagonal(uniform(4)), 2, 2);
    const auto result = ascend_ce(tau, 0.1);
    CHECK(result.converged);
    CHECK(trace_distance(result.state.state, tau.state) <= 1e-10);
  }
  // tau_A (x) rho_B already maximizes S(A|B)
  {
    CounterRng rng(23, 0);
    const DensityMatrix rho_b = random_density(rng, 2, 0.2);
    Matrix product = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
      product.block(i * 2, i * 2, 2, 2) = 0.5 * rho_b.matrix();
    }
    const BipartiteState sigma(DensityMatrix(product), 2, 2);
    const auto result = ascend_ce(sigma, 0.1);
    CHECK(conditional_entropy(result.state) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // random faithful states: stays in ball, improves, and certifies
  {
    CounterRng rng(29, 0);
    for (int t = 0; t < 5; ++t) {
      const BipartiteState sigma(random_density(rng, 4, 0.2), 2, 2);
      const auto result = ascend_ce(sigma, 0.1);
      CHECK(trace_distance(result.state.state, sigma.state) <= 0.1 + 1e-8);
      CHECK(conditional_entropy(result.state) >=
            conditional_entropy(sigma) - 1e-12);
      const auto cert = certify_ce(sigma, result.state, 0.1);
      CHECK(std::abs(cert.equality_gap) <= 1e-3);
    }
  }
  CHECK_THROWS_AS(
      ascend_ce(BipartiteState(DensityMatrix::diagonal(pv({1.0, 0.0, 0.0, 0.0})),
                               2, 2),
                0.1),
      NotFaithful);
}
