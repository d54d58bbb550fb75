// Acceptance suite: runs every exit criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "epsball/bounds.hpp"
#include "epsball/certify.hpp"
#include "epsball/experiments.hpp"
#include "epsball/oracle.hpp"
#include "epsball/rng.hpp"
#include "epsball/state_io.hpp"

using namespace epsball;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%2d] %s %s%s%s\n", number, pass ? "PASS" : "FAIL",
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

ProbVec pv(std::vector<double> v) { return canonicalize(std::move(v)); }

ProbVec pure_spectrum(int d) {
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);
  v[0] = 1.0;
  return canonicalize(std::move(v));
}

std::string fmt(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3g", x);
  return buffer;
}

bool pure_target_formula(std::string& detail) {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    for (double eps = 0.05; eps < 0.96; eps += 0.05) {
      const auto con = flattest(pure_spectrum(d), eps);
      for (int i = 0; i < d; ++i) {
        const double expected =
            eps <= 1.0 - 1.0 / d ? (i == 0 ? 1.0 - eps : eps / (d - 1))
                                 : 1.0 / d;
        worst = std::max(worst, std::abs(con.result[i] - expected));
      }
    }
  }
  detail = "max entrywise error " + fmt(worst);
  return worst <= 1e-12;
}

bool fig4_instance(std::string& detail) {
  const auto con = steepest(pv({0.55, 0.24, 0.21}), 0.1);
  const double worst = std::max({std::abs(con.result[0] - 0.65),
                                 std::abs(con.result[1] - 0.24),
                                 std::abs(con.result[2] - 0.11)});
  const ProbVec w = pv({0.58, 0.28, 0.14});
  const bool maj_ok = majorizes(con.result, w) &&
                      !majorizes(pv({0.55, 0.24, 0.21}), w);
  detail = "max entrywise error " + fmt(worst);
  return worst <= 1e-15 && maj_ok;
}

bool majorization_sandwich(std::string& detail) {
  double worst = 0.0;
  long violations = 0;
  for (const int d : {2, 3, 4, 6, 8}) {
    for (int t = 0; t < 200; ++t) {
      CounterRng rng(100 + d, static_cast<std::uint64_t>(t));
      const ProbVec q = pv(rng.dirichlet1(d));
      const double eps = rng.uniform_open_closed();
      const auto flat = flattest(q, eps);
      const auto steep = steepest(q, eps);
      const auto samples =
          sample_ball(q, eps, Threefry2x64::block({7, 7}, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(t)})[0], 200);
      for (const auto& omega : samples) {
        double s_flat = 0.0, s_omega = 0.0, s_steep = 0.0;
        for (int k = 0; k < d - 1; ++k) {
          s_flat += flat.result[k];
          s_omega += omega[k];
          s_steep += steep.result[k];
          worst = std::max(worst, std::max(s_flat - s_omega, s_omega - s_steep));
        }
        if (worst > 1e-10) ++violations;
      }
    }
  }
  detail = "worst partial-sum slack " + fmt(worst);
  return violations == 0 && worst <= 1e-10;
}

bool schur_ordering(std::string& detail) {
  const std::vector<EntropyFunctional> zoo = {
      EntropyFunctional::shannon(), EntropyFunctional::renyi(0.5),
      EntropyFunctional::renyi(2.0), EntropyFunctional::hmin(),
      EntropyFunctional::hmax()};
  double worst = 0.0;
  for (const int d : {2, 3, 4, 6, 8}) {
    for (int t = 0; t < 200; ++t) {
      CounterRng rng(200 + d, static_cast<std::uint64_t>(t));
      const ProbVec q = pv(rng.dirichlet1(d));
      const double eps = rng.uniform_open_closed();
      const auto flat = flattest(q, eps);
      const auto steep = steepest(q, eps);
      const auto samples =
          sample_ball(q, eps, Threefry2x64::block({9, 9}, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(t)})[0], 200);
      for (const auto& f : zoo) {
        const double hi = entropy(flat.result, f);
        const double lo = entropy(steep.result, f);
        for (const auto& omega : samples) {
          const double v = entropy(omega, f);
          worst = std::max(worst, std::max(lo - v, v - hi));
        }
      }
    }
  }
  detail = "worst ordering slack " + fmt(worst);
  return worst <= 1e-10;
}

bool fig1_reproduction(std::string& detail) {
  ExperimentConfig config;
  config.d = 6;
  config.trials = 500;
  config.seed = 7;
  const auto rows = scatter_rows(config);
  bool all_below = true;
  bool strict_gap = false;
  for (const auto& row : rows) {
    all_below = all_below && row.local_bound <= row.global_bound + 1e-10;
    strict_gap = strict_gap || row.local_bound < 0.5 * row.global_bound;
  }
  detail = std::string("local<=AF in all rows: ") + (all_below ? "yes" : "no") +
           ", strict-gap row found: " + (strict_gap ? "yes" : "no");
  return all_below && strict_gap;
}

bool fig2_reproduction(std::string& detail) {
  ExperimentConfig config;
  config.d = 6;
  config.trials = 500;
  config.seed = 8;
  config.alpha = 0.5;
  const auto rows = scatter_rows(config);
  double worst = -1.0;
  for (const auto& row : rows) {
    worst = std::max(worst, row.local_bound - row.global_bound);
  }
  detail = "worst local-global excess " + fmt(worst);
  return worst <= 1e-10;
}

bool equality_cases(std::string& detail) {
  double worst = 0.0;
  // pure sigma saturates AF
  for (int d = 2; d <= 8; ++d) {
    for (const double eps : {0.1, 0.35, 0.6, 0.9}) {
      const auto report = local_vn_bound(pure_spectrum(d), eps);
      worst = std::max(worst, std::abs(report.local - af_bound(eps, d)));
    }
  }
  // peaked sigma: downward bound saturates AF
  for (int d = 3; d <= 8; ++d) {
    for (const double eps : {0.1, 0.3, 0.5}) {
      if (eps >= 1.0 - 1.0 / d) continue;
      std::vector<double> v(static_cast<std::size_t>(d), eps / (d - 1));
      v[0] = 1.0 - eps;
      const auto report = local_vn_bound(canonicalize(std::move(v)), eps);
      worst = std::max(worst, std::abs(report.downward - af_bound(eps, d)));
    }
  }
  if (worst > 1e-10) {
    detail = "equality residual " + fmt(worst);
    return false;
  }
  // generic interior sigma stays strictly below AF
  double smallest_margin = 1.0;
  const std::vector<std::vector<double>> generic = {
      {0.55, 0.24, 0.21}, {0.4, 0.3, 0.2, 0.1}, {0.3, 0.25, 0.2, 0.15, 0.1}};
  for (const auto& raw : generic) {
    for (const double eps : {0.05, 0.1, 0.2}) {
      const auto report = local_vn_bound(pv(std::vector<double>(raw)), eps);
      smallest_margin =
          std::min(smallest_margin, report.global - report.local);
    }
  }
  detail = "equality residual " + fmt(worst) + ", generic margin " +
           fmt(smallest_margin);
  return smallest_margin >= 1e-6;
}

bool semigroup_triangle(std::string& detail) {
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    CounterRng rng(800, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(7));
    const ProbVec q = pv(rng.dirichlet1(d));
    const double eps1 = 0.5 * rng.uniform_open_closed();
    const double eps2 = 0.5 * rng.uniform_open_closed();

    const auto direct = flattest(q, eps1 + eps2);
    const auto composed = flattest(flattest(q, eps2).result, eps1);
    double l1 = 0.0;
    for (int i = 0; i < d; ++i) {
      l1 += std::abs(direct.result[i] - composed.result[i]);
    }
    worst = std::max(worst, l1);

    const auto flat = flattest(q, eps1);
    worst = std::max(worst,
                     std::abs(mixedness_radius(q) -
                              half_l1(uniform(d), flat.result) -
                              half_l1(flat.result, q)));
  }
  detail = "worst residual " + fmt(worst);
  return worst <= 1e-10;
}

bool certificates(std::string& detail) {
  double worst_gap = 0.0, worst_residual = 0.0;
  int optimal = 0, rejected = 0, expected_optimal = 0, expected_rejected = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < 50; ++t) {
      CounterRng rng(900 + d, static_cast<std::uint64_t>(t));
      const DensityMatrix sigma = random_density(rng, d, 0.05);
      const double eps = 0.02 + 0.5 * rng.uniform01();

      const DensityMatrix flat = flattest_state(sigma, eps);
      const auto cert = certify_max(sigma, flat, eps, GradientKind::von_neumann());
      ++expected_optimal;
      optimal += cert.optimal;
      worst_gap = std::max(worst_gap, std::abs(cert.equality_gap));
      worst_residual = std::max(worst_residual,
                                std::max(cert.eigen_residual_plus,
                                         cert.eigen_residual_minus));

      // 0.1-mixed perturbation off the optimum
      if (mixedness_radius(sigma.spectrum()) > eps + 1e-3) {
        const DensityMatrix other = random_density(rng, d, 0.3);
        const Matrix mixed =
            0.9 * flat.matrix() +
            0.1 * (0.7 * sigma.matrix() + 0.3 * other.matrix());
        const DensityMatrix probe(mixed);
        if (trace_distance(probe, sigma) <= eps) {
          ++expected_rejected;
          const auto c =
              certify_max(sigma, probe, eps, GradientKind::von_neumann());
          rejected += !c.optimal;
        }
      }
    }
  }

  // worked instance
  const DensityMatrix sigma = DensityMatrix::diagonal(pv({0.55, 0.24, 0.21}));
  const auto cert = certify_max(sigma, flattest_state(sigma, 0.1), 0.1,
                                GradientKind::von_neumann());
  const double instance_err =
      std::abs(cert.pairing - 0.1 * (cert.lambda_plus - cert.lambda_minus));

  detail = std::to_string(optimal) + "/" + std::to_string(expected_optimal) +
           " optimal, " + std::to_string(rejected) + "/" +
           std::to_string(expected_rejected) + " rejected, worst gap " +
           fmt(worst_gap) + ", instance pairing err " + fmt(instance_err);
  return optimal == expected_optimal && rejected == expected_rejected &&
         worst_gap <= 1e-8 && worst_residual <= 1e-8 &&
         std::abs(cert.pairing - 0.0710) < 1e-3 && instance_err <= 1e-6;
}

bool gradient_checks(std::string& detail) {
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  const auto spectrum_of = [](const Matrix& m) {
    auto [values, basis] = eig_down(m);
    return values;
  };
  const auto shannon = [&](const Matrix& m) {
    double s = 0.0;
    const Vector v = spectrum_of(m);
    for (int i = 0; i < v.size(); ++i) {
      if (v(i) > 0.0) s -= v(i) * std::log2(v(i));
    }
    return s;
  };
  const auto check = [&](CounterRng& rng, const DensityMatrix& rho,
                         const GradientKind& kind,
                         const std::function<double(const Matrix&)>& f) {
    const Matrix h = random_traceless_direction(rng, rho.dim());
    const double analytic = std::real((gradient(rho, kind) * h).trace());
    const double numeric =
        (f(Matrix(rho.matrix() + kStep * h)) - f(Matrix(rho.matrix() - kStep * h))) /
        (2.0 * kStep);
    worst = std::max(worst, std::abs(analytic - numeric) /
                                std::max(1.0, std::abs(numeric)));
  };

  for (int t = 0; t < 20; ++t) {
    CounterRng rng(1000, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(3));
    const DensityMatrix rho = random_density(rng, d, 0.25);

    check(rng, rho, GradientKind::von_neumann(), shannon);
    check(rng, rho, GradientKind::renyi(0.5), [&](const Matrix& m) {
      const Vector v = spectrum_of(m);
      double s = 0.0;
      for (int i = 0; i < v.size(); ++i) s += std::sqrt(std::max(v(i), 0.0));
      return 2.0 * std::log2(s);
    });
    check(rng, rho, GradientKind::renyi(2.0), [&](const Matrix& m) {
      const Vector v = spectrum_of(m);
      double s = 0.0;
      for (int i = 0; i < v.size(); ++i) s += v(i) * v(i);
      return -std::log2(s);
    });
    check(rng, rho, GradientKind::neg_t_alpha(2.5), [&](const Matrix& m) {
      const Vector v = spectrum_of(m);
      double s = 0.0;
      for (int i = 0; i < v.size(); ++i) s -= std::pow(std::max(v(i), 0.0), 2.5);
      return s;
    });

    const DensityMatrix rho_ab = random_density(rng, 4, 0.25);
    check(rng, rho_ab, GradientKind::conditional(2, 2), [&](const Matrix& m) {
      Matrix mb = Matrix::Zero(2, 2);
      for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
          for (int a = 0; a < 2; ++a) mb(b, bp) += m(a * 2 + b, a * 2 + bp);
        }
      }
      return shannon(m) - shannon(mb);
    });
  }
  detail = "worst relative error " + fmt(worst);
  return worst <= 1e-4;
}

bool oracle_equivalence(std::string& detail) {
  const std::vector<EntropyFunctional> zoo = {EntropyFunctional::shannon(),
                                              EntropyFunctional::renyi(0.5),
                                              EntropyFunctional::renyi(2.0)};
  double worst = 0.0;
  for (const int d : {2, 3}) {
    for (int t = 0; t < 20; ++t) {
      CounterRng rng(1100 + d, static_cast<std::uint64_t>(t));
      const ProbVec q = pv(rng.dirichlet1(d));
      const double eps = 0.05 + 0.5 * rng.uniform01();
      for (const auto& f : zoo) {
        const auto mx = grid_extremum(q, eps, f, SmoothDirection::Max, 1e-3);
        worst = std::max(worst, std::abs(mx.best_value -
                                         entropy(flattest(q, eps).result, f)));
        const auto mn = grid_extremum(q, eps, f, SmoothDirection::Min, 1e-3);
        worst = std::max(worst, std::abs(mn.best_value -
                                         entropy(steepest(q, eps).result, f)));
      }
    }
  }
  detail = "worst grid-construction gap " + fmt(worst);
  return worst <= 5e-3;
}

bool coupling_fano(std::string& detail) {
  double worst_marginal = 0.0, worst_diag = 0.0, worst_fano = 0.0;
  for (int t = 0; t < 500; ++t) {
    CounterRng rng(1200, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(7));
    const auto p = rng.dirichlet1(d);
    const auto q = rng.dirichlet1(d);
    const Coupling omega = maximal_coupling(p, q);
    const auto rows = omega.row_marginal();
    const auto cols = omega.col_marginal();
    for (int i = 0; i < d; ++i) {
      worst_marginal = std::max(worst_marginal, std::abs(rows[i] - p[i]));
      worst_marginal = std::max(worst_marginal, std::abs(cols[i] - q[i]));
    }
    const double mismatch = half_l1(p, q);
    worst_diag = std::max(worst_diag,
                          std::abs(omega.diagonal_mass() - (1.0 - mismatch)));
    const double bound = mismatch * std::log2(d - 1.0) +
                         binary_entropy(std::min(1.0, mismatch));
    worst_fano = std::max(worst_fano,
                          coupling_cond_entropy(omega) - bound);
  }

  // Fano equality configuration
  double worst_equality = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const double eps = 0.25;
    std::vector<double> p(static_cast<std::size_t>(d), eps / (d - 1));
    p[0] = 1.0 - eps;
    std::vector<double> q(static_cast<std::size_t>(d), 0.0);
    q[0] = 1.0;
    const double h_xy = coupling_cond_entropy(maximal_coupling(p, q));
    worst_equality = std::max(
        worst_equality,
        std::abs(h_xy - (binary_entropy(eps) + eps * std::log2(d - 1.0))));
  }
  detail = "marginal " + fmt(worst_marginal) + ", diag " + fmt(worst_diag) +
           ", fano excess " + fmt(worst_fano) + ", equality " +
           fmt(worst_equality);
  return worst_marginal <= 1e-12 && worst_diag <= 1e-12 &&
         worst_fano <= 1e-10 && worst_equality <= 1e-10;
}

bool ce_ascent(std::string& detail) {
  double worst_gap = 0.0, worst_dist = 0.0;
  for (int t = 0; t < 10; ++t) {
    CounterRng rng(1300, static_cast<std::uint64_t>(t));
    const BipartiteState sigma(random_density(rng, 4, 0.2), 2, 2);
    const auto result = ascend_ce(sigma, 0.1);
    worst_dist = std::max(worst_dist,
                          trace_distance(result.state.state, sigma.state) - 0.1);
    if (conditional_entropy(result.state) < conditional_entropy(sigma) - 1e-12) {
      detail = "objective decreased";
      return false;
    }
    const auto cert = certify_ce(sigma, result.state, 0.1);
    worst_gap = std::max(worst_gap, std::abs(cert.equality_gap));
  }
  detail = "worst |gap| " + fmt(worst_gap) + ", ball excess " + fmt(worst_dist);
  return worst_gap <= 1e-3 && worst_dist <= 1e-8;
}

bool cli_determinism(std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("epsball_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = EPSBALL_CLI_PATH;
  const auto csv = [&](const std::string& name, int workers) {
    const fs::path out = dir / name;
    const std::string cmd = "EPSBALL_WORKERS=" + std::to_string(workers) + " " +
                            cli + " scatter --dim 6 --trials 500 --seed 7 --out " +
                            out.string();
    if (WEXITSTATUS(std::system(cmd.c_str())) != 0) return std::string();
    std::ifstream in(out, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const std::string a = csv("a.csv", 1);
  const std::string b = csv("b.csv", 1);
  const std::string c = csv("c.csv", 4);
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (a.empty()) {
    detail = "scatter command failed";
    return false;
  }
  detail = std::string("run-to-run identical: ") + (a == b ? "yes" : "no") +
           ", workers 1 vs 4 identical: " + (a == c ? "yes" : "no");
  return a == b && a == c;
}

}  // namespace

int main() {
  criterion(1, "pure-target flattest formula, d=2..8, eps grid", pure_target_formula);
  criterion(2, "worked steepest instance and its majorization relations", fig4_instance);
  criterion(3, "majorization sandwich over sampled balls", majorization_sandwich);
  criterion(4, "Schur-concave entropy ordering over sampled balls", schur_ordering);
  criterion(5, "d=6 scatter: local VN bound below AF with a strict gap", fig1_reproduction);
  criterion(6, "d=6 scatter: local Renyi(1/2) bound below its global", fig2_reproduction);
  criterion(7, "AF equality cases and strict interior gap", equality_cases);
  criterion(8, "semigroup composition and triangle saturation", semigroup_triangle);
  criterion(9, "optimality certificates accept optima, reject perturbations", certificates);
  criterion(10, "gradients against central finite differences", gradient_checks);
  criterion(11, "dense grid oracle matches closed-form extremals", oracle_equivalence);
  criterion(12, "maximal coupling marginals, diagonal mass, Fano", coupling_fano);
  criterion(13, "conditional-entropy ascent certifies", ce_ascent);
  criterion(14, "CLI scatter determinism across runs and workers", cli_determinism);

  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
