#include "epsball/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <thread>

#include "epsball/certify.hpp"
#include "epsball/oracle.hpp"

namespace epsball {

namespace {

std::string fmt17(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose,
                          std::uint64_t index) {
  return Threefry2x64::block({seed, purpose}, {index, 0})[0];
}

}  // namespace

std::vector<ScatterRow> scatter_rows(const ExperimentConfig& config,
                                     int workers) {
  if (config.d < 2) throw OutOfRange("scatter: dimension must be >= 2");
  if (config.trials < 1) throw OutOfRange("scatter: trials must be >= 1");

  std::vector<ScatterRow> rows(static_cast<std::size_t>(config.trials));
  const auto run_trial = [&](int t) {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(t));
    const ProbVec q = canonicalize(rng.dirichlet1(config.d));
    const double eps = rng.uniform_open_closed();
    const BoundReport report =
        config.alpha ? local_renyi_bound(q, eps, *config.alpha)
                     : local_vn_bound(q, eps);
    rows[static_cast<std::size_t>(t)] =
        {eps, report.local, report.global, report.global_kind};
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    for (int t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (config.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(config.trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([lo, hi, &run_trial] {
        for (int t = lo; t < hi; ++t) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows,
                       const ExperimentConfig& config) {
  out << "# spectra: symmetric Dirichlet(1) on the simplex; epsilon: uniform (0,1];"
      << " d=" << config.d << " trials=" << config.trials
      << " seed=" << config.seed << " bound="
      << (config.alpha ? "renyi alpha=" + fmt17(*config.alpha)
                       : std::string("vn"))
      << "\n";
  out << "epsilon,local_bound,global_bound,global_kind\n";
  for (const auto& row : rows) {
    out << fmt17(row.epsilon) << ',' << fmt17(row.local_bound) << ','
        << fmt17(row.global_bound) << ',' << to_string(row.global_kind)
        << "\n";
  }
}

Matrix random_unitary(CounterRng& rng, int d) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = std::complex<double>(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const std::complex<double> diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

DensityMatrix random_density(CounterRng& rng, int d, double mix_uniform) {
  const std::vector<double> spectrum = rng.dirichlet1(d);
  const Matrix u = random_unitary(rng, d);
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    m += spectrum[static_cast<std::size_t>(i)] * u.col(i) * u.col(i).adjoint();
  }
  if (mix_uniform > 0.0) {
    m = (1.0 - mix_uniform) * m +
        (mix_uniform / d) * Matrix::Identity(d, d);
  }
  return DensityMatrix(m);
}

Matrix random_traceless_direction(CounterRng& rng, int d) {
  Matrix h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = std::complex<double>(rng.normal(), 0.0);
    for (int j = i + 1; j < d; ++j) {
      h(i, j) = std::complex<double>(rng.normal(), rng.normal());
      h(j, i) = std::conj(h(i, j));
    }
  }
  h -= (std::real(h.trace()) / d) * Matrix::Identity(d, d);
  const double norm = std::sqrt(std::real((h * h).trace()));
  return h / norm;
}

namespace {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(std::string name) { report_.suite = std::move(name); }

  void check(const std::string& what, double residual, double tolerance) {
    ++report_.checks;
    report_.worst_residual = std::max(report_.worst_residual, residual);
    if (!(residual <= tolerance)) {
      ++report_.failures;
      report_.lines.push_back("FAIL " + what + ": residual " + fmt17(residual) +
                              " > tol " + fmt17(tolerance));
    }
  }

  void check_flag(const std::string& what, bool pass) {
    ++report_.checks;
    if (!pass) {
      ++report_.failures;
      report_.lines.push_back("FAIL " + what);
    }
  }

  VerifyReport finish(const std::string& summary_prefix) {
    report_.lines.push_back(summary_prefix + ": " +
                            std::to_string(report_.checks) + " checks, " +
                            std::to_string(report_.failures) +
                            " failures, worst residual " +
                            fmt17(report_.worst_residual));
    return std::move(report_);
  }

 private:
  VerifyReport report_;
};

VerifyReport verify_sandwich(std::uint64_t seed, int trials, int workers,
                             double resolution) {
  SuiteRecorder rec("sandwich");
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(7));
    const ProbVec q = canonicalize(rng.dirichlet1(d));
    const double eps = rng.uniform_open_closed();

    const auto flat = flattest(q, eps);
    const auto steep = steepest(q, eps);
    rec.check("flattest trace", std::abs(1.0 - std::accumulate(flat.result.begin(),
                                                               flat.result.end(), 0.0)),
              1e-12);
    rec.check("steepest trace", std::abs(1.0 - std::accumulate(steep.result.begin(),
                                                               steep.result.end(), 0.0)),
              1e-12);
    const double flat_dist = half_l1(flat.result, q);
    rec.check("flattest placement",
              std::abs(flat_dist - std::min(eps, mixedness_radius(q))), 1e-12);
    const double steep_dist = half_l1(steep.result, q);
    if (steep.branch == ExtremalBranch::PureSteepest) {
      rec.check("steepest membership", std::max(0.0, steep_dist - eps), 1e-12);
    } else {
      rec.check("steepest boundary", std::abs(steep_dist - eps), 1e-12);
    }

    const auto samples =
        sample_ball(q, eps, derive_seed(seed, 0x5a11, t), 40, workers);
    double worst = 0.0;
    for (const auto& omega : samples) {
      worst = std::max(worst, std::max(0.0, half_l1(omega, q) - eps));
      double s_flat = 0.0, s_omega = 0.0, s_steep = 0.0;
      for (int k = 0; k < d - 1; ++k) {
        s_flat += flat.result[k];
        s_omega += omega[k];
        s_steep += steep.result[k];
        worst = std::max(worst, s_flat - s_omega);
        worst = std::max(worst, s_omega - s_steep);
      }
    }
    rec.check("majorization sandwich", worst, 1e-10);

    // Semigroup and triangle saturation on a random split of eps.
    const double eps1 = eps * rng.uniform01();
    const double eps2 = eps - eps1;
    if (eps1 > 0.0 && eps2 > 0.0) {
      const auto composed = flattest(flattest(q, eps2).result, eps1);
      double diff = 0.0;
      for (int k = 0; k < d; ++k) {
        diff += std::abs(composed.result[k] - flat.result[k]);
      }
      rec.check("semigroup", diff, 1e-10);
    }
    rec.check("triangle saturation",
              std::abs(mixedness_radius(q) -
                       half_l1(uniform(d), flat.result) - flat_dist),
              1e-10);

    if (resolution > 0.0 && d <= 3) {
      const auto f = EntropyFunctional::shannon();
      const auto grid_max = grid_extremum(q, eps, f, SmoothDirection::Max,
                                          resolution);
      const double slack = 4.0 * std::log2(static_cast<double>(d)) * resolution;
      rec.check("grid max agreement",
                std::abs(grid_max.best_value - entropy(flat.result, f)), slack);
    }
  }
  return rec.finish("sandwich");
}

VerifyReport verify_certificate(std::uint64_t seed, int trials, int workers) {
  (void)workers;
  SuiteRecorder rec("certificate");
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(5));
    const DensityMatrix sigma = random_density(rng, d, 0.05);
    const double eps = 0.02 + 0.5 * rng.uniform01();

    const DensityMatrix flat = flattest_state(sigma, eps);
    const auto cert = certify_max(sigma, flat, eps, GradientKind::von_neumann());
    rec.check_flag("flattest certifies optimal", cert.optimal);
    rec.check("certificate gap", std::abs(cert.equality_gap), 1e-8);
    rec.check("eigen residual",
              std::max(cert.eigen_residual_plus, cert.eigen_residual_minus),
              1e-8);

    // The gradient pairing inequality must hold at any faithful ball point.
    const ProbVec q = sigma.spectrum();
    const auto ball = sample_ball(q, eps, derive_seed(seed, 0xce47, t), 4);
    auto [values, basis] = eig_down(sigma.matrix());
    for (const auto& p : ball) {
      Matrix rho = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        rho += p[i] * basis.col(i) * basis.col(i).adjoint();
      }
      rho = (1.0 - 1e-6) * rho + 1e-6 * sigma.matrix();
      const auto c =
          certify_max(sigma, DensityMatrix(rho), eps, GradientKind::von_neumann());
      rec.check("pairing inequality", std::max(0.0, -c.equality_gap), 1e-9);
    }

    // A 0.1-mixture with a random interior state must not certify.
    if (mixedness_radius(q) > eps) {
      const DensityMatrix probe = random_density(rng, d, 0.2);
      const Matrix mixed = 0.9 * flat.matrix() + 0.1 * (0.5 * probe.matrix() +
                                                        0.5 * sigma.matrix());
      auto [mv, mb] = eig_down(Matrix(mixed - sigma.matrix()));
      const double td = 0.5 * mv.cwiseAbs().sum();
      if (td <= eps) {
        const auto c = certify_max(sigma, DensityMatrix(mixed), eps,
                                   GradientKind::von_neumann());
        rec.check_flag("perturbed state not optimal", !c.optimal);
      }
    }
  }
  return rec.finish("certificate");
}

VerifyReport verify_gradients(std::uint64_t seed, int trials, int workers) {
  (void)workers;
  SuiteRecorder rec("gradients");
  constexpr double kStep = 1e-5;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(3));

    const auto fd_check = [&](const char* label, const DensityMatrix& rho,
                              const GradientKind& kind,
                              const std::function<double(const Matrix&)>& f) {
      const Matrix h = random_traceless_direction(rng, rho.dim());
      const Matrix grad = gradient(rho, kind);
      const double analytic = std::real((grad * h).trace());
      const double numeric = (f(rho.matrix() + kStep * h) -
                              f(rho.matrix() - kStep * h)) /
                             (2.0 * kStep);
      rec.check(label, std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric)),
                1e-4);
    };

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

    const DensityMatrix rho = random_density(rng, d, 0.2);
    fd_check("vn gradient", rho, GradientKind::von_neumann(), shannon);

    const double alpha_lo = 0.3 + 0.4 * rng.uniform01();
    fd_check("renyi gradient", rho, GradientKind::renyi(alpha_lo),
             [&](const Matrix& m) {
               const Vector v = spectrum_of(m);
               double s = 0.0;
               for (int i = 0; i < v.size(); ++i) {
                 if (v(i) > 0.0) s += std::pow(v(i), alpha_lo);
               }
               return std::log2(s) / (1.0 - alpha_lo);
             });

    const double alpha_hi = 1.5 + rng.uniform01();
    fd_check("neg-t-alpha gradient", rho, GradientKind::neg_t_alpha(alpha_hi),
             [&](const Matrix& m) {
               const Vector v = spectrum_of(m);
               double s = 0.0;
               for (int i = 0; i < v.size(); ++i) {
                 if (v(i) > 0.0) s -= std::pow(v(i), alpha_hi);
               }
               return s;
             });

    const DensityMatrix rho_ab = random_density(rng, 4, 0.2);
    fd_check("conditional gradient", rho_ab, GradientKind::conditional(2, 2),
             [&](const Matrix& m) {
               Matrix mb = Matrix::Zero(2, 2);
               for (int b = 0; b < 2; ++b) {
                 for (int bp = 0; bp < 2; ++bp) {
                   for (int a = 0; a < 2; ++a) mb(b, bp) += m(a * 2 + b, a * 2 + bp);
                 }
               }
               return shannon(m) - shannon(mb);
             });
  }
  return rec.finish("gradients");
}

VerifyReport verify_coupling(std::uint64_t seed, int trials, int workers) {
  (void)workers;
  SuiteRecorder rec("coupling");
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    const int d = 2 + static_cast<int>(rng.below(7));
    const std::vector<double> p = rng.dirichlet1(d);
    const std::vector<double> q = rng.dirichlet1(d);

    const Coupling omega = maximal_coupling(p, q);
    const auto rows = omega.row_marginal();
    const auto cols = omega.col_marginal();
    double marginal_residual = 0.0;
    for (int i = 0; i < d; ++i) {
      marginal_residual = std::max(marginal_residual, std::abs(rows[i] - p[i]));
      marginal_residual = std::max(marginal_residual, std::abs(cols[i] - q[i]));
    }
    rec.check("coupling marginals", marginal_residual, 1e-12);

    const double mismatch = half_l1(p, q);
    rec.check("diagonal mass",
              std::abs(omega.diagonal_mass() - (1.0 - mismatch)), 1e-12);

    const double fano_rhs =
        mismatch * std::log2(static_cast<double>(d - 1)) +
        binary_entropy(std::min(1.0, mismatch));
    rec.check("fano inequality",
              std::max(0.0, coupling_cond_entropy(omega) - fano_rhs), 1e-10);
  }
  return rec.finish("coupling");
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed,
                              int trials, int workers, double resolution) {
  if (trials < 1) throw OutOfRange("verify: trials must be >= 1");
  if (suite == "sandwich") {
    return verify_sandwich(seed, trials, workers, resolution);
  }
  if (suite == "certificate") {
    return verify_certificate(seed, trials, workers);
  }
  if (suite == "gradients") {
    return verify_gradients(seed, trials, workers);
  }
  if (suite == "coupling") {
    return verify_coupling(seed, trials, workers);
  }
  throw OutOfRange("verify: unknown suite \"" + suite + "\"");
}

}  // namespace epsball
