#include "epsball/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "epsball/rng.hpp"

namespace epsball {

namespace {

constexpr double kBallSlack = 1e-12;

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2 * workers) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Strategy (a): convex mixture of q with a uniform simplex point, scaled to
// land inside the ball.
std::vector<double> sample_mixture(const ProbVec& q, double eps,
                                   CounterRng& rng) {
  const int d = q.d();
  const std::vector<double> s = rng.dirichlet1(d);
  const double dist = half_l1(s, q.span());
  const double t =
      dist > 0.0 ? rng.uniform01() * std::min(1.0, eps / dist) : 0.0;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) x[i] = q[i] + t * (s[i] - q[i]);
  return x;
}

// Strategy (b): trace-zero l1-budgeted perturbation, projected back to the
// simplex and radially pulled into the ball if the projection overshot.
std::vector<double> sample_perturbation(const ProbVec& q, double eps,
                                        CounterRng& rng) {
  const int d = q.d();
  std::vector<double> z(static_cast<std::size_t>(d));
  double mean = 0.0;
  for (auto& zi : z) {
    zi = rng.normal();
    mean += zi;
  }
  mean /= d;
  double norm = 0.0;
  for (auto& zi : z) {
    zi -= mean;
    norm += std::abs(zi);
  }
  norm *= 0.5;
  std::vector<double> x(q.entries());
  if (norm < 1e-300) return x;

  const double budget = eps * rng.uniform01();
  for (int i = 0; i < d; ++i) {
    x[i] = std::max(0.0, q[i] + z[i] * budget / norm);
  }
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (auto& xi : x) xi /= sum;
  const double dist = half_l1(x, q.span());
  if (dist > eps) {
    const double f = eps / dist;
    for (int i = 0; i < d; ++i) x[i] = q[i] + f * (x[i] - q[i]);
  }
  return x;
}

// Strategy (c): boundary-biased sample. Moves min(eps, tail mass) from the
// smallest entries onto the largest one or two, preserving sorted order, so
// the sample sits at distance exactly eps whenever the tail affords it.
std::vector<double> sample_boundary(const ProbVec& q, double eps,
                                    CounterRng& rng) {
  const int d = q.d();
  std::vector<double> x(q.entries());
  if (d < 2) return x;
  const double budget = std::min(eps, 1.0 - q[0]);

  double up1 = budget;
  if (d > 2 && rng.uniform01() < 0.5) {
    const double split = 0.5 * budget * rng.uniform01();
    up1 = budget - split;
    x[1] += split;
  }
  x[0] += up1;

  double rem = budget;
  for (int i = d - 1; i >= 1 && rem > 0.0; --i) {
    const double take = std::min(x[static_cast<std::size_t>(i)], rem);
    x[static_cast<std::size_t>(i)] -= take;
    rem -= take;
  }
  return x;
}

}  // namespace

std::vector<ProbVec> sample_ball(const ProbVec& q, double eps,
                                 std::uint64_t seed, int n, int workers) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("sample_ball: eps must lie in (0, 1]");
  }
  if (n < 1) throw OutOfRange("sample_ball: n must be >= 1");

  std::vector<std::vector<double>> raw(static_cast<std::size_t>(n));
  parallel_for(n, workers, [&](int i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    switch (i % 3) {
      case 0: raw[i] = sample_boundary(q, eps, rng); break;
      case 1: raw[i] = sample_mixture(q, eps, rng); break;
      default: raw[i] = sample_perturbation(q, eps, rng); break;
    }
  });

  std::vector<ProbVec> out;
  out.reserve(static_cast<std::size_t>(n));
  for (auto& sample : raw) {
    // Sorting a sample never increases its distance to the sorted center.
    out.push_back(canonicalize(std::move(sample)));
  }
  return out;
}

namespace {

struct GridBest {
  double value;
  std::vector<double> point;

  void consider(double v, const std::vector<double>& p, SmoothDirection dir) {
    const bool better =
        dir == SmoothDirection::Max ? v > value : v < value;
    if (better) {
      value = v;
      point = p;
    }
  }
};

// Evaluates one band of the outer lattice index; bands are merged in index
// order so the result is independent of the worker count.
GridBest dense_grid_band(const ProbVec& q, double eps,
                         const EntropyFunctional& f, SmoothDirection dir,
                         long n, long i_lo, long i_hi) {
  const int d = q.d();
  GridBest best{entropy(q, f), q.entries()};
  std::vector<double> p(static_cast<std::size_t>(d));
  for (long i = i_lo; i < i_hi; ++i) {
    if (d == 2) {
      p[0] = static_cast<double>(i) / n;
      p[1] = static_cast<double>(n - i) / n;
      if (half_l1(p, q.span()) <= eps + kBallSlack) {
        best.consider(entropy_raw(p, f), p, dir);
      }
      continue;
    }
    const long rest = n - i;
    for (long j = std::min(i, rest); 2 * j >= rest; --j) {
      p[0] = static_cast<double>(i) / n;
      p[1] = static_cast<double>(j) / n;
      p[2] = static_cast<double>(rest - j) / n;
      if (half_l1(p, q.span()) <= eps + kBallSlack) {
        best.consider(entropy_raw(p, f), p, dir);
      }
    }
  }
  return best;
}

GridResult dense_grid(const ProbVec& q, double eps, const EntropyFunctional& f,
                      SmoothDirection dir, double resolution, int workers) {
  const int d = q.d();
  if (d > 3) {
    throw DimensionTooLarge("grid_extremum: dense mode supports d <= 3");
  }
  const long n = std::lround(1.0 / resolution);
  const long i_lo = d == 2 ? (n + 1) / 2 : (n + 2) / 3;
  GridBest best{entropy(q, f), q.entries()};

  if (d == 1 || i_lo > n) {
    return {best.value, canonicalize(std::move(best.point)), resolution, dir};
  }
  workers = std::max(1, workers);
  const long span = n + 1 - i_lo;
  const long chunk = (span + workers - 1) / workers;
  std::vector<GridBest> bands;
  bands.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    bands.push_back(best);
  }
  {
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
      const long lo = i_lo + w * chunk;
      const long hi = std::min(n + 1, lo + chunk);
      if (lo >= hi) continue;
      pool.emplace_back([&, w, lo, hi] {
        bands[static_cast<std::size_t>(w)] =
            dense_grid_band(q, eps, f, dir, n, lo, hi);
      });
    }
    bands[0] = dense_grid_band(q, eps, f, dir, n, i_lo,
                               std::min(n + 1, i_lo + chunk));
    for (auto& t : pool) t.join();
  }
  // Bands cover ascending outer indices; merging them in order with strict
  // improvement reproduces the sequential winner for any worker count.
  for (const auto& band : bands) {
    best.consider(band.value, band.point, dir);
  }
  return {best.value, canonicalize(std::move(best.point)), resolution, dir};
}

GridResult multistart_search(const ProbVec& q, double eps,
                             const EntropyFunctional& f, SmoothDirection dir,
                             double resolution, std::uint64_t seed) {
  const int d = q.d();
  if (d > 6) {
    throw DimensionTooLarge("grid_extremum: multi-start mode supports d <= 6");
  }
  GridBest best{entropy(q, f), q.entries()};

  auto refine = [&](std::vector<double> p) {
    double value = entropy_raw(p, f);
    for (double delta = 0.5 * eps; delta >= 0.25 * resolution; delta *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (int from = 0; from < d; ++from) {
          for (int to = 0; to < d; ++to) {
            if (to == from || p[from] < delta) continue;
            std::vector<double> trial(p);
            trial[from] -= delta;
            trial[to] += delta;
            if (half_l1(trial, q.span()) > eps + kBallSlack) continue;
            const double v = entropy_raw(trial, f);
            const bool better =
                dir == SmoothDirection::Max ? v > value : v < value;
            if (better) {
              p = std::move(trial);
              value = v;
              moved = true;
            }
          }
        }
      }
    }
    best.consider(value, p, dir);
  };

  refine(q.entries());
  for (const auto& start : sample_ball(q, eps, seed, 48)) {
    refine(start.entries());
  }
  return {best.value, canonicalize(std::move(best.point)), resolution, dir};
}

}  // namespace

GridResult grid_extremum(const ProbVec& q, double eps,
                         const EntropyFunctional& f, SmoothDirection direction,
                         double resolution, GridMode mode, std::uint64_t seed,
                         int workers) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("grid_extremum: eps must lie in (0, 1]");
  }
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw OutOfRange("grid_extremum: resolution must lie in (0, 1]");
  }
  if (mode == GridMode::Dense) {
    return dense_grid(q, eps, f, direction, resolution, workers);
  }
  return multistart_search(q, eps, f, direction, resolution, seed);
}

std::vector<double> Coupling::row_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(joint.rows()));
  for (Eigen::Index i = 0; i < joint.rows(); ++i) out[i] = joint.row(i).sum();
  return out;
}

std::vector<double> Coupling::col_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(joint.cols()));
  for (Eigen::Index j = 0; j < joint.cols(); ++j) out[j] = joint.col(j).sum();
  return out;
}

double Coupling::diagonal_mass() const { return joint.diagonal().sum(); }

Coupling maximal_coupling(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("maximal_coupling: sizes differ");
  }
  const int d = static_cast<int>(p.size());
  const double mismatch = half_l1(p, q);
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) joint(i, i) = std::min(p[i], q[i]);
  if (mismatch > 1e-15) {
    for (int i = 0; i < d; ++i) {
      const double excess = std::max(0.0, p[i] - q[i]);
      if (excess == 0.0) continue;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const double deficit = std::max(0.0, q[j] - p[j]);
        joint(i, j) = excess * deficit / mismatch;
      }
    }
  }
  return {joint};
}

double coupling_cond_entropy(const Coupling& omega) {
  double joint_entropy = 0.0;
  for (Eigen::Index i = 0; i < omega.joint.rows(); ++i) {
    for (Eigen::Index j = 0; j < omega.joint.cols(); ++j) {
      const double w = omega.joint(i, j);
      if (w > 0.0) joint_entropy -= w * std::log2(w);
    }
  }
  double cond_entropy = joint_entropy;
  for (double mass : omega.col_marginal()) {
    if (mass > 0.0) cond_entropy += mass * std::log2(mass);
  }
  return cond_entropy;
}

namespace {

// Raw helpers for the ascent loop; they tolerate the slightly-off iterates
// that appear mid-projection.
double shannon_of_eigs(const Vector& values) {
  double h = 0.0;
  for (int i = 0; i < values.size(); ++i) {
    if (values(i) > 0.0) h -= values(i) * std::log2(values(i));
  }
  return h;
}

double cond_ent_raw(const Matrix& rho, int da, int db) {
  auto [values, basis] = eig_down(rho);
  Matrix rho_b = Matrix::Zero(db, db);
  for (int b = 0; b < db; ++b) {
    for (int bp = 0; bp < db; ++bp) {
      for (int a = 0; a < da; ++a) rho_b(b, bp) += rho(a * db + b, a * db + bp);
    }
  }
  auto [b_values, b_basis] = eig_down(rho_b);
  return shannon_of_eigs(values) - shannon_of_eigs(b_values);
}

Matrix log2m_floored(const Matrix& a) {
  auto [values, basis] = eig_down(a);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (int i = 0; i < values.size(); ++i) {
    out += std::log2(std::max(values(i), 1e-15)) * basis.col(i) *
           basis.col(i).adjoint();
  }
  return out;
}

Matrix ce_gradient_raw(const Matrix& rho, int da, int db) {
  Matrix rho_b = Matrix::Zero(db, db);
  for (int b = 0; b < db; ++b) {
    for (int bp = 0; bp < db; ++bp) {
      for (int a = 0; a < da; ++a) rho_b(b, bp) += rho(a * db + b, a * db + bp);
    }
  }
  const Matrix log_b = log2m_floored(rho_b);
  Matrix lifted = Matrix::Zero(rho.rows(), rho.cols());
  for (int a = 0; a < da; ++a) {
    lifted.block(a * db, a * db, db, db) = log_b;
  }
  return lifted - log2m_floored(rho);
}

// Projection chain: PSD clip, trace renormalization, radial pull-back into
// the ball, faithfulness floor via a vanishing mix with sigma.
Matrix project_to_feasible(Matrix x, const Matrix& sigma, double eps) {
  x = 0.5 * (x + x.adjoint().eval());
  auto [values, basis] = eig_down(x);
  Vector clipped = values.cwiseMax(0.0);
  const double trace = clipped.sum();
  clipped /= trace;
  x = basis * clipped.cast<std::complex<double>>().asDiagonal() * basis.adjoint();

  auto [diff_values, diff_basis] = eig_down(Matrix(x - sigma));
  const double dist = 0.5 * diff_values.cwiseAbs().sum();
  if (dist > eps) {
    x = sigma + (eps / dist) * (x - sigma);
  }

  auto [final_values, final_basis] = eig_down(x);
  if (final_values(final_values.size() - 1) < 1e-9) {
    x = (1.0 - 1e-8) * x + 1e-8 * sigma;
  }
  return 0.5 * (x + x.adjoint().eval());
}

}  // namespace

AscentResult ascend_ce(const BipartiteState& sigma, double eps, int max_iters,
                       double step) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("ascend_ce: eps must lie in (0, 1]");
  }
  {
    auto [values, basis] = eig_down(sigma.state.matrix());
    if (values(values.size() - 1) <= 1e-12) {
      throw NotFaithful("ascend_ce: sigma is not faithful");
    }
  }
  const int da = sigma.dim_a;
  const int db = sigma.dim_b;
  const Matrix& center = sigma.state.matrix();

  Matrix rho = center;
  double objective = cond_ent_raw(rho, da, db);
  double gap = 0.0;
  bool converged = false;
  int iter = 0;

  for (; iter < max_iters; ++iter) {
    const Matrix grad = ce_gradient_raw(rho, da, db);
    auto [g_values, g_basis] = eig_down(grad);
    const double flatness = g_values(0) - g_values(g_values.size() - 1);
    const double pairing = std::real((grad * (rho - center)).trace());
    gap = eps * flatness - pairing;
    if (gap <= 5e-7) {
      converged = true;
      break;
    }

    // Conditional-gradient vertex of the trace ball: shift eps of mass from
    // the bottom eigenvector of the gradient to the top one.
    const Matrix vertex =
        center + eps * (g_basis.col(0) * g_basis.col(0).adjoint() -
                        g_basis.col(g_values.size() - 1) *
                            g_basis.col(g_values.size() - 1).adjoint());

    bool accepted = false;
    for (double t = std::min(1.0, step); t > 1e-10; t *= 0.5) {
      const Matrix candidate =
          project_to_feasible(rho + t * (vertex - rho), center, eps);
      const double value = cond_ent_raw(candidate, da, db);
      if (value > objective + 1e-14) {
        rho = candidate;
        objective = value;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stalled; report best iterate with the open gap
  }

  AscentResult result{BipartiteState(DensityMatrix(rho), da, db), converged,
                      iter, gap};
  return result;
}

}  // namespace epsball
