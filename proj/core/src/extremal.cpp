#include "epsball/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace epsball {

namespace {

// Inclusive-direction guard for the minimality searches: exact-tie inputs
// (alpha1(n') == mu_{d-n'}) must take the inclusive branch.
constexpr double kTieTol = 1e-12;
constexpr double kAssertTol = 1e-9;

[[noreturn]] void construction_fail(const std::string& what) {
  throw ConstructionAssertFailed("extremal: " + what);
}

}  // namespace

const char* to_string(ExtremalBranch b) {
  switch (b) {
    case ExtremalBranch::Unchanged: return "Unchanged";
    case ExtremalBranch::Uniform: return "Uniform";
    case ExtremalBranch::InteriorFlattest: return "Interior-Flattest";
    case ExtremalBranch::TwoPointSteepest: return "TwoPoint-Steepest";
    case ExtremalBranch::PureSteepest: return "Pure-Steepest";
    case ExtremalBranch::TruncatedSteepest: return "Truncated-Steepest";
  }
  return "?";
}

ProbVec uniform(int d) {
  if (d < 1) throw OutOfRange("uniform: dimension must be >= 1");
  return canonicalize(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

double mixedness_radius(const ProbVec& q) {
  const int d = q.d();
  const double inv_d = 1.0 / d;
  double radius = 0.0;
  for (int i = 0; i < d && q[i] >= inv_d; ++i) {
    radius += q[i] - inv_d;
  }
  return radius;
}

ExtremalConstruction flattest(const ProbVec& q, double eps) {
  if (eps < 0.0 || eps > 1.0) {
    throw InvalidEpsilon("flattest: eps must lie in [0, 1], got " +
                         std::to_string(eps));
  }
  const int d = q.d();

  if (eps == 0.0) {
    return {q, ExtremalBranch::Unchanged, 0.0};
  }
  const double radius = mixedness_radius(q);
  if (radius <= eps) {
    return {uniform(d), ExtremalBranch::Uniform, eps};
  }

  // radius > eps >= 0 forces d >= 2 and a strict crossing mu_{r+1} < 1/d <= mu_r.
  const double inv_d = 1.0 / d;
  int r = 0;
  while (r < d && q[r] >= inv_d) ++r;
  if (r < 1 || r > d - 1) {
    construction_fail("index r = " + std::to_string(r) + " out of {1..d-1}");
  }

  // m = min { m' in {1..r} : alpha2(m') >= mu_{m'+1} },
  // alpha2(m') = (sum of the m' largest entries - eps) / m'.
  int m = 0;
  double alpha2 = 0.0;
  double head = 0.0;
  for (int mp = 1; mp <= r; ++mp) {
    head += q[mp - 1];
    const double candidate = (head - eps) / mp;
    if (candidate >= q[mp] - kTieTol) {
      m = mp;
      alpha2 = candidate;
      break;
    }
  }
  if (m == 0) construction_fail("no admissible m in {1..r}");

  // n = min { n' in {1..d-r} : alpha1(n') <= mu_{d-n'} },
  // alpha1(n') = (sum of the n' smallest entries + eps) / n'.
  int n = 0;
  double alpha1 = 0.0;
  double tail = 0.0;
  for (int np = 1; np <= d - r; ++np) {
    tail += q[d - np];
    const double candidate = (tail + eps) / np;
    if (candidate <= q[d - np - 1] + kTieTol) {
      n = np;
      alpha1 = candidate;
      break;
    }
  }
  if (n == 0) construction_fail("no admissible n in {1..d-r}");

  std::vector<double> out(q.entries());
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = alpha2;
  for (int i = d - n; i < d; ++i) out[static_cast<std::size_t>(i)] = alpha1;

  // The inequality pattern that makes (alpha1, n) and (alpha2, m) unique,
  // checked post-hoc. Violations indicate a bug, not bad input.
  if (!(alpha1 < inv_d + kTieTol && inv_d < alpha2 + kTieTol)) {
    construction_fail("alpha1 < 1/d < alpha2 violated");
  }
  if (!(q[d - n] < alpha1 + kAssertTol && alpha1 <= q[d - n - 1] + kTieTol)) {
    construction_fail("mu_{d-n+1} < alpha1 <= mu_{d-n} violated");
  }
  if (!(q[m] <= alpha2 + kTieTol && alpha2 < q[m - 1] + kAssertTol)) {
    construction_fail("mu_{m+1} <= alpha2 < mu_m violated");
  }
  if (std::abs(half_l1(out, q.span()) - eps) > kAssertTol) {
    construction_fail("result not on the eps boundary");
  }

  std::sort(out.begin(), out.end(), std::greater<>());
  ExtremalConstruction con{canonicalize(std::move(out)),
                           ExtremalBranch::InteriorFlattest, eps};
  con.alpha1 = alpha1;
  con.n = n;
  con.alpha2 = alpha2;
  con.m = m;
  con.r = r;
  return con;
}

ExtremalConstruction steepest(const ProbVec& q, double eps) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw InvalidEpsilon("steepest: eps must lie in (0, 1], got " +
                         std::to_string(eps));
  }
  const int d = q.d();
  if (d == 1) {
    // The ball is the single point (1); pure already.
    ExtremalConstruction con{q, ExtremalBranch::PureSteepest, eps};
    return con;
  }

  if (q[d - 1] > eps) {
    std::vector<double> out(q.entries());
    out.front() += eps;
    out.back() -= eps;
    return {canonicalize(std::move(out)), ExtremalBranch::TwoPointSteepest, eps};
  }

  // ell = largest index in {1..d-1} with Q_ell = (sum of ell smallest) <= eps.
  int ell = 0;
  double q_ell = 0.0;
  double tail = 0.0;
  for (int lp = 1; lp <= d - 1; ++lp) {
    tail += q[d - lp];
    if (tail <= eps) {
      ell = lp;
      q_ell = tail;
    } else {
      break;
    }
  }
  if (ell == 0) {
    construction_fail("steepest: no admissible ell although q_d <= eps");
  }

  ExtremalConstruction con{q, ExtremalBranch::PureSteepest, eps};
  con.ell = ell;
  con.q_ell = q_ell;
  if (ell == d - 1) {
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    out.front() = 1.0;
    con.result = canonicalize(std::move(out));
    return con;
  }

  std::vector<double> out(q.entries());
  out.front() += eps;
  out[static_cast<std::size_t>(d - ell - 1)] -= eps - q_ell;
  for (int i = d - ell; i < d; ++i) out[static_cast<std::size_t>(i)] = 0.0;
  std::sort(out.begin(), out.end(), std::greater<>());
  con.result = canonicalize(std::move(out));
  con.branch = ExtremalBranch::TruncatedSteepest;
  return con;
}

}  // namespace epsball
