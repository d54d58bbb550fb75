#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epsball/bounds.hpp"
#include "epsball/density.hpp"
#include "epsball/rng.hpp"
#include "epsball/spectra.hpp"

namespace epsball {

struct ExperimentConfig {
  int d = 6;
  int trials = 500;
  std::uint64_t seed = 0;
  std::optional<double> alpha;  // set: Renyi bound; unset: von Neumann
  std::string output_path;
};

struct ScatterRow {
  double epsilon = 0.0;
  double local_bound = 0.0;
  double global_bound = 0.0;
  GlobalBoundKind global_kind = GlobalBoundKind::None;
};

/// One row per trial: spectrum ~ symmetric Dirichlet(1) (uniform on the
/// simplex), epsilon ~ uniform (0, 1], both derived from (seed, trial).
/// Rows are ordered by trial index regardless of scheduling.
std::vector<ScatterRow> scatter_rows(const ExperimentConfig& config,
                                     int workers = 1);

/// CSV with a provenance comment line, a fixed header, 17-significant-digit
/// fields, '\n' newlines. Byte-identical for identical (config, seed).
void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows,
                       const ExperimentConfig& config);

// -- deterministic random states (shared by the verify suites and tests) --

/// Haar-ish random unitary from a QR-decomposed complex Ginibre matrix.
Matrix random_unitary(CounterRng& rng, int d);

/// Random density matrix: Dirichlet(1) spectrum conjugated by a random
/// unitary, optionally mixed with the completely mixed state to keep it
/// comfortably faithful.
DensityMatrix random_density(CounterRng& rng, int d, double mix_uniform = 0.0);

/// Random trace-zero self-adjoint direction with unit Hilbert-Schmidt norm.
Matrix random_traceless_direction(CounterRng& rng, int d);

// -- verification suites -------------------------------------------------

struct VerifyReport {
  std::string suite;
  int checks = 0;
  int failures = 0;
  double worst_residual = 0.0;
  std::vector<std::string> lines;

  bool ok() const { return failures == 0; }
};

/// Run one of the invariant suites: "sandwich", "certificate", "gradients",
/// or "coupling". A positive grid resolution adds a brute-force grid
/// cross-check to the sandwich suite for d <= 3 trials.
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed,
                              int trials, int workers = 1,
                              double resolution = 0.0);

}  // namespace epsball
