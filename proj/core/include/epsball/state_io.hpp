#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "epsball/density.hpp"
#include "epsball/extremal.hpp"
#include "epsball/spectra.hpp"

namespace epsball {

/// A parsed state file: either a classical spectrum or a density matrix
/// (whose sorted spectrum is also populated).
struct StateFile {
  std::optional<ProbVec> spectrum;
  std::optional<DensityMatrix> matrix;

  bool is_matrix() const { return matrix.has_value(); }
  const ProbVec& probs() const { return *spectrum; }
};

/// Load a JSON state file: {"spectrum": [..]} or
/// {"matrix": {"re": [[..]], "im": [[..]]}}. Matrices are validated against
/// the density-matrix invariants on load. Throws ParseError for malformed
/// JSON or schema, IoError for unreadable files; domain validation errors
/// propagate as themselves.
StateFile load_state(const std::string& path);
StateFile parse_state(const std::string& json_text);

/// Serialize an extremal construction: result spectrum (or matrix, when the
/// input was one) plus the construction metadata.
std::string extremal_to_json(const ExtremalConstruction& con,
                             const std::optional<DensityMatrix>& matrix_result);

std::string matrix_to_json(const DensityMatrix& m);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace epsball
