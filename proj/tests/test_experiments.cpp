#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "epsball/experiments.hpp"
#include "epsball/state_io.hpp"

using namespace epsball;

TEST_CASE("scatter rows: invariants and determinism") {
  ExperimentConfig config;
  config.d = 6;
  config.trials = 120;
  config.seed = 7;

  const auto rows = scatter_rows(config);
  REQUIRE(static_cast<int>(rows.size()) == config.trials);
  for (const auto& row : rows) {
    CHECK(row.epsilon > 0.0);
    CHECK(row.epsilon <= 1.0);
    CHECK(row.local_bound <= row.global_bound + 1e-10);
    CHECK(row.global_kind == GlobalBoundKind::AF);
  }

  // byte-identical CSV across repeated runs and worker counts
  std::ostringstream once, twice, threaded;
  write_scatter_csv(once, rows, config);
  write_scatter_csv(twice, scatter_rows(config), config);
  write_scatter_csv(threaded, scatter_rows(config, 4), config);
  CHECK(once.str() == twice.str());
  CHECK(once.str() == threaded.str());

  // single trial still yields a header comment, a header, and one row
  config.trials = 1;
  std::ostringstream small;
  write_scatter_csv(small, scatter_rows(config), config);
  int newlines = 0;
  for (char ch : small.str()) newlines += ch == '\n';
  CHECK(newlines == 3);
}

TEST_CASE("scatter rows: renyi kind flags applicability") {
  ExperimentConfig config;
  config.d = 6;
  config.trials = 150;
  config.seed = 11;
  config.alpha = 0.5;

  int trivial_rows = 0;
  for (const auto& row : scatter_rows(config)) {
    CHECK(row.local_bound <= row.global_bound + 1e-10);
    if (row.epsilon >= 0.25) {
      CHECK(row.global_kind == GlobalBoundKind::TrivialLogD);
    }
    trivial_rows += row.global_kind == GlobalBoundKind::TrivialLogD;
  }
  CHECK(trivial_rows > 0);
}

TEST_CASE("verify suites pass") {
  for (const char* suite : {"sandwich", "certificate", "gradients", "coupling"}) {
    const auto report = run_verify_suite(suite, 1, 25);
    INFO(suite);
    for (const auto& line : report.lines) INFO(line);
    CHECK(report.ok());
    CHECK(report.checks > 0);
  }
  CHECK_THROWS_AS(run_verify_suite("nonsense", 1, 10), OutOfRange);
}

TEST_CASE("state files round-trip") {
  const auto parsed = parse_state(R"({"spectrum": [0.21, 0.24, 0.55]})");
  CHECK_FALSE(parsed.is_matrix());
  CHECK(parsed.probs()[0] == doctest::Approx(0.55).epsilon(1e-14));

  const auto mat = parse_state(
      R"({"matrix": {"re": [[0.5, 0.1], [0.1, 0.5]], "im": [[0, 0], [0, 0]]}})");
  REQUIRE(mat.is_matrix());
  CHECK(mat.probs()[0] == doctest::Approx(0.6).epsilon(1e-12));

  CHECK_THROWS_AS(parse_state("not json at all"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"nothing": 1})"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"spectrum": "abc"})"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"matrix": {"re": [[1, 0]]}})"), ParseError);
  // well-formed JSON with invalid domain values propagates domain errors
  CHECK_THROWS_AS(parse_state(R"({"spectrum": [0.3, 0.3]})"), NotNormalized);

  // matrix serialization parses back to the same state
  const DensityMatrix original = *mat.matrix;
  const auto reparsed = parse_state(matrix_to_json(original));
  REQUIRE(reparsed.is_matrix());
  CHECK((reparsed.matrix->matrix() - original.matrix()).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("extremal serialization carries metadata") {
  const auto con = flattest(canonicalize({0.55, 0.24, 0.21}), 0.1);
  const std::string json_text = extremal_to_json(con, std::nullopt);
  CHECK(json_text.find("Interior-Flattest") != std::string::npos);
  CHECK(json_text.find("alpha1") != std::string::npos);
  CHECK(json_text.find("\"m\": 1") != std::string::npos);
  CHECK(json_text.find("\"n\": 2") != std::string::npos);

  const auto steep = steepest(canonicalize({0.7, 0.2, 0.06, 0.04}), 0.08);
  const std::string steep_text = extremal_to_json(steep, std::nullopt);
  CHECK(steep_text.find("Truncated-Steepest") != std::string::npos);
  CHECK(steep_text.find("\"ell\": 1") != std::string::npos);
}
