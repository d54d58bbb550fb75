// Command-line front door for the epsilon-ball toolkit: extremal states,
// continuity bounds, smoothed entropies, figure-reproduction CSVs,
// verification suites, and optimality certificates.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "epsball/bounds.hpp"
#include "epsball/certify.hpp"
#include "epsball/experiments.hpp"
#include "epsball/oracle.hpp"
#include "epsball/state_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt17(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

int env_workers() {
  const char* raw = std::getenv("EPSBALL_WORKERS");
  if (raw == nullptr) return 1;
  const int workers = std::atoi(raw);
  return workers >= 1 ? workers : 1;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    epsball::write_text_file(out_path, content);
  }
}

epsball::EntropyFunctional make_functional(const std::string& name,
                                           std::optional<double> alpha,
                                           std::optional<double> s) {
  using F = epsball::EntropyFunctional;
  const auto need_alpha = [&]() {
    if (!alpha) throw epsball::InvalidFunctional(name + " requires --alpha");
    return *alpha;
  };
  if (name == "shannon") return F::shannon();
  if (name == "renyi") return F::renyi(need_alpha());
  if (name == "tsallis") return F::tsallis(need_alpha());
  if (name == "unified") {
    if (!s) throw epsball::InvalidFunctional("unified requires --s");
    return F::unified(need_alpha(), *s);
  }
  if (name == "hmin") return F::hmin();
  if (name == "hmax") return F::hmax();
  throw epsball::InvalidFunctional("unknown functional " + name);
}

std::string render_certificate(const epsball::OptimalityCertificate& cert) {
  std::ostringstream out;
  out << "lambda_plus=" << fmt17(cert.lambda_plus) << "\n"
      << "lambda_minus=" << fmt17(cert.lambda_minus) << "\n"
      << "pairing=" << fmt17(cert.pairing) << "\n"
      << "equality_gap=" << fmt17(cert.equality_gap) << "\n"
      << "boundary_residual=" << fmt17(cert.boundary_residual) << "\n"
      << "gradient_flatness=" << fmt17(cert.gradient_flatness) << "\n"
      << "eigen_residual_plus=" << fmt17(cert.eigen_residual_plus) << "\n"
      << "eigen_residual_minus=" << fmt17(cert.eigen_residual_minus) << "\n"
      << "witness_x=" << fmt17(cert.witness_x) << "\n"
      << "verdict=" << (cert.optimal ? "Optimal" : "NotOptimal") << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal states and entropy continuity bounds on trace-distance balls"};
  app.require_subcommand(1);

  std::string input_path, rho_path, out_path, which, functional, suite, grad_name;
  double eps = 0.0, resolution = 1e-3;
  std::optional<double> alpha, s_param;
  int dim = 6, trials = 500, dim_a = 0;
  std::uint64_t seed = 0;

  auto* cmd_extremal = app.add_subcommand("extremal",
      "Flattest or steepest state in the eps-ball of a state file");
  cmd_extremal->add_option("input", input_path, "state JSON file")->required();
  cmd_extremal->add_option("--eps", eps, "ball radius")->required();
  cmd_extremal->add_option("--which", which, "flattest|steepest")
      ->required()->check(CLI::IsMember({"flattest", "steepest"}));
  cmd_extremal->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_bound = app.add_subcommand("bound",
      "Local continuity bound report (von Neumann, or Renyi with --alpha)");
  cmd_bound->add_option("input", input_path, "state JSON file")->required();
  cmd_bound->add_option("--eps", eps, "ball radius")->required();
  cmd_bound->add_option("--alpha", alpha, "Renyi order");
  cmd_bound->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_smooth = app.add_subcommand("smooth",
      "Smoothed entropy over the eps-ball");
  cmd_smooth->add_option("input", input_path, "state JSON file")->required();
  cmd_smooth->add_option("functional", functional,
                         "shannon|renyi|tsallis|unified|hmin|hmax")->required();
  cmd_smooth->add_option("--eps", eps, "ball radius")->required();
  cmd_smooth->add_option("--which", which, "max|min")
      ->required()->check(CLI::IsMember({"max", "min"}));
  cmd_smooth->add_option("--alpha", alpha, "entropy order");
  cmd_smooth->add_option("--s", s_param, "unified entropy parameter");
  cmd_smooth->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_scatter = app.add_subcommand("scatter",
      "Random (sigma, eps) trials: local vs global bound CSV");
  cmd_scatter->add_option("--dim", dim, "state dimension")->required();
  cmd_scatter->add_option("--trials", trials, "number of trials")->required();
  cmd_scatter->add_option("--seed", seed, "RNG seed")->required();
  cmd_scatter->add_option("--out", out_path, "CSV output path")->required();
  cmd_scatter->add_option("--alpha", alpha, "Renyi order (default: von Neumann)");

  auto* cmd_verify = app.add_subcommand("verify", "Run an invariant suite");
  cmd_verify->add_option("suite", suite, "sandwich|certificate|gradients|coupling")
      ->required();
  cmd_verify->add_option("--seed", seed, "RNG seed");
  cmd_verify->add_option("--trials", trials, "number of trials")
      ->default_val(100);
  cmd_verify->add_option("--resolution", resolution,
                         "grid cross-check resolution for the sandwich suite "
                         "(0 disables)")->default_val(0.0);

  auto* cmd_certify = app.add_subcommand("certify",
      "Optimality certificate for rho over the eps-ball around sigma");
  cmd_certify->add_option("sigma", input_path, "reference state JSON file")->required();
  cmd_certify->add_option("rho", rho_path, "candidate state JSON file")->required();
  cmd_certify->add_option("--eps", eps, "ball radius")->required();
  cmd_certify->add_option("--gradient", grad_name, "vn|renyi|neg-talpha|conditional")
      ->default_val("vn")
      ->check(CLI::IsMember({"vn", "renyi", "neg-talpha", "conditional"}));
  cmd_certify->add_option("--alpha", alpha, "entropy order");
  cmd_certify->add_option("--dim", dim_a, "dimension of subsystem A (conditional)");
  cmd_certify->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const int workers = env_workers();

  try {
    if (cmd_extremal->parsed()) {
      const epsball::StateFile state = epsball::load_state(input_path);
      const auto con = which == "flattest"
                           ? epsball::flattest(state.probs(), eps)
                           : epsball::steepest(state.probs(), eps);
      std::optional<epsball::DensityMatrix> matrix_result;
      if (state.is_matrix()) {
        matrix_result = which == "flattest"
                            ? epsball::flattest_state(*state.matrix, eps)
                            : epsball::steepest_state(*state.matrix, eps);
      }
      emit(out_path, epsball::extremal_to_json(con, matrix_result) + "\n");
      return kExitOk;
    }

    if (cmd_bound->parsed()) {
      const epsball::StateFile state = epsball::load_state(input_path);
      const epsball::BoundReport report =
          alpha ? epsball::local_renyi_bound(state.probs(), eps, *alpha)
                : epsball::local_vn_bound(state.probs(), eps);
      std::ostringstream text;
      text << "local=" << fmt17(report.local) << "\n"
           << "upward=" << fmt17(report.upward) << "\n"
           << "downward=" << fmt17(report.downward) << "\n"
           << "global=" << fmt17(report.global) << "\n"
           << "global_kind=" << epsball::to_string(report.global_kind) << "\n"
           << "equality_case=" << epsball::to_string(report.equality_case) << "\n";
      emit(out_path, text.str());
      return kExitOk;
    }

    if (cmd_smooth->parsed()) {
      const epsball::StateFile state = epsball::load_state(input_path);
      const auto f = make_functional(functional, alpha, s_param);
      const auto direction = which == "max" ? epsball::SmoothDirection::Max
                                            : epsball::SmoothDirection::Min;
      const double value = epsball::smoothed(state.probs(), eps, f, direction);
      emit(out_path, "value=" + fmt17(value) + "\n");
      return kExitOk;
    }

    if (cmd_scatter->parsed()) {
      epsball::ExperimentConfig config;
      config.d = dim;
      config.trials = trials;
      config.seed = seed;
      config.alpha = alpha;
      config.output_path = out_path;
      const auto rows = epsball::scatter_rows(config, workers);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw epsball::IoError("cannot open " + out_path);
      epsball::write_scatter_csv(out, rows, config);
      if (!out) throw epsball::IoError("failed writing " + out_path);
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      const auto report =
          epsball::run_verify_suite(suite, seed, trials, workers, resolution);
      for (const auto& line : report.lines) std::cout << line << "\n";
      return report.ok() ? kExitOk : kExitVerifyFailure;
    }

    if (cmd_certify->parsed()) {
      const epsball::StateFile sigma_file = epsball::load_state(input_path);
      const epsball::StateFile rho_file = epsball::load_state(rho_path);
      const epsball::DensityMatrix sigma =
          sigma_file.is_matrix() ? *sigma_file.matrix
                                 : epsball::DensityMatrix::diagonal(sigma_file.probs());
      const epsball::DensityMatrix rho =
          rho_file.is_matrix() ? *rho_file.matrix
                               : epsball::DensityMatrix::diagonal(rho_file.probs());

      epsball::OptimalityCertificate cert;
      if (grad_name == "conditional") {
        if (dim_a < 1) {
          throw epsball::BadFactorization("certify: conditional needs --dim (subsystem A)");
        }
        const int dim_b = sigma.dim() / dim_a;
        cert = epsball::certify_ce(epsball::BipartiteState(sigma, dim_a, dim_b),
                                   epsball::BipartiteState(rho, dim_a, dim_b), eps);
      } else {
        epsball::GradientKind kind = epsball::GradientKind::von_neumann();
        if (grad_name == "renyi") {
          if (!alpha) throw epsball::InvalidAlpha("certify: renyi needs --alpha");
          kind = epsball::GradientKind::renyi(*alpha);
        } else if (grad_name == "neg-talpha") {
          if (!alpha) throw epsball::InvalidAlpha("certify: neg-talpha needs --alpha");
          kind = epsball::GradientKind::neg_t_alpha(*alpha);
        }
        cert = epsball::certify_max(sigma, rho, eps, kind);
      }
      emit(out_path, render_certificate(cert));
      return kExitOk;
    }
  } catch (const epsball::ParseError& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kExitUsage;
  } catch (const epsball::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return kExitUsage;
}
