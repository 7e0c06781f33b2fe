#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvibench/bench.hpp"
#include "mvibench/problems.hpp"
#include "mvibench/solver.hpp"

namespace {

int do_run(const std::string& config_path, const std::string& out_root) {
  std::vector<mvibench::ExperimentSpec> specs;
  try {
    specs = mvibench::parse_config(config_path);
  } catch (const mvibench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  try {
    for (const auto& spec : specs) {
      std::cout << "[" << spec.label << "] problem=" << spec.problem
                << " dim=" << spec.dim << " seeds=" << spec.seeds.size()
                << " methods=" << spec.methods.size() << '\n';
      const mvibench::ResultsTable table =
          mvibench::run_experiment(spec, out_root);
      std::cout << mvibench::render_table(table);
    }
  } catch (const mvibench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int do_validate(double alpha, double delta, double theta, double gamma,
                double sigma) {
  // mu and lambda0 are not part of this diagnostic; fill in values that
  // trivially satisfy their own range checks.
  const mvibench::ParamCheckReport rep =
      mvibench::check_params(alpha, delta, theta, gamma, 0.5, 1.0, sigma);

  std::cout << std::setprecision(17);
  std::cout << "xi = " << rep.xi << '\n';
  std::cout << "delta lower bound (inertia):    " << rep.bound_inertia << '\n';
  std::cout << "delta lower bound (correction): " << rep.bound_correction
            << '\n';

  bool valid = true;
  for (const auto& c : rep.conditions) {
    if (c.name == "mu_range" || c.name == "lambda0_positive") continue;
    std::cout << (c.ok ? "[pass] " : "[FAIL] ") << c.name << ": " << c.detail
              << '\n';
    valid = valid && c.ok;
  }
  std::cout << (valid ? "parameters valid" : "parameters INVALID") << '\n';
  return valid ? 0 : 1;
}

int do_probe() {
  const mvibench::ProbeReport rep = mvibench::probe_pseudomonotonicity();
  std::cout << "property: " << rep.property << '\n';
  std::cout << "grid samples: " << rep.samples
            << ", violations: " << rep.violations << '\n';
  bool expected = rep.violations == 0;
  if (rep.counterexample) {
    const auto& c = *rep.counterexample;
    std::cout << std::setprecision(17);
    std::cout << "plain pseudomonotonicity fails at u = " << c.u
              << ", v = " << c.v << ": forward value " << c.forward_value
              << ", backward value " << c.backward_value << '\n';
    expected = expected && c.forward_value > 0.0 && c.backward_value < 0.0;
  } else {
    std::cout << "no counterexample recorded\n";
    expected = false;
  }
  std::cout << (expected ? "probe verdict: as expected"
                         : "probe verdict: UNEXPECTED")
            << '\n';
  return expected ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark runner for mixed variational inequality solvers"};
  app.require_subcommand(1);

  std::string out_root = "mvibench_out";
  if (const char* env = std::getenv("MVIBENCH_OUT"); env != nullptr && *env)
    out_root = env;

  std::string config_path;
  auto* run_cmd =
      app.add_subcommand("run", "Run the experiments in a config file");
  run_cmd->add_option("config", config_path, "experiment config file")
      ->required();
  run_cmd->add_option("--out", out_root,
                      "output root directory (overrides MVIBENCH_OUT)");

  double alpha = 0.5, delta = 0.9, theta = 0.4, gamma = 1.5, sigma = 1.5;
  auto* val_cmd = app.add_subcommand(
      "validate", "Check a parameter set against the method's rule");
  val_cmd->add_option("--alpha", alpha, "inertia weight");
  val_cmd->add_option("--delta", delta, "correction weight");
  val_cmd->add_option("--theta", theta, "relaxation weight");
  val_cmd->add_option("--gamma", gamma, "contraction relaxation");
  val_cmd->add_option("--sigma", sigma, "inertia cap parameter");

  auto* probe_cmd = app.add_subcommand(
      "probe", "Grid-check g-pseudomonotonicity of the scalar example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (run_cmd->parsed()) return do_run(config_path, out_root);
  if (val_cmd->parsed()) return do_validate(alpha, delta, theta, gamma, sigma);
  if (probe_cmd->parsed()) return do_probe();
  return 1;
}
