#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvibench/numerics.hpp"
#include "mvibench/trace.hpp"

namespace mvibench {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One experiment section from a config file. `overrides` holds
/// method-parameter keys (alpha, delta, theta, gamma, sigma, mu,
/// lambda0) the section chose to pin; absent keys use the per-family
/// defaults.
struct ExperimentSpec {
  std::string label;
  std::string problem;  // ex1 | ex2 | ex3
  int dim = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;
  double epsilon = 1e-6;
  int max_iter = 10000;
  std::map<std::string, double> overrides;
};

/// Method tokens this build can run, in canonical order.
const std::vector<std::string>& known_methods();

/// "1,2,5" and "1..50" forms, mixable: "1..3,7" -> {1,2,3,7}.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Parses the experiment config format: one [section] per experiment,
/// key = value lines, '#'/';' comments. Unknown keys are errors, not
/// silent defaults.
std::vector<ExperimentSpec> parse_config_text(const std::string& text);
std::vector<ExperimentSpec> parse_config(const std::string& path);

/// Seeded start points, all uniform on [-5,5]^dim (the fourth start
/// point the method needs is pinned to w_minus1 by the start rule).
struct StartPoints {
  RealVec x0;
  RealVec x_minus1;
  RealVec w_minus1;
};
StartPoints draw_starts(int dim, std::uint64_t seed);

struct SummaryRow {
  std::string problem;
  std::string method;
  std::uint64_t seed = 0;
  int dim = 0;
  int iters = 0;
  bool converged = false;
  double final_tol = 0.0;
  std::optional<double> final_dist;
  double wall_ms = 0.0;
};

struct ResultsTable {
  std::vector<SummaryRow> rows;
  std::map<std::string, double> median_iters;
  std::map<std::string, double> median_wall_ms;
};

/// Builds the problem for `spec` at `seed` (ex3 instances are seeded per
/// run) and executes one method from its seeded start points. Throws
/// ConfigError for unknown/unavailable method tokens.
RunResult run_single(const ExperimentSpec& spec, const std::string& method,
                     std::uint64_t seed);

/// Runs the full (method x seed) grid, writing one trace CSV per run
/// under <out_root>/<label>/ and a summary CSV at
/// <out_root>/<label>_summary.csv.
ResultsTable run_experiment(const ExperimentSpec& spec,
                            const std::string& out_root);

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

std::string render_table(const ResultsTable& table);

}  // namespace mvibench
