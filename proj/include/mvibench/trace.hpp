#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvibench/numerics.hpp"

namespace mvibench {

/// Per-iteration metrics shared by the main solver and every baseline.
/// tol is the stopping residual ||x_{n+1} - x_n|| (method's main
/// sequence); res_wy is the forward-prox gap ||w_n - y_n|| at the point
/// the method evaluated; psi is the Lyapunov monitor value when the run
/// computes it; dist_sol is the distance to the known solution when one
/// exists.
struct IterRecord {
  int n = 0;
  double tol = 0.0;
  double lambda = 0.0;
  double res_wy = 0.0;
  std::optional<double> psi;
  std::optional<double> dist_sol;
  std::int64_t elapsed_ns = 0;
};

/// Outcome of one solver or baseline run. `notes` carries run-level
/// events (e.g. the exact-solution certificate); `metadata` records the
/// full parameter set, including parameters a reconstruction exposes but
/// does not consume.
struct RunResult {
  std::string problem;
  std::string method;
  std::uint64_t seed = 0;
  int dim = 0;
  RealVec x;
  bool converged = false;
  int iters = 0;
  double final_tol = 0.0;
  std::optional<double> final_dist;
  double wall_ms = 0.0;
  std::vector<IterRecord> trace;
  std::vector<std::string> notes;
  std::map<std::string, std::string> metadata;
};

/// Shortest round-trip formatting used for every CSV number so reruns
/// are bit-identical: printf "%.17g".
std::string format_g17(double v);

/// Writes the per-iteration trace CSV:
///   n,tol,lambda,res_wy,psi,dist_sol,elapsed_ns
/// with empty cells for absent optionals. Throws std::runtime_error when
/// the file cannot be written.
void write_trace_csv(const std::string& path,
                     const std::vector<IterRecord>& trace);

}  // namespace mvibench
