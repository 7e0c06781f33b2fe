#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvibench/numerics.hpp"
#include "mvibench/problems.hpp"
#include "mvibench/trace.hpp"

namespace mvibench {

/// A parameter-rule violation. `condition` names the specific inequality
/// that failed (the same names check_params reports).
struct ParamError : std::invalid_argument {
  ParamError(const std::string& cond, const std::string& what)
      : std::invalid_argument(what), condition(cond) {}
  std::string condition;
};

/// Parameters of the relaxed inertial proximal-and-contraction method.
/// xi is derived from (theta, gamma) and cached at validation time.
struct PcParams {
  double alpha = 0.5;
  double delta = 0.9;
  double theta = 0.4;
  double gamma = 1.5;
  double mu = 0.5;
  double lambda0 = 1.0;
  double sigma = 1.5;
  double xi = 0.0;
};

/// xi = (1/theta) * ((2 - gamma)/gamma + 1 - theta).
double xi_of(double theta, double gamma);

/// Lower bound on delta coming from the inertia weight:
/// alpha (1 + sigma) / (1 + alpha sigma).
double delta_lower_bound_inertia(double alpha, double sigma);

/// Lower bound on delta coming from the correction terms:
/// [alpha(1+alpha) + 2 alpha xi + 1
///   - sqrt(alpha^4 + 2 alpha^3 + 3 alpha^2 + 4 alpha xi + 2 alpha + 1)]
///  / (2 alpha xi).
/// Only meaningful for alpha > 0 (returns 0 at alpha = 0, where the
/// constraint is vacuous).
double delta_lower_bound_correction(double alpha, double xi);

/// One named condition of the parameter rule with its evaluation.
struct ParamCondition {
  std::string name;
  std::string detail;
  bool ok = false;
};

struct ParamCheckReport {
  double xi = 0.0;
  double bound_inertia = 0.0;
  double bound_correction = 0.0;
  std::vector<ParamCondition> conditions;
  bool ok() const;
};

/// Evaluates every condition without throwing (diagnostic form).
ParamCheckReport check_params(double alpha, double delta, double theta,
                              double gamma, double mu, double lambda0,
                              double sigma);

/// Validates and returns the parameter pack with xi filled in. Throws
/// ParamError naming the first violated condition.
PcParams validate_params(double alpha, double delta, double theta,
                         double gamma, double mu, double lambda0,
                         double sigma);

/// Rolling iterates of the method: the current and previous main
/// iterates, the two previous extrapolated points, and the stepsize.
struct SolverState {
  int n = 0;
  RealVec x_cur;
  RealVec x_prev;
  RealVec w_prev;
  RealVec w_prev2;
  double lambda = 0.0;
};

/// Initial state per the method's start rule: w_{-2} = w_{-1}.
SolverState make_state(const RealVec& x0, const RealVec& x_minus1,
                       const RealVec& w_minus1, double lambda0);

/// w_n = x_n + alpha (x_n - x_{n-1}) + delta (1 + alpha)(w_{n-1} - x_n)
///       - alpha delta (w_{n-2} - x_{n-1}), grouped as written.
RealVec inertial_correction_point(const SolverState& s, const PcParams& p);

/// y = prox_{lambda g}(w - lambda T w).
RealVec forward_prox(const RealVec& w, double lambda, const MviProblem& prob);

/// d = (w - y) - lambda (T w - T y).
RealVec contraction_direction(const RealVec& w, const RealVec& y,
                              double lambda, const MviProblem& prob);

/// tau = <w - y, d> / ||d||^2 when d != 0, else 0. The zero test is
/// ||d||^2 == 0 with a near-zero guard at 1e-28 to avoid division
/// blow-up.
double tau_coefficient(const RealVec& w, const RealVec& y, const RealVec& d);

/// z = w - gamma tau d.
RealVec contraction_point(const RealVec& w, const RealVec& d, double tau,
                          double gamma);

/// min{mu ||w - y|| / ||T w - T y||, lambda} when T w != T y (exact
/// vector comparison), else lambda. Never increases lambda.
double update_stepsize(double lambda, const RealVec& w, const RealVec& y,
                       double mu, const MviProblem& prob);

/// x_next = (1 - theta) w + theta z.
RealVec relaxed_update(const RealVec& w, const RealVec& z, double theta);

/// One full iteration. Carries the intermediate points so callers can
/// evaluate runtime diagnostics without re-deriving them.
struct StepResult {
  SolverState state;       // advanced state (x, w history, lambda, n)
  IterRecord record;       // n, tol, lambda_n used, ||w - y||
  RealVec w;               // extrapolated point of this iteration
  RealVec y;               // forward-prox trial point
  double lambda_used = 0;  // lambda_n consumed by the prox step
  bool exact_solution = false;  // d == 0: x_{n+1} = w_n solves the MVI
};

StepResult step(const SolverState& s, const PcParams& p,
                const MviProblem& prob);

/// Opt-in per-run diagnostics (they cost extra norms per iteration, so
/// timing-focused runs leave them off).
struct MonitorFlags {
  /// Record dist_sol per iteration (needs known_solution).
  bool distance = false;
  /// Record the Lyapunov value psi per iteration (needs known_solution).
  bool lyapunov = false;
  /// Fill RunResult::monitor_slacks with the per-iteration contraction
  /// inequalities (needs known_solution for the distance one).
  bool contraction_checks = false;
};

/// Per-iteration slack values of the two contraction inequalities, kept
/// out of the CSV schema. distance_slack is
///   ||w_n - r||^2 - xi ||x_{n+1} - w_n||^2 - ||x_{n+1} - r||^2
/// (nonnegative up to rounding when the method's conditions hold);
/// gap_bound_slack is
///   (1/(theta gamma)) ((1+m)/(1-m)) ||x_{n+1} - w_n|| - ||w_n - y_n||
/// with m = mu lambda_n / lambda_{n+1}, +inf (and degenerate=true) when
/// m >= 1 makes the bound vacuous.
struct MonitorSlacks {
  int n = 0;
  std::optional<double> distance_slack;  // needs known_solution
  double gap_bound_slack = 0.0;
  bool gap_degenerate = false;
};

struct SolveOptions {
  double epsilon = 1e-6;
  int max_iter = 10000;
  MonitorFlags monitors;
};

/// Runs the method until tol = ||x_{n+1} - x_n|| < epsilon, the d = 0
/// certificate fires, or max_iter iterations. Exhaustion yields
/// converged = false, not an error.
struct SolveReport {
  RunResult run;
  std::vector<MonitorSlacks> monitor_slacks;
};

SolveReport solve(const MviProblem& prob, const PcParams& p,
                  const RealVec& x0, const RealVec& x_minus1,
                  const RealVec& w_minus1, const SolveOptions& opts = {});

/// Convenience start: x_{-1} = w_{-1} = w_{-2} = x0.
SolveReport solve(const MviProblem& prob, const PcParams& p,
                  const RealVec& x0, const SolveOptions& opts = {});

}  // namespace mvibench
