#include "mvibench/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace mvibench {

namespace {

// ||d||^2 below this counts as d = 0: the certificate fires and tau is
// taken as 0 instead of dividing by a denormal.
constexpr double kDirZeroTol = 1e-28;

// 1 - m below this makes the gap bound (1+m)/(1-m) meaningless; such
// iterations are reported as degenerate with an infinite bound.
constexpr double kGapDegenerate = 1e-12;

std::string describe(const char* inequality, double lhs, double rhs) {
  std::ostringstream os;
  os << inequality << " (have " << lhs << " vs " << rhs << ")";
  return os.str();
}

}  // namespace

double xi_of(double theta, double gamma) {
  return (1.0 / theta) * ((2.0 - gamma) / gamma + 1.0 - theta);
}

double delta_lower_bound_inertia(double alpha, double sigma) {
  return alpha * (1.0 + sigma) / (1.0 + alpha * sigma);
}

double delta_lower_bound_correction(double alpha, double xi) {
  if (alpha == 0.0) return 0.0;
  const double a2 = alpha * alpha;
  const double rad = a2 * a2 + 2.0 * a2 * alpha + 3.0 * a2 +
                     4.0 * alpha * xi + 2.0 * alpha + 1.0;
  return (alpha * (1.0 + alpha) + 2.0 * alpha * xi + 1.0 - std::sqrt(rad)) /
         (2.0 * alpha * xi);
}

bool ParamCheckReport::ok() const {
  for (const auto& c : conditions)
    if (!c.ok) return false;
  return true;
}

ParamCheckReport check_params(double alpha, double delta, double theta,
                              double gamma, double mu, double lambda0,
                              double sigma) {
  ParamCheckReport rep;
  rep.xi = (theta > 0.0 && gamma > 0.0)
               ? xi_of(theta, gamma)
               : std::numeric_limits<double>::quiet_NaN();
  rep.bound_inertia = delta_lower_bound_inertia(alpha, sigma);
  rep.bound_correction =
      std::isnan(rep.xi) ? std::numeric_limits<double>::quiet_NaN()
                         : delta_lower_bound_correction(alpha, rep.xi);

  auto add = [&rep](std::string name, bool ok, std::string detail) {
    rep.conditions.push_back({std::move(name), std::move(detail), ok});
  };

  add("alpha_range", alpha >= 0.0 && alpha < 1.0,
      describe("0 <= alpha < 1", alpha, 1.0));
  add("delta_range", delta > 0.0 && delta < 1.0,
      describe("0 < delta < 1", delta, 1.0));
  add("theta_range", theta > 0.0 && theta < 1.0,
      describe("0 < theta < 1", theta, 1.0));
  add("gamma_range", gamma > 0.0 && gamma < 2.0,
      describe("0 < gamma < 2", gamma, 2.0));
  add("mu_range", mu > 0.0 && mu < 1.0, describe("0 < mu < 1", mu, 1.0));
  add("lambda0_positive", lambda0 > 0.0,
      describe("lambda0 > 0", lambda0, 0.0));
  add("sigma_positive", sigma > 0.0, describe("sigma > 0", sigma, 0.0));

  const double cap = sigma > 0.0 ? sigma / (1.0 + sigma)
                                 : std::numeric_limits<double>::quiet_NaN();
  add("alpha_below_inertia_cap", sigma > 0.0 && alpha < cap,
      describe("alpha < sigma/(1+sigma)", alpha, cap));

  add("delta_above_inertia_bound", delta > rep.bound_inertia,
      describe("delta > alpha(1+sigma)/(1+alpha*sigma)", delta,
               rep.bound_inertia));

  if (alpha == 0.0) {
    add("delta_above_correction_bound", true,
        "vacuous at alpha = 0 (any delta in (0,1) qualifies)");
  } else {
    add("delta_above_correction_bound",
        !std::isnan(rep.bound_correction) && delta > rep.bound_correction,
        describe("delta > correction-term lower bound", delta,
                 rep.bound_correction));
  }
  return rep;
}

PcParams validate_params(double alpha, double delta, double theta,
                         double gamma, double mu, double lambda0,
                         double sigma) {
  const ParamCheckReport rep =
      check_params(alpha, delta, theta, gamma, mu, lambda0, sigma);
  for (const auto& c : rep.conditions) {
    if (!c.ok)
      throw ParamError(c.name, "parameter rule violated: " + c.name + ": " +
                                   c.detail);
  }
  PcParams p;
  p.alpha = alpha;
  p.delta = delta;
  p.theta = theta;
  p.gamma = gamma;
  p.mu = mu;
  p.lambda0 = lambda0;
  p.sigma = sigma;
  p.xi = rep.xi;
  return p;
}

SolverState make_state(const RealVec& x0, const RealVec& x_minus1,
                       const RealVec& w_minus1, double lambda0) {
  if (x_minus1.size() != x0.size() || w_minus1.size() != x0.size())
    throw DimensionError("make_state: start vectors must share one dimension");
  SolverState s;
  s.n = 0;
  s.x_cur = x0;
  s.x_prev = x_minus1;
  s.w_prev = w_minus1;
  s.w_prev2 = w_minus1;
  s.lambda = lambda0;
  return s;
}

RealVec inertial_correction_point(const SolverState& s, const PcParams& p) {
  return s.x_cur + p.alpha * (s.x_cur - s.x_prev) +
         p.delta * (1.0 + p.alpha) * (s.w_prev - s.x_cur) -
         p.alpha * p.delta * (s.w_prev2 - s.x_prev);
}

RealVec forward_prox(const RealVec& w, double lambda, const MviProblem& prob) {
  return prob.prox_g(w - lambda * prob.operator_T(w), lambda);
}

RealVec contraction_direction(const RealVec& w, const RealVec& y,
                              double lambda, const MviProblem& prob) {
  return (w - y) - lambda * (prob.operator_T(w) - prob.operator_T(y));
}

double tau_coefficient(const RealVec& w, const RealVec& y, const RealVec& d) {
  const double dd = d.squaredNorm();
  if (dd < kDirZeroTol) return 0.0;
  return (w - y).dot(d) / dd;
}

RealVec contraction_point(const RealVec& w, const RealVec& d, double tau,
                          double gamma) {
  return w - gamma * tau * d;
}

RealVec relaxed_update(const RealVec& w, const RealVec& z, double theta) {
  return (1.0 - theta) * w + theta * z;
}

double update_stepsize(double lambda, const RealVec& w, const RealVec& y,
                       double mu, const MviProblem& prob) {
  const double denom = (prob.operator_T(w) - prob.operator_T(y)).norm();
  if (denom == 0.0) return lambda;
  return std::min(mu * (w - y).norm() / denom, lambda);
}

StepResult step(const SolverState& s, const PcParams& p,
                const MviProblem& prob) {
  StepResult out;
  RealVec w = inertial_correction_point(s, p);
  const RealVec tw = prob.operator_T(w);
  RealVec y = prob.prox_g(w - s.lambda * tw, s.lambda);
  const RealVec ty = prob.operator_T(y);
  const RealVec d = (w - y) - s.lambda * (tw - ty);

  // Stepsize update reads only w and y, so it is computed before the
  // relaxed step; it takes effect on the next iteration.
  double lambda_next = s.lambda;
  const double denom = (tw - ty).norm();
  if (denom != 0.0)
    lambda_next = std::min(p.mu * (w - y).norm() / denom, s.lambda);

  RealVec x_next;
  const double dd = d.squaredNorm();
  if (dd < kDirZeroTol) {
    // w = y means w already solves the problem; the update collapses to
    // x_{n+1} = w.
    out.exact_solution = true;
    x_next = w;
  } else {
    const double tau = (w - y).dot(d) / dd;
    const RealVec z = w - p.gamma * tau * d;
    x_next = (1.0 - p.theta) * w + p.theta * z;
  }

  out.record.n = s.n;
  out.record.tol = (x_next - s.x_cur).norm();
  out.record.lambda = s.lambda;
  out.record.res_wy = (w - y).norm();

  out.state.n = s.n + 1;
  out.state.x_prev = s.x_cur;
  out.state.x_cur = std::move(x_next);
  out.state.w_prev2 = s.w_prev;
  out.state.w_prev = w;
  out.state.lambda = lambda_next;

  out.w = std::move(w);
  out.y = std::move(y);
  out.lambda_used = s.lambda;
  return out;
}

SolveReport solve(const MviProblem& prob, const PcParams& p, const RealVec& x0,
                  const RealVec& x_minus1, const RealVec& w_minus1,
                  const SolveOptions& opts) {
  if (!(opts.epsilon > 0.0))
    throw std::invalid_argument("solve: epsilon must be positive");
  if (opts.max_iter < 0)
    throw std::invalid_argument("solve: max_iter must be nonnegative");

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  SolveReport rep;
  RunResult& run = rep.run;
  run.problem = prob.name;
  run.method = "alg33";
  run.dim = prob.dim;
  run.metadata["alpha"] = format_g17(p.alpha);
  run.metadata["delta"] = format_g17(p.delta);
  run.metadata["theta"] = format_g17(p.theta);
  run.metadata["gamma"] = format_g17(p.gamma);
  run.metadata["mu"] = format_g17(p.mu);
  run.metadata["lambda0"] = format_g17(p.lambda0);
  run.metadata["sigma"] = format_g17(p.sigma);

  const bool have_sol = prob.known_solution.has_value();
  const RealVec* sol = have_sol ? &*prob.known_solution : nullptr;
  const MonitorFlags& mon = opts.monitors;

  SolverState st = make_state(x0, x_minus1, w_minus1, p.lambda0);
  for (int n = 0; n < opts.max_iter; ++n) {
    std::optional<double> psi;
    if (mon.lyapunov && have_sol) {
      // Lyapunov value at n, from the auxiliary points
      // s_n = x_n + delta (w_{n-1} - x_n) and its predecessor.
      const RealVec s_n = st.x_cur + p.delta * (st.w_prev - st.x_cur);
      const RealVec s_nm1 = st.x_prev + p.delta * (st.w_prev2 - st.x_prev);
      const double om = 1.0 - p.delta;
      psi = (s_n - *sol).squaredNorm() / om -
            p.alpha * (s_nm1 - *sol).squaredNorm() / om +
            p.delta * (1.0 - p.alpha) * (s_n - s_nm1).squaredNorm() /
                (om * om);
    }

    StepResult sr = step(st, p, prob);
    sr.record.psi = psi;
    if (mon.distance && have_sol)
      sr.record.dist_sol = (sr.state.x_cur - *sol).norm();

    if (mon.contraction_checks) {
      MonitorSlacks ms;
      ms.n = sr.record.n;
      const double xw2 = (sr.state.x_cur - sr.w).squaredNorm();
      if (have_sol) {
        ms.distance_slack = (sr.w - *sol).squaredNorm() - p.xi * xw2 -
                            (sr.state.x_cur - *sol).squaredNorm();
      }
      const double m = p.mu * sr.lambda_used / sr.state.lambda;
      if (m >= 1.0 - kGapDegenerate) {
        ms.gap_degenerate = true;
        ms.gap_bound_slack = std::numeric_limits<double>::infinity();
      } else {
        const double bound = (1.0 / (p.theta * p.gamma)) *
                             ((1.0 + m) / (1.0 - m)) * std::sqrt(xw2);
        ms.gap_bound_slack = bound - sr.record.res_wy;
      }
      rep.monitor_slacks.push_back(ms);
    }

    sr.record.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                               clock::now() - t0)
                               .count();
    run.trace.push_back(sr.record);
    st = std::move(sr.state);

    if (sr.exact_solution) {
      run.notes.push_back("exact-solution certificate: w = y, returned x = w");
      run.converged = true;
      break;
    }
    if (run.trace.back().tol < opts.epsilon) {
      run.converged = true;
      break;
    }
  }

  run.x = st.x_cur;
  run.iters = static_cast<int>(run.trace.size());
  run.final_tol = run.trace.empty() ? 0.0 : run.trace.back().tol;
  if (have_sol) run.final_dist = (st.x_cur - *sol).norm();
  run.wall_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  return rep;
}

SolveReport solve(const MviProblem& prob, const PcParams& p, const RealVec& x0,
                  const SolveOptions& opts) {
  return solve(prob, p, x0, x0, x0, opts);
}

}  // namespace mvibench
