#include "mvibench/baselines.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "mvibench/trace.hpp"

namespace mvibench {

namespace {

using clock_type = std::chrono::steady_clock;

constexpr double kDirZeroTol = 1e-28;  // on ||d||^2, same guard as the solver

std::int64_t ns_since(const clock_type::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(clock_type::now() -
                                                              t0)
      .count();
}

double ms_since(const clock_type::time_point& t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

RealVec forward_prox_map(const MviProblem& prob, const RealVec& u,
                         double lambda) {
  return prob.prox_g(u - lambda * prob.operator_T(u), lambda);
}

RunResult begin_run(const MviProblem& prob, const char* method) {
  RunResult run;
  run.problem = prob.name;
  run.method = method;
  run.dim = prob.dim;
  return run;
}

void finish_run(RunResult& run, const MviProblem& prob, const RealVec& x,
                const clock_type::time_point& t0) {
  run.x = x;
  run.iters = static_cast<int>(run.trace.size());
  run.final_tol = run.trace.empty() ? 0.0 : run.trace.back().tol;
  if (prob.known_solution)
    run.final_dist = (x - *prob.known_solution).norm();
  run.wall_ms = ms_since(t0);
}

std::optional<double> dist_to_solution(const MviProblem& prob,
                                       const RealVec& x) {
  if (!prob.known_solution) return std::nullopt;
  return (x - *prob.known_solution).norm();
}

}  // namespace

RunResult run_pcm_he(const MviProblem& prob, const StepsizeRule& stepsize,
                     double gamma, const RealVec& x0, double epsilon,
                     int max_iter) {
  if (!(gamma > 0.0 && gamma < 2.0))
    throw std::invalid_argument("run_pcm_he: gamma must lie in (0,2)");
  if (!(stepsize.lambda0 > 0.0))
    throw std::invalid_argument("run_pcm_he: lambda0 must be positive");
  if (stepsize.mu && !(*stepsize.mu > 0.0 && *stepsize.mu < 1.0))
    throw std::invalid_argument("run_pcm_he: mu must lie in (0,1)");

  const auto t0 = clock_type::now();
  RunResult run = begin_run(prob, "pcm_he");
  run.metadata["gamma"] = format_g17(gamma);
  run.metadata["lambda0"] = format_g17(stepsize.lambda0);
  run.metadata["stepsize"] = stepsize.mu ? "adaptive" : "fixed";
  if (stepsize.mu) run.metadata["mu"] = format_g17(*stepsize.mu);

  RealVec x = x0;
  double lambda = stepsize.lambda0;
  for (int n = 0; n < max_iter; ++n) {
    const RealVec tx = prob.operator_T(x);
    const RealVec y = prob.prox_g(x - lambda * tx, lambda);
    const RealVec ty = prob.operator_T(y);
    const RealVec d = (x - y) - lambda * (tx - ty);

    double lambda_next = lambda;
    if (stepsize.mu) {
      const double denom = (tx - ty).norm();
      if (denom != 0.0)
        lambda_next = std::min(*stepsize.mu * (x - y).norm() / denom, lambda);
    }

    RealVec x_next;
    bool certificate = false;
    const double dd = d.squaredNorm();
    if (dd < kDirZeroTol) {
      certificate = true;
      x_next = x;
    } else {
      const double tau = (x - y).dot(d) / dd;
      x_next = x - gamma * tau * d;
    }

    IterRecord rec;
    rec.n = n;
    rec.tol = (x_next - x).norm();
    rec.lambda = lambda;
    rec.res_wy = (x - y).norm();
    rec.dist_sol = dist_to_solution(prob, x_next);
    rec.elapsed_ns = ns_since(t0);
    run.trace.push_back(rec);

    x = std::move(x_next);
    lambda = lambda_next;
    if (certificate) {
      run.notes.push_back("exact-solution certificate: d = 0");
      run.converged = true;
      break;
    }
    if (rec.tol < epsilon) {
      run.converged = true;
      break;
    }
  }
  finish_run(run, prob, x, t0);
  return run;
}

RunResult run_pcm_dong(const MviProblem& prob, const PcmDongParams& params,
                       const RealVec& x0, double epsilon, int max_iter) {
  if (!(params.gamma > 0.0 && params.gamma < 2.0))
    throw std::invalid_argument("run_pcm_dong: gamma must lie in (0,2)");
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("run_pcm_dong: lambda must be positive");

  const auto t0 = clock_type::now();
  RunResult run = begin_run(prob, "pcm_dong");
  run.metadata["lambda"] = format_g17(params.lambda);
  run.metadata["gamma"] = format_g17(params.gamma);
  run.metadata["alpha_n"] = "0.3 - 1/(5(n+1)^2)";
  run.metadata["delta_unused"] = format_g17(params.delta_unused);
  run.metadata["alpha_unused"] = format_g17(params.alpha_unused);
  run.metadata["sigma_unused"] = format_g17(params.sigma_unused);

  const double lambda = params.lambda;
  RealVec x = x0;
  RealVec x_prev = x0;
  for (int n = 0; n < max_iter; ++n) {
    const double alpha_n = 0.3 - 1.0 / (5.0 * (n + 1.0) * (n + 1.0));
    const RealVec w = x + alpha_n * (x - x_prev);
    const RealVec tw = prob.operator_T(w);
    const RealVec y = prob.prox_g(w - lambda * tw, lambda);
    const RealVec ty = prob.operator_T(y);
    const RealVec d = (w - y) - lambda * (tw - ty);

    RealVec x_next;
    bool certificate = false;
    const double dd = d.squaredNorm();
    if (dd < kDirZeroTol) {
      certificate = true;
      x_next = w;
    } else {
      const double tau = (w - y).dot(d) / dd;
      x_next = w - params.gamma * tau * d;
    }

    IterRecord rec;
    rec.n = n;
    rec.tol = (x_next - x).norm();
    rec.lambda = lambda;
    rec.res_wy = (w - y).norm();
    rec.dist_sol = dist_to_solution(prob, x_next);
    rec.elapsed_ns = ns_since(t0);
    run.trace.push_back(rec);

    x_prev = std::move(x);
    x = std::move(x_next);
    if (certificate) {
      run.notes.push_back("exact-solution certificate: d = 0");
      run.converged = true;
      break;
    }
    if (rec.tol < epsilon) {
      run.converged = true;
      break;
    }
  }
  finish_run(run, prob, x, t0);
  return run;
}

RunResult run_ppa_kim(const MviProblem& prob, double lambda, const RealVec& x0,
                      double epsilon, int max_iter) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("run_ppa_kim: lambda must be positive");

  const auto t0 = clock_type::now();
  RunResult run = begin_run(prob, "ppa_kim");
  run.metadata["lambda"] = format_g17(lambda);
  run.metadata["c_n"] = "(n-1)/(n+1)";

  // Start rule: y_0 = x0, w_0 = y_0, y_1 = F(w_0). The first loop pass
  // (n = 1) has c_1 = 0, so the unknown w_{-1} never enters.
  RealVec y_prev = x0;
  RealVec w_prev = x0;   // w_0
  RealVec w_prev2 = x0;  // placeholder, multiplied by c_1 = 0
  RealVec y = forward_prox_map(prob, w_prev, lambda);

  for (int n = 1; n <= max_iter; ++n) {
    const double c = (n - 1.0) / (n + 1.0);
    const RealVec w = y + c * (y - y_prev) + c * (w_prev2 - y_prev);
    RealVec y_next = forward_prox_map(prob, w, lambda);

    IterRecord rec;
    rec.n = n - 1;
    rec.tol = (y_next - y).norm();
    rec.lambda = lambda;
    rec.res_wy = (w - y_next).norm();
    rec.dist_sol = dist_to_solution(prob, y_next);
    rec.elapsed_ns = ns_since(t0);
    run.trace.push_back(rec);

    y_prev = std::move(y);
    y = std::move(y_next);
    w_prev2 = std::move(w_prev);
    w_prev = w;
    if (rec.tol < epsilon) {
      run.converged = true;
      break;
    }
  }
  finish_run(run, prob, y, t0);
  return run;
}

RunResult run_ppa_mainge(const MviProblem& prob, const PpaMaingeParams& params,
                         const RealVec& x0, double epsilon, int max_iter) {
  if (!(params.alpha >= 0.0))
    throw std::invalid_argument("run_ppa_mainge: alpha must be nonnegative");
  if (!(params.lambda > 0.0))
    throw std::invalid_argument("run_ppa_mainge: lambda must be positive");

  const auto t0 = clock_type::now();
  RunResult run = begin_run(prob, "ppa_mainge");
  run.metadata["alpha"] = format_g17(params.alpha);
  run.metadata["delta"] = format_g17(params.delta);
  run.metadata["lambda"] = format_g17(params.lambda);
  run.metadata["a_unused"] = format_g17(params.a_unused);
  run.metadata["c_unused"] = format_g17(params.c_unused);
  run.metadata["b_unused"] = format_g17(params.b_unused);
  run.metadata["cbar_unused"] = format_g17(params.cbar_unused);

  const double a = params.alpha;
  const double scaled_lambda = params.lambda * (1.0 + a);
  RealVec y = x0;
  RealVec y_prev = x0;
  RealVec w_prev = x0;
  for (int n = 0; n < max_iter; ++n) {
    const RealVec w = y + a * (y - y_prev) + params.delta * (w_prev - y);
    const RealVec fw = forward_prox_map(prob, w, scaled_lambda);
    RealVec y_next = (1.0 / (1.0 + a)) * w + (a / (1.0 + a)) * fw;

    IterRecord rec;
    rec.n = n;
    rec.tol = (y_next - y).norm();
    rec.lambda = scaled_lambda;
    rec.res_wy = (w - fw).norm();
    rec.dist_sol = dist_to_solution(prob, y_next);
    rec.elapsed_ns = ns_since(t0);
    run.trace.push_back(rec);

    y_prev = std::move(y);
    y = std::move(y_next);
    w_prev = w;
    if (rec.tol < epsilon) {
      run.converged = true;
      break;
    }
  }
  finish_run(run, prob, y, t0);
  return run;
}

}  // namespace mvibench
