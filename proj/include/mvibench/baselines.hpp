#pragma once

#include <optional>

#include "mvibench/problems.hpp"
#include "mvibench/trace.hpp"

namespace mvibench {

/// Stepsize schedule for the plain contraction method: fixed lambda0
/// when mu is absent, otherwise the self-adaptive non-increasing rule
/// lambda_{n+1} = min{mu ||x-y|| / ||Tx-Ty||, lambda_n}.
struct StepsizeRule {
  double lambda0 = 1.0;
  std::optional<double> mu = 0.5;
};

/// Inertial contraction variant. The inertia weight follows the fixed
/// schedule alpha_n = 0.3 - 1/(5(n+1)^2); lambda stays constant. The
/// _unused fields ship with the published parameter list but are not
/// consumed by this reconstruction — they are echoed into run metadata.
struct PcmDongParams {
  double lambda = 1.0;
  double gamma = 58.0 / 477.0;
  double delta_unused = 0.9;
  double alpha_unused = 0.4;
  double sigma_unused = 0.2;
};

/// Accelerated proximal-point variant with the fixed schedule
/// c_n = (n-1)/(n+1) on both the extrapolation and correction terms.
struct PpaKimParams {
  double lambda = 1.0;
};

/// Relaxed inertial proximal-point variant: constant inertia alpha and
/// correction weight delta; the proximal map runs at stepsize
/// lambda (1 + alpha). The _unused fields mirror the published list.
struct PpaMaingeParams {
  double alpha = 0.5;
  double delta = 0.9;
  double lambda = 1.0;
  double a_unused = 1.0;
  double c_unused = 2.0;
  double b_unused = 0.5;
  double cbar_unused = 1.0;
};

/// Plain proximal-and-contraction iteration
///   y_n = prox_{lambda_n g}(x_n - lambda_n T x_n),
///   x_{n+1} = x_n - gamma tau_n d(x_n, y_n).
RunResult run_pcm_he(const MviProblem& prob, const StepsizeRule& stepsize,
                     double gamma, const RealVec& x0, double epsilon = 1e-6,
                     int max_iter = 10000);

/// Inertial proximal-and-contraction iteration: w_n = x_n +
/// alpha_n (x_n - x_{n-1}) followed by the contraction step from w_n.
RunResult run_pcm_dong(const MviProblem& prob, const PcmDongParams& params,
                       const RealVec& x0, double epsilon = 1e-6,
                       int max_iter = 10000);

/// Two-line accelerated proximal-point iteration
///   w_n = y_n + c_n (y_n - y_{n-1}) + c_n (w_{n-2} - y_{n-1}),
///   y_{n+1} = F_lambda(w_n),
/// where F_lambda(u) = prox_{lambda g}(u - lambda T u).
RunResult run_ppa_kim(const MviProblem& prob, double lambda, const RealVec& x0,
                      double epsilon = 1e-6, int max_iter = 10000);

/// Relaxed inertial proximal-point iteration
///   w_n = y_n + alpha (y_n - y_{n-1}) + delta (w_{n-1} - y_n),
///   y_{n+1} = (1/(1+alpha)) w_n + (alpha/(1+alpha)) F_{lambda(1+alpha)}(w_n).
RunResult run_ppa_mainge(const MviProblem& prob, const PpaMaingeParams& params,
                         const RealVec& x0, double epsilon = 1e-6,
                         int max_iter = 10000);

}  // namespace mvibench
