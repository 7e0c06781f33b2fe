#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "mvibench/numerics.hpp"

namespace mvibench {

/// Proximal map of a convex function g: (u, lambda) -> argmin over v of
/// lambda*g(v) + 0.5*||u - v||^2. The tag names the underlying g.
struct ProxOperator {
  std::string tag;
  std::function<RealVec(const RealVec&, double)> eval;

  RealVec operator()(const RealVec& u, double lambda) const {
    return eval(u, lambda);
  }
};

struct ProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Componentwise clamp of u into [lo, hi] (the prox of a box indicator;
/// independent of the prox parameter). Throws if lo > hi anywhere.
RealVec prox_box(const RealVec& u, const RealVec& lo, const RealVec& hi);

/// Exact Euclidean projection onto {x : lo <= Mx + d <= hi} for a small
/// number m of rows (m <= 8). Enumerates the 3^m active-set patterns
/// (each row at-lower / inactive / at-upper), solves the
/// equality-constrained system for each, and keeps candidates that are
/// primal feasible with correctly signed multipliers and stationarity
/// residual <= 1e-8. Degenerate ties are broken by smallest objective
/// 0.5*||x - u||^2, then by smallest active-set code (base-3, row 0 most
/// significant, digits: 0 inactive, 1 at-lower, 2 at-upper).
/// Throws ProjectionError if no candidate passes (degenerate or
/// infeasible data) and std::invalid_argument if m > 8.
RealVec project_affine_box(const RealVec& u, const RealMat& M,
                           const RealVec& d, const RealVec& lo,
                           const RealVec& hi);

/// Prox of g(x) = x^T B x for symmetric positive semidefinite B: solves
/// (I + 2 lambda B) v = u.
RealVec prox_quadratic_form(const RealVec& u, const RealMat& B,
                            double lambda);

/// Prox of g(x) = sum_i x_i^2 plus the indicator of [lo, hi]^n:
/// componentwise clamp(u_i / (1 + 2 lambda), lo, hi). Exact because each
/// coordinate objective is a convex quadratic, so the box-constrained
/// minimizer is the clamped unconstrained one.
RealVec prox_sumsq_box(const RealVec& u, double lo, double hi,
                       double lambda);

/// Checks the subgradient inequality characterizing the prox point:
/// lambda*(g(v) - g(P(u))) >= <u - P(u), v - P(u)>, within slack 1e-9 on
/// the favorable side. v must lie in the domain of g.
bool prox_check_subgradient_ineq(const ProxOperator& P,
                                 const std::function<double(const RealVec&)>& g_eval,
                                 const RealVec& u, const RealVec& v,
                                 double lambda);

// ProxOperator factories wrapping the functions above.
ProxOperator make_box_prox(RealVec lo, RealVec hi);
ProxOperator make_affine_box_projection(RealMat M, RealVec d, RealVec lo,
                                        RealVec hi);
ProxOperator make_quadratic_form_prox(RealMat B);
ProxOperator make_sumsq_box_prox(double lo, double hi);

}  // namespace mvibench
