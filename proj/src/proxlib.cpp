#include "mvibench/proxlib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace mvibench {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kSignTol = 1e-9;
constexpr double kKktTol = 1e-8;

}  // namespace

RealVec prox_box(const RealVec& u, const RealVec& lo, const RealVec& hi) {
  if (u.size() != lo.size() || u.size() != hi.size()) {
    throw DimensionError("prox_box: bound dimensions must match u");
  }
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (lo[i] > hi[i]) {
      throw std::invalid_argument("prox_box: lo > hi at coordinate " +
                                  std::to_string(i));
    }
  }
  return u.cwiseMax(lo).cwiseMin(hi);
}

RealVec project_affine_box(const RealVec& u, const RealMat& M,
                           const RealVec& d, const RealVec& lo,
                           const RealVec& hi) {
  const int m = static_cast<int>(M.rows());
  const int n = static_cast<int>(M.cols());
  if (u.size() != n || d.size() != m || lo.size() != m || hi.size() != m) {
    throw DimensionError("project_affine_box: inconsistent dimensions");
  }
  if (m > 8) {
    throw std::invalid_argument(
        "project_affine_box: more than 8 rows, active-set enumeration "
        "refused");
  }

  int npatterns = 1;
  for (int i = 0; i < m; ++i) npatterns *= 3;

  bool found = false;
  double best_obj = std::numeric_limits<double>::infinity();
  int best_code = -1;
  RealVec best_x;

  std::vector<int> digits(m);
  for (int code = 0; code < npatterns; ++code) {
    {
      int c = code;
      for (int i = m - 1; i >= 0; --i) {
        digits[i] = c % 3;
        c /= 3;
      }
    }
    std::vector<int> active;
    for (int i = 0; i < m; ++i)
      if (digits[i] != 0) active.push_back(i);
    const int k = static_cast<int>(active.size());

    RealVec x;
    RealVec nu(k);
    if (k == 0) {
      x = u;
      nu.resize(0);
    } else {
      RealMat Ma(k, n);
      RealVec rhs(k);
      for (int a = 0; a < k; ++a) {
        const int i = active[a];
        Ma.row(a) = M.row(i);
        const double bound = (digits[i] == 1) ? lo[i] : hi[i];
        rhs[a] = M.row(i).dot(u) + d[i] - bound;
      }
      RealMat gram = Ma * Ma.transpose();
      Eigen::FullPivLU<RealMat> lu(gram);
      if (!lu.isInvertible()) continue;  // dependent active rows
      nu = lu.solve(rhs);
      x = u - Ma.transpose() * nu;
    }

    // Multiplier signs: at-lower rows push outward (nu <= 0), at-upper
    // rows pull inward (nu >= 0).
    bool ok = true;
    for (int a = 0; a < k && ok; ++a) {
      const int i = active[a];
      if (digits[i] == 1 && nu[a] > kSignTol) ok = false;
      if (digits[i] == 2 && nu[a] < -kSignTol) ok = false;
    }
    if (!ok) continue;

    RealVec map = M * x + d;
    double kkt_res = 0.0;
    for (int i = 0; i < m && ok; ++i) {
      if (digits[i] == 0) {
        if (map[i] < lo[i] - kFeasTol || map[i] > hi[i] + kFeasTol) ok = false;
      } else {
        const double bound = (digits[i] == 1) ? lo[i] : hi[i];
        kkt_res = std::max(kkt_res, std::abs(map[i] - bound));
      }
    }
    if (!ok || kkt_res > kKktTol) continue;

    const double obj = 0.5 * (x - u).squaredNorm();
    if (!found || obj < best_obj - 1e-12 ||
        (std::abs(obj - best_obj) <= 1e-12 && code < best_code)) {
      found = true;
      best_obj = obj;
      best_code = code;
      best_x = x;
    }
  }

  if (!found) {
    throw ProjectionError(
        "project_affine_box: no active-set pattern passed the optimality "
        "checks (infeasible or degenerate data)");
  }
  return best_x;
}

RealVec prox_quadratic_form(const RealVec& u, const RealMat& B,
                            double lambda) {
  if (lambda <= 0.0) {
    throw std::invalid_argument("prox_quadratic_form: lambda must be positive");
  }
  if (B.rows() != B.cols() || B.rows() != u.size()) {
    throw DimensionError("prox_quadratic_form: dimension mismatch");
  }
  RealMat A = 2.0 * lambda * B;
  A.diagonal().array() += 1.0;
  return solve_spd(A, u);
}

RealVec prox_sumsq_box(const RealVec& u, double lo, double hi,
                       double lambda) {
  if (!(lo < hi)) {
    throw std::invalid_argument("prox_sumsq_box: need lo < hi");
  }
  if (lambda <= 0.0) {
    throw std::invalid_argument("prox_sumsq_box: lambda must be positive");
  }
  const double shrink = 1.0 / (1.0 + 2.0 * lambda);
  RealVec out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out[i] = std::clamp(u[i] * shrink, lo, hi);
  }
  return out;
}

bool prox_check_subgradient_ineq(
    const ProxOperator& P,
    const std::function<double(const RealVec&)>& g_eval, const RealVec& u,
    const RealVec& v, double lambda) {
  const RealVec p = P(u, lambda);
  const double lhs = lambda * (g_eval(v) - g_eval(p));
  const double rhs = dot(u - p, v - p);
  return lhs >= rhs - 1e-9;
}

ProxOperator make_box_prox(RealVec lo, RealVec hi) {
  return ProxOperator{
      "box", [lo = std::move(lo), hi = std::move(hi)](
                 const RealVec& u, double) { return prox_box(u, lo, hi); }};
}

ProxOperator make_affine_box_projection(RealMat M, RealVec d, RealVec lo,
                                        RealVec hi) {
  return ProxOperator{"affine_box",
                      [M = std::move(M), d = std::move(d), lo = std::move(lo),
                       hi = std::move(hi)](const RealVec& u, double) {
                        return project_affine_box(u, M, d, lo, hi);
                      }};
}

ProxOperator make_quadratic_form_prox(RealMat B) {
  return ProxOperator{"quadratic_form",
                      [B = std::move(B)](const RealVec& u, double lambda) {
                        return prox_quadratic_form(u, B, lambda);
                      }};
}

ProxOperator make_sumsq_box_prox(double lo, double hi) {
  return ProxOperator{"sumsq_box",
                      [lo, hi](const RealVec& u, double lambda) {
                        return prox_sumsq_box(u, lo, hi, lambda);
                      }};
}

}  // namespace mvibench
