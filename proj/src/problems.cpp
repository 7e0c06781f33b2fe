#include "mvibench/problems.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mvibench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Feasibility slack when evaluating indicator parts of g on points that
// are meant to be inside the set (prox outputs carry solver-level noise).
constexpr double kDomTol = 1e-9;

RealMat ex1_matrix() {
  RealMat M(2, 3);
  M << 1, 2, 1,
       1, 1, 1;
  return M;
}

RealVec ex1_shift() {
  RealVec d(2);
  d << 0.5, 0.5;
  return d;
}

// The nonlinear field applied to the mapped point p = Mx + d. The branch
// at p = 0 is an exact-zero test; the radicand is clamped at 0 so the
// formula extends continuously to mapped points below the p1^2 + 4 p2 = 0
// curve (reachable only by extrapolated iterates outside the feasible
// image).
RealVec ex1_field(const RealVec& p) {
  RealVec g(2);
  if (p[0] == 0.0 && p[1] == 0.0) {
    g << 0.0, -1.0;
    return g;
  }
  const double rad = std::max(p[0] * p[0] + 4.0 * p[1], 0.0);
  const double t = 0.5 * (p[0] + std::sqrt(rad));
  g << -t / (1.0 + t), -1.0 / (1.0 + t);
  return g;
}

void check_fixed_point(const MviProblem& prob) {
  if (!prob.known_solution) return;
  const RealVec& r = *prob.known_solution;
  const double lam = 0.1;
  const RealVec image = prob.prox_g(r - lam * prob.operator_T(r), lam);
  if ((r - image).norm() > 1e-8) {
    throw std::logic_error(prob.name +
                           ": claimed solution fails the prox fixed-point "
                           "certificate");
  }
}

}  // namespace

const char* to_string(MonotonicityClass c) {
  switch (c) {
    case MonotonicityClass::kMonotone:
      return "monotone";
    case MonotonicityClass::kGPseudomonotone:
      return "g_pseudomonotone";
    case MonotonicityClass::kGeneralizedMonotone:
      return "generalized_monotone";
  }
  return "unknown";
}

MviProblem make_ex1() {
  const RealMat M = ex1_matrix();
  const RealVec d = ex1_shift();
  const RealVec lo = RealVec::Zero(2);
  const RealVec hi = RealVec::Ones(2);

  MviProblem prob;
  prob.name = "ex1";
  prob.dim = 3;
  prob.operator_T = [M, d](const RealVec& x) -> RealVec {
    return M.transpose() * ex1_field(M * x + d);
  };
  prob.prox_g = make_affine_box_projection(M, d, lo, hi);
  prob.g_eval = [M, d](const RealVec& x) -> double {
    const RealVec p = M * x + d;
    for (int i = 0; i < 2; ++i) {
      if (p[i] < -kDomTol || p[i] > 1.0 + kDomTol) return kInf;
    }
    return 0.0;
  };
  prob.monotonicity_class = MonotonicityClass::kGPseudomonotone;
  return prob;
}

MviProblem make_ex2() {
  MviProblem prob;
  prob.name = "ex2";
  prob.dim = 2;
  prob.operator_T = [](const RealVec& x) -> RealVec {
    RealVec t(x.size());
    t.setConstant(4.0);
    return t - x;
  };
  prob.prox_g = make_sumsq_box_prox(3.0, 5.0);
  prob.g_eval = [](const RealVec& x) -> double {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x[i] < 3.0 - kDomTol || x[i] > 5.0 + kDomTol) return kInf;
    }
    return x.squaredNorm();
  };
  prob.lipschitz_beta = 1.0;
  RealVec sol(2);
  sol << 3.0, 3.0;
  prob.known_solution = sol;
  prob.monotonicity_class = MonotonicityClass::kGeneralizedMonotone;
  check_fixed_point(prob);
  return prob;
}

Ex3Instance make_ex3_instance(int n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("make_ex3_instance: n must be >= 1");
  }
  SeededRng rng_b(derive_seed(seed, /*tag=*/1));
  SeededRng rng_d(derive_seed(seed, /*tag=*/2));

  Ex3Instance inst;
  inst.B = random_spd(n, rng_b, 1.0, 2.0);
  inst.D = random_spd(n, rng_d, 1.0, 2.0);
  inst.rho_B = spectral_radius_spd(inst.B);
  inst.eta_B = min_eigenvalue_spd(inst.B);
  inst.rho_D = spectral_radius_spd(inst.D);

  MviProblem& prob = inst.problem;
  prob.name = "ex3";
  prob.dim = n;
  const RealMat D = inst.D;
  prob.operator_T = [D](const RealVec& x) -> RealVec { return D * x; };
  prob.prox_g = make_quadratic_form_prox(inst.B);
  const RealMat B = inst.B;
  prob.g_eval = [B](const RealVec& x) -> double {
    return x.dot(B * x);
  };
  prob.lipschitz_beta = inst.rho_D;
  prob.known_solution = RealVec::Zero(n);
  prob.monotonicity_class = MonotonicityClass::kMonotone;
  check_fixed_point(prob);
  return inst;
}

MviProblem make_ex3(int n, std::uint64_t seed) {
  return make_ex3_instance(n, seed).problem;
}

ProbeReport probe_pseudomonotonicity() {
  // Scalar problem on [3,5]: T(u) = 4 - u, g(u) = u^2 within the box.
  const auto T = [](double u) { return 4.0 - u; };
  const auto g = [](double u) { return u * u; };

  ProbeReport report;
  report.property =
      "g-pseudomonotone but not pseudomonotone (T(u) = 4 - u with "
      "quadratic-plus-box g on [3,5])";

  const int kPoints = 201;
  const double lo = 3.0, hi = 5.0;
  const double step = (hi - lo) / (kPoints - 1);
  const double tol = 1e-12;
  for (int i = 0; i < kPoints; ++i) {
    const double u = lo + i * step;
    for (int j = 0; j < kPoints; ++j) {
      const double v = lo + j * step;
      ++report.samples;
      const double premise = T(u) * (v - u) + g(v) - g(u);
      if (premise >= -tol) {
        const double conclusion = T(v) * (v - u) + g(v) - g(u);
        if (conclusion < -tol) ++report.violations;
      }
    }
  }

  // Plain pseudomonotonicity fails at (u, v) = (3, 5):
  // <T(3), 5-3> = 2 > 0 yet <T(5), 5-3> = -2 < 0.
  ProbeCounterexample ce;
  ce.u = 3.0;
  ce.v = 5.0;
  ce.forward_value = T(ce.u) * (ce.v - ce.u);
  ce.backward_value = T(ce.v) * (ce.v - ce.u);
  report.counterexample = ce;
  return report;
}

}  // namespace mvibench
