#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "mvibench/numerics.hpp"
#include "mvibench/proxlib.hpp"

namespace mvibench {

/// Metadata tag describing what kind of monotonicity the problem's
/// operator is known (or claimed) to satisfy. Informational only; the
/// solver never branches on it.
enum class MonotonicityClass {
  kMonotone,
  kGPseudomonotone,
  kGeneralizedMonotone,
};

const char* to_string(MonotonicityClass c);

/// One mixed variational inequality instance: find x in C with
///   <T x, u - x> + g(u) - g(x) >= 0 for all u in C,
/// where C and g are provided jointly through the proximal operator of g.
struct MviProblem {
  std::string name;
  int dim = 0;
  std::function<RealVec(const RealVec&)> operator_T;
  ProxOperator prox_g;
  /// Evaluates g (finite on its domain, +inf outside). Optional; present
  /// for all built-in families.
  std::function<double(const RealVec&)> g_eval;
  /// Global Lipschitz constant of T when one is known.
  std::optional<double> lipschitz_beta;
  /// The solution when the solution set is a known singleton.
  std::optional<RealVec> known_solution;
  MonotonicityClass monotonicity_class = MonotonicityClass::kMonotone;
};

/// dim-3 family: T(x) = M^T G(Mx + d) for a 2x3 matrix M, with G a bounded
/// nonlinear field, and g the indicator of {x : Mx + d in [0,1]^2}. No
/// known solution; the operator is degenerate along ker M.
MviProblem make_ex1();

/// dim-2 family: T(x) = (4 - x1, 4 - x2), g(x) = x1^2 + x2^2 plus the
/// indicator of [3,5]^2. Unique solution (3,3); T is 1-Lipschitz.
MviProblem make_ex2();

/// Random quadratic family of dimension n: B, D symmetric positive
/// definite with eigenvalues in [1,2] drawn from seed-derived streams,
/// T(x) = Dx, g(x) = x^T B x. Unique solution 0; beta = rho(D).
/// Carries the spectral data the benchmark protocol needs.
struct Ex3Instance {
  MviProblem problem;
  RealMat B;
  RealMat D;
  double rho_B;  // largest eigenvalue of B (stepsize rule input)
  double eta_B;  // smallest eigenvalue of B
  double rho_D;  // largest eigenvalue of D (= Lipschitz constant of T)
};

Ex3Instance make_ex3_instance(int n, std::uint64_t seed);

/// Convenience wrapper returning just the problem.
MviProblem make_ex3(int n, std::uint64_t seed);

/// Outcome of the scalar monotonicity probe.
struct ProbeCounterexample {
  double u = 0.0;
  double v = 0.0;
  /// <T(u), v - u> — positive: the pseudomonotonicity premise holds at u.
  double forward_value = 0.0;
  /// <T(v), v - u> — negative: the conclusion fails, so plain
  /// pseudomonotonicity is violated.
  double backward_value = 0.0;
};

struct ProbeReport {
  std::string property;
  int samples = 0;      // grid pairs checked
  int violations = 0;   // g-pseudomonotonicity violations found
  std::optional<ProbeCounterexample> counterexample;
};

/// Probes the 1-D problem T(u) = 4 - u, g(u) = u^2 + indicator of [3,5]:
/// checks the g-pseudomonotonicity implication on a 201-per-axis grid of
/// (u, v) pairs over [3,5]^2 (tolerance 1e-12), and returns the
/// counterexample (u,v) = (3,5) with values (2, -2) showing the operator
/// is not plainly pseudomonotone.
ProbeReport probe_pseudomonotonicity();

}  // namespace mvibench
