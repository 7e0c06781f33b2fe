#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvibench {

using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

/// Deterministic 64-bit generator with a splitmix-style state update.
/// The stream is part of the external contract: identical seeds produce
/// identical integer streams on every platform. Each call to next_u64()
/// advances the state by the golden-ratio increment and mixes it:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// uniform() maps the top 53 bits to a double in [0, 1). normal() uses
/// Box-Muller on two uniforms (the sine branch is discarded), so one
/// normal deviate consumes exactly two integer draws.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal deviate (Box-Muller, cosine branch).
  double normal();

  /// Vector with i.i.d. uniform entries in [lo, hi).
  RealVec uniform_vec(int n, double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Derives a decorrelated child seed from (seed, tag). Documented so
/// substreams reproduce across implementations: the tag is folded in
/// hash-combine style and the result passed through one splitmix mix.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Power iteration on an SPD matrix failed to settle within max_iter.
/// Carries the best Rayleigh estimate reached.
struct PowerIterationError : std::runtime_error {
  PowerIterationError(const std::string& what, double estimate)
      : std::runtime_error(what), best_estimate(estimate) {}
  double best_estimate;
};

struct NotSpdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Euclidean inner product. Throws DimensionError on length mismatch.
double dot(const RealVec& a, const RealVec& b);

/// Euclidean norm sqrt(dot(a, a)).
double norm(const RealVec& a);

/// Largest eigenvalue of an SPD matrix by restarted Krylov power
/// iteration from the all-ones vector (deterministic; no seed
/// dependence). Each cycle sections B onto a short orthonormal Krylov
/// chain and restarts from the top Ritz vector, which keeps convergence
/// fast even when the leading eigenvalues nearly tie. The Rayleigh
/// quotient is accepted once its eigenvector residual ||Bu - rho u||
/// falls below tol * rho; max_iter caps the total matrix applications.
double spectral_radius_spd(const RealMat& B, double tol = 1e-12,
                           int max_iter = 100000);

/// Smallest eigenvalue of an SPD matrix, same scheme with the chain
/// advanced by Cholesky solves instead of multiplications; the Rayleigh
/// quotient and the residual test are still evaluated under B itself.
double min_eigenvalue_spd(const RealMat& B, double tol = 1e-12,
                          int max_iter = 100000);

/// Solves Ax = b for symmetric positive definite A via Cholesky with one
/// step of iterative refinement; the residual satisfies
/// ||Ax - b|| <= 1e-10 * (1 + ||b||). Throws NotSpdError if the
/// factorization detects a non-SPD matrix.
RealVec solve_spd(const RealMat& A, const RealVec& b);

/// Random symmetric positive definite matrix Q diag(lambda) Q^T with
/// i.i.d. uniform eigenvalues in [eig_lo, eig_hi] and Q from the QR
/// factorization of a seeded Gaussian matrix (columns sign-fixed so Q is
/// the unique factor with positive R diagonal). Draw order: the n
/// eigenvalues first, then the n*n Gaussian entries in column-major
/// order.
RealMat random_spd(int n, SeededRng& rng, double eig_lo, double eig_hi);

}  // namespace mvibench
