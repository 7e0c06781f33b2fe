#include "mvibench/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace mvibench {

double SeededRng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

RealVec SeededRng::uniform_vec(int n, double lo, double hi) {
  RealVec v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed;
  s ^= tag + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double dot(const RealVec& a, const RealVec& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: length mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  return a.dot(b);
}

double norm(const RealVec& a) { return a.norm(); }

namespace {

// One restarted Rayleigh-Ritz cycle. Builds an orthonormal Krylov chain by
// repeatedly applying `advance` (multiplication by B for the largest pair,
// a Cholesky solve for the smallest), sections the advance operator onto
// the chain, and returns the top Ritz vector of the section together with
// its Rayleigh quotient and eigen-residual under B. Restarting from the
// Ritz vector is what lets clustered extreme eigenvalues converge; a plain
// power iterate needs ~1/gap iterations to certify a small residual and
// stalls when two extreme eigenvalues nearly tie.
struct RitzStep {
  double rayleigh = 0.0;
  double residual = 0.0;
  RealVec vector;
};

template <class Advance>
RitzStep ritz_cycle(const RealMat& B, RealVec v, int span, Advance&& advance,
                    int& budget, bool advance_is_b) {
  const Eigen::Index n = B.rows();
  v /= v.norm();
  std::vector<RealVec> basis{v};
  std::vector<RealVec> images;  // images[j] = advance(basis[j])
  for (int j = 0; j < span && budget > 0; ++j) {
    images.push_back(advance(basis[j]));
    --budget;
    if (j + 1 == span) break;
    RealVec c = images.back();
    const double scale = c.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) c -= q.dot(c) * q;
    const double cn = c.norm();
    // Keep extracting new directions down to the roundoff floor: the
    // residual direction of a near-converged iterate is tiny but is
    // exactly what the section needs to push the certificate through.
    if (cn <= 64.0 * std::numeric_limits<double>::epsilon() * scale) break;
    basis.push_back(c / cn);
  }
  const int m = static_cast<int>(images.size());
  RealMat S(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) S(i, j) = basis[i].dot(images[j]);
  S = 0.5 * (S + S.transpose().eval());
  Eigen::SelfAdjointEigenSolver<RealMat> es(S);
  const RealVec y = es.eigenvectors().col(m - 1);  // ascending order: top pair
  RealVec u = RealVec::Zero(n);
  for (int j = 0; j < m; ++j) u += y[j] * basis[j];
  u /= u.norm();
  RealVec bu;
  if (advance_is_b) {
    bu = RealVec::Zero(n);  // B u is a combination of the stored images
    for (int j = 0; j < m; ++j) bu += y[j] * images[j];
  } else {
    bu = B * u;
  }
  RitzStep step;
  step.rayleigh = u.dot(bu);
  step.residual = (bu - step.rayleigh * u).norm();
  step.vector = std::move(u);
  return step;
}

constexpr int kRitzSpan = 10;

template <class Advance>
double extreme_eigenvalue(const char* name, const RealMat& B, double tol,
                          int max_iter, Advance&& advance, bool advance_is_b) {
  const Eigen::Index n = B.rows();
  RealVec v = RealVec::Ones(n) / std::sqrt(static_cast<double>(n));
  int budget = max_iter;
  double best = std::numeric_limits<double>::quiet_NaN();
  while (budget > 0) {
    RitzStep step = ritz_cycle(B, v, kRitzSpan, advance, budget, advance_is_b);
    if (step.rayleigh <= 0.0) {
      throw NotSpdError(std::string(name) +
                        ": matrix is not positive definite along the iterate");
    }
    best = step.rayleigh;
    if (step.residual <= tol * step.rayleigh) return step.rayleigh;
    v = std::move(step.vector);
  }
  throw PowerIterationError(
      std::string(name) + ": no convergence after " +
          std::to_string(max_iter) + " iterations (best estimate " +
          std::to_string(best) + ")",
      best);
}

}  // namespace

double spectral_radius_spd(const RealMat& B, double tol, int max_iter) {
  if (B.rows() != B.cols() || B.rows() == 0) {
    throw DimensionError("spectral_radius_spd: matrix must be square");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("spectral_radius_spd: tol must be positive");
  }
  return extreme_eigenvalue(
      "spectral_radius_spd", B, tol, max_iter,
      [&B](const RealVec& q) -> RealVec { return B * q; },
      /*advance_is_b=*/true);
}

double min_eigenvalue_spd(const RealMat& B, double tol, int max_iter) {
  if (B.rows() != B.cols() || B.rows() == 0) {
    throw DimensionError("min_eigenvalue_spd: matrix must be square");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("min_eigenvalue_spd: tol must be positive");
  }
  Eigen::LLT<RealMat> llt(B);
  if (llt.info() != Eigen::Success) {
    throw NotSpdError("min_eigenvalue_spd: Cholesky failed, matrix not SPD");
  }
  // The chain advances with B^{-1}, whose top eigenpair is B's bottom one;
  // the Rayleigh quotient and residual are still evaluated under B itself.
  return extreme_eigenvalue(
      "min_eigenvalue_spd", B, tol, max_iter,
      [&llt](const RealVec& q) -> RealVec { return llt.solve(q); },
      /*advance_is_b=*/false);
}

RealVec solve_spd(const RealMat& A, const RealVec& b) {
  if (A.rows() != A.cols()) {
    throw DimensionError("solve_spd: matrix must be square");
  }
  if (A.rows() != b.size()) {
    throw DimensionError("solve_spd: dimension mismatch");
  }
  Eigen::LLT<RealMat> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NotSpdError("solve_spd: Cholesky failed, matrix not SPD");
  }
  RealVec x = llt.solve(b);
  // One refinement step keeps the residual at the contract bound even for
  // moderately conditioned systems.
  RealVec r = b - A * x;
  x += llt.solve(r);
  if ((A * x - b).norm() > 1e-10 * (1.0 + b.norm())) {
    throw NotSpdError("solve_spd: residual above tolerance, system too ill-conditioned");
  }
  return x;
}

RealMat random_spd(int n, SeededRng& rng, double eig_lo, double eig_hi) {
  if (n <= 0) throw std::invalid_argument("random_spd: n must be positive");
  if (!(0.0 < eig_lo && eig_lo <= eig_hi)) {
    throw std::invalid_argument("random_spd: need 0 < eig_lo <= eig_hi");
  }
  RealVec eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = rng.uniform(eig_lo, eig_hi);

  RealMat G(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) G(i, j) = rng.normal();

  Eigen::HouseholderQR<RealMat> qr(G);
  RealMat Q = qr.householderQ();
  RealMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }

  RealMat B = Q * eigs.asDiagonal() * Q.transpose();
  B = 0.5 * (B + B.transpose().eval());
  return B;
}

}  // namespace mvibench
