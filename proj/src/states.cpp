#include "gsep/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gsep/decomp.hpp"
#include "gsep/linalg.hpp"

namespace gsep {

GaussianState::GaussianState(CovarianceMatrix cov)
    : GaussianState(cov, Vector::Zero(cov.dim())) {}

GaussianState::GaussianState(CovarianceMatrix cov, Vector mean)
    : cov_(std::move(cov)), mean_(std::move(mean)), llt_(cov_.sigma()) {
  if (mean_.size() != cov_.dim() || !mean_.allFinite()) {
    throw InvalidInput("mean must be a finite vector of length " +
                       std::to_string(cov_.dim()));
  }
  const CheckReport quantum = quantum_condition_check(cov_);
  if (!quantum.pass) {
    throw NotAQuantumState("covariance matrix violates the quantum condition (margin " +
                           std::to_string(quantum.margin) + ")");
  }
  log_det_ = 2.0 * llt_.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double GaussianState::wigner(const Vector& z) const {
  if (z.size() != cov_.dim() || !z.allFinite()) {
    throw InvalidInput("wigner: z must be a finite vector of length " +
                       std::to_string(cov_.dim()));
  }
  const Vector y = llt_.matrixL().solve(z - mean_);
  const double n = cov_.modes();
  return std::exp(-0.5 * y.squaredNorm() - 0.5 * log_det_ -
                  n * std::log(2.0 * std::numbers::pi));
}

double wigner_eval(const GaussianState& state, const Vector& z) {
  return state.wigner(z);
}

GaussianState rotate_state(const GaussianState& state, const Matrix& U, double tol) {
  if (U.rows() != state.cov().dim() || U.cols() != state.cov().dim()) {
    throw InvalidInput("rotate_state: dimension mismatch");
  }
  const CheckReport check = is_orthosymplectic(U, tol);
  if (!check.pass) {
    throw InvalidInput("rotate_state: U is not a symplectic rotation (use push_symplectic "
                       "for general symplectic matrices)");
  }
  return GaussianState(
      state.cov().with_sigma(linalg::symmetrize(U * state.cov().sigma() * U.transpose())),
      U * state.mean());
}

GaussianState push_symplectic(const GaussianState& state, const Matrix& S, double tol) {
  if (S.rows() != state.cov().dim() || S.cols() != state.cov().dim()) {
    throw InvalidInput("push_symplectic: dimension mismatch");
  }
  const CheckReport check = is_symplectic(S, tol);
  if (!check.pass) {
    throw InvalidInput("push_symplectic: S is not symplectic (residual " +
                       std::to_string(check.residual("symplectic")) + ")");
  }
  return GaussianState(
      state.cov().with_sigma(linalg::symmetrize(S * state.cov().sigma() * S.transpose())),
      S * state.mean());
}

double purity(const GaussianState& state) {
  const double n = state.cov().modes();
  return std::exp(n * std::log(0.5 * state.cov().hbar()) - 0.5 * state.log_det());
}

Matrix random_orthosymplectic(int modes, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const int dim = 2 * modes;
  Matrix candidates(dim, modes);
  for (int c = 0; c < modes; ++c) {
    for (int i = 0; i < dim; ++i) candidates(i, c) = gauss(rng);
  }
  Matrix frame(dim, 0);
  extend_symplectic_frame(frame, candidates, modes);
  return frame.transpose();
}

Matrix random_symplectic(int modes, std::mt19937_64& rng, double squeeze_max) {
  std::uniform_real_distribution<double> squeeze(-squeeze_max, squeeze_max);
  const Matrix first = random_orthosymplectic(modes, rng);
  Vector z(2 * modes);
  for (int k = 0; k < modes; ++k) {
    const double r = squeeze(rng);
    z(2 * k) = std::exp(r);
    z(2 * k + 1) = std::exp(-r);
  }
  const Matrix second = random_orthosymplectic(modes, rng);
  return first * z.asDiagonal() * second;
}

CovarianceMatrix random_covariance(const ModePartition& partition, double hbar,
                                   std::uint64_t seed, double squeeze_max,
                                   double mix_max) {
  if (!(squeeze_max >= 0.0) || !(mix_max >= 0.0)) {
    throw InvalidInput("random_covariance: squeeze and mix bounds must be >= 0");
  }
  std::mt19937_64 rng(seed);
  const int modes = partition.modes();
  std::uniform_real_distribution<double> mix(0.5 * hbar, 0.5 * hbar * (1.0 + mix_max));
  Vector d(2 * modes);
  for (int k = 0; k < modes; ++k) {
    d(2 * k) = mix(rng);
    d(2 * k + 1) = d(2 * k);
  }
  const Matrix s = random_symplectic(modes, rng, squeeze_max);
  return CovarianceMatrix(linalg::symmetrize(s * d.asDiagonal() * s.transpose()),
                          partition, hbar);
}

}  // namespace gsep
