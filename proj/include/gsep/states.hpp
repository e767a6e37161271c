#pragma once

// Gaussian states at the level of their Wigner function: covariance matrix
// plus mean. Symplectic transformations act exactly on this data.

#include <cstdint>
#include <random>

#include "gsep/spectral.hpp"

namespace gsep {

class GaussianState {
 public:
  /// Throws NotAQuantumState when cov violates the quantum condition and
  /// InvalidInput when the mean has the wrong length or is non-finite.
  explicit GaussianState(CovarianceMatrix cov);
  GaussianState(CovarianceMatrix cov, Vector mean);

  const CovarianceMatrix& cov() const { return cov_; }
  const Vector& mean() const { return mean_; }

  /// rho(z) = exp(-(z-m)^T Sigma^{-1} (z-m) / 2) / ((2 pi)^n sqrt(det Sigma)).
  /// Throws InvalidInput for a non-finite or wrongly sized z.
  double wigner(const Vector& z) const;

  /// log det Sigma from the cached Cholesky factor.
  double log_det() const { return log_det_; }

 private:
  CovarianceMatrix cov_;
  Vector mean_;
  Eigen::LLT<Matrix> llt_;
  double log_det_ = 0.0;
};

double wigner_eval(const GaussianState& state, const Vector& z);

/// Sigma -> U Sigma U^T, m -> U m for a symplectic rotation U.
/// Throws InvalidInput when U is not orthosymplectic within tol.
GaussianState rotate_state(const GaussianState& state, const Matrix& U,
                           double tol = kDefaultTol);

/// Sigma -> S Sigma S^T, m -> S m for any symplectic S.
GaussianState push_symplectic(const GaussianState& state, const Matrix& S,
                              double tol = kDefaultTol);

/// (hbar/2)^n / sqrt(det Sigma).
double purity(const GaussianState& state);

/// Haar-like random symplectic rotation on `modes` modes.
Matrix random_orthosymplectic(int modes, std::mt19937_64& rng);

/// O_1 Z O_2 with random rotations O_i and single-mode squeezes
/// Z = (+)_k diag(e^{r_k}, e^{-r_k}), r_k uniform in [-squeeze_max, squeeze_max].
Matrix random_symplectic(int modes, std::mt19937_64& rng, double squeeze_max);

/// Sigma = S D S^T with S = random_symplectic(...) and nu_k uniform in
/// [hbar/2, hbar/2 (1 + mix_max)]. Deterministic for a fixed seed.
CovarianceMatrix random_covariance(const ModePartition& partition, double hbar,
                                   std::uint64_t seed, double squeeze_max,
                                   double mix_max);

}  // namespace gsep
