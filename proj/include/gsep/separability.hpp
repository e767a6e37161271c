#pragma once

// Werner-Wolf certificates and the disentangling rotation.

#include "gsep/decomp.hpp"
#include "gsep/spectral.hpp"

namespace gsep {

/// Partial covariance matrices (Sigma_A, Sigma_B) certifying
/// Sigma >= Sigma_A (+) Sigma_B with each block a valid quantum covariance.
struct SeparabilityWitness {
  Matrix sigma_a;
  Matrix sigma_b;
  double hbar = 1.0;
};

/// Residual names: "condition_A", "condition_B" (smallest eigenvalues of
/// Sigma_X + (i hbar/2) J_X) and "dominance" (smallest eigenvalue of
/// Sigma - Sigma_A (+) Sigma_B). The margin is their minimum, scaled by
/// ||Sigma||_F. Throws InvalidInput on a dimension or hbar mismatch.
CheckReport werner_wolf_check(const CovarianceMatrix& cov,
                              const SeparabilityWitness& witness,
                              double tol = kDefaultTol);

/// Minimal-uncertainty witness (hbar/2) Delta_A^2, (hbar/2) Delta_B^2 built
/// from the mode parameters lambda_k.
SeparabilityWitness witness_from_lambdas(const Vector& lambdas,
                                         const ModePartition& partition,
                                         double hbar);

struct DisentangleResult {
  WilliamsonForm williamson;
  PolarForm polar;
  RotationDiagonalization rotation;
  CovarianceMatrix sigma_u;  // U Sigma U^T
  SeparabilityWitness witness;
  CheckReport werner_wolf;
  std::vector<Residual> residuals;

  const Matrix& U() const { return rotation.U; }
  const Vector& lambdas() const { return rotation.lambdas; }
};

/// Rotates any Gaussian covariance matrix into a separable one.
///
/// S from the Williamson form, S = P R, P = U^T Delta U; then
/// U Sigma U^T >= (hbar/2) Delta^2 and the blocks of (hbar/2) Delta^2 form a
/// Werner-Wolf witness for the rotated state. Every stage is verified and
/// the residuals are collected in `residuals`.
///
/// Throws NotAQuantumState when the quantum condition fails and
/// VerificationFailure (naming the stage) when a verification misses tol.
DisentangleResult disentangle(const CovarianceMatrix& cov,
                              double tol = kDefaultTol);

/// Sign flip of the momenta of the B modes.
Matrix partial_transpose(const CovarianceMatrix& cov);

struct PptResult {
  CheckReport report;  // quantum_condition_check of the flipped matrix
  bool entangled = false;
  /// PPT is sufficient for separability when min(n_A, n_B) = 1.
  bool conclusive = false;
  Vector nu;  // symplectic spectrum of the flipped matrix
  std::string verdict;
};

/// Positive-partial-transpose test. A failing quantum condition on the
/// flipped matrix certifies entanglement; passing is only reported as
/// PPT-consistent, and as separable only for 1 x n partitions.
PptResult ppt_test(const CovarianceMatrix& cov, double tol = kDefaultTol);

}  // namespace gsep
