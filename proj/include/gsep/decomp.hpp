#pragma once

// Symplectic polar decomposition S = P R and the diagonalization of a
// positive-definite symplectic P by a symplectic rotation, P = U^T Delta U.

#include <utility>

#include "gsep/phase_space.hpp"

namespace gsep {

struct PolarForm {
  Matrix P;  // symmetric positive-definite symplectic
  Matrix R;  // orthosymplectic
  std::vector<Residual> residuals;
};

/// Delta = (+)_k diag(lambda_k, 1/lambda_k), lambda_k >= 1, descending.
struct RotationDiagonalization {
  Matrix U;
  Vector lambdas;
  std::vector<Residual> residuals;

  Matrix Delta() const;
};

/// Left polar decomposition: P = (S S^T)^{1/2}, R = P^{-1} S.
/// Throws InvalidInput when S is not symplectic within tol and
/// VerificationFailure when a factor misses its invariant.
PolarForm symplectic_polar(const Matrix& S, double tol = kDefaultTol);

/// Throws InvalidInput when P is not symmetric positive-definite symplectic,
/// VerificationFailure on a reciprocal pairing failure or a failed
/// post-condition.
RotationDiagonalization ortho_diagonalize(const Matrix& P,
                                          double tol = kDefaultTol);

/// (+)_k diag(lambda_k, 1/lambda_k).
Matrix delta_matrix(const Vector& lambdas);

/// U^T Delta U.
Matrix reconstruct(const Matrix& U, const Vector& lambdas);

/// Splits Delta into the first n_A mode blocks and the remaining n_B.
std::pair<Matrix, Matrix> delta_blocks(const Vector& lambdas,
                                       const ModePartition& partition);

/// Symplectic Gram-Schmidt.
///
/// Grows an orthonormal frame of pairs (v, J^T v) by repeatedly taking the
/// candidate column with the largest component orthogonal to the current
/// frame. The frame columns are assumed orthonormal and closed under the
/// pairing. Stops once the frame holds `pairs` pairs; throws
/// VerificationFailure if the candidates run out first.
///
/// A completed frame F, read as U = F^T, is orthosymplectic.
void extend_symplectic_frame(Matrix& frame, const Matrix& candidates, int pairs);

}  // namespace gsep
