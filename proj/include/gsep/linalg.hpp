#pragma once

// Small dense helpers shared by the decomposition modules.

#include "gsep/phase_space.hpp"

namespace gsep::linalg {

/// (M + M^T) / 2.
Matrix symmetrize(const Matrix& m);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& symmetric);

/// Principal square root and its inverse of a symmetric positive-definite
/// matrix, from one eigendecomposition. Throws InvalidInput if an eigenvalue
/// is not strictly positive.
struct SpdRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};
SpdRoots spd_roots(const Matrix& spd);

/// Real symmetric 2m x 2m embedding [[A, -B], [B, A]] of the Hermitian
/// matrix A + iB. Its spectrum is that of A + iB with every eigenvalue
/// doubled.
Matrix hermitian_embedding(const Matrix& re, const Matrix& im);

}  // namespace gsep::linalg
