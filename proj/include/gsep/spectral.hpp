#pragma once

#include "gsep/phase_space.hpp"

namespace gsep {

/// Real symmetric positive-definite 2n x 2n covariance matrix together with
/// the value of hbar and the A|B mode partition.
///
/// The matrix is stored in interleaved ordering regardless of the ordering
/// it was supplied in; `source_ordering()` remembers the latter for output.
class CovarianceMatrix {
 public:
  /// Throws InvalidInput when dimensions disagree with the partition, when
  /// hbar is not positive, when an entry is non-finite, when the asymmetry
  /// exceeds 1e-9 (relative) or when sigma is not positive definite.
  /// Accepted input is symmetrized exactly.
  CovarianceMatrix(const Matrix& sigma, ModePartition partition,
                   double hbar = 1.0,
                   Ordering ordering = Ordering::Interleaved);

  const Matrix& sigma() const { return sigma_; }
  Matrix sigma_in(Ordering ordering) const;
  double hbar() const { return hbar_; }
  const ModePartition& partition() const { return partition_; }
  Ordering source_ordering() const { return source_ordering_; }
  int modes() const { return partition_.modes(); }
  int dim() const { return partition_.dim(); }
  /// Frobenius norm; the scale for every PSD margin.
  double norm() const { return sigma_.norm(); }

  /// Same hbar, partition and source ordering with a new interleaved matrix.
  CovarianceMatrix with_sigma(const Matrix& interleaved) const;

 private:
  Matrix sigma_;
  ModePartition partition_;
  double hbar_;
  Ordering source_ordering_;
};

/// Sigma = S D S^T with S symplectic and D = (+)_k nu_k I_2.
struct WilliamsonForm {
  Matrix S;
  Vector nu;  // descending
  std::vector<Residual> residuals;

  Matrix D() const;
};

/// Smallest eigenvalue of the Hermitian matrix Sigma + (i hbar/2) J,
/// evaluated through its real symmetric embedding.
double uncertainty_margin(const Matrix& sigma, double hbar);

/// Decides Sigma + (i hbar/2) J >= 0. The margin is the smallest eigenvalue
/// of that Hermitian matrix and the scale is ||Sigma||_F. The symplectic
/// spectrum is computed as a second route; a sign disagreement between the
/// routes outside the tolerance band raises VerificationFailure.
CheckReport quantum_condition_check(const CovarianceMatrix& cov,
                                    double tol = kDefaultTol);

/// Moduli of the eigenvalues of J Sigma, one per mode, descending.
Vector symplectic_eigenvalues(const CovarianceMatrix& cov);

/// Williamson normal form built from the real Schur form of the
/// antisymmetric matrix Sigma^{1/2} J Sigma^{1/2}. Both invariants
/// (reconstruction and symplecticity of S) are verified against tol.
WilliamsonForm williamson(const CovarianceMatrix& cov, double tol = kDefaultTol);

/// Williamson S for a state satisfying the quantum condition, so that
/// S B(sqrt(hbar)) lies inside the covariance ellipsoid. The ratio
/// (hbar/2) lambda_max(S^T Sigma^{-1} S), which must not exceed 1, is added
/// to the residuals as "ellipsoid_ratio".
///
/// Throws NotAQuantumState when the quantum condition fails.
WilliamsonForm admissible_symplectic(const CovarianceMatrix& cov,
                                     double tol = kDefaultTol);

}  // namespace gsep
