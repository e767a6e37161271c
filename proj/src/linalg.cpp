#include "gsep/linalg.hpp"

#include <string>

namespace gsep::linalg {

Matrix symmetrize(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

double min_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw VerificationFailure("eigensolver", "symmetric eigensolver did not converge");
  }
  return eig.eigenvalues()(0);
}

SpdRoots spd_roots(const Matrix& spd) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(spd));
  if (eig.info() != Eigen::Success) {
    throw VerificationFailure("eigensolver", "symmetric eigensolver did not converge");
  }
  const Vector& w = eig.eigenvalues();
  if (!(w(0) > 0.0)) {
    throw InvalidInput("matrix is not positive definite (smallest eigenvalue " +
                       std::to_string(w(0)) + ")");
  }
  const Matrix& v = eig.eigenvectors();
  const Vector root = w.cwiseSqrt();
  SpdRoots out;
  out.sqrt = symmetrize(v * root.asDiagonal() * v.transpose());
  out.inv_sqrt = symmetrize(v * root.cwiseInverse().asDiagonal() * v.transpose());
  return out;
}

Matrix hermitian_embedding(const Matrix& re, const Matrix& im) {
  const auto m = re.rows();
  Matrix out(2 * m, 2 * m);
  out.topLeftCorner(m, m) = re;
  out.topRightCorner(m, m) = -im;
  out.bottomLeftCorner(m, m) = im;
  out.bottomRightCorner(m, m) = re;
  return out;
}

}  // namespace gsep::linalg
