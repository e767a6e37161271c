#pragma once

// Closed-form states and independent oracles shared by the test suites.
// The oracles deliberately avoid the library's own decomposition paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gsep/separability.hpp"
#include "gsep/states.hpp"

namespace fixtures {

using gsep::Matrix;
using gsep::Vector;

/// Two-mode squeezed vacuum, one mode per side.
inline Matrix tmsv_sigma(double r, double hbar = 1.0) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Matrix m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return 0.5 * hbar * m;
}

inline gsep::CovarianceMatrix tmsv(double r, double hbar = 1.0) {
  return gsep::CovarianceMatrix(tmsv_sigma(r, hbar), gsep::ModePartition(1, 1), hbar);
}

inline Matrix rotation2(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

inline Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

/// Oracle: moduli of the eigenvalues of J Sigma from the general
/// (non-symmetric) eigensolver, one per mode, descending.
inline std::vector<double> nu_oracle(const Matrix& sigma) {
  const int modes = static_cast<int>(sigma.rows() / 2);
  Eigen::EigenSolver<Matrix> es(gsep::symplectic_form(modes) * sigma, false);
  std::vector<double> mod;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    mod.push_back(std::abs(es.eigenvalues()(i)));
  }
  std::sort(mod.begin(), mod.end(), std::greater<>());
  std::vector<double> out;
  for (std::size_t i = 0; i < mod.size(); i += 2) out.push_back(0.5 * (mod[i] + mod[i + 1]));
  return out;
}

/// Oracle: smallest eigenvalue of the complex Hermitian Sigma + (i hbar/2) J.
inline double hermitian_min_oracle(const Matrix& sigma, double hbar) {
  using CMatrix = Eigen::MatrixXcd;
  const int modes = static_cast<int>(sigma.rows() / 2);
  CMatrix h = sigma.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5 * hbar) *
       gsep::symplectic_form(modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double min_eig(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (symmetric + symmetric.transpose()),
                                          Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Random symmetric matrix with entries in [-1, 1].
inline Matrix random_symmetric(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = u(rng);
  return 0.5 * (m + m.transpose());
}

}  // namespace fixtures
