#include "gsep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "gsep/linalg.hpp"

namespace gsep {

namespace {

constexpr double kSymmetryTol = 1e-9;

struct AntisymmetricSchur {
  Matrix q;   // orthogonal; Q^T K Q = (+)_k nu_k [[0,1],[-1,0]]
  Vector nu;  // descending
};

// Real Schur form of an antisymmetric, nonsingular K with every 2x2 block
// canonicalized to [[0, nu], [-nu, 0]], nu > 0, and blocks ordered by
// descending nu.
AntisymmetricSchur antisymmetric_schur(const Matrix& k) {
  const auto dim = k.rows();
  Eigen::RealSchur<Matrix> schur(k);
  if (schur.info() != Eigen::Success) {
    throw VerificationFailure("williamson", "real Schur iteration did not converge");
  }
  const Matrix& t = schur.matrixT();
  Matrix q = schur.matrixU();
  const double knorm = std::max(k.norm(), std::numeric_limits<double>::min());
  const double block_tol = 1e-8 * knorm;

  std::vector<double> nu;
  for (Eigen::Index i = 0; i < dim;) {
    if (i + 1 >= dim || t(i + 1, i) == 0.0) {
      throw VerificationFailure(
          "williamson",
          "Schur canonicalization failure: real eigenvalue at position " +
              std::to_string(i) + " (input numerically defective)");
    }
    const double upper = t(i, i + 1);
    const double lower = t(i + 1, i);
    if (std::abs(t(i, i)) > block_tol || std::abs(t(i + 1, i + 1)) > block_tol ||
        std::abs(upper + lower) > block_tol) {
      throw VerificationFailure(
          "williamson",
          "Schur canonicalization failure: 2x2 block at position " +
              std::to_string(i) + " is not antisymmetric");
    }
    if (upper < 0.0) q.col(i).swap(q.col(i + 1));
    nu.push_back(0.5 * (std::abs(upper) + std::abs(lower)));
    i += 2;
  }

  const auto modes = static_cast<int>(nu.size());
  std::vector<int> order(modes);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return nu[a] > nu[b]; });

  AntisymmetricSchur out;
  out.q.resize(dim, dim);
  out.nu.resize(modes);
  for (int m = 0; m < modes; ++m) {
    out.q.col(2 * m) = q.col(2 * order[m]);
    out.q.col(2 * m + 1) = q.col(2 * order[m] + 1);
    out.nu(m) = nu[order[m]];
  }
  return out;
}

struct SchurData {
  linalg::SpdRoots roots;
  AntisymmetricSchur schur;
};

SchurData schur_of(const CovarianceMatrix& cov) {
  SchurData d{linalg::spd_roots(cov.sigma()), {}};
  const Matrix j = symplectic_form(cov.modes());
  const Matrix k = d.roots.sqrt * j * d.roots.sqrt;
  d.schur = antisymmetric_schur(0.5 * (k - k.transpose()));
  return d;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Matrix& sigma, ModePartition partition,
                                   double hbar, Ordering ordering)
    : partition_(partition), hbar_(hbar), source_ordering_(ordering) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw InvalidInput("hbar must be a positive finite number");
  }
  if (sigma.rows() != partition.dim() || sigma.cols() != partition.dim()) {
    throw InvalidInput("covariance matrix is " + std::to_string(sigma.rows()) +
                       "x" + std::to_string(sigma.cols()) + " but the partition (" +
                       std::to_string(partition.n_a()) + ", " +
                       std::to_string(partition.n_b()) + ") needs " +
                       std::to_string(partition.dim()) + "x" +
                       std::to_string(partition.dim()));
  }
  if (!sigma.allFinite()) {
    throw InvalidInput("covariance matrix has non-finite entries");
  }
  if (asymmetry(sigma) > kSymmetryTol) {
    throw InvalidInput("covariance matrix is not symmetric (relative asymmetry " +
                       std::to_string(asymmetry(sigma)) + ")");
  }
  sigma_ = convert_ordering(linalg::symmetrize(sigma), ordering,
                            Ordering::Interleaved);
  Eigen::LLT<Matrix> llt(sigma_);
  if (llt.info() != Eigen::Success || !(linalg::min_eigenvalue(sigma_) > 0.0)) {
    throw InvalidInput("covariance matrix is not positive definite");
  }
}

Matrix CovarianceMatrix::sigma_in(Ordering ordering) const {
  return convert_ordering(sigma_, Ordering::Interleaved, ordering);
}

CovarianceMatrix CovarianceMatrix::with_sigma(const Matrix& interleaved) const {
  CovarianceMatrix out(interleaved, partition_, hbar_, Ordering::Interleaved);
  out.source_ordering_ = source_ordering_;
  return out;
}

Matrix WilliamsonForm::D() const {
  Vector diag(2 * nu.size());
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    diag(2 * k) = nu(k);
    diag(2 * k + 1) = nu(k);
  }
  return diag.asDiagonal();
}

double uncertainty_margin(const Matrix& sigma, double hbar) {
  const Matrix j = symplectic_form(static_cast<int>(sigma.rows() / 2));
  return linalg::min_eigenvalue(
      linalg::hermitian_embedding(sigma, 0.5 * hbar * j));
}

CheckReport quantum_condition_check(const CovarianceMatrix& cov, double tol) {
  const double margin = uncertainty_margin(cov.sigma(), cov.hbar());
  const Vector nu = symplectic_eigenvalues(cov);
  const double nu_min = nu.minCoeff();
  const double nu_gap = nu_min - 0.5 * cov.hbar();

  CheckReport report = make_report(margin, cov.norm(), tol);
  report.add("min_eigenvalue", margin);
  report.add("nu_min", nu_min);
  report.add("nu_gap", nu_gap);

  const double band = tol * report.scale;
  if (std::abs(margin) > band && std::abs(nu_gap) > band &&
      (margin > 0.0) != (nu_gap > 0.0)) {
    throw VerificationFailure("quantum_condition",
                              "Hermitian and symplectic-spectrum routes disagree",
                              report.residuals);
  }
  return report;
}

Vector symplectic_eigenvalues(const CovarianceMatrix& cov) {
  return schur_of(cov).schur.nu;
}

WilliamsonForm williamson(const CovarianceMatrix& cov, double tol) {
  const SchurData d = schur_of(cov);
  const Vector& nu = d.schur.nu;

  Vector scale(cov.dim());
  for (int k = 0; k < cov.modes(); ++k) {
    scale(2 * k) = 1.0 / std::sqrt(nu(k));
    scale(2 * k + 1) = scale(2 * k);
  }

  WilliamsonForm form;
  form.nu = nu;
  form.S = d.roots.sqrt * d.schur.q * scale.asDiagonal();

  const double reconstruction =
      (form.S * form.D() * form.S.transpose() - cov.sigma()).norm() / cov.norm();
  const CheckReport symp = is_symplectic(form.S, tol);
  form.residuals = {{"reconstruction", reconstruction},
                    {"symplectic", symp.residual("symplectic")}};
  if (!(reconstruction <= tol) || !symp.pass) {
    throw VerificationFailure("williamson", "normal form failed verification",
                              form.residuals);
  }
  return form;
}

WilliamsonForm admissible_symplectic(const CovarianceMatrix& cov, double tol) {
  const CheckReport quantum = quantum_condition_check(cov, tol);
  if (!quantum.pass) {
    throw NotAQuantumState(
        "quantum condition fails (smallest symplectic eigenvalue " +
        std::to_string(quantum.residual("nu_min")) + " < hbar/2 = " +
        std::to_string(0.5 * cov.hbar()) + "); no admissible symplectic matrix exists");
  }
  WilliamsonForm form = williamson(cov, tol);

  // Ball S B(sqrt(hbar)) inside {z : z^T Sigma^{-1} z / 2 <= 1}
  // iff (hbar/2) lambda_max(S^T Sigma^{-1} S) <= 1.
  const Matrix inner =
      linalg::symmetrize(form.S.transpose() * cov.sigma().llt().solve(form.S));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(inner, Eigen::EigenvaluesOnly);
  const double ratio = 0.5 * cov.hbar() * eig.eigenvalues().maxCoeff();
  form.residuals.push_back({"ellipsoid_ratio", ratio});
  const double slack = tol * std::max(1.0, cov.norm() / form.nu.minCoeff());
  if (!(ratio <= 1.0 + slack)) {
    throw VerificationFailure("admissible_symplectic",
                              "ellipsoid inclusion test failed", form.residuals);
  }
  return form;
}

}  // namespace gsep
