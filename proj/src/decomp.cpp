#include "gsep/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gsep/linalg.hpp"

namespace gsep {

namespace {

// Relative tolerance separating the lambda = 1 class from genuine
// reciprocal pairs.
constexpr double kPairTol = 1e-8;

void append_pair(Matrix& frame, const Vector& v) {
  const int modes = static_cast<int>(v.size() / 2);
  const Matrix j = symplectic_form(modes);
  const auto cols = frame.cols();
  frame.conservativeResize(v.size(), cols + 2);
  frame.col(cols) = v;
  frame.col(cols + 1) = j.transpose() * v;
}

}  // namespace

Matrix RotationDiagonalization::Delta() const { return delta_matrix(lambdas); }

void extend_symplectic_frame(Matrix& frame, const Matrix& candidates, int pairs) {
  const auto dim = candidates.rows();
  if (frame.cols() == 0) frame.resize(dim, 0);
  if (frame.rows() != dim || dim % 2 != 0 || pairs > dim / 2) {
    throw InvalidInput("extend_symplectic_frame: inconsistent dimensions");
  }
  while (frame.cols() < 2 * pairs) {
    Eigen::Index best = -1;
    double best_ratio = 0.0;
    Vector best_residual;
    for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
      const double cnorm = candidates.col(c).norm();
      if (cnorm == 0.0) continue;
      Vector r = candidates.col(c);
      // Two passes of classical Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass) {
        r -= frame * (frame.transpose() * r);
      }
      const double ratio = r.norm() / cnorm;
      if (ratio > best_ratio) {
        best = c;
        best_ratio = ratio;
        best_residual = std::move(r);
      }
    }
    if (best < 0 || best_ratio < 1e-6) {
      throw VerificationFailure(
          "symplectic_frame",
          "candidates do not span the complement of the frame (" +
              std::to_string(frame.cols() / 2) + " of " + std::to_string(pairs) +
              " pairs built)");
    }
    append_pair(frame, best_residual.normalized());
  }
}

PolarForm symplectic_polar(const Matrix& S, double tol) {
  const CheckReport input = is_symplectic(S, tol);
  if (!input.pass) {
    throw InvalidInput("symplectic_polar: input is not symplectic (residual " +
                       std::to_string(input.residual("symplectic")) + ")");
  }
  const linalg::SpdRoots roots = linalg::spd_roots(S * S.transpose());

  PolarForm form;
  form.P = roots.sqrt;
  form.R = roots.inv_sqrt * S;

  const double product = (form.P * form.R - S).norm() / S.norm();
  const CheckReport r_check = is_orthosymplectic(form.R, tol);
  const CheckReport p_check = is_symplectic(form.P, 10.0 * tol);
  form.residuals = {{"input_symplectic", input.residual("symplectic")},
                    {"product", product},
                    {"R_orthogonal", r_check.residual("orthogonal")},
                    {"R_symplectic", r_check.residual("symplectic")},
                    {"P_symplectic", p_check.residual("symplectic")}};
  if (!(product <= tol) || !r_check.pass || !p_check.pass) {
    throw VerificationFailure("symplectic_polar", "polar factors failed verification",
                              form.residuals);
  }
  return form;
}

RotationDiagonalization ortho_diagonalize(const Matrix& P, double tol) {
  if (P.rows() != P.cols() || P.rows() % 2 != 0 || P.rows() == 0) {
    throw InvalidInput("ortho_diagonalize: expected an even-dimensional square matrix");
  }
  if (asymmetry(P) > 1e-9) {
    throw InvalidInput("ortho_diagonalize: input is not symmetric");
  }
  const CheckReport input = is_symplectic(P, 10.0 * tol);
  if (!input.pass) {
    throw InvalidInput("ortho_diagonalize: input is not symplectic (residual " +
                       std::to_string(input.residual("symplectic")) + ")");
  }
  const auto dim = P.rows();
  const int modes = static_cast<int>(dim / 2);
  const Matrix sym = linalg::symmetrize(P);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw VerificationFailure("ortho_diagonalize", "eigensolver did not converge");
  }
  const Vector& w = eig.eigenvalues();  // ascending
  const Matrix& v = eig.eigenvectors();
  if (!(w(0) > 0.0)) {
    throw InvalidInput("ortho_diagonalize: input is not positive definite");
  }

  // Classes: above 1, the lambda = 1 class, below 1.
  std::vector<Eigen::Index> upper;
  std::vector<Eigen::Index> unit;
  std::vector<Eigen::Index> lower;
  for (Eigen::Index i = dim - 1; i >= 0; --i) {
    if (w(i) > 1.0 + kPairTol) {
      upper.push_back(i);
    } else if (w(i) < 1.0 - kPairTol) {
      lower.push_back(i);
    } else {
      unit.push_back(i);
    }
  }
  std::reverse(lower.begin(), lower.end());  // ascending eigenvalue

  const double cond = w(dim - 1) / w(0);
  const double pair_tol =
      std::max(kPairTol, 1e3 * std::numeric_limits<double>::epsilon() * cond);
  double worst_pair = 0.0;
  bool paired = upper.size() == lower.size() && unit.size() % 2 == 0;
  for (std::size_t i = 0; paired && i < upper.size(); ++i) {
    worst_pair = std::max(worst_pair, std::abs(w(upper[i]) * w(lower[i]) - 1.0));
  }
  if (!paired || worst_pair > pair_tol) {
    throw VerificationFailure(
        "ortho_diagonalize",
        "reciprocal pairing failure (" + std::to_string(upper.size()) +
            " eigenvalues above 1, " + std::to_string(lower.size()) +
            " below, " + std::to_string(unit.size()) +
            " near 1); input was not symplectic",
        {{"pair_product", worst_pair}});
  }

  Matrix frame(dim, 0);
  for (Eigen::Index i : upper) append_pair(frame, v.col(i));
  if (!unit.empty()) {
    Matrix candidates(dim, static_cast<Eigen::Index>(unit.size()));
    for (std::size_t c = 0; c < unit.size(); ++c) candidates.col(c) = v.col(unit[c]);
    extend_symplectic_frame(frame, candidates, modes);
  }

  // Rayleigh quotients; lambda sits in the x-slot of each mode block.
  std::vector<double> lambdas(modes);
  for (int k = 0; k < modes; ++k) {
    const double first = frame.col(2 * k).dot(sym * frame.col(2 * k));
    const double second = frame.col(2 * k + 1).dot(sym * frame.col(2 * k + 1));
    if (second > first) {
      // (v, J^T v) -> (J^T v, -v) keeps the pair symplectic.
      Vector x = frame.col(2 * k + 1);
      frame.col(2 * k + 1) = -frame.col(2 * k);
      frame.col(2 * k) = x;
      lambdas[k] = second;
    } else {
      lambdas[k] = first;
    }
  }

  std::vector<int> order(modes);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lambdas[a] > lambdas[b]; });

  RotationDiagonalization out;
  out.U.resize(dim, dim);
  out.lambdas.resize(modes);
  for (int k = 0; k < modes; ++k) {
    out.U.row(2 * k) = frame.col(2 * order[k]).transpose();
    out.U.row(2 * k + 1) = frame.col(2 * order[k] + 1).transpose();
    out.lambdas(k) = lambdas[order[k]];
  }

  const CheckReport u_check = is_orthosymplectic(out.U, tol);
  const double reconstruction =
      (reconstruct(out.U, out.lambdas) - P).norm() / P.norm();
  const double lambda_min = out.lambdas.minCoeff();
  out.residuals = {{"U_orthogonal", u_check.residual("orthogonal")},
                   {"U_symplectic", u_check.residual("symplectic")},
                   {"reconstruction", reconstruction},
                   {"pair_product", worst_pair},
                   {"lambda_min", lambda_min}};
  if (!u_check.pass || !(reconstruction <= tol) || !(lambda_min >= 1.0 - 1e-12)) {
    throw VerificationFailure("ortho_diagonalize",
                              "rotation diagonalization failed verification",
                              out.residuals);
  }
  return out;
}

Matrix delta_matrix(const Vector& lambdas) {
  Vector diag(2 * lambdas.size());
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    diag(2 * k) = lambdas(k);
    diag(2 * k + 1) = 1.0 / lambdas(k);
  }
  return diag.asDiagonal();
}

Matrix reconstruct(const Matrix& U, const Vector& lambdas) {
  if (U.rows() != U.cols() || U.rows() != 2 * lambdas.size()) {
    throw InvalidInput("reconstruct: U is " + std::to_string(U.rows()) + "x" +
                       std::to_string(U.cols()) + " but there are " +
                       std::to_string(lambdas.size()) + " modes");
  }
  return U.transpose() * delta_matrix(lambdas) * U;
}

std::pair<Matrix, Matrix> delta_blocks(const Vector& lambdas,
                                       const ModePartition& partition) {
  if (lambdas.size() != partition.modes()) {
    throw InvalidInput("delta_blocks: " + std::to_string(lambdas.size()) +
                       " lambdas for a partition of " +
                       std::to_string(partition.modes()) + " modes");
  }
  return {delta_matrix(lambdas.head(partition.n_a())),
          delta_matrix(lambdas.tail(partition.n_b()))};
}

}  // namespace gsep
