#include "gsep/phase_space.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace gsep {

namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw InvalidInput(std::string(what) +
                       ": expected a non-empty square matrix of even "
                       "dimension, got " +
                       std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()));
  }
}

}  // namespace

ModePartition::ModePartition(int n_a, int n_b) : n_a_(n_a), n_b_(n_b) {
  if (n_a < 1 || n_b < 1) {
    throw InvalidInput("partition invalid: n_A and n_B must both be >= 1 (got " +
                       std::to_string(n_a) + ", " + std::to_string(n_b) + ")");
  }
}

std::string_view to_string(Ordering ordering) {
  return ordering == Ordering::Interleaved ? "interleaved" : "blocked";
}

Ordering parse_ordering(std::string_view text) {
  if (text == "interleaved") return Ordering::Interleaved;
  if (text == "blocked") return Ordering::Blocked;
  throw InvalidInput("unknown ordering '" + std::string(text) +
                     "' (expected interleaved or blocked)");
}

Matrix symplectic_form(int modes, Ordering ordering) {
  Matrix j = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  if (ordering == Ordering::Blocked) {
    return convert_ordering(j, Ordering::Interleaved, Ordering::Blocked);
  }
  return j;
}

Matrix build_J(const ModePartition& partition, Ordering ordering) {
  Matrix j = direct_sum(symplectic_form(partition.n_a()),
                        symplectic_form(partition.n_b()));
  if (ordering == Ordering::Blocked) {
    return convert_ordering(j, Ordering::Interleaved, Ordering::Blocked);
  }
  return j;
}

std::vector<int> interleaved_to_blocked(int modes) {
  std::vector<int> perm(2 * modes);
  for (int k = 0; k < modes; ++k) {
    perm[2 * k] = k;
    perm[2 * k + 1] = modes + k;
  }
  return perm;
}

Matrix convert_ordering(const Matrix& m, Ordering from, Ordering to) {
  require_even_square(m, "convert_ordering");
  if (from == to) return m;
  const int modes = static_cast<int>(m.rows() / 2);
  const auto perm = interleaved_to_blocked(modes);
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (from == Ordering::Interleaved) {
        out(perm[i], perm[j]) = m(i, j);
      } else {
        out(i, j) = m(perm[i], perm[j]);
      }
    }
  }
  return out;
}

Vector convert_ordering(const Vector& v, Ordering from, Ordering to) {
  if (v.size() % 2 != 0) {
    throw InvalidInput("convert_ordering: vector of odd length " +
                       std::to_string(v.size()));
  }
  if (from == to) return v;
  const auto perm = interleaved_to_blocked(static_cast<int>(v.size() / 2));
  Vector out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    if (from == Ordering::Interleaved) {
      out(perm[i]) = v(i);
    } else {
      out(i) = v(perm[i]);
    }
  }
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_even_square(a, "direct_sum");
  require_even_square(b, "direct_sum");
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CheckReport is_symplectic(const Matrix& s, double tol) {
  require_even_square(s, "is_symplectic");
  const Matrix j = symplectic_form(static_cast<int>(s.rows() / 2));
  const double scale = std::max(1.0, s.squaredNorm());
  const double residual = (s.transpose() * j * s - j).norm() / scale;
  CheckReport report = make_report(-residual, 1.0, tol);
  report.add("symplectic", residual);
  return report;
}

CheckReport is_orthosymplectic(const Matrix& u, double tol) {
  CheckReport report = is_symplectic(u, tol);
  const Matrix identity = Matrix::Identity(u.rows(), u.cols());
  const double orth = (u.transpose() * u - identity).norm();
  report.add("orthogonal", orth);
  report.margin = std::min(report.margin, -orth);
  report.pass = report.margin >= -tol * report.scale;
  return report;
}

double asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, m.norm());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace gsep
