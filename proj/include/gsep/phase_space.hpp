#pragma once

// Bipartite phase-space geometry.
//
// Internally every 2n-vector and 2n x 2n matrix uses the interleaved
// ordering z = (x_1, p_1, ..., x_n, p_n), with the n_A modes of subsystem A
// first. The blocked ordering (x_1..x_n, p_1..p_n) only appears at I/O
// boundaries.

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsep/check.hpp"

namespace gsep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class ModePartition {
 public:
  /// Throws InvalidInput unless n_a >= 1 and n_b >= 1.
  ModePartition(int n_a, int n_b);

  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int modes() const { return n_a_ + n_b_; }
  int dim() const { return 2 * modes(); }

  bool operator==(const ModePartition&) const = default;

 private:
  int n_a_;
  int n_b_;
};

enum class Ordering { Interleaved, Blocked };

std::string_view to_string(Ordering ordering);
/// Accepts "interleaved" or "blocked"; throws InvalidInput otherwise.
Ordering parse_ordering(std::string_view text);

/// J for `modes` modes in the given ordering. Entries are exactly 0 and +-1.
Matrix symplectic_form(int modes, Ordering ordering = Ordering::Interleaved);

/// J = J_A (+) J_B.
Matrix build_J(const ModePartition& partition,
               Ordering ordering = Ordering::Interleaved);

/// perm[i] is the blocked index of interleaved index i.
std::vector<int> interleaved_to_blocked(int modes);

/// Reorders rows and columns. Pure permutation, so round trips are exact.
/// Throws InvalidInput for non-square or odd-dimensional input.
Matrix convert_ordering(const Matrix& m, Ordering from, Ordering to);
Vector convert_ordering(const Vector& v, Ordering from, Ordering to);

/// Block-diagonal embedding with A occupying the leading rows and columns.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Residual ||S^T J S - J||_F / max(1, ||S||_F^2) against tol.
CheckReport is_symplectic(const Matrix& s, double tol = kDefaultTol);

/// is_symplectic plus ||U^T U - I||_F; passes iff both residuals pass.
CheckReport is_orthosymplectic(const Matrix& u, double tol = kDefaultTol);

/// Largest |M_ij - M_ji| relative to max(1, ||M||_F).
double asymmetry(const Matrix& m);

}  // namespace gsep
