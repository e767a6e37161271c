#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsep {

/// Default relative tolerance for every verification gate.
inline constexpr double kDefaultTol = 1e-10;

struct Residual {
  std::string name;
  double value = 0.0;
};

/// Outcome of a numerical check.
///
/// `margin` is the quantity driving the verdict (a smallest eigenvalue, or a
/// negated residual) and `pass` holds iff margin >= -tol * scale.
struct CheckReport {
  bool pass = false;
  double margin = 0.0;
  double scale = 1.0;
  double tol = kDefaultTol;
  std::vector<Residual> residuals;
  std::string note;

  /// True when the verdict sits within +-tol*scale of the boundary.
  bool on_boundary() const;

  /// Value of a named residual; throws std::out_of_range when absent.
  double residual(std::string_view name) const;

  void add(std::string name, double value);
};

/// Builds a report from a margin, applying the pass rule.
CheckReport make_report(double margin, double scale, double tol);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The covariance matrix violates Sigma + (i hbar / 2) J >= 0.
class NotAQuantumState : public Error {
 public:
  using Error::Error;
};

/// A post-condition failed its tolerance. Carries the failing stage and
/// every residual computed up to that point.
class VerificationFailure : public Error {
 public:
  VerificationFailure(std::string stage, const std::string& detail,
                      std::vector<Residual> residuals = {});

  const std::string& stage() const { return stage_; }
  const std::vector<Residual>& residuals() const { return residuals_; }

 private:
  std::string stage_;
  std::vector<Residual> residuals_;
};

}  // namespace gsep
