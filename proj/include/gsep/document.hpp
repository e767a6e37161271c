#pragma once

// JSON documents read and written by the command-line tool.
//
// Input document:
//   {
//     "hbar": 1.0,                     // optional, default 1
//     "ordering": "interleaved",       // or "blocked"; optional
//     "n_A": 1, "n_B": 1,
//     "sigma": [[...], ...],           // 2n x 2n, row-major
//     "mean": [...]                    // optional, default zeros
//   }
//
// Matrix document (symplectic_polar input):
//   { "ordering": "interleaved", "S": [[...], ...] }

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gsep/separability.hpp"
#include "gsep/states.hpp"

namespace gsep {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

struct InputDocument {
  double hbar = 1.0;
  Ordering ordering = Ordering::Interleaved;
  int n_a = 0;
  int n_b = 0;
  Matrix sigma;  // in `ordering`
  std::optional<Vector> mean;
  std::vector<std::string> warnings;
};

/// Parses and validates an input document. Asymmetry up to 1e-9 (relative)
/// is symmetrized away, with a warning above 1e-12. Throws InvalidInput on
/// any schema violation.
InputDocument parse_input_document(std::string_view text);
json to_json(const InputDocument& doc);

CovarianceMatrix to_covariance(const InputDocument& doc);
GaussianState to_state(const InputDocument& doc);

struct MatrixDocument {
  Matrix matrix;  // interleaved
  Ordering ordering = Ordering::Interleaved;
};

/// Parses the "S" (or "matrix") field of a matrix document.
MatrixDocument parse_matrix_document(std::string_view text);

json matrix_to_json(const Matrix& m);
json vector_to_json(const Vector& v);
/// Throws InvalidInput unless `value` is a rectangular array of numbers.
Matrix matrix_from_json(const json& value, std::string_view field);
Vector vector_from_json(const json& value, std::string_view field);

json report_to_json(const CheckReport& report);

/// "sha256:<hex>" of the raw input bytes.
std::string input_digest(std::string_view bytes);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Human-readable rendering of a report. Numbers use format_double, so the
/// values match the JSON rendering exactly.
std::string render_text(const json& report);

/// Re-runs werner_wolf_check on the (sigma_U, sigma_A, sigma_B) stored in a
/// disentangle report.
CheckReport recheck_disentangle_report(const json& report);

}  // namespace gsep
