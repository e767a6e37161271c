#include "gsep/check.hpp"

#include <cmath>

namespace gsep {

bool CheckReport::on_boundary() const {
  return std::abs(margin) <= tol * scale;
}

double CheckReport::residual(std::string_view name) const {
  for (const auto& r : residuals) {
    if (r.name == name) return r.value;
  }
  throw std::out_of_range("no residual named '" + std::string(name) + "'");
}

void CheckReport::add(std::string name, double value) {
  residuals.push_back({std::move(name), value});
}

CheckReport make_report(double margin, double scale, double tol) {
  CheckReport report;
  report.margin = margin;
  report.scale = scale;
  report.tol = tol;
  report.pass = margin >= -tol * scale;
  return report;
}

VerificationFailure::VerificationFailure(std::string stage,
                                         const std::string& detail,
                                         std::vector<Residual> residuals)
    : Error(stage + ": " + detail),
      stage_(std::move(stage)),
      residuals_(std::move(residuals)) {}

}  // namespace gsep
