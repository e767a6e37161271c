// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gsep/decomp.hpp"
#include "gsep/separability.hpp"
#include "gsep/states.hpp"

#ifndef GSEP_TOOL_PATH
#error "GSEP_TOOL_PATH must name the gsep binary"
#endif

using namespace gsep;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double worst = 0.0;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
  void track(double v) { worst = std::max(worst, v); }
};

struct Sample {
  CovarianceMatrix cov;
  std::string label;
};

std::vector<Sample> random_states() {
  const std::vector<ModePartition> parts = {{1, 1}, {1, 2}, {2, 2}, {2, 3}};
  const double hbars[] = {0.5, 1.0, 2.0};
  std::vector<Sample> out;
  for (int i = 0; i < 200; ++i) {
    const ModePartition& part = parts[i % parts.size()];
    const double hbar = hbars[(i / 4) % 3];
    const std::uint64_t seed = 10000 + i;
    out.push_back({random_covariance(part, hbar, seed, 1.5, 2.0),
                   "seed " + std::to_string(seed)});
  }
  return out;
}

Outcome criterion_disentangle(const std::vector<Sample>& states) {
  Outcome o;
  for (const auto& s : states) {
    try {
      const DisentangleResult r = disentangle(s.cov);
      const Matrix& u = r.U();
      const Matrix j = symplectic_form(s.cov.modes());
      const Matrix id = Matrix::Identity(u.rows(), u.cols());
      const double orth = (u.transpose() * u - id).norm();
      const double symp = (u.transpose() * j * u - j).norm();
      o.track(orth);
      o.expect(orth <= 1e-10, s.label + ": U^T U - I = " + std::to_string(orth));
      o.expect(symp <= 1e-10 * std::max(1.0, u.squaredNorm()),
               s.label + ": U^T J U - J = " + std::to_string(symp));
      o.expect(r.werner_wolf.margin >= -1e-9 * s.cov.norm(),
               s.label + ": Werner-Wolf margin " + std::to_string(r.werner_wolf.margin));
    } catch (const std::exception& e) {
      o.expect(false, s.label + ": " + e.what());
    }
  }
  return o;
}

Outcome criterion_tmsv() {
  Outcome o;
  for (double r : {0.5, 1.0, 2.0}) {
    const CovarianceMatrix cov = fixtures::tmsv(r);
    const std::string tag = "r=" + std::to_string(r);
    const PptResult ppt = ppt_test(cov);
    const double expected = 0.5 * std::exp(-2 * r);
    const double oracle = fixtures::nu_oracle(partial_transpose(cov)).back();
    o.track(std::abs(ppt.nu.minCoeff() - expected));
    o.expect(ppt.entangled, tag + ": PPT did not flag entanglement");
    o.expect(std::abs(ppt.nu.minCoeff() - expected) <= 1e-9, tag + ": PPT nu_min off closed form");
    o.expect(std::abs(oracle - expected) <= 1e-9, tag + ": oracle nu_min off closed form");

    const DisentangleResult d = disentangle(cov);
    for (auto l : d.lambdas()) {
      o.expect(std::abs(l - std::exp(r)) <= 1e-9, tag + ": lambda " + std::to_string(l));
    }
    const double rel =
        (d.sigma_u.sigma() - direct_sum(d.witness.sigma_a, d.witness.sigma_b)).norm() / cov.norm();
    o.track(rel);
    o.expect(rel <= 1e-9, tag + ": U Sigma U^T is not the witness");
  }
  return o;
}

Outcome criterion_williamson(const std::vector<Sample>& states) {
  Outcome o;
  for (const auto& s : states) {
    try {
      const WilliamsonForm w = williamson(s.cov);
      const double rec = (w.S * w.D() * w.S.transpose() - s.cov.sigma()).norm() / s.cov.norm();
      const Matrix j = symplectic_form(s.cov.modes());
      const double symp = (w.S.transpose() * j * w.S - j).norm() /
                          std::max(1.0, w.S.squaredNorm());
      o.track(std::max(rec, symp));
      o.expect(rec <= 1e-10, s.label + ": reconstruction " + std::to_string(rec));
      o.expect(symp <= 1e-10, s.label + ": symplectic residual " + std::to_string(symp));
    } catch (const std::exception& e) {
      o.expect(false, s.label + ": " + e.what());
    }
  }
  return o;
}

Outcome criterion_polar() {
  Outcome o;
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    const int modes = 1 + i % 5;
    const Matrix s = random_symplectic(modes, rng, 1.5);
    const std::string tag = "trial " + std::to_string(i);
    try {
      const PolarForm f = symplectic_polar(s);
      const Matrix j = symplectic_form(modes);
      const Matrix id = Matrix::Identity(2 * modes, 2 * modes);
      const double prod = (f.P * f.R - s).norm() / s.norm();
      const double orth = (f.R.transpose() * f.R - id).norm();
      const double rsymp = (f.R.transpose() * j * f.R - j).norm();
      const double psymp = (f.P * j * f.P - j).norm() / std::max(1.0, f.P.squaredNorm());
      const double asym = (f.P - f.P.transpose()).norm();
      o.track(std::max({prod, orth, rsymp, psymp}));
      o.expect(prod <= 1e-10, tag + ": P R - S = " + std::to_string(prod));
      o.expect(orth <= 1e-10, tag + ": R^T R - I = " + std::to_string(orth));
      o.expect(rsymp <= 1e-10, tag + ": R not symplectic");
      o.expect(psymp <= 1e-10, tag + ": P not symplectic");
      o.expect(asym == 0.0, tag + ": P not symmetric");
      Eigen::SelfAdjointEigenSolver<Matrix> es(f.P, Eigen::EigenvaluesOnly);
      const Vector& w = es.eigenvalues();
      o.expect(w(0) > 0, tag + ": P not positive definite");
      for (int k = 0; k < w.size(); ++k) {
        const double pair = std::abs(w(k) * w(w.size() - 1 - k) - 1.0);
        o.expect(pair <= 1e-9, tag + ": eigenvalues not reciprocal");
      }
    } catch (const std::exception& e) {
      o.expect(false, tag + ": " + e.what());
    }
  }
  return o;
}

Outcome criterion_witness(const std::vector<Sample>& states) {
  Outcome o;
  for (const auto& s : states) {
    try {
      const DisentangleResult r = disentangle(s.cov);
      const double hbar = s.cov.hbar();
      for (const Matrix* block : {&r.witness.sigma_a, &r.witness.sigma_b}) {
        for (int k = 0; k < block->rows() / 2; ++k) {
          const Matrix b = block->block(2 * k, 2 * k, 2, 2);
          const double det = std::abs(b.determinant() - 0.25 * hbar * hbar);
          const double herm = fixtures::hermitian_min_oracle(b, hbar);
          o.track(det / (hbar * hbar));
          o.expect(det <= 1e-9 * hbar * hbar, s.label + ": witness determinant off");
          o.expect(herm >= -1e-10, s.label + ": witness block violates uncertainty");
        }
      }
    } catch (const std::exception& e) {
      o.expect(false, s.label + ": " + e.what());
    }
  }
  return o;
}

Outcome criterion_invariance() {
  Outcome o;
  std::mt19937_64 rng(606);
  const std::vector<ModePartition> parts = {{1, 1}, {1, 2}, {2, 2}, {2, 3}};
  for (int i = 0; i < 100; ++i) {
    const ModePartition& part = parts[i % parts.size()];
    const CovarianceMatrix cov = random_covariance(part, 1.0, 20000 + i, 1.0, 2.0);
    const std::string tag = "trial " + std::to_string(i);
    const Matrix t = random_symplectic(part.modes(), rng, 1.0);
    const Vector before = symplectic_eigenvalues(cov);
    const Vector after = symplectic_eigenvalues(cov.with_sigma(t * cov.sigma() * t.transpose()));
    const double dnu = (before - after).cwiseAbs().maxCoeff();
    o.track(dnu);
    o.expect(dnu <= 1e-8, tag + ": nu moved by " + std::to_string(dnu));

    const Matrix u = random_orthosymplectic(part.modes(), rng);
    const CovarianceMatrix rotated = cov.with_sigma(u * cov.sigma() * u.transpose());
    const CheckReport a = quantum_condition_check(cov);
    const CheckReport b = quantum_condition_check(rotated);
    o.expect(std::abs(a.margin - b.margin) <= 1e-9, tag + ": quantum margin moved");
    o.expect(std::abs(a.residual("nu_min") - b.residual("nu_min")) <= 1e-9,
             tag + ": nu_min moved");
  }
  return o;
}

Outcome criterion_wigner() {
  Outcome o;
  const double hbar = 1.0;
  const CovarianceMatrix seed_cov = random_covariance(ModePartition(1, 1), hbar, 3, 0.8, 1.0);
  const Matrix sigma_a = seed_cov.sigma().topLeftCorner(2, 2);
  const GaussianState s(CovarianceMatrix(
      direct_sum(sigma_a, 0.5 * hbar * Matrix::Identity(2, 2)), ModePartition(1, 1), hbar));
  // Trapezoid rule on the A plane with z_B = 0, divided by the vacuum peak.
  const double half = 6.0 * std::sqrt(sigma_a.norm());
  const int n = 400;
  const double step = 2 * half / n;
  const double b_peak = 1.0 / (std::numbers::pi * hbar);
  double total = 0.0;
  Vector z = Vector::Zero(4);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      z(0) = -half + i * step;
      z(1) = -half + j * step;
      const double w = ((i == 0 || i == n) ? 0.5 : 1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
      total += w * s.wigner(z) / b_peak;
    }
  }
  total *= step * step;
  o.track(std::abs(total - 1.0));
  o.expect(std::abs(total - 1.0) <= 1e-3, "normalization " + std::to_string(total));

  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const CovarianceMatrix cov = random_covariance(ModePartition(1, 2), hbar, 900 + i, 1.0, 1.0);
    Vector mean(6);
    for (int k = 0; k < 6; ++k) mean(k) = 0.3 * g(rng);
    const GaussianState state(cov, mean);
    const DisentangleResult d = disentangle(cov);
    const GaussianState rotated = rotate_state(state, d.U());
    for (int k = 0; k < 10; ++k) {
      Vector p(6);
      for (int c = 0; c < 6; ++c) p(c) = g(rng);
      const double lhs = rotated.wigner(p);
      const double rhs = state.wigner(d.U().transpose() * p);
      const double diff = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      o.track(diff);
      o.expect(diff <= 1e-12, "rho_U(z) differs from rho(U^T z)");
    }
  }
  return o;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Outcome criterion_cli() {
  Outcome o;
  const std::string tool = GSEP_TOOL_PATH;
  const std::vector<std::pair<int, int>> parts = {{1, 1}, {1, 2}, {2, 3}};
  for (int seed = 0; seed < 100; ++seed) {
    const auto [na, nb] = parts[seed % parts.size()];
    std::ostringstream gen;
    gen << "'" << tool << "' random --nA " << na << " --nB " << nb << " --seed " << seed;
    const std::string file = "acceptance_state_" + std::to_string(seed) + ".json";
    const std::string pipeline = "set -e; " + gen.str() + " > " + file + "; '" + tool +
                                 "' validate " + file + " > /dev/null; '" + tool +
                                 "' disentangle --json " + file + " > /dev/null";
    const int code = shell("sh -c \"" + pipeline + "\"");
    std::remove(file.c_str());
    o.expect(code == 0, "seed " + std::to_string(seed) + " exited " + std::to_string(code));
    const int piped = shell(gen.str() + " | '" + tool + "' disentangle - > /dev/null");
    o.expect(piped == 0, "seed " + std::to_string(seed) + " piped exit " + std::to_string(piped));
  }

  const int malformed = shell("printf '{\"n_A\": 1, \"n_B\":' | '" + tool +
                              "' validate - > /dev/null 2>&1");
  o.expect(malformed == 2, "malformed input exited " + std::to_string(malformed));

  const std::string violating =
      R"({"hbar": 1, "ordering": "interleaved", "n_A": 1, "n_B": 1, )"
      R"("sigma": [[1,0,0,0],[0,0.125,0,0],[0,0,0.5,0],[0,0,0,0.5]]})";
  const int bad = shell("printf '%s' '" + violating + "' | '" + tool +
                        "' disentangle - > /dev/null 2>&1");
  o.expect(bad == 1, "violating input exited " + std::to_string(bad));
  return o;
}

}  // namespace

int main() {
  const std::vector<Sample> states = random_states();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 disentangling rotation on 200 random states", [&] { return criterion_disentangle(states); }},
      {"2 two-mode squeezed vacuum closed forms", criterion_tmsv},
      {"3 Williamson round trip", [&] { return criterion_williamson(states); }},
      {"4 symplectic polar decomposition", criterion_polar},
      {"5 minimal-uncertainty witness", [&] { return criterion_witness(states); }},
      {"6 symplectic invariance of the spectrum", criterion_invariance},
      {"7 Wigner function normalization and covariance", criterion_wigner},
      {"8 command-line pipeline and exit codes", criterion_cli},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = e.what();
    }
    std::printf("%s  %s  (worst %.3g)%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.worst,
                o.pass ? "" : ": ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
