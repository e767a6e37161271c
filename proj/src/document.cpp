#include "gsep/document.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <openssl/evp.h>

#include "gsep/linalg.hpp"

namespace gsep {

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& doc, std::string_view key) {
  if (!doc.is_object()) throw InvalidInput("document must be a JSON object");
  const auto it = doc.find(std::string(key));
  if (it == doc.end()) {
    throw InvalidInput("missing required field '" + std::string(key) + "'");
  }
  return *it;
}

int require_positive_int(const json& doc, std::string_view key) {
  const json& v = require(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 1 ||
      v.get<long long>() > 100000) {
    throw InvalidInput("field '" + std::string(key) + "' must be a positive integer");
  }
  return v.get<int>();
}

double number(const json& v, std::string_view field) {
  if (!v.is_number()) {
    throw InvalidInput("field '" + std::string(field) + "' must contain numbers");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw InvalidInput("field '" + std::string(field) + "' contains a non-finite number");
  }
  return x;
}

Ordering document_ordering(const json& doc) {
  const auto it = doc.find("ordering");
  if (it == doc.end()) return Ordering::Interleaved;
  if (!it->is_string()) throw InvalidInput("field 'ordering' must be a string");
  return parse_ordering(it->get<std::string>());
}

void render(std::ostringstream& out, const json& value, int indent);

bool is_number_row(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v) {
    if (!x.is_number()) return false;
  }
  return true;
}

bool is_number_matrix(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v) {
    if (!is_number_row(row) || row.empty()) return false;
  }
  return true;
}

std::string scalar_text(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string row_text(const json& row) {
  std::string s = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ", ";
    s += scalar_text(row[i]);
  }
  return s + "]";
}

void render(std::ostringstream& out, const json& value, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, v] : value.items()) {
    out << pad << key << ":";
    if (v.is_object()) {
      out << "\n";
      render(out, v, indent + 2);
    } else if (is_number_matrix(v)) {
      out << "\n";
      for (const auto& row : v) out << pad << "  " << row_text(row) << "\n";
    } else if (is_number_row(v)) {
      out << " " << row_text(v) << "\n";
    } else if (v.is_array()) {
      out << "\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          out << pad << "  -\n";
          render(out, item, indent + 4);
        } else {
          out << pad << "  - " << scalar_text(item) << "\n";
        }
      }
    } else {
      out << " " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace

InputDocument parse_input_document(std::string_view text) {
  const json doc = parse_json(text);
  InputDocument out;
  if (!doc.is_object()) throw InvalidInput("document must be a JSON object");
  if (const auto it = doc.find("hbar"); it != doc.end()) {
    out.hbar = number(*it, "hbar");
    if (!(out.hbar > 0.0)) throw InvalidInput("field 'hbar' must be positive");
  }
  out.ordering = document_ordering(doc);
  out.n_a = require_positive_int(doc, "n_A");
  out.n_b = require_positive_int(doc, "n_B");
  const int dim = 2 * (out.n_a + out.n_b);

  out.sigma = matrix_from_json(require(doc, "sigma"), "sigma");
  if (out.sigma.rows() != dim || out.sigma.cols() != dim) {
    throw InvalidInput("sigma is " + std::to_string(out.sigma.rows()) + "x" +
                       std::to_string(out.sigma.cols()) + " but n_A + n_B = " +
                       std::to_string(out.n_a + out.n_b) + " needs " +
                       std::to_string(dim) + "x" + std::to_string(dim));
  }
  const double skew = asymmetry(out.sigma);
  if (skew > 1e-9) {
    throw InvalidInput("sigma is not symmetric (relative asymmetry " +
                       format_double(skew) + ")");
  }
  if (skew > 1e-12) {
    out.warnings.push_back("sigma symmetrized (relative asymmetry " +
                           format_double(skew) + ")");
  }
  out.sigma = linalg::symmetrize(out.sigma);

  if (const auto it = doc.find("mean"); it != doc.end() && !it->is_null()) {
    Vector mean = vector_from_json(*it, "mean");
    if (mean.size() != dim) {
      throw InvalidInput("mean has length " + std::to_string(mean.size()) +
                         ", expected " + std::to_string(dim));
    }
    out.mean = std::move(mean);
  }
  return out;
}

json to_json(const InputDocument& doc) {
  json out;
  out["hbar"] = doc.hbar;
  out["ordering"] = std::string(to_string(doc.ordering));
  out["n_A"] = doc.n_a;
  out["n_B"] = doc.n_b;
  out["sigma"] = matrix_to_json(doc.sigma);
  if (doc.mean) out["mean"] = vector_to_json(*doc.mean);
  return out;
}

CovarianceMatrix to_covariance(const InputDocument& doc) {
  return CovarianceMatrix(doc.sigma, ModePartition(doc.n_a, doc.n_b), doc.hbar,
                          doc.ordering);
}

GaussianState to_state(const InputDocument& doc) {
  CovarianceMatrix cov = to_covariance(doc);
  Vector mean = doc.mean ? convert_ordering(*doc.mean, doc.ordering, Ordering::Interleaved)
                         : Vector::Zero(cov.dim());
  return GaussianState(std::move(cov), std::move(mean));
}

MatrixDocument parse_matrix_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw InvalidInput("document must be a JSON object");
  MatrixDocument out;
  out.ordering = document_ordering(doc);
  const char* key = doc.contains("S") ? "S" : "matrix";
  out.matrix = convert_ordering(matrix_from_json(require(doc, key), key),
                                out.ordering, Ordering::Interleaved);
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const json& value, std::string_view field) {
  if (!value.is_array() || value.empty()) {
    throw InvalidInput("field '" + std::string(field) + "' must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(value.size());
  if (!value[0].is_array()) {
    throw InvalidInput("field '" + std::string(field) + "' must be an array of rows");
  }
  const auto cols = static_cast<Eigen::Index>(value[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidInput("field '" + std::string(field) + "' has ragged rows");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = number(row[static_cast<std::size_t>(j)], field);
    }
  }
  return m;
}

Vector vector_from_json(const json& value, std::string_view field) {
  if (!value.is_array()) {
    throw InvalidInput("field '" + std::string(field) + "' must be an array");
  }
  Vector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(value[i], field);
  }
  return v;
}

json report_to_json(const CheckReport& report) {
  json out;
  out["pass"] = report.pass;
  out["margin"] = report.margin;
  out["scale"] = report.scale;
  out["tolerance"] = report.tol;
  json residuals = json::object();
  for (const auto& r : report.residuals) residuals[r.name] = r.value;
  out["residuals"] = std::move(residuals);
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

std::string input_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string render_text(const json& report) {
  std::ostringstream out;
  render(out, report, 0);
  return out.str();
}

CheckReport recheck_disentangle_report(const json& report) {
  const Ordering ordering = document_ordering(report);
  const double hbar = number(require(report, "hbar"), "hbar");
  const ModePartition partition(require_positive_int(report, "n_A"),
                                require_positive_int(report, "n_B"));
  const double tol = number(require(report, "tolerance"), "tolerance");
  const CovarianceMatrix sigma_u(
      matrix_from_json(require(report, "sigma_U"), "sigma_U"), partition, hbar,
      ordering);
  SeparabilityWitness witness{
      convert_ordering(matrix_from_json(require(report, "sigma_A"), "sigma_A"),
                       ordering, Ordering::Interleaved),
      convert_ordering(matrix_from_json(require(report, "sigma_B"), "sigma_B"),
                       ordering, Ordering::Interleaved),
      hbar};
  return werner_wolf_check(sigma_u, witness, tol);
}

}  // namespace gsep
