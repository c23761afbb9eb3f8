#include "cosparse/text_io.hpp"

#include "cosparse/errors.hpp"

#include <json.hpp>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cosparse::io {
namespace {

std::vector<double> parse_line(const std::string& line, std::size_t line_no) {
  std::vector<double> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == ',' || *p == '\r')) ++p;
    if (p >= end) break;
    double v = 0.0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || next == p) {
      throw ValidationError("line " + std::to_string(line_no) + ": not a number near '" +
                            std::string(p, std::min<std::size_t>(16, end - p)) + "'");
    }
    values.push_back(v);
    p = next;
  }
  return values;
}

std::vector<std::vector<double>> parse_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(parse_line(line, line_no));
  }
  return rows;
}

Vector to_vector(const std::vector<double>& xs) {
  return Eigen::Map<const Vector>(xs.data(), static_cast<Index>(xs.size()));
}

Vector json_vector(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ValidationError(std::string("prior: missing numeric array '") + key + "'");
  }
  std::vector<double> xs;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) throw ValidationError(std::string("prior: non-numeric entry in ") + key);
    xs.push_back(e.get<double>());
  }
  return to_vector(xs);
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Matrix parse_matrix(const std::string& text) {
  const auto rows = parse_rows(text);
  if (rows.empty()) throw ValidationError("matrix text has no rows");
  const std::size_t cols = rows.front().size();
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ValidationError("matrix row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " values, expected " +
                            std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_real(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Matrix read_matrix(const std::filesystem::path& path) {
  try {
    return parse_matrix(read_text(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  write_text(path, format_matrix(m));
}

std::vector<Vector> read_vectors(const std::filesystem::path& path) {
  std::vector<Vector> out;
  for (const auto& row : parse_rows(read_text(path))) out.push_back(to_vector(row));
  return out;
}

void write_vectors(const std::filesystem::path& path, const std::vector<Vector>& rows) {
  std::string text;
  for (const auto& v : rows) text += format_matrix(v.transpose());
  write_text(path, text);
}

Vector read_vector(const std::filesystem::path& path) {
  const auto rows = parse_rows(read_text(path));
  std::vector<double> flat;
  if (rows.size() == 1) {
    flat = rows.front();
  } else {
    for (const auto& r : rows) {
      if (r.size() != 1) {
        throw ValidationError(path.string() + ": expected one line or one value per line");
      }
      flat.push_back(r.front());
    }
  }
  if (flat.empty()) throw ValidationError(path.string() + ": empty vector");
  return to_vector(flat);
}

void write_vector_line(const std::filesystem::path& path, const Vector& v) {
  write_text(path, format_matrix(v.transpose()));
}

std::string prior_to_json(const Prior& prior) {
  nlohmann::ordered_json j;
  j["beta"] = std::vector<double>(prior.beta.data(), prior.beta.data() + prior.beta.size());
  j["sigma"] = std::vector<double>(prior.sigma.data(), prior.sigma.data() + prior.sigma.size());
  return j.dump(2) + "\n";
}

Prior prior_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("prior: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("prior: expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "beta" && key != "sigma") throw ValidationError("prior: unknown key '" + key + "'");
  }
  return make_prior(json_vector(j, "beta"), json_vector(j, "sigma"));
}

Prior read_prior(const std::filesystem::path& path) { return prior_from_json(read_text(path)); }

void write_prior(const std::filesystem::path& path, const Prior& prior) {
  write_text(path, prior_to_json(prior));
}

void write_history(const std::filesystem::path& path, const std::vector<double>& history) {
  std::string text = "# sweep cost\n";
  for (std::size_t k = 0; k < history.size(); ++k) {
    text += std::to_string(k) + ' ' + format_real(history[k]) + '\n';
  }
  write_text(path, text);
}

std::string bound_result_to_json(const BoundResult& r) {
  nlohmann::ordered_json j;
  j["value"] = r.value;
  j["raw_value"] = r.raw_value;
  j["t_star"] = r.t_star;
  j["lambda_star"] = r.lambda_star ? nlohmann::ordered_json(*r.lambda_star) : nullptr;
  j["evaluations"] = r.evaluations;
  j["boundary_warning"] = r.boundary_warning;
  return j.dump(2);
}

std::string format_solver_result(const SolverResult& r) {
  std::string out;
  auto kv = [&](const char* key, const std::string& value) {
    out += "# ";
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  kv("n", std::to_string(r.z_hat.size()));
  kv("status", std::string(to_string(r.status)));
  kv("objective", format_real(r.objective));
  kv("eq_residual", format_real(r.eq_residual));
  kv("split_residual", format_real(r.split_residual));
  kv("dual_residual", format_real(r.dual_residual));
  kv("iterations", std::to_string(r.iterations));
  for (Index i = 0; i < r.z_hat.size(); ++i) out += format_real(r.z_hat(i)) + '\n';
  return out;
}

}  // namespace cosparse::io
