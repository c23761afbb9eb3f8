#pragma once

#include "cosparse/bounds.hpp"
#include "cosparse/core_math.hpp"
#include "cosparse/priors.hpp"
#include "cosparse/solver.hpp"
#include "cosparse/weights_types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cosparse::io {

/// Real formatted with 17 significant digits (round-trips exactly).
std::string format_real(double x);

/// Delimited numeric text: one matrix row per line, values separated by
/// commas and/or whitespace. Blank lines and lines starting with '#' are skipped.
Matrix parse_matrix(const std::string& text);
std::string format_matrix(const Matrix& m);

Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// One vector per line (signals) or a single line (weights).
std::vector<Vector> read_vectors(const std::filesystem::path& path);
void write_vectors(const std::filesystem::path& path, const std::vector<Vector>& rows);

/// Reads a vector stored either on one line or one value per line.
Vector read_vector(const std::filesystem::path& path);
void write_vector_line(const std::filesystem::path& path, const Vector& v);

/// {"beta": [...], "sigma": [...]}
std::string prior_to_json(const Prior& prior);
Prior prior_from_json(const std::string& text);
Prior read_prior(const std::filesystem::path& path);
void write_prior(const std::filesystem::path& path, const Prior& prior);

/// Two columns: sweep, cost.
void write_history(const std::filesystem::path& path, const std::vector<double>& history);

/// {"value", "raw_value", "t_star", "lambda_star", "evaluations", "boundary_warning"}
std::string bound_result_to_json(const BoundResult& r);

/// '# key = value' header lines followed by z_hat, one value per line.
std::string format_solver_result(const SolverResult& r);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace cosparse::io
