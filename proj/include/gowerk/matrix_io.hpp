#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gowerk/symmat.hpp"

namespace gowerk::io {

enum class MatrixFormat { csv, json };

MatrixFormat parse_format(std::string_view name);
/// ".json" (any case) selects JSON; everything else is CSV.
MatrixFormat format_for_path(const std::filesystem::path& path);

/// Headerless CSV, one row per line. Numbers are written in the shortest
/// form that parses back to the same double.
std::string format_csv(const Matrix& m);
Matrix parse_csv(std::string_view text);

/// {"rows": r, "cols": c, "data": [row-major numbers]}
std::string format_json(const Matrix& m);
Matrix parse_json(std::string_view text);

/// Reads a rectangular matrix; the format defaults to format_for_path.
Matrix read_matrix(const std::filesystem::path& path,
                   std::optional<MatrixFormat> format = std::nullopt);

/// A single row or a single column, returned as a column vector.
Vector read_vector(const std::filesystem::path& path,
                   std::optional<MatrixFormat> format = std::nullopt);

/// Writes to a sibling temporary file and renames it over `path`.
void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  MatrixFormat format);

void write_text_atomically(const std::filesystem::path& path, std::string_view text);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace gowerk::io
