#include "gowerk/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace gowerk::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) +
                                           ": cannot parse number '" +
                                           std::string(field) + "'");
  }
  return value;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

MatrixFormat parse_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::csv;
  if (name == "json") return MatrixFormat::json;
  throw Error(ErrorCode::InvalidArgument, "unknown matrix format '" + std::string(name) + "'");
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".json" ? MatrixFormat::json : MatrixFormat::csv;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_csv(const Matrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    while (true) {
      const std::size_t comma = line.find(',');
      row.push_back(parse_number(line.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  const Index r = static_cast<Index>(rows.size());
  const Index c = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::string format_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  nlohmann::json doc{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
  return doc.dump() + "\n";
}

Matrix parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("data") || !doc["rows"].is_number_integer() ||
      !doc["cols"].is_number_integer() || !doc["data"].is_array()) {
    throw Error(ErrorCode::ParseError,
                R"(JSON matrix must be {"rows": int, "cols": int, "data": [numbers]})");
  }
  const auto r = doc["rows"].get<long long>();
  const auto c = doc["cols"].get<long long>();
  const auto& data = doc["data"];
  if (r < 0 || c < 0 || static_cast<long long>(data.size()) != r * c) {
    throw Error(ErrorCode::ParseError, "JSON matrix data length does not match rows*cols");
  }
  Matrix m(r, c);
  for (long long i = 0; i < r; ++i) {
    for (long long j = 0; j < c; ++j) {
      const auto& v = data[static_cast<std::size_t>(i * c + j)];
      if (!v.is_number()) throw Error(ErrorCode::ParseError, "JSON matrix data must be numbers");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

Matrix read_matrix(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
  const std::string text = slurp(path);
  return format.value_or(format_for_path(path)) == MatrixFormat::json ? parse_json(text)
                                                                      : parse_csv(text);
}

Vector read_vector(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
  const Matrix m = read_matrix(path, format);
  if (m.rows() == 1) return m.row(0).transpose();
  if (m.cols() == 1) return m.col(0);
  throw Error(ErrorCode::ParseError, path.string() + " is not a single row or column");
}

void write_text_atomically(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename into " + path.string());
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m, MatrixFormat format) {
  write_text_atomically(path, format == MatrixFormat::json ? format_json(m) : format_csv(m));
}

}  // namespace gowerk::io
