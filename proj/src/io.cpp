// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lprec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "lprec/errors.hpp"

namespace lprec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, const std::string& source, int line,
                   int column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    std::ostringstream msg;
    msg << source << ":" << line << ": field " << column << " is not a number: '"
        << field << "'";
    throw ParseError(msg.str());
  }
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << source << ":" << line << ": field " << column
        << " is not finite: '" << field << "'";
    throw ParseError(msg.str());
  }
  return v;
}

}  // namespace

Matrix parse_matrix_csv(std::string_view text, const std::string& source) {
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  std::size_t width = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    int column = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      row.push_back(parse_field(line.substr(0, comma), source, line_no, ++column));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": expected " << width
          << " fields, found " << row.size();
      throw ParseError(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source + ": no data rows");
  Matrix M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) M(i, j) = rows[i][j];
  return M;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

Matrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_text_file(path), path);
}

Vector parse_vector_csv(std::string_view text, const std::string& source) {
  const Matrix M = parse_matrix_csv(text, source);
  if (M.cols() == 1) return M.col(0);
  if (M.rows() == 1) return M.row(0).transpose();
  std::ostringstream msg;
  msg << source << ": expected a single row or column, found " << M.rows()
      << "x" << M.cols();
  throw ParseError(msg.str());
}

Vector read_vector_csv(const std::string& path) {
  return parse_vector_csv(read_text_file(path), path);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string format_matrix_csv(const Matrix& M) {
  std::string out;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(M(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_vector_csv(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += format_double(v(i));
    out += '\n';
  }
  return out;
}

}  // namespace lprec
