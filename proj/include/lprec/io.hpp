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

// CSV exchange format for matrices and vectors: one row per line, comma
// separated, '.' as decimal point regardless of locale. Blank lines are
// ignored. NaN and infinities are rejected.

#ifndef LPREC_IO_HPP
#define LPREC_IO_HPP

#include <string>
#include <string_view>

#include "lprec/linalg.hpp"

namespace lprec {

// source names the input in error messages ("<path>:<line>").
Matrix parse_matrix_csv(std::string_view text, const std::string& source);
Matrix read_matrix_csv(const std::string& path);

// A vector may be stored as one column or as one row.
Vector read_vector_csv(const std::string& path);
Vector parse_vector_csv(std::string_view text, const std::string& source);

std::string format_matrix_csv(const Matrix& M);
std::string format_vector_csv(const Vector& v);  // one value per line
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace lprec

#endif  // LPREC_IO_HPP
