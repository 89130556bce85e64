// Copyright 2026 The urbantext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URBANTEXT_CSV_HPP
#define URBANTEXT_CSV_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace urbantext::csv {

/// Split a line on commas. No quoting; the file formats here never embed
/// commas in fields.
std::vector<std::string> split_fields(const std::string& line);

std::string trim(const std::string& s);

/// Parse a decimal number with `.` separator, locale independent.
/// Throws input_error naming `context` on failure.
double parse_double(const std::string& field, const std::string& context);

long parse_long(const std::string& field, const std::string& context);

/// Shortest decimal form that round-trips the exact double (up to 17
/// significant digits).
std::string format_double(double v);

/// Whole file as a string. Throws input_error if unreadable.
std::string read_file(const std::string& path);

/// File as lines; handles trailing newline and CRLF.
std::vector<std::string> read_lines(const std::string& path);

/// Write full contents, throwing input_error on I/O failure.
void write_file(const std::string& path, const std::string& contents);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex chars.
std::string file_digest(const std::string& path);

std::string bytes_digest(const std::string& bytes);

}  // namespace urbantext::csv

#endif  // URBANTEXT_CSV_HPP
