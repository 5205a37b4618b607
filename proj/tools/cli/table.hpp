// Copyright 2026 The nnsieve Authors.
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

#ifndef NNSIEVE_TOOLS_TABLE_HPP_
#define NNSIEVE_TOOLS_TABLE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace nnsieve::cli {

using Cell = std::variant<std::monostate, std::string, double, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest-of-`digits` significant digits, "C" locale, no trailing zeros.
std::string format_double(double value, int digits);

/// Header line then one line per row; doubles at 6 significant digits.
std::string to_csv(const Table& table);
/// Array of row objects; doubles at 17 significant digits, non-finite as null.
std::string to_json(const Table& table);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace nnsieve::cli

#endif  // NNSIEVE_TOOLS_TABLE_HPP_
