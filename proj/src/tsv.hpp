// Copyright 2026 The VSE-C Toolkit Authors.
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


#ifndef VSEC_SRC_TSV_HPP_
#define VSEC_SRC_TSV_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vsec::detail {

struct TsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Splits on tabs. Blank lines and lines starting with '#' are skipped; every
// other line must have exactly `fields` columns or a DataError naming the
// file and line is thrown.
std::vector<TsvRow> read_tsv(const std::filesystem::path& path,
                             std::size_t fields);

[[noreturn]] void fail_at(const std::filesystem::path& path, std::size_t line,
                          std::string_view reason);

std::vector<std::string> split(std::string_view text, char sep);
std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

double parse_double(std::string_view text, const std::filesystem::path& path,
                    std::size_t line);
long long parse_int(std::string_view text, const std::filesystem::path& path,
                    std::size_t line);

}  // namespace vsec::detail

#endif  // VSEC_SRC_TSV_HPP_
