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


#include "tsv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vsec/error.hpp"

namespace vsec::detail {

void fail_at(const std::filesystem::path& path, std::size_t line,
             std::string_view reason) {
  std::ostringstream os;
  os << path.filename().string() << ":" << line << ": " << reason;
  throw DataError(os.str());
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::vector<TsvRow> read_tsv(const std::filesystem::path& path,
                             std::size_t fields) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != fields) {
      fail_at(path, number,
              "expected " + std::to_string(fields) +
                  " tab-separated fields, got " +
                  std::to_string(parts.size()));
    }
    for (auto& p : parts) {
      p = trim(p);
      if (p.empty()) fail_at(path, number, "empty field");
    }
    rows.push_back({number, std::move(parts)});
  }
  return rows;
}

double parse_double(std::string_view text, const std::filesystem::path& path,
                    std::size_t line) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    fail_at(path, line, "not a number: " + s);
  }
  if (used != s.size()) fail_at(path, line, "not a number: " + s);
  return value;
}

long long parse_int(std::string_view text, const std::filesystem::path& path,
                    std::size_t line) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    fail_at(path, line, "not an integer: " + std::string(text));
  }
  return value;
}

}  // namespace vsec::detail
