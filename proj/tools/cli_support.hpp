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



#ifndef VSEC_TOOLS_CLI_SUPPORT_HPP_
#define VSEC_TOOLS_CLI_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vsec/knowledge.hpp"

namespace vsec::cli {

// Reads a JSON object as CLI11 configuration. Top-level keys set global
// options; a nested object named after a subcommand sets its options.
// Arrays become repeated values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

// Option values after parsing: explicit results, else the default string.
nlohmann::json resolved_options(const CLI::App& app);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Per-run state shared by every subcommand.
struct RunContext {
  std::string command;
  std::vector<std::string> argv;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;

  std::filesystem::path output(const std::string& name);
  void input(const std::filesystem::path& p) { inputs.push_back(p); }
  void input(const std::optional<std::filesystem::path>& p) {
    if (p) inputs.push_back(*p);
  }
  // JSON written with a trailing newline; the seed is added to objects.
  void write_json(const std::filesystem::path& path, nlohmann::json j);
  // repro.json: command, argv, seed, resolved configuration and digests of
  // every input and output. Contains no timestamps.
  void write_repro();
};

// "noun=20,numeral=20,relation=20"; unknown or missing keys are errors.
struct KindCounts {
  std::size_t noun = 20;
  std::size_t numeral = 20;
  std::size_t relation = 20;
};
KindCounts parse_kind_counts(const std::string& text);

// Comma-separated positive integers.
std::vector<std::size_t> parse_size_list(const std::string& text,
                                         std::size_t expected = 0);

knowledge::Relatedness parse_relatedness(const std::string& text);

}  // namespace vsec::cli

#endif  // VSEC_TOOLS_CLI_SUPPORT_HPP_
