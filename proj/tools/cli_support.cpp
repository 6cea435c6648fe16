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



#include "cli_support.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "vsec/error.hpp"

namespace vsec::cli {
namespace {

void flatten(const nlohmann::json& j, std::vector<std::string>& parents,
             std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      flatten(value, parents, out);
      parents.pop_back();
      continue;
    }
    if (value.is_null()) continue;
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    auto text = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (value.is_array()) {
      for (const auto& v : value) item.inputs.push_back(text(v));
    } else {
      item.inputs.push_back(text(value));
    }
    out.push_back(std::move(item));
  }
}

// Numbers stay numbers in the recorded configuration.
nlohmann::json scalar(const std::string& text) {
  if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-')) {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_number()) return j;
  }
  return text;
}

nlohmann::json option_value(const CLI::Option& op) {
  if (op.get_expected_max() == 0) return op.count() > 0;
  if (op.count() == 0) {
    const std::string& d = op.get_default_str();
    if (d.empty()) return nullptr;
    return scalar(d);
  }
  const auto& results = op.results();
  if (results.size() == 1) return scalar(results.front());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) arr.push_back(scalar(r));
  return arr;
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
  return resolved_options(*app).dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    input >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
  std::vector<CLI::ConfigItem> out;
  std::vector<std::string> parents;
  flatten(j, parents, out);
  return out;
}

nlohmann::json resolved_options(const CLI::App& app) {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* op : app.get_options()) {
    const std::string name = op->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    j[name] = option_value(*op);
  }
  for (const CLI::App* sub : app.get_subcommands()) {
    j[sub->get_name()] = resolved_options(*sub);
  }
  return j;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 unavailable");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), in.gcount());
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    static constexpr char kDigits[] = "0123456789abcdef";
    hex << kDigits[md[i] >> 4] << kDigits[md[i] & 15];
  }
  return hex.str();
}

std::filesystem::path RunContext::output(const std::string& name) {
  std::filesystem::create_directories(out_dir);
  auto p = out_dir / name;
  outputs.push_back(p);
  return p;
}

void RunContext::write_json(const std::filesystem::path& path, nlohmann::json j) {
  if (j.is_object()) j["seed"] = seed;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

namespace {

nlohmann::json digests(const std::vector<std::filesystem::path>& paths) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(p)) {
        if (e.is_regular_file()) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) j[f.string()] = sha256_file(f);
    } else if (std::filesystem::is_regular_file(p)) {
      j[p.string()] = sha256_file(p);
    }
  }
  return j;
}

}  // namespace

void RunContext::write_repro() {
  std::vector<std::filesystem::path> produced;
  for (const auto& p : outputs) {
    produced.push_back(p);
    // Checkpoint payloads sit next to their manifests.
    if (p.extension() == ".json") {
      auto bin = p;
      bin.replace_extension(".bin");
      if (std::filesystem::exists(bin)) produced.push_back(bin);
    }
  }
  nlohmann::json j;
  j["command"] = command;
  j["argv"] = argv;
  j["seed"] = seed;
  j["config"] = config;
  j["inputs"] = digests(inputs);
  j["outputs"] = digests(produced);
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "repro.json");
  if (!out) throw DataError("cannot write " + (out_dir / "repro.json").string());
  out << j.dump(2) << '\n';
}

KindCounts parse_kind_counts(const std::string& text) {
  KindCounts counts;
  bool seen[3] = {false, false, false};
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected kind=count: " + part);
    const std::string key = part.substr(0, eq);
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(part.substr(eq + 1), &used);
      if (used != part.size() - eq - 1 || v < 0) throw std::invalid_argument(part);
      value = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad count in " + part);
    }
    if (key == "noun") {
      counts.noun = value;
      seen[0] = true;
    } else if (key == "numeral") {
      counts.numeral = value;
      seen[1] = true;
    } else if (key == "relation") {
      counts.relation = value;
      seen[2] = true;
    } else {
      throw std::invalid_argument("unknown adversary kind: " + key);
    }
  }
  if (!(seen[0] && seen[1] && seen[2])) {
    throw std::invalid_argument("counts need noun, numeral and relation: " + text);
  }
  return counts;
}

std::vector<std::size_t> parse_size_list(const std::string& text, std::size_t expected) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: " + part);
    }
    if (used != part.size() || v <= 0) {
      throw std::invalid_argument("expected a positive integer: " + part);
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  if (expected != 0 && out.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " values: " + text);
  }
  return out;
}

knowledge::Relatedness parse_relatedness(const std::string& text) {
  if (text == "closure") return knowledge::Relatedness::kClosure;
  if (text == "direct") return knowledge::Relatedness::kDirect;
  throw std::invalid_argument("relatedness must be closure or direct: " + text);
}

}  // namespace vsec::cli
