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


#include "vsec/nn/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "vsec/error.hpp"

namespace vsec::nn {
namespace {

std::uint32_t to_little(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) |
           (v >> 24);
  }
  return v;
}

std::filesystem::path payload_path(const std::filesystem::path& manifest) {
  auto p = manifest;
  p.replace_extension(".bin");
  return p;
}

}  // namespace

const Tensor& Checkpoint::at(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return t.tensor;
  }
  throw DataError("checkpoint has no tensor named '" + name + "'");
}

void save_checkpoint(const std::filesystem::path& manifest,
                     std::span<const NamedTensor> tensors,
                     const nlohmann::json& meta) {
  const auto payload = payload_path(manifest);
  std::ofstream bin(payload, std::ios::binary);
  if (!bin) throw DataError("cannot write " + payload.string());
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  std::uint64_t offset = 0;
  for (const auto& t : tensors) {
    for (double v : t.tensor.values()) {
      const float f = static_cast<float>(v);
      std::uint32_t bits = 0;
      std::memcpy(&bits, &f, sizeof bits);
      bits = to_little(bits);
      bin.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
    entries.push_back({{"name", t.name},
                       {"shape", {t.tensor.rows(), t.tensor.cols()}},
                       {"dtype", "float32"},
                       {"offset", offset}});
    offset += t.tensor.size() * sizeof(float);
  }
  nlohmann::ordered_json j;
  j["format"] = "vsec-checkpoint";
  j["version"] = 1;
  j["payload"] = payload.filename().string();
  j["byte_order"] = "little";
  j["tensors"] = entries;
  j["meta"] = meta;
  std::ofstream out(manifest);
  if (!out) throw DataError("cannot write " + manifest.string());
  out << j.dump(2) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw DataError("cannot open " + manifest.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(manifest.string() + ": " + e.what());
  }
  const auto payload =
      manifest.parent_path() / j.at("payload").get<std::string>();
  std::ifstream bin(payload, std::ios::binary);
  if (!bin) throw DataError("cannot open " + payload.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(bin)),
                          std::istreambuf_iterator<char>());
  Checkpoint ck;
  ck.meta = j.value("meta", nlohmann::json::object());
  for (const auto& e : j.at("tensors")) {
    if (e.at("dtype").get<std::string>() != "float32") {
      throw DataError(manifest.string() + ": unsupported dtype");
    }
    const auto shape = e.at("shape").get<std::vector<std::size_t>>();
    const auto offset = e.at("offset").get<std::uint64_t>();
    const std::size_t count = shape.at(0) * shape.at(1);
    if (offset + count * sizeof(float) > bytes.size()) {
      throw DataError(payload.string() + ": truncated payload");
    }
    Tensor t(shape[0], shape[1]);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, bytes.data() + offset + i * sizeof bits, sizeof bits);
      bits = to_little(bits);
      float f = 0.0f;
      std::memcpy(&f, &bits, sizeof f);
      t[i] = static_cast<double>(f);
    }
    ck.tensors.push_back({e.at("name").get<std::string>(), std::move(t)});
  }
  return ck;
}

}  // namespace vsec::nn
