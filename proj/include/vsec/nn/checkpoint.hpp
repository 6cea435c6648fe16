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


#ifndef VSEC_NN_CHECKPOINT_HPP_
#define VSEC_NN_CHECKPOINT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/nn/tensor.hpp"

namespace vsec::nn {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct Checkpoint {
  std::vector<NamedTensor> tensors;
  nlohmann::json meta;

  // Throws DataError when absent.
  const Tensor& at(const std::string& name) const;
};

// Writes `manifest` (JSON: names, shapes, dtype, byte offsets, meta) and a
// payload next to it with the extension replaced by ".bin", holding the
// values as little-endian float32.
void save_checkpoint(const std::filesystem::path& manifest,
                     std::span<const NamedTensor> tensors,
                     const nlohmann::json& meta = nlohmann::json::object());

Checkpoint load_checkpoint(const std::filesystem::path& manifest);

}  // namespace vsec::nn

#endif  // VSEC_NN_CHECKPOINT_HPP_
