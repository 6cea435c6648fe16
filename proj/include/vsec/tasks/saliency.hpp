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


#ifndef VSEC_TASKS_SALIENCY_HPP_
#define VSEC_TASKS_SALIENCY_HPP_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/nn/tensor.hpp"
#include "vsec/vse/model.hpp"

namespace vsec::tasks {

// Raw Jacobian of s(f, c) with respect to the image feature and to each
// word-embedding row of the caption.
struct SaliencyGradients {
  double score = 0.0;
  std::vector<double> image;  // d s / d f
  nn::Tensor tokens;          // caption length x word_dim
};

SaliencyGradients saliency_gradients(const vse::JointModel& model,
                                     std::span<const double> feature,
                                     const vse::Caption& caption);

struct SaliencyMap {
  std::vector<std::string> words;
  std::vector<double> image;   // |gradient| per dimension, max 1
  std::vector<double> tokens;  // row gradient L2 norms, summing to 1
  double score = 0.0;
  // Set when a component's gradient vanished; that component is all zeros.
  bool zero_image = false;
  bool zero_tokens = false;

  // {"tokens":[{"text","score"}],"image_dims":[...]} plus the score.
  nlohmann::json to_json() const;
};

SaliencyMap saliency(const vse::JointModel& model, std::span<const double> feature,
                     const vse::Caption& caption);

}  // namespace vsec::tasks

#endif  // VSEC_TASKS_SALIENCY_HPP_
