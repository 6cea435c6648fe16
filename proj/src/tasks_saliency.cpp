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


#include "vsec/tasks/saliency.hpp"

#include <algorithm>
#include <cmath>

#include "vsec/nn/graph.hpp"

namespace vsec::tasks {

SaliencyGradients saliency_gradients(const vse::JointModel& model,
                                     std::span<const double> feature,
                                     const vse::Caption& caption) {
  nn::Graph g;
  const auto nodes = model.similarity_graph(g, feature, caption);
  g.backward(nodes.score);
  SaliencyGradients out;
  out.score = g.value(nodes.score).item();
  const auto gi = g.grad(nodes.feature).values();
  out.image.assign(gi.begin(), gi.end());
  out.tokens = g.grad(nodes.tokens);
  return out;
}

SaliencyMap saliency(const vse::JointModel& model, std::span<const double> feature,
                     const vse::Caption& caption) {
  const SaliencyGradients grads = saliency_gradients(model, feature, caption);
  SaliencyMap map;
  map.words = caption;
  map.score = grads.score;

  map.image.resize(grads.image.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < grads.image.size(); ++i) {
    map.image[i] = std::abs(grads.image[i]);
    peak = std::max(peak, map.image[i]);
  }
  if (peak > 0) {
    for (double& v : map.image) v /= peak;
  } else {
    map.zero_image = true;
  }

  map.tokens.resize(grads.tokens.rows());
  double total = 0.0;
  for (std::size_t t = 0; t < grads.tokens.rows(); ++t) {
    double sq = 0.0;
    for (double v : grads.tokens.row_values(t)) sq += v * v;
    map.tokens[t] = std::sqrt(sq);
    total += map.tokens[t];
  }
  if (total > 0) {
    for (double& v : map.tokens) v /= total;
  } else {
    map.zero_tokens = true;
  }
  return map;
}

nlohmann::json SaliencyMap::to_json() const {
  nlohmann::json toks = nlohmann::json::array();
  for (std::size_t t = 0; t < words.size(); ++t) {
    toks.push_back({{"text", words[t]}, {"score", tokens[t]}});
  }
  nlohmann::json j{{"tokens", toks}, {"image_dims", image}, {"similarity", score}};
  if (zero_image || zero_tokens) {
    j["zero_gradient"] = {{"image", zero_image}, {"tokens", zero_tokens}};
  }
  return j;
}

}  // namespace vsec::tasks
