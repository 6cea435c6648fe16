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


#ifndef VSEC_VSE_TRAIN_HPP_
#define VSEC_VSE_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/nn/adam.hpp"
#include "vsec/vse/data.hpp"
#include "vsec/vse/loss.hpp"
#include "vsec/vse/model.hpp"

namespace vsec::vse {

struct TrainingConfig {
  double margin = 0.2;
  // Adversarial candidates sampled per pair and step (VSE-C only).
  std::size_t intra_samples = 8;
  std::size_t batch_size = 32;
  int epochs = 30;
  std::uint64_t seed = 1;
  LossKind loss = LossKind::kVseC;
  ModelConfig model;
  nn::AdamConfig adam;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
  nlohmann::json to_json() const;
};

struct TrainingExample {
  Caption caption;
  std::size_t image = 0;  // row in the feature store
  // Intra-pair candidates; may be empty.
  std::vector<Caption> negatives;
};

// Held-out image-to-caption retrieval used for per-epoch monitoring.
struct ValidationSet {
  std::vector<std::size_t> images;          // feature rows
  std::vector<Caption> captions;
  std::vector<std::size_t> caption_owner;   // index into `images`
};

struct EpochLog {
  int epoch = 0;
  double loss = 0.0;  // mean per-step loss
  double learning_rate = 0.0;
  std::size_t steps = 0;
  std::optional<double> validation_r1;
};

struct TrainingData {
  std::span<const TrainingExample> examples;
  const ImageFeatureStore* features = nullptr;
  const ValidationSet* validation = nullptr;
  // Optional initial word vectors.
  const WordVectors* word_vectors = nullptr;
};

struct TrainingResult {
  JointModel model;
  std::vector<EpochLog> log;
};

using EpochCallback = std::function<void(const EpochLog&)>;

// Shuffled mini-batches, Adam, deterministic given config.seed. Throws
// NumericError if the loss becomes non-finite, DataError on bad inputs.
TrainingResult train(const TrainingData& data, const TrainingConfig& config,
                     const EpochCallback& on_epoch = {});

// Vocabulary over every caption and candidate in `examples`, in order of
// first appearance.
Vocabulary build_vocabulary(std::span<const TrainingExample> examples);

// Image-to-caption R@k (percentage) over a validation set.
double validation_recall(const JointModel& model,
                         const ImageFeatureStore& features,
                         const ValidationSet& set, std::size_t k = 1);

}  // namespace vsec::vse

#endif  // VSEC_VSE_TRAIN_HPP_
