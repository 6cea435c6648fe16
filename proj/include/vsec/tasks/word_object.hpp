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


#ifndef VSEC_TASKS_WORD_OBJECT_HPP_
#define VSEC_TASKS_WORD_OBJECT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"
#include "vsec/metrics.hpp"
#include "vsec/nn/adam.hpp"
#include "vsec/nn/mlp.hpp"
#include "vsec/vse/data.hpp"

namespace vsec::tasks {

struct WordObjectImage {
  std::string image_id;
  std::vector<std::string> positives;  // sorted
  std::vector<std::string> negatives;  // sorted
};

struct WordObjectDataset {
  std::vector<WordObjectImage> images;  // first-appearance order
  std::vector<std::string> objects;     // every frequent head in the corpus
  std::size_t excluded_images = 0;      // images without a frequent head

  nlohmann::json to_json() const;
};

// Positives are the frequent noun-phrase heads of an image's captions;
// negatives are the corpus's frequent heads unrelated to every positive.
WordObjectDataset build_word_object_dataset(
    std::span<const lingua::AnnotatedCaption> corpus,
    const knowledge::LexicalKB& kb,
    knowledge::Relatedness relatedness = knowledge::Relatedness::kClosure);

// Word vectors keyed by word, and image features keyed by image id. Both
// must outlive this object.
class WordObjectInputs {
 public:
  WordObjectInputs(const vse::WordVectors& words,
                   const vse::ImageFeatureStore& features);

  bool has_word(std::string_view word) const;
  // Throws DataError when `word` has no vector.
  std::span<const double> word(std::string_view word) const;
  std::size_t word_dim() const { return words_->vectors.cols(); }
  const vse::ImageFeatureStore& features() const { return *features_; }

 private:
  const vse::WordVectors* words_;
  const vse::ImageFeatureStore* features_;
  std::unordered_map<std::string, std::size_t> rows_;
};

// Flattened outer product v_W(w) v_I(img)^T as a 1 x (dw * di) row.
nn::Tensor interaction(std::span<const double> word, std::span<const double> image);

struct ScorerConfig {
  std::size_t hidden = 64;
  std::size_t batch_size = 32;
  int epochs = 20;
  std::uint64_t seed = 1;
  nn::AdamConfig adam;

  void validate() const;
  nlohmann::json to_json() const;
};

class InteractionScorer {
 public:
  InteractionScorer(std::size_t word_dim, std::size_t image_dim,
                    std::size_t hidden, std::mt19937_64& rng);

  std::size_t word_dim() const { return word_dim_; }
  std::size_t image_dim() const { return image_dim_; }

  // Logits (B x 1) for stacked interaction rows (B x dw*di).
  nn::Var logits(nn::Binder& bind, nn::Var interactions);
  // Mean binary cross-entropy of the logits against 0/1 labels.
  nn::Var loss(nn::Binder& bind, nn::Var interactions, std::span<const double> labels);

  double score(std::span<const double> word, std::span<const double> image) const;

  std::vector<nn::Parameter*> parameters() { return mlp_.parameters(); }
  void save(const std::filesystem::path& manifest) const;
  static InteractionScorer load(const std::filesystem::path& manifest);

 private:
  InteractionScorer() = default;

  std::size_t word_dim_ = 0;
  std::size_t image_dim_ = 0;
  nn::Mlp mlp_;
};

struct LabelledPair {
  std::size_t image = 0;  // row in the feature store
  std::string word;
  double label = 0.0;
};

// One example per (image, positive) and (image, negative) with a word
// vector. Throws DataError when no negative pair survives.
std::vector<LabelledPair> labelled_pairs(const WordObjectDataset& dataset,
                                         const WordObjectInputs& inputs);

struct ScorerEpoch {
  int epoch = 0;
  double loss = 0.0;
};

InteractionScorer train_interaction_scorer(
    const WordObjectDataset& dataset, const WordObjectInputs& inputs,
    const ScorerConfig& config,
    const std::function<void(const ScorerEpoch&)>& on_epoch = {});

// Each image's positives and negatives ranked by score; one query per image
// with at least one positive.
std::vector<metrics::RankingResult> word_retrieval_rankings(
    const InteractionScorer& scorer, const WordObjectDataset& dataset,
    const WordObjectInputs& inputs);

double word_retrieval_map(const InteractionScorer& scorer,
                          const WordObjectDataset& dataset,
                          const WordObjectInputs& inputs);

// MAP plus R@k and rank statistics of the best positive.
metrics::MetricsReport word_retrieval_report(const InteractionScorer& scorer,
                                             const WordObjectDataset& dataset,
                                             const WordObjectInputs& inputs);

}  // namespace vsec::tasks

#endif  // VSEC_TASKS_WORD_OBJECT_HPP_
