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


#ifndef VSEC_TASKS_FITB_HPP_
#define VSEC_TASKS_FITB_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/lingua.hpp"
#include "vsec/metrics.hpp"
#include "vsec/nn/adam.hpp"
#include "vsec/nn/gru.hpp"
#include "vsec/nn/mlp.hpp"
#include "vsec/vse/data.hpp"

namespace vsec::tasks {

enum class BlankKind { kNoun, kPreposition };

std::string_view to_string(BlankKind kind);

struct FitbSample {
  std::string caption_id;
  std::string image_id;
  std::vector<std::string> prefix;  // lowercase words before the blank
  std::vector<std::string> suffix;  // lowercase words after the blank
  std::string target;
  BlankKind kind = BlankKind::kNoun;
};

// One sample per noun or preposition token of every caption.
std::vector<FitbSample> build_fitb_dataset(std::span<const lingua::AnnotatedCaption> corpus);

struct FitbConfig {
  std::size_t word_dim = 16;
  std::size_t hidden_dim = 32;      // each GRU
  std::size_t mlp_hidden_dim = 64;
  std::size_t batch_size = 32;
  int epochs = 30;
  std::uint64_t seed = 1;
  nn::AdamConfig adam;

  void validate() const;
  nlohmann::json to_json() const;
};

// Prefix read forwards, suffix read backwards from the caption's end, both
// concatenated with the image feature and mapped to a word vector.
class FitbModel {
 public:
  // Word rows come from `vectors` where available and are otherwise drawn
  // at random on the unit sphere. The table stays fixed.
  FitbModel(const FitbConfig& config, vse::Vocabulary vocabulary,
            std::size_t image_dim, std::mt19937_64& rng,
            const vse::WordVectors* vectors = nullptr);

  const vse::Vocabulary& vocabulary() const { return vocabulary_; }
  const nn::Tensor& word_table() const { return table_; }
  std::size_t word_dim() const { return table_.cols(); }
  std::size_t image_dim() const { return image_dim_; }

  // B x word_dim predictions for a batch of samples.
  nn::Var predict(nn::Binder& bind, nn::Var images,
                  std::span<const FitbSample* const> samples);
  nn::Tensor predict(const vse::ImageFeatureStore& features,
                     std::span<const FitbSample* const> samples) const;

  std::vector<nn::Parameter*> parameters();
  void save(const std::filesystem::path& manifest) const;
  static FitbModel load(const std::filesystem::path& manifest);

 private:
  FitbModel() = default;

  vse::Vocabulary vocabulary_;
  nn::Tensor table_;
  std::size_t image_dim_ = 0;
  nn::Gru forward_;
  nn::Gru backward_;
  nn::Mlp head_;
};

struct FitbEpoch {
  int epoch = 0;
  double loss = 0.0;
};

// The vocabulary covers every word of the training samples.
FitbModel train_fitb(std::span<const FitbSample> samples,
                     const vse::ImageFeatureStore& features, const FitbConfig& config,
                     const vse::WordVectors* vectors = nullptr,
                     const std::function<void(const FitbEpoch&)>& on_epoch = {});

// A model with the same vocabulary and initialisation as train_fitb but no
// updates.
FitbModel untrained_fitb(std::span<const FitbSample> samples,
                         const vse::ImageFeatureStore& features,
                         const FitbConfig& config,
                         const vse::WordVectors* vectors = nullptr);

// 1-based rank of row `target` among rows [first, rows) of `table` by cosine
// similarity to `prediction`, ties counted against the target.
std::size_t cosine_rank(const nn::Tensor& table, std::span<const double> prediction,
                        std::size_t target, std::size_t first = 0);

// R@1/R@10 and rank statistics over all blanks, with noun and preposition
// breakdowns. Samples whose target is outside the vocabulary are skipped
// and counted in extra.skipped. Per-blank rankings go to `queries` when
// given.
metrics::MetricsReport fitb_eval(const FitbModel& model,
                                 std::span<const FitbSample> samples,
                                 const vse::ImageFeatureStore& features,
                                 std::initializer_list<std::size_t> ks = {1, 10},
                                 std::vector<metrics::RankingResult>* queries = nullptr);

}  // namespace vsec::tasks

#endif  // VSEC_TASKS_FITB_HPP_
