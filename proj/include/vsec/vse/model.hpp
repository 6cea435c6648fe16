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


#ifndef VSEC_VSE_MODEL_HPP_
#define VSEC_VSE_MODEL_HPP_

#include <cstddef>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/nn/binder.hpp"
#include "vsec/nn/gru.hpp"
#include "vsec/nn/tensor.hpp"
#include "vsec/vse/data.hpp"

namespace vsec::vse {

enum class EncoderKind { kAverage, kRecurrent };

std::string_view to_string(EncoderKind kind);
// Throws std::invalid_argument for anything but "average" / "recurrent".
EncoderKind parse_encoder(std::string_view name);

struct ModelConfig {
  std::size_t word_dim = 16;
  std::size_t hidden_dim = 32;
  std::size_t joint_dim = 32;
  EncoderKind encoder = EncoderKind::kRecurrent;
  bool bidirectional = true;
  // Unit-normalise both joint vectors so similarity is a cosine.
  bool normalize = true;
  bool train_embeddings = true;

  void validate() const;
  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

using Caption = std::vector<std::string>;

// Graph nodes of a caption batch.
struct CaptionNodes {
  nn::Var joint;   // B x joint_dim
  nn::Var tokens;  // one word-embedding row per token, captions back to back
  std::vector<std::size_t> offsets;  // first token row of each caption
};

// Image projection W_i, caption encoder (word table plus optional GRU) and
// caption projection W_c.
class JointModel {
 public:
  JointModel(ModelConfig config, Vocabulary vocabulary, std::size_t image_dim,
             std::mt19937_64& rng);

  const ModelConfig& config() const { return config_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::size_t image_dim() const { return image_dim_; }
  std::size_t encoder_dim() const;

  // Overwrites the rows of words present in `wv`; returns how many matched.
  std::size_t set_word_vectors(const WordVectors& wv);
  // Current word table, one row per vocabulary entry.
  WordVectors word_vectors() const;

  // Trainable parameters (the word table only when train_embeddings).
  std::vector<nn::Parameter*> parameters();

  // B x image_dim features -> B x joint_dim.
  nn::Var encode_images(nn::Binder& bind, nn::Var features);
  // Throws std::invalid_argument on an empty caption.
  CaptionNodes encode_captions(nn::Binder& bind,
                               std::span<const std::vector<std::size_t>> ids);
  CaptionNodes encode_captions(nn::Binder& bind, std::span<const Caption> captions);

  // Gradient-free conveniences.
  nn::Tensor embed_images(const nn::Tensor& features) const;
  nn::Tensor embed_captions(std::span<const Caption> captions,
                            std::size_t chunk = 512) const;
  std::vector<double> encode_image(std::span<const double> feature) const;
  std::vector<double> encode_caption(const Caption& caption) const;
  double similarity(std::span<const double> feature, const Caption& caption) const;

  // s(f, c) on `g` with constant parameters, for gradients with respect to
  // the feature and the caption's word-embedding rows.
  struct InputGraph {
    nn::Var feature;  // 1 x image_dim
    nn::Var tokens;   // caption length x word_dim
    nn::Var score;    // 1 x 1
  };
  InputGraph similarity_graph(nn::Graph& g, std::span<const double> feature,
                              const Caption& caption) const;

  void save(const std::filesystem::path& manifest,
            nlohmann::json meta = nlohmann::json::object()) const;
  static JointModel load(const std::filesystem::path& manifest);

  // Raw parameter access for tests and diagnostics.
  nn::Parameter& word_table() { return embedding_; }
  nn::Parameter& image_projection() { return w_image_; }
  nn::Parameter& caption_projection() { return w_caption_; }

 private:
  // Const entry point for untracked evaluation; nothing is mutated.
  JointModel& self() const { return const_cast<JointModel&>(*this); }

  ModelConfig config_;
  Vocabulary vocabulary_;
  std::size_t image_dim_ = 0;
  nn::Parameter embedding_;
  nn::Parameter w_image_;
  nn::Parameter w_caption_;
  nn::Gru forward_;
  nn::Gru backward_;
};

}  // namespace vsec::vse

#endif  // VSEC_VSE_MODEL_HPP_
