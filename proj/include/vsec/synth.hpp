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


#ifndef VSEC_SYNTH_HPP_
#define VSEC_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"
#include "vsec/vse/data.hpp"

namespace vsec::synth {

struct SceneSpec {
  std::vector<std::string> objects = {"dog",   "cat",      "chair",    "table",
                                      "horse", "bus",      "apple",    "umbrella",
                                      "elephant", "box",   "person",   "bench"};
  // Drawn from distinct overlap sets so every pair is interchangeable-free.
  std::vector<std::string> relations = {"on",     "under",  "in",      "with",
                                        "behind", "near",   "around",  "through",
                                        "against", "outside"};
  int max_count = 5;
  std::size_t object_dim = 8;
  std::size_t relation_dim = 6;
  double sigma = 0.1;
  // Amplitude of each block before noise. Object identity dominates, as
  // it does in pooled CNN features; counts and relations are subtler.
  double object_scale = 1.0;
  double count_scale = 0.5;
  double relation_scale = 0.5;
  std::size_t captions_per_image = 5;
  std::uint64_t seed = 7;

  // Throws std::invalid_argument (fewer than 4 objects, empty relations,
  // zero dimensions, negative noise, max_count < 2).
  void validate() const;
  nlohmann::json to_json() const;
  static SceneSpec from_json(const nlohmann::json& j);
  // count one-hot, object, relation, count one-hot, object
  std::size_t feature_dim() const;
};

struct Scene {
  std::string image_id;
  int count1 = 1;
  std::string object1;
  std::string relation;
  int count2 = 1;
  std::string object2;
  bool train = true;

  nlohmann::json to_json() const;
};

// Resource tables of the matching lexical knowledge base.
struct SynthLexicon {
  std::map<std::string, std::int64_t> frequency;
  std::map<std::string, double> concreteness;
  std::vector<std::pair<int, std::string>> overlap;
  std::vector<std::pair<std::string, std::string>> irregulars;

  knowledge::LexicalKB to_kb(knowledge::KnowledgeConfig config = {}) const;
};

struct SynthCorpus {
  SceneSpec spec;
  std::vector<Scene> scenes;
  std::vector<lingua::CaptionRecord> train_captions;
  std::vector<lingua::CaptionRecord> test_captions;
  vse::ImageFeatureStore features;
  std::map<std::string, std::vector<double>> object_vectors;
  std::map<std::string, std::vector<double>> relation_vectors;
  SynthLexicon lexicon;
};

// Deterministic for a given spec (including its seed).
SynthCorpus generate(const SceneSpec& spec, std::size_t n_train,
                     std::size_t n_test);

// Feature vector of a scene, noise excluded.
std::vector<double> clean_feature(const SynthCorpus& corpus, const Scene& scene);

// Caption `variant` of a scene: count 1 alternates between an article and
// "one", larger counts between number words and digits.
std::string render_caption(const Scene& scene, std::size_t variant,
                           const knowledge::LexicalKB& kb);

// Writes captions_train.jsonl, captions_test.jsonl, scenes.jsonl,
// features.tsv (or features.bin), spec.json and kb/*.tsv.
void write_corpus(const std::filesystem::path& dir, const SynthCorpus& corpus,
                  bool binary_features = false);

}  // namespace vsec::synth

#endif  // VSEC_SYNTH_HPP_
