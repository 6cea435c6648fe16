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


#ifndef VSEC_TASKS_ATTACK_HPP_
#define VSEC_TASKS_ATTACK_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vsec/adversary.hpp"
#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"
#include "vsec/metrics.hpp"
#include "vsec/nn/tensor.hpp"
#include "vsec/vse/data.hpp"
#include "vsec/vse/model.hpp"

namespace vsec::tasks {

// Scores every (image, caption) combination.
class CaptionImageScorer {
 public:
  virtual ~CaptionImageScorer() = default;
  // images.size() x captions.size() matrix; `images` are feature rows.
  virtual nn::Tensor score(std::span<const std::size_t> images,
                           std::span<const vse::Caption> captions) const = 0;
};

// Joint-embedding similarity.
class JointScorer : public CaptionImageScorer {
 public:
  JointScorer(const vse::JointModel& model, const vse::ImageFeatureStore& features)
      : model_(model), features_(features) {}
  nn::Tensor score(std::span<const std::size_t> images,
                   std::span<const vse::Caption> captions) const override;

 private:
  const vse::JointModel& model_;
  const vse::ImageFeatureStore& features_;
};

struct AttackSpec {
  std::size_t noun = 20;
  std::size_t numeral = 20;
  std::size_t relation = 20;
  std::vector<std::size_t> ks = {1, 10};
  // Generator settings other than the per-kind caps.
  adversary::GeneratorConfig generator;
};

// Adversaries of one caption, already filtered against its image's
// positives and truncated to the per-kind counts.
struct CaptionAttack {
  std::size_t caption = 0;  // index into the evaluated caption list
  std::vector<adversary::AdversarialCaption> noun;
  std::vector<adversary::AdversarialCaption> numeral;
  std::vector<adversary::AdversarialCaption> relation;
};

struct ImageGroup {
  std::string image_id;
  std::size_t feature_row = 0;
  std::vector<std::size_t> captions;  // indices into the caption list
};

struct AttackPlan {
  std::vector<ImageGroup> images;
  std::vector<CaptionAttack> attacks;  // parallel to retained captions
  std::vector<std::size_t> retained;   // caption indices kept
  std::vector<std::string> excluded;   // caption ids dropped
};

// Generates and filters adversaries. Captions that cannot supply every
// nonzero per-kind count are dropped with a warning, from the base set too.
AttackPlan plan_attack(std::span<const lingua::AnnotatedCaption> captions,
                       const vse::ImageFeatureStore& features,
                       const knowledge::LexicalKB& kb, const AttackSpec& spec);

struct AttackResult {
  metrics::MetricsReport report;  // breakdown: clean, all, noun, numeral, relation
  std::size_t candidates_per_image = 0;  // base set plus own adversaries, when uniform
  std::vector<std::vector<metrics::RankingResult>> per_condition;  // same order as names
  std::vector<std::string> condition_names;
};

// Image-to-caption retrieval over the retained base set plus, per
// condition, the adversaries of the query image's own captions.
AttackResult attack_eval(const CaptionImageScorer& scorer,
                         std::span<const lingua::AnnotatedCaption> captions,
                         const AttackPlan& plan, const AttackSpec& spec);

AttackResult attack_eval(const CaptionImageScorer& scorer,
                         std::span<const lingua::AnnotatedCaption> captions,
                         const vse::ImageFeatureStore& features,
                         const knowledge::LexicalKB& kb, const AttackSpec& spec);

// Images with at least one plural noun phrase; only numerals governing a
// plural head are manipulated, up to spec.numeral per caption. Report
// breakdown: clean and numeral. Throws DataError when no caption has a
// plural.
AttackResult plural_split_eval(const CaptionImageScorer& scorer,
                               std::span<const lingua::AnnotatedCaption> captions,
                               const vse::ImageFeatureStore& features,
                               const knowledge::LexicalKB& kb,
                               const AttackSpec& spec);

// Numeral adversaries restricted to numerals whose phrase head is plural.
std::vector<adversary::AdversarialCaption> plural_numeral_adversaries(
    const lingua::AnnotatedCaption& caption, const knowledge::LexicalKB& kb,
    const adversary::GeneratorConfig& cfg);

// One CSV row per query and condition: condition,query,best_rank,candidates
void write_query_csv(const std::filesystem::path& path, const AttackResult& r);

}  // namespace vsec::tasks

#endif  // VSEC_TASKS_ATTACK_HPP_
