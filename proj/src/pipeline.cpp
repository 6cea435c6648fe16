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


#include "vsec/pipeline.hpp"

#include <spdlog/spdlog.h>

#include "vsec/error.hpp"

namespace vsec::pipeline {

knowledge::LexicalKB load_kb_for(const std::optional<std::filesystem::path>& dir,
                                 std::span<const lingua::CaptionRecord> corpus,
                                 knowledge::KnowledgeConfig config) {
  knowledge::ResourcePaths paths;
  if (dir) {
    paths = knowledge::ResourcePaths::in_directory(*dir);
  } else {
    paths.prep_overlap = knowledge::bundled_data_dir() / "prep_overlap.tsv";
    paths.irregular_plurals = knowledge::bundled_data_dir() / "irregular_plurals.tsv";
  }
  knowledge::LexicalKB kb = knowledge::load_kb(paths, config);
  if (!kb.has_frequencies() && !corpus.empty()) {
    const auto annotated = annotate_all(corpus, kb);
    kb.set_frequencies(lingua::count_frequencies(annotated));
    spdlog::info("no frequency lexicon; counted heads and prepositions over {} captions",
                 annotated.size());
  }
  return kb;
}

std::vector<lingua::AnnotatedCaption> annotate_all(
    std::span<const lingua::CaptionRecord> records, const knowledge::LexicalKB& kb) {
  std::vector<lingua::AnnotatedCaption> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(lingua::annotate_record(r, kb));
  return out;
}

std::vector<adversary::CandidateSet> candidate_sets(
    std::span<const lingua::AnnotatedCaption> captions, const knowledge::LexicalKB& kb,
    const adversary::GeneratorConfig& cfg) {
  std::map<std::string, std::vector<lingua::AnnotatedCaption>> by_image;
  for (const auto& c : captions) by_image[c.image_id].push_back(c);
  std::vector<adversary::CandidateSet> out;
  out.reserve(captions.size());
  for (const auto& c : captions) {
    out.push_back(adversary::build_candidate_set(c, by_image.at(c.image_id), kb, cfg));
  }
  return out;
}

CandidateIndex index_candidates(std::span<const adversary::AdversarialCaption> candidates) {
  CandidateIndex index;
  for (const auto& a : candidates) index[a.source_caption_id].push_back(a.words());
  return index;
}

CandidateIndex index_candidates(std::span<const adversary::CandidateSet> sets) {
  CandidateIndex index;
  for (const auto& s : sets) {
    auto& list = index[s.caption_id];
    for (const auto& a : s.candidates) list.push_back(a.words());
  }
  return index;
}

std::vector<vse::TrainingExample> training_examples(
    std::span<const lingua::AnnotatedCaption> captions,
    const vse::ImageFeatureStore& features, const CandidateIndex* candidates) {
  std::vector<vse::TrainingExample> out;
  out.reserve(captions.size());
  for (const auto& c : captions) {
    vse::TrainingExample e;
    e.caption = c.words();
    e.image = features.index(c.image_id);
    if (candidates != nullptr) {
      const auto it = candidates->find(c.caption_id);
      if (it != candidates->end()) e.negatives = it->second;
    }
    out.push_back(std::move(e));
  }
  return out;
}

vse::ValidationSet validation_set(std::span<const lingua::AnnotatedCaption> captions,
                                  const vse::ImageFeatureStore& features) {
  vse::ValidationSet v;
  std::map<std::string, std::size_t> slot;
  for (const auto& c : captions) {
    auto it = slot.find(c.image_id);
    if (it == slot.end()) {
      it = slot.emplace(c.image_id, v.images.size()).first;
      v.images.push_back(features.index(c.image_id));
    }
    v.captions.push_back(c.words());
    v.caption_owner.push_back(it->second);
  }
  return v;
}

}  // namespace vsec::pipeline
