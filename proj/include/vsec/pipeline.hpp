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


#ifndef VSEC_PIPELINE_HPP_
#define VSEC_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsec/adversary.hpp"
#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"
#include "vsec/vse/data.hpp"
#include "vsec/vse/train.hpp"

// Glue shared by the command-line tool and the end-to-end experiments.
namespace vsec::pipeline {

// Resources from `dir` (bundled overlap and plural tables when absent).
// Without a frequency lexicon, counts come from `corpus` after a first
// annotation pass.
knowledge::LexicalKB load_kb_for(const std::optional<std::filesystem::path>& dir,
                                 std::span<const lingua::CaptionRecord> corpus,
                                 knowledge::KnowledgeConfig config = {});

std::vector<lingua::AnnotatedCaption> annotate_all(
    std::span<const lingua::CaptionRecord> records, const knowledge::LexicalKB& kb);

// One candidate set per caption; the other captions of the same image are
// never emitted as candidates.
std::vector<adversary::CandidateSet> candidate_sets(
    std::span<const lingua::AnnotatedCaption> captions, const knowledge::LexicalKB& kb,
    const adversary::GeneratorConfig& cfg);

// Candidate word sequences keyed by source caption id.
using CandidateIndex = std::map<std::string, std::vector<vse::Caption>>;

CandidateIndex index_candidates(std::span<const adversary::AdversarialCaption> candidates);
CandidateIndex index_candidates(std::span<const adversary::CandidateSet> sets);

// Pairs every caption with its image row; attaches candidates when given.
// Throws DataError when an image id has no feature vector.
std::vector<vse::TrainingExample> training_examples(
    std::span<const lingua::AnnotatedCaption> captions,
    const vse::ImageFeatureStore& features, const CandidateIndex* candidates = nullptr);

// Images in first-appearance order with their captions.
vse::ValidationSet validation_set(std::span<const lingua::AnnotatedCaption> captions,
                                  const vse::ImageFeatureStore& features);

}  // namespace vsec::pipeline

#endif  // VSEC_PIPELINE_HPP_
