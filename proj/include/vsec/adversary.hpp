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


#ifndef VSEC_ADVERSARY_HPP_
#define VSEC_ADVERSARY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"

namespace vsec::adversary {

enum class Kind { kNoun, kNumeral, kShuffle, kPreposition };

std::string_view to_string(Kind kind);
Kind parse_kind(std::string_view name);
// Shuffles and preposition swaps are both reported as "relation".
bool is_relation(Kind kind);

struct Edit {
  std::vector<std::size_t> positions;
  std::vector<std::string> from;
  std::vector<std::string> to;
};

struct AdversarialCaption {
  std::string source_caption_id;
  std::string image_id;
  Kind kind = Kind::kNoun;
  std::vector<lingua::Token> tokens;
  Edit edit;

  std::vector<std::string> words() const;
  std::string text() const;
};

struct CandidateSet {
  std::string caption_id;
  std::vector<AdversarialCaption> candidates;

  std::size_t size() const { return candidates.size(); }
  bool empty() const { return candidates.empty(); }
};

struct GeneratorConfig {
  std::size_t noun_cap = 20;
  std::size_t numeral_cap = 20;
  // Shared by shuffles and preposition swaps.
  std::size_t relation_cap = 20;
  std::size_t max_candidates = 1000;
  std::vector<int> numeral_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  // When set, the enumeration order of shuffles is permuted with this seed.
  std::optional<std::uint64_t> shuffle_seed;
  // Words whose indefinite article defies the first-letter rule,
  // e.g. {"hour", "an"}, {"unicorn", "a"}.
  std::map<std::string, std::string> article_exceptions;
};

// "a" or "an" for the word that follows the article.
std::string indefinite_article(std::string_view next_word,
                               const GeneratorConfig& cfg);

std::vector<AdversarialCaption> gen_noun(const lingua::AnnotatedCaption& c,
                                         const knowledge::LexicalKB& kb,
                                         const GeneratorConfig& cfg);
std::vector<AdversarialCaption> gen_numeral(const lingua::AnnotatedCaption& c,
                                            const knowledge::LexicalKB& kb,
                                            const GeneratorConfig& cfg);
std::vector<AdversarialCaption> gen_shuffle(const lingua::AnnotatedCaption& c,
                                            const knowledge::LexicalKB& kb,
                                            const GeneratorConfig& cfg);
std::vector<AdversarialCaption> gen_preposition(
    const lingua::AnnotatedCaption& c, const knowledge::LexicalKB& kb,
    const GeneratorConfig& cfg);
// Shuffles and preposition swaps interleaved, truncated to relation_cap.
std::vector<AdversarialCaption> gen_relation(const lingua::AnnotatedCaption& c,
                                             const knowledge::LexicalKB& kb,
                                             const GeneratorConfig& cfg);

// Union of all generators, interleaved round-robin by kind, deduplicated,
// without any candidate equal to one of `positives` (the captions of the
// same image), truncated to max_candidates.
CandidateSet build_candidate_set(
    const lingua::AnnotatedCaption& c,
    std::span<const lingua::AnnotatedCaption> positives,
    const knowledge::LexicalKB& kb, const GeneratorConfig& cfg);

// Uniform sample without replacement of min(n, |s|) candidates.
std::vector<AdversarialCaption> sample_negatives(const CandidateSet& s,
                                                 std::size_t n,
                                                 std::mt19937_64& rng);

// adversarial.jsonl
void write_adversarial(const std::filesystem::path& path,
                       std::span<const AdversarialCaption> captions);
std::vector<AdversarialCaption> read_adversarial(
    const std::filesystem::path& path);

}  // namespace vsec::adversary

#endif  // VSEC_ADVERSARY_HPP_
