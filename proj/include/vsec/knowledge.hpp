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


#ifndef VSEC_KNOWLEDGE_HPP_
#define VSEC_KNOWLEDGE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vsec::knowledge {

struct KnowledgeConfig {
  std::int64_t frequency_threshold = 200;
  double concreteness_threshold = 0.6;

  // Throws std::invalid_argument unless both thresholds are positive.
  void validate() const;
};

// How far hypernymy is followed when deciding whether two lemmas are related.
enum class Relatedness {
  kClosure,  // any number of hypernym steps
  kDirect,   // a single hypernym edge in either direction
};

// Locations of the TSV resources. `frequency` may be empty, in which case
// counts are expected to be supplied later from a caption corpus.
struct ResourcePaths {
  std::filesystem::path hypernyms;
  std::filesystem::path synsets;
  std::filesystem::path concreteness;
  std::filesystem::path frequency;
  std::filesystem::path prep_overlap;
  std::filesystem::path irregular_plurals;

  // Standard file names inside `dir`. Missing optional files are left empty.
  static ResourcePaths in_directory(const std::filesystem::path& dir);
};

// Lexical resources used by the annotator and the adversary generators.
// Populate through the add_/set_ members (or load_kb) and treat as immutable
// afterwards; all queries are const and safe for concurrent readers.
class LexicalKB {
 public:
  LexicalKB() = default;
  explicit LexicalKB(KnowledgeConfig config);

  const KnowledgeConfig& config() const { return config_; }

  void add_hypernym(const std::string& child, const std::string& parent);
  void add_synset(const std::string& lemma, const std::string& synset_id);
  // Throws std::invalid_argument for scores outside [0,1] or a second,
  // different score for the same lemma.
  void set_concreteness(const std::string& lemma, double score);
  void set_frequency(const std::string& lemma, std::int64_t count);
  void set_frequencies(const std::map<std::string, std::int64_t>& counts);
  void add_overlap(int set_id, const std::string& word);
  void add_irregular(const std::string& singular, const std::string& plural);

  // Identical lemmas, shared synsets, or hypernymy in either direction.
  bool related(std::string_view a, std::string_view b,
               Relatedness mode = Relatedness::kClosure) const;
  bool is_frequent(std::string_view lemma) const;
  bool is_frequent_concrete_head(std::string_view lemma) const;
  bool prepositions_conflict(std::string_view a, std::string_view b) const;

  std::string pluralize(std::string_view noun) const;
  std::string singularize(std::string_view noun) const;

  std::optional<double> concreteness(std::string_view lemma) const;
  std::optional<std::int64_t> frequency(std::string_view lemma) const;
  // Present in any lexicon that only lists nouns (concreteness, frequency,
  // synsets, hypernym graph).
  bool is_known_noun(std::string_view lemma) const;
  bool is_overlap_word(std::string_view word) const;

  const std::vector<int>& overlap_sets_of(std::string_view word) const;
  std::vector<std::string> overlap_set(int set_id) const;
  std::vector<int> overlap_set_ids() const;
  std::size_t overlap_set_count() const { return overlap_words_.size(); }

  // Sorted lists of replacement vocabularies.
  std::vector<std::string> frequent_concrete_heads() const;
  std::vector<std::string> frequent_prepositions() const;
  std::vector<std::string> lemmas() const;
  bool has_frequencies() const { return !frequency_.empty(); }

  const std::map<std::string, std::string>& irregular_plurals() const {
    return singular_to_plural_;
  }

 private:
  bool reaches(std::string_view from, std::string_view to,
               Relatedness mode) const;

  KnowledgeConfig config_;
  std::unordered_map<std::string, std::vector<std::string>> parents_;
  std::unordered_map<std::string, std::set<std::string>> synsets_;
  std::map<std::string, double> concreteness_;
  std::map<std::string, std::int64_t> frequency_;
  std::map<int, std::vector<std::string>> overlap_words_;
  std::unordered_map<std::string, std::vector<int>> overlap_ids_;
  std::map<std::string, std::string> singular_to_plural_;
  std::map<std::string, std::string> plural_to_singular_;
};

// Reads every resource named in `paths`. Errors carry "file:line: reason".
LexicalKB load_kb(const ResourcePaths& paths, KnowledgeConfig config = {});

// Directory holding the bundled overlap table and irregular plurals.
std::filesystem::path bundled_data_dir();

}  // namespace vsec::knowledge

#endif  // VSEC_KNOWLEDGE_HPP_
