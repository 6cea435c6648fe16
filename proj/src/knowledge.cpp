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


#include "vsec/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "tsv.hpp"
#include "vsec/error.hpp"

#ifndef VSEC_DATA_DIR
#define VSEC_DATA_DIR "data"
#endif

namespace vsec::knowledge {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool sibilant_ending(std::string_view s) {
  return ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") ||
         ends_with(s, "ch") || ends_with(s, "sh");
}

const std::vector<int> kNoSets;

}  // namespace

void KnowledgeConfig::validate() const {
  if (frequency_threshold <= 0) {
    throw std::invalid_argument("frequency_threshold must be positive");
  }
  if (!(concreteness_threshold > 0.0)) {
    throw std::invalid_argument("concreteness_threshold must be positive");
  }
}

ResourcePaths ResourcePaths::in_directory(const std::filesystem::path& dir) {
  auto optional = [&](const char* name) {
    auto p = dir / name;
    return std::filesystem::exists(p) ? p : std::filesystem::path{};
  };
  ResourcePaths paths;
  paths.hypernyms = optional("hypernyms.tsv");
  paths.synsets = optional("synsets.tsv");
  paths.concreteness = optional("concreteness.tsv");
  paths.frequency = optional("frequency.tsv");
  paths.prep_overlap = dir / "prep_overlap.tsv";
  paths.irregular_plurals = optional("irregular_plurals.tsv");
  if (!std::filesystem::exists(paths.prep_overlap)) {
    paths.prep_overlap = bundled_data_dir() / "prep_overlap.tsv";
  }
  if (paths.irregular_plurals.empty()) {
    paths.irregular_plurals = bundled_data_dir() / "irregular_plurals.tsv";
  }
  return paths;
}

LexicalKB::LexicalKB(KnowledgeConfig config) : config_(config) {
  config_.validate();
}

void LexicalKB::add_hypernym(const std::string& child,
                             const std::string& parent) {
  auto& ps = parents_[child];
  if (child != parent && std::find(ps.begin(), ps.end(), parent) == ps.end()) {
    ps.push_back(parent);
  }
}

void LexicalKB::add_synset(const std::string& lemma,
                           const std::string& synset_id) {
  synsets_[lemma].insert(synset_id);
}

void LexicalKB::set_concreteness(const std::string& lemma, double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw std::invalid_argument("score out of range: " + std::to_string(score));
  }
  auto [it, inserted] = concreteness_.emplace(lemma, score);
  if (!inserted && it->second != score) {
    throw std::invalid_argument("conflicting concreteness for '" + lemma + "'");
  }
}

void LexicalKB::set_frequency(const std::string& lemma, std::int64_t count) {
  if (count < 0) {
    throw std::invalid_argument("negative frequency for '" + lemma + "'");
  }
  frequency_[lemma] = count;
}

void LexicalKB::set_frequencies(
    const std::map<std::string, std::int64_t>& counts) {
  for (const auto& [lemma, count] : counts) set_frequency(lemma, count);
}

void LexicalKB::add_overlap(int set_id, const std::string& word) {
  auto& words = overlap_words_[set_id];
  if (std::find(words.begin(), words.end(), word) != words.end()) return;
  words.push_back(word);
  overlap_ids_[word].push_back(set_id);
}

void LexicalKB::add_irregular(const std::string& singular,
                              const std::string& plural) {
  singular_to_plural_[singular] = plural;
  plural_to_singular_[plural] = singular;
}

bool LexicalKB::reaches(std::string_view from, std::string_view to,
                        Relatedness mode) const {
  auto it = parents_.find(std::string(from));
  if (it == parents_.end()) return false;
  if (mode == Relatedness::kDirect) {
    return std::find(it->second.begin(), it->second.end(), to) !=
           it->second.end();
  }
  std::unordered_set<std::string> seen;
  std::deque<const std::string*> queue;
  for (const auto& p : it->second) queue.push_back(&p);
  while (!queue.empty()) {
    const std::string& node = *queue.front();
    queue.pop_front();
    if (node == to) return true;
    if (!seen.insert(node).second) continue;
    auto next = parents_.find(node);
    if (next == parents_.end()) continue;
    for (const auto& p : next->second) queue.push_back(&p);
  }
  return false;
}

bool LexicalKB::related(std::string_view a, std::string_view b,
                        Relatedness mode) const {
  if (a == b) return true;
  auto sa = synsets_.find(std::string(a));
  auto sb = synsets_.find(std::string(b));
  if (sa != synsets_.end() && sb != synsets_.end()) {
    for (const auto& id : sa->second) {
      if (sb->second.count(id)) return true;
    }
  }
  return reaches(a, b, mode) || reaches(b, a, mode);
}

std::optional<double> LexicalKB::concreteness(std::string_view lemma) const {
  auto it = concreteness_.find(std::string(lemma));
  if (it == concreteness_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> LexicalKB::frequency(std::string_view lemma) const {
  auto it = frequency_.find(std::string(lemma));
  if (it == frequency_.end()) return std::nullopt;
  return it->second;
}

bool LexicalKB::is_frequent(std::string_view lemma) const {
  const auto f = frequency(lemma);
  return f && *f > config_.frequency_threshold;
}

bool LexicalKB::is_frequent_concrete_head(std::string_view lemma) const {
  const auto c = concreteness(lemma);
  return is_frequent(lemma) && c && *c > config_.concreteness_threshold;
}

bool LexicalKB::is_known_noun(std::string_view lemma) const {
  const std::string key(lemma);
  return concreteness_.count(key) || synsets_.count(key) ||
         parents_.count(key) ||
         (frequency_.count(key) && !overlap_ids_.count(key));
}

bool LexicalKB::is_overlap_word(std::string_view word) const {
  return overlap_ids_.count(std::string(word)) > 0;
}

const std::vector<int>& LexicalKB::overlap_sets_of(
    std::string_view word) const {
  auto it = overlap_ids_.find(std::string(word));
  return it == overlap_ids_.end() ? kNoSets : it->second;
}

std::vector<std::string> LexicalKB::overlap_set(int set_id) const {
  auto it = overlap_words_.find(set_id);
  if (it == overlap_words_.end()) return {};
  return it->second;
}

std::vector<int> LexicalKB::overlap_set_ids() const {
  std::vector<int> ids;
  for (const auto& [id, words] : overlap_words_) ids.push_back(id);
  return ids;
}

bool LexicalKB::prepositions_conflict(std::string_view a,
                                      std::string_view b) const {
  if (a == b) return true;
  const auto& ia = overlap_sets_of(a);
  const auto& ib = overlap_sets_of(b);
  for (int id : ia) {
    if (std::find(ib.begin(), ib.end(), id) != ib.end()) return true;
  }
  return false;
}

std::vector<std::string> LexicalKB::frequent_concrete_heads() const {
  std::vector<std::string> out;
  for (const auto& [lemma, score] : concreteness_) {
    if (is_frequent_concrete_head(lemma)) out.push_back(lemma);
  }
  return out;
}

std::vector<std::string> LexicalKB::frequent_prepositions() const {
  std::set<std::string> words;
  for (const auto& [word, ids] : overlap_ids_) {
    if (is_frequent(word)) words.insert(word);
  }
  return {words.begin(), words.end()};
}

std::vector<std::string> LexicalKB::lemmas() const {
  std::set<std::string> all;
  for (const auto& [k, v] : concreteness_) all.insert(k);
  for (const auto& [k, v] : frequency_) all.insert(k);
  for (const auto& [k, v] : synsets_) all.insert(k);
  for (const auto& [k, v] : parents_) {
    all.insert(k);
    all.insert(v.begin(), v.end());
  }
  return {all.begin(), all.end()};
}

std::string LexicalKB::pluralize(std::string_view noun) const {
  const std::string word = detail::to_lower(noun);
  if (auto it = singular_to_plural_.find(word);
      it != singular_to_plural_.end()) {
    return it->second;
  }
  if (word.empty()) return word;
  if (sibilant_ending(word)) return word + "es";
  if (word.size() >= 2 && word.back() == 'y' &&
      !is_vowel(word[word.size() - 2])) {
    return word.substr(0, word.size() - 1) + "ies";
  }
  return word + "s";
}

std::string LexicalKB::singularize(std::string_view noun) const {
  const std::string word = detail::to_lower(noun);
  if (auto it = plural_to_singular_.find(word);
      it != plural_to_singular_.end()) {
    return it->second;
  }
  if (singular_to_plural_.count(word)) return word;

  // Candidate stems in fallback-preference order.
  std::vector<std::string> candidates;
  if (ends_with(word, "ies") && word.size() > 3) {
    candidates.push_back(word.substr(0, word.size() - 3) + "y");
  }
  if (ends_with(word, "es") && word.size() > 2) {
    const std::string stem = word.substr(0, word.size() - 2);
    if (sibilant_ending(stem)) candidates.push_back(stem);
  }
  if (ends_with(word, "s") && !ends_with(word, "ss") && word.size() > 1) {
    candidates.push_back(word.substr(0, word.size() - 1));
  }
  for (const auto& c : candidates) {
    if (is_known_noun(c)) return c;
  }
  if (is_known_noun(word) || candidates.empty()) return word;
  // Unknown word: "-ses" is more often "-se" + s (horses, vases) than a
  // sibilant stem, so prefer stripping a single s there.
  if (ends_with(word, "ses") && !ends_with(word, "sses")) {
    return word.substr(0, word.size() - 1);
  }
  return candidates.front();
}

std::filesystem::path bundled_data_dir() {
  if (const char* env = std::getenv("VSEC_DATA_DIR")) return env;
  return VSEC_DATA_DIR;
}

LexicalKB load_kb(const ResourcePaths& paths, KnowledgeConfig config) {
  LexicalKB kb(config);
  using detail::fail_at;
  using detail::read_tsv;

  if (!paths.hypernyms.empty()) {
    for (const auto& row : read_tsv(paths.hypernyms, 2)) {
      if (row.fields[0] == row.fields[1]) {
        fail_at(paths.hypernyms, row.line, "self-loop hypernym edge");
      }
      kb.add_hypernym(detail::to_lower(row.fields[0]),
                      detail::to_lower(row.fields[1]));
    }
  }
  if (!paths.synsets.empty()) {
    for (const auto& row : read_tsv(paths.synsets, 2)) {
      kb.add_synset(detail::to_lower(row.fields[0]), row.fields[1]);
    }
  }
  if (!paths.concreteness.empty()) {
    for (const auto& row : read_tsv(paths.concreteness, 2)) {
      const double score =
          detail::parse_double(row.fields[1], paths.concreteness, row.line);
      if (!(score >= 0.0 && score <= 1.0)) {
        fail_at(paths.concreteness, row.line,
                "score out of range: " + row.fields[1]);
      }
      const std::string lemma = detail::to_lower(row.fields[0]);
      const auto prior = kb.concreteness(lemma);
      if (prior && *prior != score) {
        fail_at(paths.concreteness, row.line,
                "conflicting duplicate score for '" + lemma + "'");
      }
      kb.set_concreteness(lemma, score);
    }
  }
  if (!paths.frequency.empty()) {
    for (const auto& row : read_tsv(paths.frequency, 2)) {
      const long long count =
          detail::parse_int(row.fields[1], paths.frequency, row.line);
      if (count < 0) fail_at(paths.frequency, row.line, "negative count");
      kb.set_frequency(detail::to_lower(row.fields[0]), count);
    }
  }
  if (!paths.prep_overlap.empty()) {
    for (const auto& row : read_tsv(paths.prep_overlap, 2)) {
      const long long id =
          detail::parse_int(row.fields[0], paths.prep_overlap, row.line);
      kb.add_overlap(static_cast<int>(id), detail::to_lower(row.fields[1]));
    }
  }
  if (!paths.irregular_plurals.empty()) {
    for (const auto& row : read_tsv(paths.irregular_plurals, 2)) {
      kb.add_irregular(detail::to_lower(row.fields[0]),
                       detail::to_lower(row.fields[1]));
    }
  }
  return kb;
}

}  // namespace vsec::knowledge
