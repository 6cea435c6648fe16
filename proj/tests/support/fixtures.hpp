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


#ifndef VSEC_TESTS_SUPPORT_FIXTURES_HPP_
#define VSEC_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vsec/knowledge.hpp"
#include "vsec/lingua.hpp"

namespace vsec::testing {

inline std::filesystem::path fixture_dir() { return VSEC_TEST_FIXTURES; }

inline knowledge::LexicalKB fixture_kb(knowledge::KnowledgeConfig config = {}) {
  return knowledge::load_kb(
      knowledge::ResourcePaths::in_directory(fixture_dir() / "kb"), config);
}

// A templated caption whose tags, heads and numerals are known by
// construction.
struct TemplatedCaption {
  std::string text;
  std::vector<lingua::TaggedToken> tags;
  std::vector<std::string> heads;
  std::vector<std::pair<std::size_t, int>> numerals;
};

namespace detail_fixture {

struct Builder {
  TemplatedCaption c;

  void word(const std::string& w, const char* pos) {
    c.text += (c.text.empty() || w == "." ? "" : " ") + w;
    c.tags.push_back({w, pos});
  }

  // Determiner for `count` followed by optional adjective and the object,
  // inflected for number.
  void phrase(int count, const std::string& adj, const std::string& lemma,
              const std::string& plural, bool spell_one, bool digits) {
    const std::string first = adj.empty() ? (count == 1 ? lemma : plural) : adj;
    const bool vowel = std::string("aeiou").find(first[0]) != std::string::npos;
    static const char* kWords[] = {"", "one", "two", "three", "four", "five"};
    const std::size_t at = c.tags.size();
    if (count == 1) {
      if (spell_one) {
        word("one", "NUM");
      } else {
        word(vowel ? "an" : "a", "DET");
      }
    } else {
      word(digits ? std::to_string(count) : kWords[count], "NUM");
    }
    c.numerals.emplace_back(at, count);
    if (!adj.empty()) word(adj, "ADJ");
    word(count == 1 ? lemma : plural, "NOUN");
    c.heads.push_back(lemma);
  }
};

}  // namespace detail_fixture

// At least 60 captions over frequent concrete objects of the fixture KB,
// mixing three templates, articles, spelled and digit numerals, adjectives
// and irregular plurals.
inline std::vector<TemplatedCaption> templated_corpus() {
  struct Object {
    const char* lemma;
    const char* plural;
  };
  static const Object kObjects[] = {
      {"person", "people"}, {"cat", "cats"},       {"dog", "dogs"},
      {"banana", "bananas"}, {"table", "tables"},  {"horse", "horses"},
      {"chair", "chairs"},   {"bus", "buses"},     {"box", "boxes"},
      {"apple", "apples"},   {"umbrella", "umbrellas"},
      {"elephant", "elephants"}, {"child", "children"}, {"knife", "knives"},
      {"bench", "benches"},  {"pizza", "pizzas"},  {"kite", "kites"},
      {"bowl", "bowls"},     {"mouse", "mice"},    {"truck", "trucks"}};
  static const char* kPreps[] = {"with", "on", "in", "near", "under",
                                 "behind", "at", "by"};
  static const char* kVerbs[] = {"feeding", "holding", "watching", "chasing"};
  static const char* kAdjs[] = {"small", "large", "red", "wooden"};
  constexpr std::size_t kObjectCount = std::size(kObjects);

  std::vector<TemplatedCaption> out;
  for (std::size_t i = 0; i < 66; ++i) {
    detail_fixture::Builder b;
    const auto& o1 = kObjects[i % kObjectCount];
    const auto& o2 = kObjects[(i * 7 + 3) % kObjectCount];
    const auto& o3 = kObjects[(i * 11 + 5) % kObjectCount];
    const int n1 = static_cast<int>(i % 5) + 1;
    const int n2 = static_cast<int>((i / 5) % 5) + 1;
    const int n3 = static_cast<int>((i / 3) % 4) + 1;
    const std::string adj = i % 4 == 0 ? kAdjs[(i / 4) % 4] : "";
    const bool spell_one = i % 9 == 0;
    const bool digits = i % 6 == 0;
    switch (i % 3) {
      case 0:
        b.phrase(n1, "", o1.lemma, o1.plural, spell_one, digits);
        b.word(kVerbs[i % 4], "VERB");
        b.phrase(n2, adj, o2.lemma, o2.plural, false, false);
        b.word(kPreps[i % 8], "PREP");
        b.phrase(n3, "", o3.lemma, o3.plural, false, digits);
        b.word(".", "OTHER");
        break;
      case 1:
        b.phrase(n1, adj, o1.lemma, o1.plural, spell_one, false);
        b.word(kPreps[(i + 3) % 8], "PREP");
        b.phrase(n2, "", o2.lemma, o2.plural, false, digits);
        break;
      default:
        b.phrase(n1, "", o1.lemma, o1.plural, false, digits);
        b.word("and", "OTHER");
        b.phrase(n2, adj, o2.lemma, o2.plural, spell_one, false);
        b.word(kPreps[(i + 5) % 8], "PREP");
        b.phrase(n3, "", o3.lemma, o3.plural, false, false);
        break;
    }
    out.push_back(std::move(b.c));
  }
  return out;
}

}  // namespace vsec::testing

#endif  // VSEC_TESTS_SUPPORT_FIXTURES_HPP_
