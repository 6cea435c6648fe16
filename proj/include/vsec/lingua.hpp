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


#ifndef VSEC_LINGUA_HPP_
#define VSEC_LINGUA_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsec/knowledge.hpp"

namespace vsec::lingua {

enum class Pos { kNoun, kPropn, kAdj, kDet, kNum, kPrep, kVerb, kOther };

std::string_view to_string(Pos pos);

// Accepts the internal tag names (NOUN, PROPN, ADJ, DET, NUM, PREP, VERB,
// OTHER), Universal Dependencies tags and Penn Treebank tags. Throws
// DataError naming the tag when it is not covered by any of the three.
Pos parse_pos(std::string_view tag);

struct Token {
  std::string text;   // surface form, original case
  std::string lemma;  // lowercase; singular for nouns
  Pos pos = Pos::kOther;
  std::size_t index = 0;
};

// Token span [begin, end) with the head at `head` (absolute index).
struct NounPhrase {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t head = 0;

  std::size_t size() const { return end - begin; }
};

struct Numeral {
  std::size_t position = 0;
  int value = 1;
};

struct AnnotatedCaption {
  std::string caption_id;
  std::string image_id;
  std::vector<Token> tokens;
  std::vector<NounPhrase> noun_phrases;
  std::vector<Numeral> numerals;
  std::vector<std::size_t> prepositions;

  // Lowercase token texts; the form fed to the text encoders.
  std::vector<std::string> words() const;
  std::string text() const;
  // Index into noun_phrases of the phrase containing `position`, if any.
  std::optional<std::size_t> phrase_of(std::size_t position) const;
};

struct TaggedToken {
  std::string text;
  std::string pos;
};

// Splits on whitespace and detaches punctuation into separate tokens.
// Case is preserved.
std::vector<std::string> tokenize(std::string_view text);

// Joins tokens with single spaces, without a space before punctuation.
std::string render(std::span<const std::string> tokens);

// "a"/"an" -> 1, "one".."twenty", and positive digit strings.
std::optional<int> numeral_value(std::string_view word);
bool is_article(std::string_view word);
// Number word for 1..20, decimal digits beyond.
std::string number_word(int value);

bool is_plural_noun(const Token& token);

// Built-in lexicon-first tagger followed by chunking and detection.
// Throws std::invalid_argument on empty (or all-whitespace) input.
AnnotatedCaption annotate(std::string_view text,
                          const knowledge::LexicalKB& kb);

// Chunking and detection over externally supplied tags.
AnnotatedCaption ingest_pretagged(std::span<const TaggedToken> tokens,
                                  const knowledge::LexicalKB& kb);

std::vector<std::string> head_lemmas(const AnnotatedCaption& caption);

// Lemma counts of noun-phrase heads and prepositions over a corpus, for use
// as a frequency lexicon when none is supplied.
std::map<std::string, std::int64_t> count_frequencies(
    std::span<const AnnotatedCaption> corpus);

// One line of captions.jsonl.
struct CaptionRecord {
  std::string image_id;
  std::string caption_id;
  std::string text;
  std::optional<std::vector<TaggedToken>> tokens;
};

std::vector<CaptionRecord> read_captions(const std::filesystem::path& path);
void write_captions(const std::filesystem::path& path,
                    std::span<const CaptionRecord> records);

// Pre-tagged records go through ingest_pretagged, the rest through annotate.
AnnotatedCaption annotate_record(const CaptionRecord& record,
                                 const knowledge::LexicalKB& kb);

}  // namespace vsec::lingua

#endif  // VSEC_LINGUA_HPP_
