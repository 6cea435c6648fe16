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


#include "vsec/lingua.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tsv.hpp"
#include "vsec/error.hpp"

namespace vsec::lingua {
namespace {

using knowledge::LexicalKB;

constexpr std::array<std::string_view, 20> kNumberWords = {
    "one",     "two",     "three",     "four",     "five",
    "six",     "seven",   "eight",     "nine",     "ten",
    "eleven",  "twelve",  "thirteen",  "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen", "twenty"};

const std::unordered_set<std::string_view> kDeterminers = {
    "a",     "an",    "the",   "this",    "that",    "these", "those",
    "some",  "each",  "every", "another", "his",     "her",   "its",
    "their", "my",    "your",  "our",     "no",      "any",   "several",
    "many",  "both",  "few",   "either",  "neither", "all"};

// Prepositions outside the overlap table.
const std::unordered_set<std::string_view> kPrepositions = {
    "of",     "to",   "for",     "at",      "from",   "into",  "onto",
    "across", "upon", "against", "between", "behind", "below", "beneath",
    "beside", "near", "toward",  "towards", "under",  "underneath",
    "via",    "amid", "amongst", "throughout", "inside", "outside", "over",
    "above",  "along", "around", "through", "with",   "without", "by",
    "in",     "on",   "off",     "down",    "up",     "out",   "atop"};

const std::unordered_set<std::string_view> kAdjectives = {
    "big",    "small",  "large",  "little", "huge",   "tiny",    "tall",
    "short",  "long",   "old",    "new",    "young",  "clear",   "fake",
    "red",    "blue",   "green",  "yellow", "white",  "black",   "brown",
    "gray",   "grey",   "orange", "pink",   "purple", "dark",    "bright",
    "empty",  "full",   "open",   "closed", "wooden", "metal",   "plastic",
    "dirty",  "clean",  "busy",   "happy",  "cute",   "pretty",  "fresh",
    "hot",    "cold",   "wet",    "dry",    "top",    "front",   "back",
    "other",  "same",   "different", "single", "double", "multiple", "various",
    "several", "colorful", "large", "giant", "low", "high", "nice", "good"};

const std::unordered_set<std::string_view> kVerbs = {
    "is",    "are",   "was",   "were",   "be",     "been",  "am",
    "has",   "have",  "had",   "do",     "does",   "did",   "can",
    "will",  "come",  "comes", "sit",    "sits",   "stand", "stands",
    "hold",  "holds", "ride",  "rides",  "eat",    "eats",  "look",
    "looks", "play",  "plays", "walk",   "walks",  "lay",   "lays",
    "lie",   "lies",  "fly",   "flies",  "run",    "runs",  "wait",
    "waits", "sat",   "stood", "held",   "rode",   "ate",   "made",
    "make",  "makes", "take",  "takes",  "took",   "show", "shows",
    "feed",  "feeds", "park",  "parks",  "carry",  "carries", "watch",
    "watches", "wear", "wears", "contains", "contain", "filled", "topped"};

const std::unordered_set<std::string_view> kOther = {
    "and", "or",   "but",   "it",    "he",   "she",  "they",  "them",
    "him", "there", "here", "who",   "which", "what", "not",  "very",
    "too", "also", "while", "where", "when", "some", "one's", "'s",
    "so",  "just", "i",     "we",    "you",  "us",   "me",    "then"};

bool is_punct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' ||
         c == ':' || c == '"' || c == '(' || c == ')' || c == '[' ||
         c == ']';
}

bool is_punct_token(std::string_view t) {
  return t.size() == 1 && is_punct(t[0]);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool capitalized(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

bool known_noun_form(const LexicalKB& kb, std::string_view lower) {
  return kb.is_known_noun(lower) || kb.is_known_noun(kb.singularize(lower));
}

Pos tag_word(std::string_view text, std::size_t index, const LexicalKB& kb) {
  const std::string w = detail::to_lower(text);
  if (is_punct_token(w)) return Pos::kOther;
  if (all_digits(w)) return Pos::kNum;
  if (std::find(kNumberWords.begin(), kNumberWords.end(), w) !=
      kNumberWords.end()) {
    return Pos::kNum;
  }
  if (kDeterminers.count(w)) return Pos::kDet;
  if (kb.is_overlap_word(w) || kPrepositions.count(w)) return Pos::kPrep;
  if (kOther.count(w)) return Pos::kOther;
  if (kVerbs.count(w)) return Pos::kVerb;
  if (known_noun_form(kb, w)) return Pos::kNoun;
  if (kAdjectives.count(w)) return Pos::kAdj;
  if (index > 0 && capitalized(text)) return Pos::kPropn;
  if (ends_with(w, "ing") || ends_with(w, "ed")) return Pos::kVerb;
  if (ends_with(w, "ly")) return Pos::kOther;
  for (std::string_view suffix :
       {"ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish"}) {
    if (ends_with(w, suffix)) return Pos::kAdj;
  }
  return Pos::kNoun;
}

std::string lemma_for(std::string_view text, Pos pos, const LexicalKB& kb) {
  const std::string w = detail::to_lower(text);
  if (pos == Pos::kNoun) return kb.singularize(w);
  return w;
}

// Chunks DET? NUM? ADJ* (NOUN|PROPN)+ and records numerals and prepositions.
void detect_structure(AnnotatedCaption& c) {
  const auto& t = c.tokens;
  const std::size_t n = t.size();
  auto is_noun = [&](std::size_t k) {
    return k < n && (t[k].pos == Pos::kNoun || t[k].pos == Pos::kPropn);
  };
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (j < n && t[j].pos == Pos::kDet) ++j;
    if (j < n && t[j].pos == Pos::kNum) ++j;
    while (j < n && t[j].pos == Pos::kAdj) ++j;
    std::size_t k = j;
    while (is_noun(k)) ++k;
    if (k > j) {
      c.noun_phrases.push_back({i, k, k - 1});
      for (std::size_t p = i; p < j; ++p) {
        const bool numeric = t[p].pos == Pos::kNum ||
                             (t[p].pos == Pos::kDet && is_article(t[p].lemma));
        if (!numeric) continue;
        const auto value = numeral_value(t[p].lemma);
        if (value && *value >= 1) {
          c.numerals.push_back({p, *value});
          break;
        }
      }
      i = k;
    } else {
      ++i;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (t[k].pos == Pos::kPrep) c.prepositions.push_back(k);
  }
}

}  // namespace

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kPropn: return "PROPN";
    case Pos::kAdj: return "ADJ";
    case Pos::kDet: return "DET";
    case Pos::kNum: return "NUM";
    case Pos::kPrep: return "PREP";
    case Pos::kVerb: return "VERB";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

Pos parse_pos(std::string_view tag) {
  static const std::unordered_map<std::string_view, Pos> kMap = {
      // internal
      {"NOUN", Pos::kNoun}, {"PROPN", Pos::kPropn}, {"ADJ", Pos::kAdj},
      {"DET", Pos::kDet}, {"NUM", Pos::kNum}, {"PREP", Pos::kPrep},
      {"VERB", Pos::kVerb}, {"OTHER", Pos::kOther},
      // Universal Dependencies
      {"ADP", Pos::kPrep}, {"AUX", Pos::kVerb}, {"PRON", Pos::kOther},
      {"ADV", Pos::kOther}, {"CCONJ", Pos::kOther}, {"SCONJ", Pos::kOther},
      {"PART", Pos::kOther}, {"PUNCT", Pos::kOther}, {"SYM", Pos::kOther},
      {"INTJ", Pos::kOther}, {"X", Pos::kOther}, {"SPACE", Pos::kOther},
      // Penn Treebank
      {"NN", Pos::kNoun}, {"NNS", Pos::kNoun}, {"NNP", Pos::kPropn},
      {"NNPS", Pos::kPropn}, {"JJ", Pos::kAdj}, {"JJR", Pos::kAdj},
      {"JJS", Pos::kAdj}, {"DT", Pos::kDet}, {"PDT", Pos::kDet},
      {"PRP$", Pos::kDet}, {"WDT", Pos::kDet}, {"CD", Pos::kNum},
      {"IN", Pos::kPrep}, {"TO", Pos::kPrep}, {"VB", Pos::kVerb},
      {"VBD", Pos::kVerb}, {"VBG", Pos::kVerb}, {"VBN", Pos::kVerb},
      {"VBP", Pos::kVerb}, {"VBZ", Pos::kVerb}, {"MD", Pos::kVerb},
      {"RB", Pos::kOther}, {"RBR", Pos::kOther}, {"RBS", Pos::kOther},
      {"RP", Pos::kOther}, {"PRP", Pos::kOther}, {"CC", Pos::kOther},
      {"WP", Pos::kOther}, {"WRB", Pos::kOther}, {"EX", Pos::kOther},
      {"POS", Pos::kOther}, {".", Pos::kOther}, {",", Pos::kOther},
      {":", Pos::kOther}, {"UH", Pos::kOther}, {"FW", Pos::kOther}};
  auto it = kMap.find(tag);
  if (it == kMap.end()) {
    throw DataError("unknown part-of-speech tag: " + std::string(tag));
  }
  return it->second;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    // Split a trailing possessive into its own token.
    if (current.size() > 2 &&
        detail::to_lower(current.substr(current.size() - 2)) == "'s") {
      out.push_back(current.substr(0, current.size() - 2));
      out.push_back(current.substr(current.size() - 2));
    } else {
      out.push_back(current);
    }
    current.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_punct(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

std::string render(std::span<const std::string> tokens) {
  std::string out;
  bool open = false;
  for (const auto& t : tokens) {
    const bool attach =
        is_punct_token(t) && t != "(" && t != "[" && t != "\"";
    if (!out.empty() && !attach && !open && t != "'s") out.push_back(' ');
    out += t;
    open = t == "(" || t == "[";
  }
  return out;
}

bool is_article(std::string_view word) {
  const std::string w = detail::to_lower(word);
  return w == "a" || w == "an";
}

std::optional<int> numeral_value(std::string_view word) {
  const std::string w = detail::to_lower(word);
  if (w == "a" || w == "an") return 1;
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (kNumberWords[i] == w) return static_cast<int>(i + 1);
  }
  if (all_digits(w) && w.size() < 9) {
    const int v = std::stoi(w);
    if (v >= 1) return v;
  }
  return std::nullopt;
}

std::string number_word(int value) {
  if (value >= 1 && value <= static_cast<int>(kNumberWords.size())) {
    return std::string(kNumberWords[value - 1]);
  }
  return std::to_string(value);
}

bool is_plural_noun(const Token& token) {
  return (token.pos == Pos::kNoun) && detail::to_lower(token.text) != token.lemma;
}

std::vector<std::string> AnnotatedCaption::words() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(detail::to_lower(t.text));
  return out;
}

std::string AnnotatedCaption::text() const {
  std::vector<std::string> texts;
  texts.reserve(tokens.size());
  for (const auto& t : tokens) texts.push_back(t.text);
  return render(texts);
}

std::optional<std::size_t> AnnotatedCaption::phrase_of(
    std::size_t position) const {
  for (std::size_t i = 0; i < noun_phrases.size(); ++i) {
    if (position >= noun_phrases[i].begin && position < noun_phrases[i].end) {
      return i;
    }
  }
  return std::nullopt;
}

AnnotatedCaption annotate(std::string_view text, const LexicalKB& kb) {
  const auto words = tokenize(text);
  if (words.empty()) throw std::invalid_argument("annotate: empty caption");
  AnnotatedCaption c;
  c.tokens.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Pos pos = tag_word(words[i], i, kb);
    c.tokens.push_back({words[i], lemma_for(words[i], pos, kb), pos, i});
  }
  detect_structure(c);
  return c;
}

AnnotatedCaption ingest_pretagged(std::span<const TaggedToken> tokens,
                                  const LexicalKB& kb) {
  if (tokens.empty()) {
    throw std::invalid_argument("ingest_pretagged: empty token list");
  }
  AnnotatedCaption c;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Pos pos = parse_pos(tokens[i].pos);
    c.tokens.push_back(
        {tokens[i].text, lemma_for(tokens[i].text, pos, kb), pos, i});
  }
  detect_structure(c);
  return c;
}

std::vector<std::string> head_lemmas(const AnnotatedCaption& caption) {
  std::vector<std::string> out;
  for (const auto& np : caption.noun_phrases) {
    out.push_back(caption.tokens[np.head].lemma);
  }
  return out;
}

std::map<std::string, std::int64_t> count_frequencies(
    std::span<const AnnotatedCaption> corpus) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& c : corpus) {
    for (const auto& h : head_lemmas(c)) ++counts[h];
    for (std::size_t p : c.prepositions) ++counts[c.tokens[p].lemma];
  }
  return counts;
}

std::vector<CaptionRecord> read_captions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<CaptionRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (detail::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CaptionRecord r;
      r.image_id = j.at("image_id").get<std::string>();
      r.caption_id = j.at("caption_id").get<std::string>();
      r.text = j.value("text", std::string{});
      if (j.contains("tokens")) {
        std::vector<TaggedToken> toks;
        for (const auto& t : j.at("tokens")) {
          toks.push_back({t.at("text").get<std::string>(),
                          t.at("pos").get<std::string>()});
        }
        r.tokens = std::move(toks);
      }
      if (r.text.empty() && !r.tokens) {
        detail::fail_at(path, number, "record has neither text nor tokens");
      }
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      detail::fail_at(path, number, e.what());
    }
  }
  return out;
}

void write_captions(const std::filesystem::path& path,
                    std::span<const CaptionRecord> records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["image_id"] = r.image_id;
    j["caption_id"] = r.caption_id;
    j["text"] = r.text;
    if (r.tokens) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& t : *r.tokens) {
        arr.push_back({{"text", t.text}, {"pos", t.pos}});
      }
      j["tokens"] = arr;
    }
    out << j.dump() << '\n';
  }
}

AnnotatedCaption annotate_record(const CaptionRecord& record,
                                 const LexicalKB& kb) {
  AnnotatedCaption c = record.tokens ? ingest_pretagged(*record.tokens, kb)
                                     : annotate(record.text, kb);
  c.caption_id = record.caption_id;
  c.image_id = record.image_id;
  return c;
}

}  // namespace vsec::lingua
