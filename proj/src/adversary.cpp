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


#include "vsec/adversary.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tsv.hpp"
#include "vsec/error.hpp"

namespace vsec::adversary {
namespace {

using knowledge::LexicalKB;
using lingua::AnnotatedCaption;
using lingua::Pos;
using lingua::Token;

std::string match_case(std::string_view original, std::string replacement) {
  if (!original.empty() && !replacement.empty() &&
      std::isupper(static_cast<unsigned char>(original[0]))) {
    replacement[0] =
        static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
  }
  return replacement;
}

std::string lower_first(std::string s) {
  if (!s.empty()) {
    s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  }
  return s;
}

void reindex(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

std::vector<std::string> lower_words(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(detail::to_lower(t.text));
  return out;
}

// Fills the edit record with every position whose surface form changed.
Edit diff(const std::vector<Token>& before, const std::vector<Token>& after) {
  Edit e;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (detail::to_lower(before[i].text) != detail::to_lower(after[i].text)) {
      e.positions.push_back(i);
      e.from.push_back(before[i].text);
      e.to.push_back(after[i].text);
    }
  }
  return e;
}

AdversarialCaption make(const AnnotatedCaption& c, Kind kind,
                        std::vector<Token> tokens) {
  AdversarialCaption a;
  a.source_caption_id = c.caption_id;
  a.image_id = c.image_id;
  a.kind = kind;
  a.edit = diff(c.tokens, tokens);
  a.tokens = std::move(tokens);
  return a;
}

// Re-chooses "a"/"an" at `article` after the following word changed.
void agree_article(std::vector<Token>& tokens, std::size_t article,
                   const GeneratorConfig& cfg) {
  if (article + 1 >= tokens.size()) return;
  if (!lingua::is_article(tokens[article].text)) return;
  const std::string art = indefinite_article(tokens[article + 1].text, cfg);
  tokens[article].text = match_case(tokens[article].text, art);
  tokens[article].lemma = art;
}

template <typename T>
std::vector<T> interleave(std::vector<std::vector<T>> lists) {
  std::vector<T> out;
  std::size_t longest = 0;
  for (const auto& l : lists) longest = std::max(longest, l.size());
  for (std::size_t i = 0; i < longest; ++i) {
    for (auto& l : lists) {
      if (i < l.size()) out.push_back(std::move(l[i]));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> shuffle_orders(std::size_t k,
                                                     const GeneratorConfig& cfg) {
  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  if (k <= 6) {
    while (std::next_permutation(perm.begin(), perm.end())) {
      orders.push_back(perm);
    }
    if (cfg.shuffle_seed) {
      std::mt19937_64 rng(*cfg.shuffle_seed);
      std::shuffle(orders.begin(), orders.end(), rng);
    }
    return orders;
  }
  // Too many phrases to enumerate: draw random orders instead.
  std::mt19937_64 rng(cfg.shuffle_seed.value_or(0));
  std::set<std::vector<std::size_t>> seen;
  const std::size_t want = std::max<std::size_t>(cfg.relation_cap, 1) * 4;
  for (std::size_t attempt = 0; attempt < want * 4 && orders.size() < want;
       ++attempt) {
    std::shuffle(perm.begin(), perm.end(), rng);
    if (std::is_sorted(perm.begin(), perm.end())) continue;
    if (seen.insert(perm).second) orders.push_back(perm);
  }
  return orders;
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::kNoun: return "noun";
    case Kind::kNumeral: return "numeral";
    case Kind::kShuffle: return "shuffle";
    case Kind::kPreposition: return "preposition";
  }
  return "noun";
}

Kind parse_kind(std::string_view name) {
  if (name == "noun") return Kind::kNoun;
  if (name == "numeral") return Kind::kNumeral;
  if (name == "shuffle") return Kind::kShuffle;
  if (name == "preposition") return Kind::kPreposition;
  throw DataError("unknown adversary kind: " + std::string(name));
}

bool is_relation(Kind kind) {
  return kind == Kind::kShuffle || kind == Kind::kPreposition;
}

std::vector<std::string> AdversarialCaption::words() const {
  return lower_words(tokens);
}

std::string AdversarialCaption::text() const {
  std::vector<std::string> texts;
  texts.reserve(tokens.size());
  for (const auto& t : tokens) texts.push_back(t.text);
  return lingua::render(texts);
}

std::string indefinite_article(std::string_view next_word,
                               const GeneratorConfig& cfg) {
  const std::string w = detail::to_lower(next_word);
  if (auto it = cfg.article_exceptions.find(w);
      it != cfg.article_exceptions.end()) {
    return it->second;
  }
  if (w.empty()) return "a";
  const char c = w[0];
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return vowel ? "an" : "a";
}

std::vector<AdversarialCaption> gen_noun(const AnnotatedCaption& c,
                                         const LexicalKB& kb,
                                         const GeneratorConfig& cfg) {
  std::vector<AdversarialCaption> out;
  if (cfg.noun_cap == 0) return out;
  const auto universe = kb.frequent_concrete_heads();
  for (const auto& np : c.noun_phrases) {
    const Token& head = c.tokens[np.head];
    if (head.pos != Pos::kNoun || !kb.is_frequent_concrete_head(head.lemma)) {
      continue;
    }
    const bool plural = lingua::is_plural_noun(head);
    for (const auto& other : universe) {
      if (other == head.lemma || kb.related(head.lemma, other)) continue;
      auto tokens = c.tokens;
      Token& t = tokens[np.head];
      t.text = match_case(head.text, plural ? kb.pluralize(other) : other);
      t.lemma = other;
      if (np.begin < np.head) agree_article(tokens, np.begin, cfg);
      auto adv = make(c, Kind::kNoun, std::move(tokens));
      if (adv.edit.positions.empty()) continue;
      out.push_back(std::move(adv));
      if (out.size() >= cfg.noun_cap) return out;
    }
  }
  return out;
}

std::vector<AdversarialCaption> gen_numeral(const AnnotatedCaption& c,
                                            const LexicalKB& kb,
                                            const GeneratorConfig& cfg) {
  std::vector<AdversarialCaption> out;
  if (cfg.numeral_cap == 0) return out;
  std::vector<int> values = cfg.numeral_values;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (const auto& numeral : c.numerals) {
    const auto phrase = c.phrase_of(numeral.position);
    if (!phrase) continue;
    const auto& np = c.noun_phrases[*phrase];
    const Token& original = c.tokens[numeral.position];
    const bool digits = std::all_of(
        original.text.begin(), original.text.end(),
        [](unsigned char ch) { return std::isdigit(ch) != 0; });
    for (int value : values) {
      if (value < 1 || value == numeral.value) continue;
      auto tokens = c.tokens;
      Token& head = tokens[np.head];
      if (head.pos == Pos::kNoun) {
        head.text = match_case(c.tokens[np.head].text,
                               value > 1 ? kb.pluralize(head.lemma)
                                         : head.lemma);
      }
      Token& num = tokens[numeral.position];
      if (value == 1) {
        const std::string art = indefinite_article(
            tokens[numeral.position + 1].text, cfg);
        num.text = match_case(original.text, art);
        num.lemma = art;
        num.pos = Pos::kDet;
      } else {
        const std::string word =
            digits ? std::to_string(value) : lingua::number_word(value);
        num.text = match_case(original.text, word);
        num.lemma = word;
        num.pos = Pos::kNum;
      }
      auto adv = make(c, Kind::kNumeral, std::move(tokens));
      if (adv.edit.positions.empty()) continue;
      out.push_back(std::move(adv));
      if (out.size() >= cfg.numeral_cap) return out;
    }
  }
  return out;
}

std::vector<AdversarialCaption> gen_shuffle(const AnnotatedCaption& c,
                                            const LexicalKB& /*kb*/,
                                            const GeneratorConfig& cfg) {
  std::vector<AdversarialCaption> out;
  const auto& nps = c.noun_phrases;
  if (nps.size() < 2 || cfg.relation_cap == 0) return out;
  const auto original = lower_words(c.tokens);
  const bool initial_upper =
      !c.tokens.empty() && !c.tokens[0].text.empty() &&
      std::isupper(static_cast<unsigned char>(c.tokens[0].text[0])) &&
      c.tokens[0].pos != Pos::kPropn;

  std::set<std::vector<std::string>> seen;
  for (const auto& order : shuffle_orders(nps.size(), cfg)) {
    std::vector<Token> tokens;
    std::vector<std::size_t> source;
    std::size_t cursor = 0;
    for (std::size_t slot = 0; slot < nps.size(); ++slot) {
      for (; cursor < nps[slot].begin; ++cursor) {
        tokens.push_back(c.tokens[cursor]);
        source.push_back(cursor);
      }
      const auto& moved = nps[order[slot]];
      for (std::size_t k = moved.begin; k < moved.end; ++k) {
        tokens.push_back(c.tokens[k]);
        source.push_back(k);
      }
      cursor = nps[slot].end;
    }
    for (; cursor < c.tokens.size(); ++cursor) {
      tokens.push_back(c.tokens[cursor]);
      source.push_back(cursor);
    }
    if (initial_upper) {
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (source[i] == 0 && i != 0) tokens[i].text = lower_first(tokens[i].text);
      }
      if (source[0] != 0 && tokens[0].pos != Pos::kPropn) {
        tokens[0].text = match_case("A", tokens[0].text);
      }
    }
    reindex(tokens);
    auto words = lower_words(tokens);
    if (words == original || !seen.insert(words).second) continue;
    out.push_back(make(c, Kind::kShuffle, std::move(tokens)));
    if (out.size() >= cfg.relation_cap) break;
  }
  return out;
}

std::vector<AdversarialCaption> gen_preposition(const AnnotatedCaption& c,
                                                const LexicalKB& kb,
                                                const GeneratorConfig& cfg) {
  std::vector<AdversarialCaption> out;
  if (cfg.relation_cap == 0) return out;
  const auto universe = kb.frequent_prepositions();
  for (std::size_t p : c.prepositions) {
    const Token& prep = c.tokens[p];
    if (!kb.is_frequent(prep.lemma)) continue;
    for (const auto& other : universe) {
      if (kb.prepositions_conflict(prep.lemma, other)) continue;
      auto tokens = c.tokens;
      tokens[p].text = match_case(prep.text, other);
      tokens[p].lemma = other;
      out.push_back(make(c, Kind::kPreposition, std::move(tokens)));
      if (out.size() >= cfg.relation_cap) return out;
    }
  }
  return out;
}

std::vector<AdversarialCaption> gen_relation(const AnnotatedCaption& c,
                                             const LexicalKB& kb,
                                             const GeneratorConfig& cfg) {
  auto mixed = interleave<AdversarialCaption>(
      {gen_shuffle(c, kb, cfg), gen_preposition(c, kb, cfg)});
  if (mixed.size() > cfg.relation_cap) mixed.resize(cfg.relation_cap);
  return mixed;
}

CandidateSet build_candidate_set(const AnnotatedCaption& c,
                                 std::span<const AnnotatedCaption> positives,
                                 const LexicalKB& kb,
                                 const GeneratorConfig& cfg) {
  std::set<std::vector<std::string>> blocked;
  blocked.insert(c.words());
  for (const auto& p : positives) blocked.insert(p.words());

  CandidateSet set;
  set.caption_id = c.caption_id;
  auto mixed = interleave<AdversarialCaption>(
      {gen_noun(c, kb, cfg), gen_numeral(c, kb, cfg),
       gen_relation(c, kb, cfg)});
  for (auto& adv : mixed) {
    if (set.candidates.size() >= cfg.max_candidates) break;
    if (!blocked.insert(adv.words()).second) continue;
    set.candidates.push_back(std::move(adv));
  }
  return set;
}

std::vector<AdversarialCaption> sample_negatives(const CandidateSet& s,
                                                 std::size_t n,
                                                 std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("sample_negatives: n must be >= 1");
  std::vector<AdversarialCaption> out;
  if (s.empty()) return out;
  std::vector<std::size_t> picked;
  std::vector<std::size_t> all(s.size());
  std::iota(all.begin(), all.end(), 0);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), n, rng);
  out.reserve(picked.size());
  for (std::size_t i : picked) out.push_back(s.candidates[i]);
  return out;
}

void write_adversarial(const std::filesystem::path& path,
                       std::span<const AdversarialCaption> captions) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& a : captions) {
    nlohmann::ordered_json j;
    j["source_caption_id"] = a.source_caption_id;
    j["image_id"] = a.image_id;
    j["kind"] = std::string(to_string(a.kind));
    j["text"] = a.text();
    j["edit"] = {{"positions", a.edit.positions},
                 {"from", a.edit.from},
                 {"to", a.edit.to}};
    out << j.dump() << '\n';
  }
}

std::vector<AdversarialCaption> read_adversarial(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<AdversarialCaption> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (detail::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      AdversarialCaption a;
      a.source_caption_id = j.at("source_caption_id").get<std::string>();
      a.image_id = j.at("image_id").get<std::string>();
      a.kind = parse_kind(j.at("kind").get<std::string>());
      const auto words = lingua::tokenize(j.at("text").get<std::string>());
      for (std::size_t i = 0; i < words.size(); ++i) {
        a.tokens.push_back({words[i], detail::to_lower(words[i]),
                            Pos::kOther, i});
      }
      const auto& e = j.at("edit");
      a.edit.positions = e.at("positions").get<std::vector<std::size_t>>();
      a.edit.from = e.at("from").get<std::vector<std::string>>();
      a.edit.to = e.at("to").get<std::vector<std::string>>();
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      detail::fail_at(path, number, e.what());
    }
  }
  return out;
}

}  // namespace vsec::adversary
