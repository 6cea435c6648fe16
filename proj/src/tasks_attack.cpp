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


#include "vsec/tasks/attack.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include <spdlog/spdlog.h>

#include "vsec/error.hpp"

namespace vsec::tasks {

using adversary::AdversarialCaption;
using lingua::AnnotatedCaption;

nn::Tensor JointScorer::score(std::span<const std::size_t> images,
                              std::span<const vse::Caption> captions) const {
  const nn::Tensor img = model_.embed_images(features_.gather(images));
  const nn::Tensor cap = model_.embed_captions(captions);
  nn::Tensor out(images.size(), captions.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto a = img.row_values(i);
    for (std::size_t c = 0; c < captions.size(); ++c) {
      const auto b = cap.row_values(c);
      out(i, c) = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    }
  }
  return out;
}

namespace {

using WordSet = std::set<std::vector<std::string>>;

// Keeps candidates not in `seen`, up to `count`, marking them seen.
std::vector<AdversarialCaption> take_fresh(std::vector<AdversarialCaption> all,
                                           std::size_t count, WordSet& seen) {
  std::vector<AdversarialCaption> out;
  for (auto& a : all) {
    if (out.size() >= count) break;
    if (seen.insert(a.words()).second) out.push_back(std::move(a));
  }
  return out;
}

std::vector<ImageGroup> group_by_image(std::span<const AnnotatedCaption> captions,
                                       const vse::ImageFeatureStore& features) {
  std::vector<ImageGroup> groups;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < captions.size(); ++i) {
    const auto& id = captions[i].image_id;
    auto it = slot.find(id);
    if (it == slot.end()) {
      it = slot.emplace(id, groups.size()).first;
      groups.push_back({id, features.index(id), {}});
    }
    groups[it->second].captions.push_back(i);
  }
  return groups;
}

AttackResult evaluate(const CaptionImageScorer& scorer,
                      std::span<const AnnotatedCaption> captions,
                      const AttackPlan& plan, const std::vector<std::size_t>& ks,
                      const std::vector<std::string>& conditions) {
  if (plan.images.empty()) throw DataError("attack evaluation: no images to query");
  std::vector<vse::Caption> base;
  std::vector<std::size_t> base_owner;
  std::map<std::size_t, std::size_t> group_of;
  for (std::size_t g = 0; g < plan.images.size(); ++g) {
    for (std::size_t c : plan.images[g].captions) group_of[c] = g;
  }
  for (std::size_t c : plan.retained) {
    base.push_back(captions[c].words());
    base_owner.push_back(group_of.at(c));
  }
  std::map<std::size_t, const CaptionAttack*> attack_of;
  for (const auto& a : plan.attacks) attack_of[a.caption] = &a;

  std::vector<std::size_t> rows;
  for (const auto& g : plan.images) rows.push_back(g.feature_row);
  const nn::Tensor base_scores = scorer.score(rows, base);

  AttackResult result;
  result.condition_names = conditions;
  result.per_condition.resize(conditions.size());
  std::size_t min_candidates = SIZE_MAX, max_candidates = 0;

  for (std::size_t g = 0; g < plan.images.size(); ++g) {
    // Own adversaries, tagged by kind.
    std::vector<vse::Caption> adv;
    std::vector<std::string> adv_kind;
    for (std::size_t c : plan.images[g].captions) {
      const auto it = attack_of.find(c);
      if (it == attack_of.end()) continue;
      const std::pair<const char*, const std::vector<AdversarialCaption>*> kinds[] = {
          {"noun", &it->second->noun},
          {"numeral", &it->second->numeral},
          {"relation", &it->second->relation}};
      for (const auto& [name, list] : kinds) {
        for (const auto& a : *list) {
          adv.push_back(a.words());
          adv_kind.emplace_back(name);
        }
      }
    }
    const std::size_t row[] = {plan.images[g].feature_row};
    const nn::Tensor adv_scores =
        adv.empty() ? nn::Tensor(1, 0) : scorer.score(row, adv);

    for (std::size_t k = 0; k < conditions.size(); ++k) {
      const std::string& cond = conditions[k];
      std::vector<double> scores(base_scores.row_values(g).begin(),
                                 base_scores.row_values(g).end());
      std::vector<bool> positive(base.size());
      for (std::size_t c = 0; c < base.size(); ++c) positive[c] = base_owner[c] == g;
      for (std::size_t a = 0; a < adv.size(); ++a) {
        if (cond == "all" || cond == adv_kind[a]) {
          scores.push_back(adv_scores(0, a));
          positive.push_back(false);
        }
      }
      if (cond == "all") {
        min_candidates = std::min(min_candidates, scores.size());
        max_candidates = std::max(max_candidates, scores.size());
      }
      result.per_condition[k].push_back(
          metrics::rank(plan.images[g].image_id, scores, positive));
    }
  }

  for (std::size_t k = 0; k < conditions.size(); ++k) {
    result.report.breakdown[conditions[k]] =
        metrics::retrieval_report(result.per_condition[k], ks);
  }
  // Headline numbers are those of the fully attacked condition.
  const std::string& headline = conditions.back();
  auto& top = result.report;
  const auto& h = top.breakdown.at(headline);
  top.recall = h.recall;
  top.median_rank = h.median_rank;
  top.mean_rank = h.mean_rank;
  top.queries = h.queries;
  result.candidates_per_image = min_candidates == max_candidates ? max_candidates : 0;
  top.extra["images"] = plan.images.size();
  top.extra["base_captions"] = base.size();
  top.extra["excluded_captions"] = plan.excluded.size();
  top.extra["candidates_per_image_min"] = min_candidates;
  top.extra["candidates_per_image_max"] = max_candidates;
  return result;
}

}  // namespace

AttackPlan plan_attack(std::span<const AnnotatedCaption> captions,
                       const vse::ImageFeatureStore& features,
                       const knowledge::LexicalKB& kb, const AttackSpec& spec) {
  AttackPlan plan;
  auto groups = group_by_image(captions, features);
  adversary::GeneratorConfig cfg = spec.generator;
  cfg.noun_cap = cfg.numeral_cap = cfg.relation_cap = cfg.max_candidates;

  for (auto& group : groups) {
    WordSet positives;
    for (std::size_t c : group.captions) positives.insert(captions[c].words());
    std::vector<std::size_t> kept;
    for (std::size_t c : group.captions) {
      const auto& cap = captions[c];
      WordSet seen = positives;
      CaptionAttack a;
      a.caption = c;
      if (spec.noun) a.noun = take_fresh(adversary::gen_noun(cap, kb, cfg), spec.noun, seen);
      if (spec.numeral) {
        a.numeral = take_fresh(adversary::gen_numeral(cap, kb, cfg), spec.numeral, seen);
      }
      if (spec.relation) {
        a.relation = take_fresh(adversary::gen_relation(cap, kb, cfg), spec.relation, seen);
      }
      if (a.noun.size() < spec.noun || a.numeral.size() < spec.numeral ||
          a.relation.size() < spec.relation) {
        spdlog::warn("caption {} supplies {}/{}/{} of {}/{}/{} adversaries; excluded",
                     cap.caption_id, a.noun.size(), a.numeral.size(),
                     a.relation.size(), spec.noun, spec.numeral, spec.relation);
        plan.excluded.push_back(cap.caption_id);
        continue;
      }
      kept.push_back(c);
      plan.attacks.push_back(std::move(a));
    }
    if (kept.empty()) continue;
    group.captions = std::move(kept);
    plan.retained.insert(plan.retained.end(), group.captions.begin(), group.captions.end());
    plan.images.push_back(std::move(group));
  }
  return plan;
}

AttackResult attack_eval(const CaptionImageScorer& scorer,
                         std::span<const AnnotatedCaption> captions,
                         const AttackPlan& plan, const AttackSpec& spec) {
  return evaluate(scorer, captions, plan, spec.ks,
                  {"clean", "noun", "numeral", "relation", "all"});
}

AttackResult attack_eval(const CaptionImageScorer& scorer,
                         std::span<const AnnotatedCaption> captions,
                         const vse::ImageFeatureStore& features,
                         const knowledge::LexicalKB& kb, const AttackSpec& spec) {
  return attack_eval(scorer, captions, plan_attack(captions, features, kb, spec), spec);
}

std::vector<AdversarialCaption> plural_numeral_adversaries(
    const AnnotatedCaption& caption, const knowledge::LexicalKB& kb,
    const adversary::GeneratorConfig& cfg) {
  AnnotatedCaption filtered = caption;
  filtered.numerals.clear();
  for (const auto& n : caption.numerals) {
    const auto p = caption.phrase_of(n.position);
    if (p && lingua::is_plural_noun(caption.tokens[caption.noun_phrases[*p].head])) {
      filtered.numerals.push_back(n);
    }
  }
  auto out = adversary::gen_numeral(filtered, kb, cfg);
  for (auto& a : out) a.source_caption_id = caption.caption_id;
  return out;
}

AttackResult plural_split_eval(const CaptionImageScorer& scorer,
                               std::span<const AnnotatedCaption> captions,
                               const vse::ImageFeatureStore& features,
                               const knowledge::LexicalKB& kb,
                               const AttackSpec& spec) {
  auto has_plural = [](const AnnotatedCaption& c) {
    return std::any_of(c.noun_phrases.begin(), c.noun_phrases.end(),
                       [&](const lingua::NounPhrase& np) {
                         return lingua::is_plural_noun(c.tokens[np.head]);
                       });
  };
  AttackPlan plan;
  adversary::GeneratorConfig cfg = spec.generator;
  cfg.numeral_cap = cfg.max_candidates;
  for (auto& group : group_by_image(captions, features)) {
    if (std::none_of(group.captions.begin(), group.captions.end(),
                     [&](std::size_t c) { return has_plural(captions[c]); })) {
      continue;
    }
    WordSet positives;
    for (std::size_t c : group.captions) positives.insert(captions[c].words());
    for (std::size_t c : group.captions) {
      WordSet seen = positives;
      CaptionAttack a;
      a.caption = c;
      a.numeral = take_fresh(plural_numeral_adversaries(captions[c], kb, cfg),
                             spec.numeral, seen);
      plan.attacks.push_back(std::move(a));
    }
    plan.retained.insert(plan.retained.end(), group.captions.begin(), group.captions.end());
    plan.images.push_back(std::move(group));
  }
  if (plan.images.empty()) throw DataError("plural split is empty: no plural captions");
  return evaluate(scorer, captions, plan, spec.ks, {"clean", "numeral"});
}

void write_query_csv(const std::filesystem::path& path, const AttackResult& r) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "condition,query,best_rank,candidates\n";
  for (std::size_t k = 0; k < r.condition_names.size(); ++k) {
    for (const auto& q : r.per_condition[k]) {
      out << r.condition_names[k] << ',' << q.query_id << ','
          << q.best_positive_rank() << ',' << q.size() << '\n';
    }
  }
}

}  // namespace vsec::tasks
