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


#include "vsec/tasks/word_object.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "vsec/error.hpp"
#include "vsec/nn/checkpoint.hpp"

namespace vsec::tasks {

nlohmann::json WordObjectDataset::to_json() const {
  nlohmann::json imgs = nlohmann::json::array();
  for (const auto& im : images) {
    imgs.push_back({{"image_id", im.image_id},
                    {"positives", im.positives},
                    {"negatives", im.negatives}});
  }
  return {{"objects", objects}, {"excluded_images", excluded_images}, {"images", imgs}};
}

WordObjectDataset build_word_object_dataset(
    std::span<const lingua::AnnotatedCaption> corpus,
    const knowledge::LexicalKB& kb, knowledge::Relatedness relatedness) {
  std::vector<std::string> order;
  std::map<std::string, std::set<std::string>> heads;
  std::set<std::string> objects;
  for (const auto& caption : corpus) {
    auto [it, fresh] = heads.try_emplace(caption.image_id);
    if (fresh) order.push_back(caption.image_id);
    for (const auto& lemma : lingua::head_lemmas(caption)) {
      if (!kb.is_frequent(lemma)) continue;
      it->second.insert(lemma);
      objects.insert(lemma);
    }
  }

  WordObjectDataset out;
  out.objects.assign(objects.begin(), objects.end());
  for (const auto& id : order) {
    const auto& pos = heads.at(id);
    if (pos.empty()) {
      ++out.excluded_images;
      continue;
    }
    WordObjectImage im;
    im.image_id = id;
    im.positives.assign(pos.begin(), pos.end());
    for (const auto& candidate : out.objects) {
      if (pos.contains(candidate)) continue;
      const bool clash = std::any_of(pos.begin(), pos.end(), [&](const std::string& p) {
        return kb.related(candidate, p, relatedness);
      });
      if (!clash) im.negatives.push_back(candidate);
    }
    out.images.push_back(std::move(im));
  }
  return out;
}

WordObjectInputs::WordObjectInputs(const vse::WordVectors& words,
                                   const vse::ImageFeatureStore& features)
    : words_(&words), features_(&features) {
  for (std::size_t i = 0; i < words.words.size(); ++i) rows_.emplace(words.words[i], i);
}

bool WordObjectInputs::has_word(std::string_view word) const {
  return rows_.contains(std::string(word));
}

std::span<const double> WordObjectInputs::word(std::string_view word) const {
  const auto it = rows_.find(std::string(word));
  if (it == rows_.end()) throw DataError("no word vector for '" + std::string(word) + "'");
  return words_->vectors.row_values(it->second);
}

nn::Tensor interaction(std::span<const double> word, std::span<const double> image) {
  nn::Tensor out(1, word.size() * image.size());
  std::size_t k = 0;
  for (double w : word) {
    for (double v : image) out[k++] = w * v;
  }
  return out;
}

void ScorerConfig::validate() const {
  if (hidden == 0) throw std::invalid_argument("scorer hidden width must be >= 1");
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
}

nlohmann::json ScorerConfig::to_json() const {
  return {{"hidden", hidden},
          {"batch_size", batch_size},
          {"epochs", epochs},
          {"seed", seed},
          {"learning_rate", adam.learning_rate}};
}

InteractionScorer::InteractionScorer(std::size_t word_dim, std::size_t image_dim,
                                     std::size_t hidden, std::mt19937_64& rng)
    : word_dim_(word_dim),
      image_dim_(image_dim),
      mlp_("scorer", word_dim * image_dim, hidden, 1, rng) {}

nn::Var InteractionScorer::logits(nn::Binder& bind, nn::Var interactions) {
  return mlp_.forward(bind, interactions);
}

nn::Var InteractionScorer::loss(nn::Binder& bind, nn::Var interactions,
                                std::span<const double> labels) {
  nn::Graph& g = bind.graph();
  const nn::Var per = g.bce_with_logits(logits(bind, interactions), labels);
  return g.scale(g.sum(per), 1.0 / static_cast<double>(labels.size()));
}

double InteractionScorer::score(std::span<const double> word,
                                std::span<const double> image) const {
  if (word.size() != word_dim_ || image.size() != image_dim_) {
    throw ShapeError("scorer expects a " + std::to_string(word_dim_) + "-d word and a " +
                     std::to_string(image_dim_) + "-d image");
  }
  nn::Graph g;
  nn::Binder bind(g, false);
  auto& self = const_cast<InteractionScorer&>(*this);
  return g.value(self.logits(bind, g.input(interaction(word, image)))).item();
}

void InteractionScorer::save(const std::filesystem::path& manifest) const {
  nn::save_checkpoint(manifest, mlp_.tensors(),
                      {{"model", "interaction_scorer"},
                       {"word_dim", word_dim_},
                       {"image_dim", image_dim_},
                       {"hidden", mlp_.hidden_dim()}});
}

InteractionScorer InteractionScorer::load(const std::filesystem::path& manifest) {
  const nn::Checkpoint ckpt = nn::load_checkpoint(manifest);
  if (ckpt.meta.value("model", "") != "interaction_scorer") {
    throw DataError(manifest.string() + " is not an interaction scorer checkpoint");
  }
  std::mt19937_64 rng(0);
  InteractionScorer s(ckpt.meta.at("word_dim").get<std::size_t>(),
                      ckpt.meta.at("image_dim").get<std::size_t>(),
                      ckpt.meta.at("hidden").get<std::size_t>(), rng);
  s.mlp_.load(ckpt);
  return s;
}

std::vector<LabelledPair> labelled_pairs(const WordObjectDataset& dataset,
                                         const WordObjectInputs& inputs) {
  std::vector<LabelledPair> pairs;
  std::set<std::string> missing;
  std::size_t negatives = 0;
  for (const auto& im : dataset.images) {
    const std::size_t row = inputs.features().index(im.image_id);
    auto emit = [&](const std::string& w, double label) {
      if (!inputs.has_word(w)) {
        missing.insert(w);
        return;
      }
      pairs.push_back({row, w, label});
      negatives += label == 0.0;
    };
    for (const auto& w : im.positives) emit(w, 1.0);
    for (const auto& w : im.negatives) emit(w, 0.0);
  }
  if (!missing.empty()) {
    spdlog::warn("{} object words have no vector and were skipped", missing.size());
  }
  if (negatives == 0) throw DataError("word-object dataset has no negative pairs");
  if (negatives == pairs.size()) throw DataError("word-object dataset has no positive pairs");
  return pairs;
}

InteractionScorer train_interaction_scorer(
    const WordObjectDataset& dataset, const WordObjectInputs& inputs,
    const ScorerConfig& config, const std::function<void(const ScorerEpoch&)>& on_epoch) {
  config.validate();
  const std::vector<LabelledPair> pairs = labelled_pairs(dataset, inputs);
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32), 11u};
  std::mt19937_64 rng(seq);
  const std::size_t dw = inputs.word_dim();
  const std::size_t di = inputs.features().dim();
  InteractionScorer scorer(dw, di, config.hidden, rng);
  nn::Adam adam(scorer.parameters(), config.adam);

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      nn::Tensor x(end - begin, dw * di);
      std::vector<double> labels;
      for (std::size_t k = begin; k < end; ++k) {
        const auto& p = pairs[order[k]];
        const nn::Tensor row =
            interaction(inputs.word(p.word), inputs.features().row(p.image));
        std::copy(row.values().begin(), row.values().end(),
                  x.row_values(k - begin).begin());
        labels.push_back(p.label);
      }
      nn::Graph g;
      nn::Binder bind(g, true);
      const nn::Var l = scorer.loss(bind, g.input(std::move(x)), labels);
      const double value = g.value(l).item();
      if (!std::isfinite(value)) throw NumericError("scorer loss is not finite");
      adam.zero_grad();
      g.backward(l);
      adam.step(epoch);
      total += value * static_cast<double>(end - begin);
    }
    const ScorerEpoch log{epoch, total / static_cast<double>(pairs.size())};
    spdlog::debug("scorer epoch {} loss {:.5f}", epoch, log.loss);
    if (on_epoch) on_epoch(log);
  }
  return scorer;
}

std::vector<metrics::RankingResult> word_retrieval_rankings(
    const InteractionScorer& scorer, const WordObjectDataset& dataset,
    const WordObjectInputs& inputs) {
  std::vector<metrics::RankingResult> results;
  for (const auto& im : dataset.images) {
    const auto image = inputs.features().row(inputs.features().index(im.image_id));
    std::vector<double> scores;
    std::vector<bool> relevant;
    for (const auto& w : im.positives) {
      if (!inputs.has_word(w)) continue;
      scores.push_back(scorer.score(inputs.word(w), image));
      relevant.push_back(true);
    }
    if (scores.empty()) continue;
    for (const auto& w : im.negatives) {
      if (!inputs.has_word(w)) continue;
      scores.push_back(scorer.score(inputs.word(w), image));
      relevant.push_back(false);
    }
    results.push_back(metrics::rank(im.image_id, scores, relevant));
  }
  return results;
}

double word_retrieval_map(const InteractionScorer& scorer,
                          const WordObjectDataset& dataset,
                          const WordObjectInputs& inputs) {
  const auto results = word_retrieval_rankings(scorer, dataset, inputs);
  if (results.empty()) throw DataError("word retrieval has no queries");
  return metrics::mean_average_precision(results);
}

metrics::MetricsReport word_retrieval_report(const InteractionScorer& scorer,
                                             const WordObjectDataset& dataset,
                                             const WordObjectInputs& inputs) {
  const auto results = word_retrieval_rankings(scorer, dataset, inputs);
  if (results.empty()) throw DataError("word retrieval has no queries");
  metrics::MetricsReport report = metrics::retrieval_report(results, {1, 5});
  report.map = metrics::mean_average_precision(results);
  return report;
}

}  // namespace vsec::tasks
