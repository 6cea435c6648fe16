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


#include "vsec/vse/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "vsec/error.hpp"
#include "vsec/metrics.hpp"
#include "vsec/nn/binder.hpp"

namespace vsec::vse {

namespace {

// Independent generator per purpose so that, e.g., drawing candidates never
// shifts the batch order.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

enum Stream : std::uint64_t { kInit = 1, kBatches = 2, kNegatives = 3 };

}  // namespace

void TrainingConfig::validate() const {
  if (!(margin > 0)) throw std::invalid_argument("margin must be positive");
  if (intra_samples == 0) throw std::invalid_argument("intra sample count must be >= 1");
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  model.validate();
}

nlohmann::json TrainingConfig::to_json() const {
  return {{"margin", margin},
          {"intra_samples", intra_samples},
          {"batch_size", batch_size},
          {"epochs", epochs},
          {"seed", seed},
          {"loss", std::string(to_string(loss))},
          {"model", model.to_json()},
          {"adam",
           {{"learning_rate", adam.learning_rate},
            {"beta1", adam.beta1},
            {"beta2", adam.beta2},
            {"epsilon", adam.epsilon},
            {"decay", adam.decay},
            {"decay_period", adam.decay_period}}}};
}

Vocabulary build_vocabulary(std::span<const TrainingExample> examples) {
  Vocabulary v;
  for (const auto& e : examples) {
    for (const auto& w : e.caption) v.add(w);
    for (const auto& n : e.negatives) {
      for (const auto& w : n) v.add(w);
    }
  }
  return v;
}

double validation_recall(const JointModel& model,
                         const ImageFeatureStore& features,
                         const ValidationSet& set, std::size_t k) {
  const nn::Tensor img = model.embed_images(features.gather(set.images));
  const nn::Tensor cap = model.embed_captions(set.captions);
  std::vector<metrics::RankingResult> results;
  std::vector<double> scores(set.captions.size());
  std::vector<bool> positive(set.captions.size());
  for (std::size_t i = 0; i < set.images.size(); ++i) {
    const auto a = img.row_values(i);
    for (std::size_t c = 0; c < set.captions.size(); ++c) {
      const auto b = cap.row_values(c);
      scores[c] = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
      positive[c] = set.caption_owner[c] == i;
    }
    results.push_back(metrics::rank(features.id(set.images[i]), scores, positive));
  }
  return metrics::recall_at_k(results, k);
}

TrainingResult train(const TrainingData& data, const TrainingConfig& config,
                     const EpochCallback& on_epoch) {
  config.validate();
  if (data.features == nullptr) throw std::invalid_argument("train: no features");
  if (data.examples.empty()) throw DataError("train: no training pairs");
  const ImageFeatureStore& features = *data.features;
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    const auto& e = data.examples[i];
    if (e.caption.empty()) throw DataError("training caption " + std::to_string(i) + " is empty");
    if (e.image >= features.size()) {
      throw DataError("training caption " + std::to_string(i) +
                      " references a missing image row");
    }
  }

  const bool intra = config.loss == LossKind::kVseC;
  std::size_t with_candidates = 0;
  for (const auto& e : data.examples) with_candidates += !e.negatives.empty();
  if (intra && with_candidates == 0) {
    spdlog::warn("no adversarial candidates supplied; VSE-C reduces to VSE++");
  }

  auto init = stream(config.seed, kInit);
  auto batches = stream(config.seed, kBatches);
  auto sampler = stream(config.seed, kNegatives);

  TrainingResult result{JointModel(config.model, build_vocabulary(data.examples),
                                   features.dim(), init),
                        {}};
  JointModel& model = result.model;
  if (data.word_vectors != nullptr) {
    const std::size_t n = model.set_word_vectors(*data.word_vectors);
    spdlog::info("initialised {} of {} word rows from vectors", n,
                 model.vocabulary().size());
  }

  // Token ids once up front.
  std::vector<std::vector<std::size_t>> caption_ids;
  std::vector<std::vector<std::vector<std::size_t>>> negative_ids;
  for (const auto& e : data.examples) {
    caption_ids.push_back(model.vocabulary().encode(e.caption));
    std::vector<std::vector<std::size_t>> negs;
    if (intra) {
      for (const auto& n : e.negatives) {
        if (!n.empty()) negs.push_back(model.vocabulary().encode(n));
      }
    }
    negative_ids.push_back(std::move(negs));
  }

  nn::Adam adam(model.parameters(), config.adam);
  LossOptions opt;
  opt.margin = config.margin;
  std::vector<std::size_t> order(data.examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  bool warned_single = false;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), batches);
    EpochLog log;
    log.epoch = epoch;
    log.learning_rate = adam.learning_rate(epoch);
    double total = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      const std::size_t b = end - begin;
      if (b == 1 && !warned_single) {
        spdlog::warn("batch of one pair has no contrastive terms; loss is 0");
        warned_single = true;
      }
      std::vector<std::size_t> rows;
      std::vector<std::vector<std::size_t>> seqs;
      for (std::size_t k = begin; k < end; ++k) {
        rows.push_back(data.examples[order[k]].image);
        seqs.push_back(caption_ids[order[k]]);
      }
      std::vector<std::size_t> owners;
      std::vector<std::size_t> picked;
      for (std::size_t k = 0; k < b; ++k) {
        const auto& pool = negative_ids[order[begin + k]];
        if (pool.empty()) continue;
        picked.clear();
        std::vector<std::size_t> all(pool.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::sample(all.begin(), all.end(), std::back_inserter(picked),
                    config.intra_samples, sampler);
        for (std::size_t p : picked) {
          seqs.push_back(pool[p]);
          owners.push_back(k);
        }
      }

      nn::Graph g;
      nn::Binder bind(g, true);
      const nn::Var img = model.encode_images(bind, g.input(features.gather(rows)));
      const nn::Var all_caps = model.encode_captions(bind, seqs).joint;
      std::vector<std::size_t> pos_rows(b), neg_rows(owners.size());
      std::iota(pos_rows.begin(), pos_rows.end(), std::size_t{0});
      std::iota(neg_rows.begin(), neg_rows.end(), b);
      const nn::Var caps = g.gather_rows(all_caps, pos_rows);
      const nn::Var negs = g.gather_rows(all_caps, neg_rows);
      const nn::Var loss = batch_loss(g, config.loss, img, caps, negs, owners, opt);
      const double value = g.value(loss).item();
      if (!std::isfinite(value)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) +
                           ", step " + std::to_string(log.steps));
      }
      g.backward(loss);
      adam.step(epoch);
      adam.zero_grad();
      total += value;
      ++log.steps;
    }
    log.loss = log.steps ? total / static_cast<double>(log.steps) : 0.0;
    if (data.validation != nullptr && !data.validation->captions.empty()) {
      log.validation_r1 = validation_recall(model, features, *data.validation, 1);
    }
    if (log.validation_r1) {
      spdlog::info("epoch {} loss {:.4f} lr {:.1e} val R@1 {:.1f}", epoch,
                   log.loss, log.learning_rate, *log.validation_r1);
    } else {
      spdlog::info("epoch {} loss {:.4f} lr {:.1e}", epoch, log.loss,
                   log.learning_rate);
    }
    if (on_epoch) on_epoch(log);
    result.log.push_back(log);
  }
  return result;
}

}  // namespace vsec::vse
