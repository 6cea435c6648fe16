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


#include "vsec/tasks/fitb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "vsec/error.hpp"
#include "vsec/nn/binder.hpp"
#include "vsec/nn/checkpoint.hpp"

namespace vsec::tasks {

namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), purpose};
  return std::mt19937_64(seq);
}

enum Stream : std::uint32_t { kInit = 21, kBatches = 22 };

double cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  const double denom = std::sqrt(aa * bb);
  return denom > 0 ? ab / denom : 0.0;
}

vse::Vocabulary sample_vocabulary(std::span<const FitbSample> samples) {
  vse::Vocabulary v;
  for (const auto& s : samples) {
    for (const auto& w : s.prefix) v.add(w);
    v.add(s.target);
    for (const auto& w : s.suffix) v.add(w);
  }
  return v;
}

}  // namespace

std::string_view to_string(BlankKind kind) {
  return kind == BlankKind::kNoun ? "noun" : "preposition";
}

std::vector<FitbSample> build_fitb_dataset(std::span<const lingua::AnnotatedCaption> corpus) {
  std::vector<FitbSample> out;
  for (const auto& caption : corpus) {
    const std::vector<std::string> words = caption.words();
    for (std::size_t i = 0; i < caption.tokens.size(); ++i) {
      const lingua::Pos pos = caption.tokens[i].pos;
      BlankKind kind;
      if (pos == lingua::Pos::kNoun || pos == lingua::Pos::kPropn) {
        kind = BlankKind::kNoun;
      } else if (pos == lingua::Pos::kPrep) {
        kind = BlankKind::kPreposition;
      } else {
        continue;
      }
      FitbSample s;
      s.caption_id = caption.caption_id;
      s.image_id = caption.image_id;
      s.prefix.assign(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(i));
      s.suffix.assign(words.begin() + static_cast<std::ptrdiff_t>(i) + 1, words.end());
      s.target = words[i];
      s.kind = kind;
      out.push_back(std::move(s));
    }
  }
  return out;
}

void FitbConfig::validate() const {
  if (word_dim == 0 || hidden_dim == 0 || mlp_hidden_dim == 0) {
    throw std::invalid_argument("fitb dimensions must be >= 1");
  }
  if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
}

nlohmann::json FitbConfig::to_json() const {
  return {{"word_dim", word_dim},
          {"hidden_dim", hidden_dim},
          {"mlp_hidden_dim", mlp_hidden_dim},
          {"batch_size", batch_size},
          {"epochs", epochs},
          {"seed", seed},
          {"learning_rate", adam.learning_rate}};
}

FitbModel::FitbModel(const FitbConfig& config, vse::Vocabulary vocabulary,
                     std::size_t image_dim, std::mt19937_64& rng,
                     const vse::WordVectors* vectors)
    : vocabulary_(std::move(vocabulary)), image_dim_(image_dim) {
  config.validate();
  if (vectors != nullptr && vectors->vectors.cols() != config.word_dim) {
    throw ShapeError("word vectors have " + std::to_string(vectors->vectors.cols()) +
                     " dims, fitb expects " + std::to_string(config.word_dim));
  }
  std::unordered_map<std::string, std::size_t> given;
  if (vectors != nullptr) {
    for (std::size_t i = 0; i < vectors->words.size(); ++i) given.emplace(vectors->words[i], i);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  table_ = nn::Tensor(vocabulary_.size(), config.word_dim);
  for (std::size_t r = 0; r < vocabulary_.size(); ++r) {
    auto row = table_.row_values(r);
    double sq = 0.0;
    for (double& x : row) {
      x = normal(rng);
      sq += x * x;
    }
    for (double& x : row) x /= std::sqrt(sq);
    const auto it = given.find(vocabulary_.word(r));
    if (it != given.end()) {
      const auto src = vectors->vectors.row_values(it->second);
      std::copy(src.begin(), src.end(), row.begin());
    }
  }
  forward_ = nn::Gru("fitb.forward", config.word_dim, config.hidden_dim, rng);
  backward_ = nn::Gru("fitb.backward", config.word_dim, config.hidden_dim, rng);
  head_ = nn::Mlp("fitb.head", 2 * config.hidden_dim + image_dim, config.mlp_hidden_dim,
                  config.word_dim, rng);
}

nn::Var FitbModel::predict(nn::Binder& bind, nn::Var images,
                           std::span<const FitbSample* const> samples) {
  nn::Graph& g = bind.graph();
  std::vector<std::size_t> flat;
  std::vector<std::vector<std::size_t>> before, after;
  for (const FitbSample* s : samples) {
    std::vector<std::size_t> seq;
    for (const auto& w : s->prefix) {
      seq.push_back(flat.size());
      flat.push_back(vocabulary_.index(w));
    }
    before.push_back(std::move(seq));
    seq.clear();
    for (auto it = s->suffix.rbegin(); it != s->suffix.rend(); ++it) {
      seq.push_back(flat.size());
      flat.push_back(vocabulary_.index(*it));
    }
    after.push_back(std::move(seq));
  }
  const nn::Var tokens = flat.empty() ? g.input(nn::Tensor(1, word_dim()))
                                      : g.gather_rows(g.view(table_), flat);
  const nn::Var parts[] = {forward_.run(bind, tokens, before),
                           backward_.run(bind, tokens, after), images};
  return head_.forward(bind, g.concat(parts));
}

nn::Tensor FitbModel::predict(const vse::ImageFeatureStore& features,
                              std::span<const FitbSample* const> samples) const {
  std::vector<std::size_t> rows;
  for (const FitbSample* s : samples) rows.push_back(features.index(s->image_id));
  nn::Graph g;
  nn::Binder bind(g, false);
  auto& self = const_cast<FitbModel&>(*this);
  return g.value(self.predict(bind, g.input(features.gather(rows)), samples));
}

std::vector<nn::Parameter*> FitbModel::parameters() {
  std::vector<nn::Parameter*> out = forward_.parameters();
  for (auto* p : backward_.parameters()) out.push_back(p);
  for (auto* p : head_.parameters()) out.push_back(p);
  return out;
}

void FitbModel::save(const std::filesystem::path& manifest) const {
  std::vector<nn::NamedTensor> tensors{{"fitb.table", table_}};
  for (auto& t : forward_.tensors()) tensors.push_back(std::move(t));
  for (auto& t : backward_.tensors()) tensors.push_back(std::move(t));
  for (auto& t : head_.tensors()) tensors.push_back(std::move(t));
  nn::save_checkpoint(manifest, tensors,
                      {{"model", "fitb"},
                       {"vocabulary", vocabulary_.words()},
                       {"image_dim", image_dim_},
                       {"hidden_dim", forward_.hidden_dim()},
                       {"mlp_hidden_dim", head_.hidden_dim()}});
}

FitbModel FitbModel::load(const std::filesystem::path& manifest) {
  const nn::Checkpoint ckpt = nn::load_checkpoint(manifest);
  if (ckpt.meta.value("model", "") != "fitb") {
    throw DataError(manifest.string() + " is not a fill-in-the-blank checkpoint");
  }
  const auto words = ckpt.meta.at("vocabulary").get<std::vector<std::string>>();
  const nn::Tensor& table = ckpt.at("fitb.table");
  if (words.empty()) throw DataError(manifest.string() + ": empty vocabulary");
  FitbConfig cfg;
  cfg.word_dim = table.cols();
  cfg.hidden_dim = ckpt.meta.at("hidden_dim").get<std::size_t>();
  cfg.mlp_hidden_dim = ckpt.meta.at("mlp_hidden_dim").get<std::size_t>();
  std::mt19937_64 rng(0);
  vse::Vocabulary vocab(std::span<const std::string>(words).subspan(1));
  if (vocab.words() != words || table.rows() != words.size()) {
    throw DataError(manifest.string() + ": vocabulary does not match the word table");
  }
  FitbModel m(cfg, std::move(vocab), ckpt.meta.at("image_dim").get<std::size_t>(), rng);
  m.table_ = table;
  m.forward_.load(ckpt);
  m.backward_.load(ckpt);
  m.head_.load(ckpt);
  return m;
}

FitbModel untrained_fitb(std::span<const FitbSample> samples,
                         const vse::ImageFeatureStore& features,
                         const FitbConfig& config, const vse::WordVectors* vectors) {
  auto init = stream(config.seed, kInit);
  return FitbModel(config, sample_vocabulary(samples), features.dim(), init, vectors);
}

FitbModel train_fitb(std::span<const FitbSample> samples,
                     const vse::ImageFeatureStore& features, const FitbConfig& config,
                     const vse::WordVectors* vectors,
                     const std::function<void(const FitbEpoch&)>& on_epoch) {
  config.validate();
  if (samples.empty()) throw DataError("fill-in-the-blank: no training samples");
  FitbModel model = untrained_fitb(samples, features, config, vectors);
  auto batches = stream(config.seed, kBatches);
  nn::Adam adam(model.parameters(), config.adam);

  std::vector<std::size_t> rows(samples.size());
  std::vector<std::size_t> targets(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rows[i] = features.index(samples[i].image_id);
    targets[i] = model.vocabulary().index(samples[i].target);
  }
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), batches);
    double total = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      std::vector<const FitbSample*> batch;
      std::vector<std::size_t> image_rows, target_rows;
      for (std::size_t k = begin; k < end; ++k) {
        batch.push_back(&samples[order[k]]);
        image_rows.push_back(rows[order[k]]);
        target_rows.push_back(targets[order[k]]);
      }
      nn::Graph g;
      nn::Binder bind(g, true);
      const nn::Var pred = model.predict(bind, g.input(features.gather(image_rows)), batch);
      const nn::Var goal = g.gather_rows(g.view(model.word_table()), target_rows);
      const nn::Var loss = g.scale(g.sum(g.cosine_distance(pred, goal)),
                                   1.0 / static_cast<double>(batch.size()));
      const double value = g.value(loss).item();
      if (!std::isfinite(value)) throw NumericError("fill-in-the-blank loss is not finite");
      adam.zero_grad();
      g.backward(loss);
      adam.step(epoch);
      total += value * static_cast<double>(batch.size());
    }
    const FitbEpoch log{epoch, total / static_cast<double>(samples.size())};
    spdlog::debug("fitb epoch {} loss {:.5f}", epoch, log.loss);
    if (on_epoch) on_epoch(log);
  }
  return model;
}

std::size_t cosine_rank(const nn::Tensor& table, std::span<const double> prediction,
                        std::size_t target, std::size_t first) {
  if (target < first || target >= table.rows()) {
    throw std::out_of_range("cosine_rank: target row outside the candidate range");
  }
  const double mine = cosine(table.row_values(target), prediction);
  std::size_t rank = 1;
  for (std::size_t r = first; r < table.rows(); ++r) {
    if (r != target && cosine(table.row_values(r), prediction) >= mine) ++rank;
  }
  return rank;
}

metrics::MetricsReport fitb_eval(const FitbModel& model, std::span<const FitbSample> samples,
                                 const vse::ImageFeatureStore& features,
                                 std::initializer_list<std::size_t> ks,
                                 std::vector<metrics::RankingResult>* queries) {
  std::vector<const FitbSample*> kept;
  std::size_t skipped = 0;
  for (const auto& s : samples) {
    if (model.vocabulary().contains(s.target)) {
      kept.push_back(&s);
    } else {
      ++skipped;
    }
  }
  if (skipped > 0) spdlog::warn("{} blanks have out-of-vocabulary targets", skipped);
  if (kept.empty()) throw DataError("fill-in-the-blank: nothing to evaluate");

  std::map<BlankKind, std::vector<metrics::RankingResult>> by_kind;
  std::vector<metrics::RankingResult> all;
  const std::size_t chunk = 256;
  for (std::size_t begin = 0; begin < kept.size(); begin += chunk) {
    const std::size_t end = std::min(kept.size(), begin + chunk);
    const auto batch = std::span<const FitbSample* const>(kept).subspan(begin, end - begin);
    const nn::Tensor pred = model.predict(features, batch);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const FitbSample& s = *batch[b];
      // Row 0 is the unknown-word slot and never a candidate.
      const std::size_t target = model.vocabulary().index(s.target);
      const nn::Tensor& table = model.word_table();
      std::vector<double> scores;
      std::vector<bool> relevant;
      for (std::size_t r = 1; r < table.rows(); ++r) {
        scores.push_back(cosine(table.row_values(r), pred.row_values(b)));
        relevant.push_back(r == target);
      }
      auto result = metrics::rank(s.caption_id, scores, relevant);
      by_kind[s.kind].push_back(result);
      all.push_back(std::move(result));
    }
  }
  metrics::MetricsReport report = metrics::retrieval_report(all, ks);
  for (const auto& [kind, results] : by_kind) {
    report.breakdown[std::string(to_string(kind))] = metrics::retrieval_report(results, ks);
  }
  report.extra["skipped"] = skipped;
  if (queries != nullptr) *queries = std::move(all);
  report.extra["vocabulary"] = model.vocabulary().size() - 1;
  return report;
}

}  // namespace vsec::tasks
