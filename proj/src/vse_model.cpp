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


#include "vsec/vse/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vsec/error.hpp"
#include "vsec/nn/checkpoint.hpp"

namespace vsec::vse {

std::string_view to_string(EncoderKind kind) {
  return kind == EncoderKind::kAverage ? "average" : "recurrent";
}

EncoderKind parse_encoder(std::string_view name) {
  if (name == "average") return EncoderKind::kAverage;
  if (name == "recurrent") return EncoderKind::kRecurrent;
  throw std::invalid_argument("unknown encoder '" + std::string(name) + "'");
}

void ModelConfig::validate() const {
  if (word_dim == 0 || joint_dim == 0 ||
      (encoder == EncoderKind::kRecurrent && hidden_dim == 0)) {
    throw std::invalid_argument("model dimensions must be positive");
  }
}

nlohmann::json ModelConfig::to_json() const {
  return {{"word_dim", word_dim},
          {"hidden_dim", hidden_dim},
          {"joint_dim", joint_dim},
          {"encoder", std::string(to_string(encoder))},
          {"bidirectional", bidirectional},
          {"normalize", normalize},
          {"train_embeddings", train_embeddings}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.word_dim = j.value("word_dim", c.word_dim);
  c.hidden_dim = j.value("hidden_dim", c.hidden_dim);
  c.joint_dim = j.value("joint_dim", c.joint_dim);
  c.encoder = parse_encoder(j.value("encoder", std::string("recurrent")));
  c.bidirectional = j.value("bidirectional", c.bidirectional);
  c.normalize = j.value("normalize", c.normalize);
  c.train_embeddings = j.value("train_embeddings", c.train_embeddings);
  return c;
}

JointModel::JointModel(ModelConfig config, Vocabulary vocabulary,
                       std::size_t image_dim, std::mt19937_64& rng)
    : config_(config), vocabulary_(std::move(vocabulary)), image_dim_(image_dim) {
  config_.validate();
  if (image_dim == 0) throw std::invalid_argument("image_dim must be positive");
  std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(double(config_.word_dim)));
  nn::Tensor table(vocabulary_.size(), config_.word_dim);
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = n(rng);
  embedding_ = nn::Parameter("embedding", std::move(table));
  w_image_ = nn::Parameter("w_image", nn::glorot(image_dim, config_.joint_dim, rng));
  if (config_.encoder == EncoderKind::kRecurrent) {
    forward_ = nn::Gru("gru_fwd", config_.word_dim, config_.hidden_dim, rng);
    if (config_.bidirectional) {
      backward_ = nn::Gru("gru_bwd", config_.word_dim, config_.hidden_dim, rng);
    }
  }
  w_caption_ = nn::Parameter("w_caption",
                             nn::glorot(encoder_dim(), config_.joint_dim, rng));
}

std::size_t JointModel::encoder_dim() const {
  if (config_.encoder == EncoderKind::kAverage) return config_.word_dim;
  return config_.hidden_dim * (config_.bidirectional ? 2 : 1);
}

WordVectors JointModel::word_vectors() const {
  return WordVectors{vocabulary_.words(), embedding_.value};
}

std::size_t JointModel::set_word_vectors(const WordVectors& wv) {
  if (wv.vectors.cols() != config_.word_dim) {
    throw DataError("word vectors have dimension " +
                    std::to_string(wv.vectors.cols()) + ", model expects " +
                    std::to_string(config_.word_dim));
  }
  std::size_t matched = 0;
  for (std::size_t i = 0; i < wv.words.size(); ++i) {
    if (!vocabulary_.contains(wv.words[i])) continue;
    const auto src = wv.vectors.row_values(i);
    std::copy(src.begin(), src.end(),
              embedding_.value.row_values(vocabulary_.index(wv.words[i])).begin());
    ++matched;
  }
  return matched;
}

std::vector<nn::Parameter*> JointModel::parameters() {
  std::vector<nn::Parameter*> out;
  if (config_.train_embeddings) out.push_back(&embedding_);
  out.push_back(&w_image_);
  out.push_back(&w_caption_);
  if (config_.encoder == EncoderKind::kRecurrent) {
    for (auto* p : forward_.parameters()) out.push_back(p);
    if (config_.bidirectional) {
      for (auto* p : backward_.parameters()) out.push_back(p);
    }
  }
  return out;
}

nn::Var JointModel::encode_images(nn::Binder& bind, nn::Var features) {
  nn::Graph& g = bind.graph();
  if (g.value(features).cols() != image_dim_) {
    throw ShapeError("encode_images: feature dimension " +
                     std::to_string(g.value(features).cols()) + ", expected " +
                     std::to_string(image_dim_));
  }
  const nn::Var projected = g.matmul(features, bind(w_image_));
  return config_.normalize ? g.l2_normalize(projected) : projected;
}

CaptionNodes JointModel::encode_captions(
    nn::Binder& bind, std::span<const std::vector<std::size_t>> ids) {
  nn::Graph& g = bind.graph();
  CaptionNodes out;
  std::vector<std::size_t> flat;
  for (const auto& c : ids) {
    if (c.empty()) throw std::invalid_argument("cannot encode an empty caption");
    out.offsets.push_back(flat.size());
    flat.insert(flat.end(), c.begin(), c.end());
  }
  // The table is bound untracked when embeddings are frozen.
  const nn::Var table = config_.train_embeddings || !bind.tracking()
                            ? bind(embedding_)
                            : g.view(embedding_.value);
  out.tokens = g.gather_rows(table, flat);

  nn::Var encoded;
  if (config_.encoder == EncoderKind::kAverage) {
    nn::Tensor avg(ids.size(), flat.size());
    for (std::size_t b = 0; b < ids.size(); ++b) {
      const double w = 1.0 / static_cast<double>(ids[b].size());
      for (std::size_t t = 0; t < ids[b].size(); ++t) avg(b, out.offsets[b] + t) = w;
    }
    encoded = g.matmul(g.input(std::move(avg)), out.tokens);
  } else {
    std::vector<std::vector<std::size_t>> fwd(ids.size());
    for (std::size_t b = 0; b < ids.size(); ++b) {
      for (std::size_t t = 0; t < ids[b].size(); ++t) {
        fwd[b].push_back(out.offsets[b] + t);
      }
    }
    encoded = forward_.run(bind, out.tokens, fwd);
    if (config_.bidirectional) {
      for (auto& s : fwd) std::reverse(s.begin(), s.end());
      const nn::Var parts[] = {encoded, backward_.run(bind, out.tokens, fwd)};
      encoded = g.concat(parts);
    }
  }
  const nn::Var projected = g.matmul(encoded, bind(w_caption_));
  out.joint = config_.normalize ? g.l2_normalize(projected) : projected;
  return out;
}

CaptionNodes JointModel::encode_captions(nn::Binder& bind,
                                         std::span<const Caption> captions) {
  std::vector<std::vector<std::size_t>> ids;
  ids.reserve(captions.size());
  for (const auto& c : captions) ids.push_back(vocabulary_.encode(c));
  return encode_captions(bind, ids);
}

nn::Tensor JointModel::embed_images(const nn::Tensor& features) const {
  nn::Graph g;
  nn::Binder bind(g, false);
  return g.value(self().encode_images(bind, g.view(features)));
}

nn::Tensor JointModel::embed_captions(std::span<const Caption> captions,
                                      std::size_t chunk) const {
  nn::Tensor out(captions.size(), config_.joint_dim);
  chunk = std::max<std::size_t>(chunk, 1);
  for (std::size_t begin = 0; begin < captions.size(); begin += chunk) {
    const std::size_t n = std::min(chunk, captions.size() - begin);
    nn::Graph g;
    nn::Binder bind(g, false);
    const nn::Tensor& part =
        g.value(self().encode_captions(bind, captions.subspan(begin, n)).joint);
    std::copy(part.values().begin(), part.values().end(),
              out.values().begin() + static_cast<std::ptrdiff_t>(begin * config_.joint_dim));
  }
  return out;
}

std::vector<double> JointModel::encode_image(std::span<const double> feature) const {
  const nn::Tensor t = embed_images(
      nn::Tensor(1, feature.size(), std::vector<double>(feature.begin(), feature.end())));
  return {t.values().begin(), t.values().end()};
}

std::vector<double> JointModel::encode_caption(const Caption& caption) const {
  const nn::Tensor t = embed_captions(std::span<const Caption>(&caption, 1));
  return {t.values().begin(), t.values().end()};
}

double JointModel::similarity(std::span<const double> feature,
                              const Caption& caption) const {
  const auto a = encode_image(feature);
  const auto b = encode_caption(caption);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

JointModel::InputGraph JointModel::similarity_graph(
    nn::Graph& g, std::span<const double> feature, const Caption& caption) const {
  nn::Binder bind(g, false);
  InputGraph out;
  out.feature = g.input(nn::Tensor(
      1, feature.size(), std::vector<double>(feature.begin(), feature.end())));
  const nn::Var img = self().encode_images(bind, out.feature);
  const CaptionNodes cap =
      self().encode_captions(bind, std::span<const Caption>(&caption, 1));
  out.tokens = cap.tokens;
  out.score = g.dot(img, cap.joint);
  return out;
}

void JointModel::save(const std::filesystem::path& manifest,
                      nlohmann::json meta) const {
  std::vector<nn::NamedTensor> tensors{{embedding_.name, embedding_.value},
                                       {w_image_.name, w_image_.value},
                                       {w_caption_.name, w_caption_.value}};
  if (config_.encoder == EncoderKind::kRecurrent) {
    for (auto& t : forward_.tensors()) tensors.push_back(std::move(t));
    if (config_.bidirectional) {
      for (auto& t : backward_.tensors()) tensors.push_back(std::move(t));
    }
  }
  meta["model"] = config_.to_json();
  meta["vocabulary"] = vocabulary_.words();
  meta["image_dim"] = image_dim_;
  nn::save_checkpoint(manifest, tensors, meta);
}

JointModel JointModel::load(const std::filesystem::path& manifest) {
  const nn::Checkpoint ckpt = nn::load_checkpoint(manifest);
  const auto& meta = ckpt.meta;
  if (!meta.contains("model") || !meta.contains("vocabulary") ||
      !meta.contains("image_dim")) {
    throw DataError(manifest.string() + ": not a joint-model checkpoint");
  }
  const auto words = meta.at("vocabulary").get<std::vector<std::string>>();
  Vocabulary vocab;
  for (const auto& w : words) vocab.add(w);
  if (vocab.size() != words.size()) {
    throw DataError(manifest.string() + ": malformed vocabulary");
  }
  std::mt19937_64 rng(0);
  JointModel m(ModelConfig::from_json(meta.at("model")), std::move(vocab),
               meta.at("image_dim").get<std::size_t>(), rng);
  for (nn::Parameter* p : {&m.embedding_, &m.w_image_, &m.w_caption_}) {
    const nn::Tensor& t = ckpt.at(p->name);
    if (!t.same_shape(p->value)) {
      throw DataError(manifest.string() + ": tensor '" + p->name + "' has shape " +
                      t.shape_string() + ", expected " + p->value.shape_string());
    }
    p->value = t;
  }
  if (m.config_.encoder == EncoderKind::kRecurrent) {
    m.forward_.load(ckpt);
    if (m.config_.bidirectional) m.backward_.load(ckpt);
  }
  return m;
}

}  // namespace vsec::vse
