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


#include "vsec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "vsec/error.hpp"

namespace vsec::synth {

namespace {

std::vector<double> gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

template <typename T>
T pick(const std::vector<T>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

std::string id_for(bool train, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%05zu", train ? "train" : "test", n);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

}  // namespace

void SceneSpec::validate() const {
  if (objects.size() < 4) throw std::invalid_argument("need at least 4 objects");
  if (relations.empty()) throw std::invalid_argument("need at least 1 relation");
  if (max_count < 2) throw std::invalid_argument("max_count must be >= 2");
  if (object_dim == 0 || relation_dim == 0) {
    throw std::invalid_argument("feature dimensions must be positive");
  }
  if (!(sigma >= 0)) throw std::invalid_argument("sigma must be >= 0");
  if (captions_per_image == 0) {
    throw std::invalid_argument("captions_per_image must be >= 1");
  }
  auto distinct = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(objects) || !distinct(relations)) {
    throw std::invalid_argument("objects and relations must be distinct");
  }
}

nlohmann::json SceneSpec::to_json() const {
  return {{"objects", objects},       {"relations", relations},
          {"max_count", max_count},   {"object_dim", object_dim},
          {"relation_dim", relation_dim}, {"sigma", sigma},
          {"object_scale", object_scale}, {"count_scale", count_scale},
          {"relation_scale", relation_scale},
          {"captions_per_image", captions_per_image}, {"seed", seed}};
}

SceneSpec SceneSpec::from_json(const nlohmann::json& j) {
  SceneSpec s;
  s.objects = j.value("objects", s.objects);
  s.relations = j.value("relations", s.relations);
  s.max_count = j.value("max_count", s.max_count);
  s.object_dim = j.value("object_dim", s.object_dim);
  s.relation_dim = j.value("relation_dim", s.relation_dim);
  s.sigma = j.value("sigma", s.sigma);
  s.object_scale = j.value("object_scale", s.object_scale);
  s.count_scale = j.value("count_scale", s.count_scale);
  s.relation_scale = j.value("relation_scale", s.relation_scale);
  s.captions_per_image = j.value("captions_per_image", s.captions_per_image);
  s.seed = j.value("seed", s.seed);
  return s;
}

std::size_t SceneSpec::feature_dim() const {
  return 2 * static_cast<std::size_t>(max_count) + 2 * object_dim + relation_dim;
}

nlohmann::json Scene::to_json() const {
  return {{"image_id", image_id}, {"count1", count1},   {"object1", object1},
          {"relation", relation}, {"count2", count2},   {"object2", object2},
          {"split", train ? "train" : "test"}};
}

knowledge::LexicalKB SynthLexicon::to_kb(knowledge::KnowledgeConfig config) const {
  knowledge::LexicalKB kb(config);
  kb.set_frequencies(frequency);
  for (const auto& [w, c] : concreteness) kb.set_concreteness(w, c);
  for (const auto& [id, w] : overlap) kb.add_overlap(id, w);
  for (const auto& [s, p] : irregulars) kb.add_irregular(s, p);
  return kb;
}

std::vector<double> clean_feature(const SynthCorpus& corpus, const Scene& scene) {
  const SceneSpec& spec = corpus.spec;
  std::vector<double> f;
  f.reserve(spec.feature_dim());
  auto one_hot = [&](int count) {
    for (int c = 1; c <= spec.max_count; ++c) {
      f.push_back(c == count ? spec.count_scale : 0.0);
    }
  };
  auto append = [&](const std::vector<double>& v, double scale) {
    for (double x : v) f.push_back(scale * x);
  };
  one_hot(scene.count1);
  append(corpus.object_vectors.at(scene.object1), spec.object_scale);
  append(corpus.relation_vectors.at(scene.relation), spec.relation_scale);
  one_hot(scene.count2);
  append(corpus.object_vectors.at(scene.object2), spec.object_scale);
  return f;
}

std::string render_caption(const Scene& scene, std::size_t variant,
                           const knowledge::LexicalKB& kb) {
  auto phrase = [&](int count, const std::string& object, bool alt) {
    if (count == 1) {
      const bool vowel = std::string("aeiou").find(object[0]) != std::string::npos;
      return std::string(alt ? "one" : (vowel ? "an" : "a")) + " " + object;
    }
    const std::string num = alt ? std::to_string(count) : lingua::number_word(count);
    return num + " " + kb.pluralize(object);
  };
  return phrase(scene.count1, scene.object1, variant % 2 == 1) + " " +
         scene.relation + " " +
         phrase(scene.count2, scene.object2, (variant / 2) % 2 == 1);
}

SynthCorpus generate(const SceneSpec& spec, std::size_t n_train, std::size_t n_test) {
  spec.validate();
  SynthCorpus out;
  out.spec = spec;
  std::mt19937_64 rng(spec.seed);

  for (const auto& o : spec.objects) {
    out.object_vectors[o] = gaussian(spec.object_dim, rng);
  }
  for (const auto& r : spec.relations) {
    out.relation_vectors[r] = gaussian(spec.relation_dim, rng);
  }

  // Lexicon: every object and relation frequent, objects fully concrete,
  // no hypernymy, overlap sets cut down to the relation vocabulary.
  knowledge::ResourcePaths bundled;
  bundled.prep_overlap = knowledge::bundled_data_dir() / "prep_overlap.tsv";
  bundled.irregular_plurals = knowledge::bundled_data_dir() / "irregular_plurals.tsv";
  const knowledge::LexicalKB base = knowledge::load_kb(bundled);
  for (const auto& o : spec.objects) {
    out.lexicon.frequency[o] = 1000;
    out.lexicon.concreteness[o] = 1.0;
    const auto it = base.irregular_plurals().find(o);
    if (it != base.irregular_plurals().end()) out.lexicon.irregulars.emplace_back(o, it->second);
  }
  for (const auto& r : spec.relations) out.lexicon.frequency[r] = 1000;
  for (int id : base.overlap_set_ids()) {
    for (const auto& w : base.overlap_set(id)) {
      if (std::find(spec.relations.begin(), spec.relations.end(), w) !=
          spec.relations.end()) {
        out.lexicon.overlap.emplace_back(id, w);
      }
    }
  }
  const knowledge::LexicalKB kb = out.lexicon.to_kb();

  out.features = vse::ImageFeatureStore(spec.feature_dim());
  std::uniform_int_distribution<int> count(1, spec.max_count);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t n = 0; n < n_train + n_test; ++n) {
    Scene s;
    s.train = n < n_train;
    s.image_id = id_for(s.train, s.train ? n : n - n_train);
    s.count1 = count(rng);
    s.object1 = pick(spec.objects, rng);
    s.relation = pick(spec.relations, rng);
    s.count2 = count(rng);
    do {
      s.object2 = pick(spec.objects, rng);
    } while (s.object2 == s.object1);

    auto f = clean_feature(out, s);
    for (double& x : f) x += spec.sigma * noise(rng);
    out.features.add(s.image_id, f);

    auto& captions = s.train ? out.train_captions : out.test_captions;
    for (std::size_t k = 0; k < spec.captions_per_image; ++k) {
      captions.push_back({s.image_id, s.image_id + "#" + std::to_string(k),
                          render_caption(s, k, kb), std::nullopt});
    }
    out.scenes.push_back(std::move(s));
  }
  return out;
}

void write_corpus(const std::filesystem::path& dir, const SynthCorpus& corpus,
                  bool binary_features) {
  std::filesystem::create_directories(dir / "kb");
  lingua::write_captions(dir / "captions_train.jsonl", corpus.train_captions);
  lingua::write_captions(dir / "captions_test.jsonl", corpus.test_captions);
  {
    auto out = open_out(dir / "scenes.jsonl");
    for (const auto& s : corpus.scenes) out << s.to_json().dump() << '\n';
  }
  {
    auto out = open_out(dir / "spec.json");
    out << corpus.spec.to_json().dump(2) << '\n';
  }
  if (binary_features) {
    vse::write_features_binary(dir / "features.bin", corpus.features);
  } else {
    vse::write_features_text(dir / "features.tsv", corpus.features);
  }
  const auto& lex = corpus.lexicon;
  {
    auto out = open_out(dir / "kb" / "frequency.tsv");
    for (const auto& [w, c] : lex.frequency) out << w << '\t' << c << '\n';
  }
  {
    auto out = open_out(dir / "kb" / "concreteness.tsv");
    for (const auto& [w, c] : lex.concreteness) out << w << '\t' << c << '\n';
  }
  {
    auto out = open_out(dir / "kb" / "prep_overlap.tsv");
    for (const auto& [id, w] : lex.overlap) out << id << '\t' << w << '\n';
  }
  {
    auto out = open_out(dir / "kb" / "irregular_plurals.tsv");
    for (const auto& [s, p] : lex.irregulars) out << s << '\t' << p << '\n';
  }
  open_out(dir / "kb" / "hypernyms.tsv");
  open_out(dir / "kb" / "synsets.tsv");
}

}  // namespace vsec::synth
