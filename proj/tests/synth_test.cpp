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


#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unistd.h>
#include <vector>

#include <gtest/gtest.h>

#include "vsec/adversary.hpp"
#include "vsec/synth.hpp"

namespace vsec::synth {
namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

template <typename Map>
std::string nearest(const Map& table, std::span<const double> block, double scale) {
  std::string best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& [name, v] : table) {
    std::vector<double> scaled(v);
    for (double& x : scaled) x *= scale;
    const double d = distance(block, scaled);
    if (d < best_d) {
      best_d = d;
      best = name;
    }
  }
  return best;
}

int argmax_count(std::span<const double> block) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < block.size(); ++i) {
    if (block[i] > block[best]) best = i;
  }
  return static_cast<int>(best) + 1;
}

TEST(Render, TemplateExamples) {
  const SceneSpec spec;
  const SynthCorpus c = generate(spec, 1, 0);
  const auto kb = c.lexicon.to_kb();
  Scene s;
  s.count1 = 2;
  s.object1 = "dog";
  s.relation = "on";
  s.count2 = 1;
  s.object2 = "chair";
  EXPECT_EQ(render_caption(s, 0, kb), "two dogs on a chair");
  EXPECT_EQ(render_caption(s, 1, kb), "2 dogs on a chair");
  EXPECT_EQ(render_caption(s, 2, kb), "two dogs on one chair");
  s.count1 = 1;
  s.object1 = "elephant";
  s.count2 = 3;
  s.object2 = "person";
  EXPECT_EQ(render_caption(s, 0, kb), "an elephant on three people");
}

TEST(Generate, ShapesAndIds) {
  SceneSpec spec;
  spec.captions_per_image = 3;
  const SynthCorpus c = generate(spec, 10, 4);
  EXPECT_EQ(c.scenes.size(), 14u);
  EXPECT_EQ(c.train_captions.size(), 30u);
  EXPECT_EQ(c.test_captions.size(), 12u);
  EXPECT_EQ(c.features.size(), 14u);
  EXPECT_EQ(c.features.dim(), spec.feature_dim());
  EXPECT_EQ(c.train_captions.front().caption_id, "train_00000#0");
  EXPECT_EQ(c.test_captions.back().image_id, "test_00003");
  for (const auto& s : c.scenes) {
    EXPECT_NE(s.object1, s.object2);
    EXPECT_GE(s.count1, 1);
    EXPECT_LE(s.count2, spec.max_count);
  }
}

TEST(Generate, DeterministicForASeed) {
  const SynthCorpus a = generate(SceneSpec{}, 20, 5);
  const SynthCorpus b = generate(SceneSpec{}, 20, 5);
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    const auto ra = a.features.row(i), rb = b.features.row(i);
    EXPECT_TRUE(std::equal(ra.begin(), ra.end(), rb.begin()));
  }
  for (std::size_t i = 0; i < a.train_captions.size(); ++i) {
    EXPECT_EQ(a.train_captions[i].text, b.train_captions[i].text);
  }
}

TEST(Generate, NoiselessSameTupleSameFeature) {
  SceneSpec spec;
  spec.sigma = 0.0;
  spec.objects = {"dog", "cat", "chair", "table"};
  spec.relations = {"on", "under"};
  spec.max_count = 2;
  const SynthCorpus c = generate(spec, 300, 0);
  std::map<std::string, std::size_t> seen;
  std::size_t repeats = 0;
  for (std::size_t i = 0; i < c.scenes.size(); ++i) {
    const Scene& s = c.scenes[i];
    const std::string key = std::to_string(s.count1) + s.object1 + s.relation +
                            std::to_string(s.count2) + s.object2;
    const auto [it, fresh] = seen.emplace(key, i);
    if (fresh) continue;
    ++repeats;
    const auto a = c.features.row(it->second), b = c.features.row(i);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin())) << key;
  }
  EXPECT_GT(repeats, 0u);
}

TEST(Generate, GroundTruthRecoverableWithoutNoise) {
  SceneSpec spec;
  spec.sigma = 0.0;
  const SynthCorpus c = generate(spec, 200, 0);
  const std::size_t mc = static_cast<std::size_t>(spec.max_count);
  for (std::size_t i = 0; i < c.scenes.size(); ++i) {
    const Scene& s = c.scenes[i];
    const auto f = c.features.row(i);
    std::size_t at = 0;
    auto take = [&](std::size_t n) {
      const auto block = f.subspan(at, n);
      at += n;
      return block;
    };
    EXPECT_EQ(argmax_count(take(mc)), s.count1);
    EXPECT_EQ(nearest(c.object_vectors, take(spec.object_dim), spec.object_scale), s.object1);
    EXPECT_EQ(nearest(c.relation_vectors, take(spec.relation_dim), spec.relation_scale),
              s.relation);
    EXPECT_EQ(argmax_count(take(mc)), s.count2);
    EXPECT_EQ(nearest(c.object_vectors, take(spec.object_dim), spec.object_scale), s.object2);
    EXPECT_EQ(at, f.size());
  }
}

TEST(Generate, VectorsAreDistinctAndRelationsCompatible) {
  const SynthCorpus c = generate(SceneSpec{}, 1, 0);
  std::set<std::vector<double>> objects, relations;
  for (const auto& [_, v] : c.object_vectors) objects.insert(v);
  for (const auto& [_, v] : c.relation_vectors) relations.insert(v);
  EXPECT_EQ(objects.size(), c.spec.objects.size());
  EXPECT_EQ(relations.size(), c.spec.relations.size());
  const auto kb = c.lexicon.to_kb();
  for (const auto& a : c.spec.relations) {
    for (const auto& b : c.spec.relations) {
      if (a != b) EXPECT_FALSE(kb.prepositions_conflict(a, b)) << a << " " << b;
    }
  }
  for (const auto& o : c.spec.objects) {
    EXPECT_TRUE(kb.is_frequent_concrete_head(o)) << o;
    for (const auto& p : c.spec.objects) {
      if (o != p) EXPECT_FALSE(kb.related(o, p)) << o << " " << p;
    }
  }
}

TEST(Generate, EveryCaptionParsesAndAdmitsAllKinds) {
  const SynthCorpus c = generate(SceneSpec{}, 60, 20);
  const auto kb = c.lexicon.to_kb();
  const adversary::GeneratorConfig cfg;
  for (const auto* records : {&c.train_captions, &c.test_captions}) {
    for (const auto& rec : *records) {
      const auto a = lingua::annotate_record(rec, kb);
      EXPECT_EQ(a.noun_phrases.size(), 2u) << rec.text;
      EXPECT_EQ(a.numerals.size(), 2u) << rec.text;
      EXPECT_EQ(a.prepositions.size(), 1u) << rec.text;
      EXPECT_FALSE(adversary::gen_noun(a, kb, cfg).empty()) << rec.text;
      EXPECT_FALSE(adversary::gen_numeral(a, kb, cfg).empty()) << rec.text;
      EXPECT_FALSE(adversary::gen_shuffle(a, kb, cfg).empty()) << rec.text;
      EXPECT_FALSE(adversary::gen_preposition(a, kb, cfg).empty()) << rec.text;
    }
  }
}

TEST(Spec, ValidationAndJson) {
  SceneSpec spec;
  spec.objects = {"dog", "cat", "chair"};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = SceneSpec{};
  spec.sigma = -1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = SceneSpec{};
  spec.relations.clear();
  EXPECT_THROW(spec.validate(), std::invalid_argument);

  spec = SceneSpec{};
  spec.sigma = 0.25;
  spec.count_scale = 0.7;
  spec.objects.pop_back();
  const SceneSpec back = SceneSpec::from_json(spec.to_json());
  EXPECT_EQ(back.objects, spec.objects);
  EXPECT_EQ(back.sigma, 0.25);
  EXPECT_EQ(back.count_scale, 0.7);
  EXPECT_EQ(back.feature_dim(), spec.feature_dim());
}

TEST(WriteCorpus, ArtifactsReadBack) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("vsec_synth_test_" + std::to_string(::getpid()));
  const SynthCorpus c = generate(SceneSpec{}, 8, 2);
  for (bool binary : {false, true}) {
    std::filesystem::remove_all(dir);
    write_corpus(dir, c, binary);
    const auto train = lingua::read_captions(dir / "captions_train.jsonl");
    ASSERT_EQ(train.size(), c.train_captions.size());
    EXPECT_EQ(train[3].text, c.train_captions[3].text);
    const auto feats = vse::read_features(dir / (binary ? "features.bin" : "features.tsv"));
    EXPECT_EQ(feats.ids(), c.features.ids());
    EXPECT_NEAR(feats.row(5)[2], c.features.row(5)[2], 1e-6);
    const auto kb = knowledge::load_kb(knowledge::ResourcePaths::in_directory(dir / "kb"));
    EXPECT_TRUE(kb.is_frequent("dog"));
    EXPECT_EQ(kb.pluralize("person"), "people");
    EXPECT_FALSE(kb.prepositions_conflict("on", "under"));
    EXPECT_TRUE(std::filesystem::exists(dir / "scenes.jsonl"));
    EXPECT_TRUE(std::filesystem::exists(dir / "spec.json"));
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace vsec::synth
