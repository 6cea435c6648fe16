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


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "support/gradcheck.hpp"
#include "support/loss_oracle.hpp"
#include "vsec/error.hpp"
#include "vsec/nn/binder.hpp"
#include "vsec/vse.hpp"

namespace vsec::vse {
namespace {

using nn::Graph;
using nn::Tensor;
using nn::Var;
using testing::Scores;

Tensor to_tensor(const Scores& s) {
  Tensor t(s.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) t(i, j) = s[i][j];
  }
  return t;
}

Scores random_scores(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Scores s(n, std::vector<double>(n));
  for (auto& row : s) {
    for (double& x : row) x = u(rng);
  }
  return s;
}

double eval_loss(LossKind kind, const Scores& s, const LossOptions& opt = {}) {
  Graph g;
  const Var v = g.input(to_tensor(s));
  const Var l = kind == LossKind::kVse ? loss_vse(g, v, opt) : loss_vsepp(g, v, opt);
  return g.value(l).item();
}

double eval_intra(const std::vector<double>& positive, const std::vector<double>& negative,
                  const std::vector<std::size_t>& owners, double margin) {
  Graph g;
  const Var l = intra_term(g, g.input(Tensor::column(positive)),
                           g.input(Tensor::column(negative)), owners, margin);
  return g.value(l).item();
}

// Image 0 scores its caption 0.9 and the others 0.5 and 0.85; the remaining
// pairs are far apart so only those two hinges can fire.
Scores scalar_setup() {
  return {{0.9, 0.5, 0.85}, {-1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}};
}

TEST(LossExamples, VseCaptionSideScalarCase) {
  LossOptions opt;
  opt.image_side = false;
  EXPECT_NEAR(eval_loss(LossKind::kVse, scalar_setup(), opt), 0.15, 1e-12);
}

TEST(LossExamples, VseppCaptionSideTakesTheMax) {
  LossOptions opt;
  opt.image_side = false;
  EXPECT_NEAR(eval_loss(LossKind::kVsePlusPlus, scalar_setup(), opt), 0.15, 1e-12);
}

TEST(LossExamples, IntraTermSingleCandidate) {
  EXPECT_NEAR(eval_intra({0.9}, {0.95}, {0}, 0.2), 0.25, 1e-12);
}

TEST(LossExamples, AllNegativesWellBelowGiveZero) {
  const Scores s{{0.9, 0.55, 0.1}, {0.2, 0.8, 0.45}, {-0.3, 0.1, 0.7}};
  EXPECT_EQ(eval_loss(LossKind::kVse, s), 0.0);
  EXPECT_EQ(eval_loss(LossKind::kVsePlusPlus, s), 0.0);
}

TEST(LossExamples, UniformViolationCostsTwoDeltaPerPair) {
  const double alpha = 0.2, delta = 0.05, p = 0.7;
  for (std::size_t n : {2u, 3u, 6u}) {
    Scores s(n, std::vector<double>(n, p - alpha + delta));
    for (std::size_t i = 0; i < n; ++i) s[i][i] = p;
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(eval_loss(LossKind::kVsePlusPlus, s), 2 * delta * nn, 1e-12);
    EXPECT_NEAR(eval_loss(LossKind::kVse, s), 2 * delta * (nn - 1) * nn, 1e-12);
  }
}

TEST(LossExamples, SinglePairBatchIsZero) {
  EXPECT_EQ(eval_loss(LossKind::kVse, {{0.3}}), 0.0);
  EXPECT_EQ(eval_loss(LossKind::kVsePlusPlus, {{0.3}}), 0.0);
}

TEST(LossExamples, RejectsNonSquareAndBadMargin) {
  Graph g;
  EXPECT_THROW(loss_vse(g, g.input(Tensor(2, 3))), ShapeError);
  LossOptions opt;
  opt.margin = 0.0;
  EXPECT_THROW(loss_vsepp(g, g.input(Tensor(2, 2)), opt), std::invalid_argument);
}

TEST(LossNames, RoundTrip) {
  for (LossKind k : {LossKind::kVse, LossKind::kVsePlusPlus, LossKind::kVseC}) {
    EXPECT_EQ(parse_loss(to_string(k)), k);
  }
  EXPECT_THROW(parse_loss("triplet"), std::invalid_argument);
}

TEST(LossOracle, MatchesBruteForceOnRandomBatches) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const Scores s = random_scores(size(rng), rng);
    for (bool cap : {true, false}) {
      for (bool img : {true, false}) {
        LossOptions opt;
        opt.margin = 0.1 + 0.1 * (trial % 3);
        opt.caption_side = cap;
        opt.image_side = img;
        EXPECT_NEAR(eval_loss(LossKind::kVse, s, opt),
                    testing::oracle_vse(s, opt.margin, cap, img), 1e-12);
        EXPECT_NEAR(eval_loss(LossKind::kVsePlusPlus, s, opt),
                    testing::oracle_vsepp(s, opt.margin, cap, img), 1e-12);
      }
    }
  }
}

TEST(LossIdentities, VseppNeverExceedsVse) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const Scores s = random_scores(size(rng), rng);
    const double vse = eval_loss(LossKind::kVse, s);
    const double vsepp = eval_loss(LossKind::kVsePlusPlus, s);
    EXPECT_GE(vsepp, 0.0);
    EXPECT_LE(vsepp, vse);
  }
}

TEST(LossIdentities, BatchOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Scores s = random_scores(7, rng);
    std::vector<std::size_t> perm(7);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Scores p(7, std::vector<double>(7));
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 7; ++j) p[i][j] = s[perm[i]][perm[j]];
    }
    EXPECT_NEAR(eval_loss(LossKind::kVse, s), eval_loss(LossKind::kVse, p), 1e-12);
    EXPECT_NEAR(eval_loss(LossKind::kVsePlusPlus, s),
                eval_loss(LossKind::kVsePlusPlus, p), 1e-12);
  }
}

struct RandomBatch {
  Tensor images, captions, negatives;
  std::vector<std::size_t> owners;
};

RandomBatch random_batch(std::mt19937_64& rng, std::size_t b, std::size_t d,
                         std::size_t max_candidates) {
  RandomBatch out;
  out.images = testing::random_tensor(b, d, rng);
  out.captions = testing::random_tensor(b, d, rng);
  std::uniform_int_distribution<std::size_t> count(0, max_candidates);
  for (std::size_t i = 0; i < b; ++i) {
    const std::size_t k = count(rng);
    for (std::size_t j = 0; j < k; ++j) out.owners.push_back(i);
  }
  out.negatives = testing::random_tensor(std::max<std::size_t>(out.owners.size(), 1), d, rng);
  return out;
}

TEST(LossIdentities, VsecIsVseppPlusIntraTerm) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const RandomBatch rb = random_batch(rng, size(rng), 4, 5);
    Graph g;
    const Var img = g.input(rb.images), cap = g.input(rb.captions),
              neg = g.input(rb.negatives);
    const double vsec =
        g.value(batch_loss(g, LossKind::kVseC, img, cap, neg, rb.owners)).item();
    const double vsepp =
        g.value(batch_loss(g, LossKind::kVsePlusPlus, img, cap, neg, rb.owners)).item();

    // Independent intra term from explicit dot products.
    std::vector<double> positive(rb.images.rows());
    std::vector<std::vector<double>> candidates(rb.images.rows());
    auto dot = [](std::span<const double> a, std::span<const double> b) {
      return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    };
    for (std::size_t i = 0; i < positive.size(); ++i) {
      positive[i] = dot(rb.images.row_values(i), rb.captions.row_values(i));
    }
    for (std::size_t k = 0; k < rb.owners.size(); ++k) {
      candidates[rb.owners[k]].push_back(
          dot(rb.images.row_values(rb.owners[k]), rb.negatives.row_values(k)));
    }
    const double intra = testing::oracle_intra(positive, candidates, 0.2);
    EXPECT_NEAR(vsec, vsepp + intra, 1e-12);
    EXPECT_GE(vsec, vsepp);
  }
}

TEST(LossIdentities, VsecEqualsVseppExactlyWithoutCandidates) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const RandomBatch rb = random_batch(rng, 2 + trial % 6, 3, 0);
    Graph g;
    const Var img = g.input(rb.images), cap = g.input(rb.captions),
              neg = g.input(rb.negatives);
    EXPECT_EQ(g.value(batch_loss(g, LossKind::kVseC, img, cap, neg, {})).item(),
              g.value(batch_loss(g, LossKind::kVsePlusPlus, img, cap, neg, {})).item());
  }
}

TEST(LossGradients, AllThreeLossesMatchFiniteDifferences) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> size(2, 6);
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t b = size(rng), d = dim(rng);
    const RandomBatch rb = random_batch(rng, b, d, 4);
    const auto owners = rb.owners;
    for (LossKind kind : {LossKind::kVse, LossKind::kVsePlusPlus, LossKind::kVseC}) {
      const auto r = testing::gradcheck(
          [&](Graph& g, const std::vector<Var>& v) {
            return batch_loss(g, kind, v[0], v[1], v[2], owners);
          },
          {rb.images, rb.captions, rb.negatives});
      if (!r.ok) {
        ++failures;
        ADD_FAILURE() << to_string(kind) << " trial " << trial << ": " << r.detail;
      }
    }
  }
  EXPECT_EQ(failures, 0);
}

// --- model -----------------------------------------------------------------

Vocabulary small_vocab() {
  const std::vector<std::string> words{"a", "dog", "on", "chair", "two", "cats"};
  return Vocabulary(words);
}

ModelConfig small_config(EncoderKind kind) {
  ModelConfig c;
  c.word_dim = 4;
  c.hidden_dim = 3;
  c.joint_dim = 5;
  c.encoder = kind;
  return c;
}

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

TEST(Vocabulary, UnknownIsRowZero) {
  const Vocabulary v = small_vocab();
  EXPECT_EQ(v.word(0), kUnknownWord);
  EXPECT_EQ(v.index("zebra"), 0u);
  EXPECT_EQ(v.index("dog"), 2u);
  EXPECT_EQ(v.encode(std::vector<std::string>{"dog", "zebra"}),
            (std::vector<std::size_t>{2, 0}));
}

TEST(Encoders, OutputsHaveUnitNorm) {
  std::mt19937_64 rng(1);
  for (EncoderKind kind : {EncoderKind::kAverage, EncoderKind::kRecurrent}) {
    JointModel m(small_config(kind), small_vocab(), 6, rng);
    EXPECT_NEAR(norm(m.encode_caption({"a", "dog", "on", "a", "chair"})), 1.0, 1e-12);
    EXPECT_NEAR(norm(m.encode_caption({"zebra"})), 1.0, 1e-12);
    EXPECT_NEAR(norm(m.encode_image(std::vector<double>{1, -2, 0.5, 0, 3, 1})), 1.0, 1e-12);
  }
}

TEST(Encoders, AverageOfOneWordIsProjectedWordVector) {
  std::mt19937_64 rng(2);
  JointModel m(small_config(EncoderKind::kAverage), small_vocab(), 6, rng);
  const auto row = m.word_table().value.row_values(m.vocabulary().index("dog"));
  const Tensor& wc = m.caption_projection().value;
  std::vector<double> expect(wc.cols(), 0.0);
  for (std::size_t j = 0; j < wc.cols(); ++j) {
    for (std::size_t k = 0; k < row.size(); ++k) expect[j] += row[k] * wc(k, j);
  }
  const double n = norm(expect);
  const auto got = m.encode_caption({"dog"});
  for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], expect[j] / n, 1e-12);
}

TEST(Encoders, WordOrderMattersOnlyToTheRecurrentEncoder) {
  std::mt19937_64 rng(3);
  JointModel avg(small_config(EncoderKind::kAverage), small_vocab(), 6, rng);
  JointModel rec(small_config(EncoderKind::kRecurrent), small_vocab(), 6, rng);
  const Caption ab{"dog", "chair"}, ba{"chair", "dog"};
  const auto a1 = avg.encode_caption(ab), a2 = avg.encode_caption(ba);
  for (std::size_t j = 0; j < a1.size(); ++j) EXPECT_NEAR(a1[j], a2[j], 1e-12);
  const auto r1 = rec.encode_caption(ab), r2 = rec.encode_caption(ba);
  double diff = 0.0;
  for (std::size_t j = 0; j < r1.size(); ++j) diff += std::abs(r1[j] - r2[j]);
  EXPECT_GT(diff, 1e-6);
}

TEST(Encoders, ImageEncoderContracts) {
  std::mt19937_64 rng(4);
  ModelConfig cfg = small_config(EncoderKind::kAverage);
  JointModel m(cfg, small_vocab(), 3, rng);
  EXPECT_THROW(m.encode_image(std::vector<double>{0, 0, 0}), NumericError);
  EXPECT_THROW(m.encode_image(std::vector<double>{1, 2}), ShapeError);
  EXPECT_THROW(m.encode_caption({}), std::invalid_argument);

  cfg.normalize = false;
  JointModel raw(cfg, small_vocab(), 3, rng);
  const auto e1 = raw.encode_image(std::vector<double>{0.3, -1, 2});
  const auto e2 = raw.encode_image(std::vector<double>{0.6, -2, 4});
  for (std::size_t j = 0; j < e1.size(); ++j) EXPECT_NEAR(e2[j], 2 * e1[j], 1e-12);
}

TEST(Similarity, HandTwoDimensionalCase) {
  ModelConfig cfg;
  cfg.word_dim = 2;
  cfg.joint_dim = 2;
  cfg.encoder = EncoderKind::kAverage;
  std::mt19937_64 rng(5);
  const std::vector<std::string> words{"w"};
  JointModel m(cfg, Vocabulary(words), 2, rng);
  m.image_projection().value = Tensor(2, 2, std::vector<double>{1, 0, 0, 1});
  m.caption_projection().value = Tensor(2, 2, std::vector<double>{1, 0, 0, 1});
  auto row = m.word_table().value.row_values(1);
  row[0] = 0.6;
  row[1] = 0.8;
  EXPECT_NEAR(m.similarity(std::vector<double>{1, 0}, {"w"}), 0.6, 1e-12);
  EXPECT_NEAR(m.similarity(std::vector<double>{0.6, 0.8}, {"w"}), 1.0, 1e-12);
  EXPECT_NEAR(m.similarity(std::vector<double>{-0.8, 0.6}, {"w"}), 0.0, 1e-12);
}

TEST(Similarity, InvariantToPositiveFeatureScaling) {
  std::mt19937_64 rng(6);
  JointModel m(small_config(EncoderKind::kRecurrent), small_vocab(), 4, rng);
  const std::vector<double> f{0.2, -0.7, 1.1, 0.4};
  const Caption c{"two", "cats", "on", "a", "chair"};
  const double s = m.similarity(f, c);
  for (double k : {0.01, 3.0, 250.0}) {
    std::vector<double> g(f);
    for (double& x : g) x *= k;
    EXPECT_NEAR(m.similarity(g, c), s, 1e-12);
  }
  EXPECT_LE(std::abs(s), 1.0);
}

// Full-model gradient of a VSE-C batch against central differences on every
// parameter entry.
TEST(ModelGradients, BatchLossMatchesFiniteDifferences) {
  for (EncoderKind kind : {EncoderKind::kAverage, EncoderKind::kRecurrent}) {
    std::mt19937_64 rng(9);
    ModelConfig cfg = small_config(kind);
    cfg.word_dim = 3;
    cfg.joint_dim = 3;
    cfg.hidden_dim = 2;
    JointModel m(cfg, small_vocab(), 4, rng);
    const Tensor feats = testing::random_tensor(3, 4, rng);
    const std::vector<std::vector<std::size_t>> seqs{{1, 2, 3}, {5, 6}, {2, 4}, {1, 6, 3}, {5}};
    const std::vector<std::size_t> owners{0, 1};

    auto loss = [&](bool track) {
      Graph g;
      nn::Binder bind(g, track);
      const Var img = m.encode_images(bind, g.input(feats));
      const Var caps = m.encode_captions(bind, seqs).joint;
      const std::vector<std::size_t> pos{0, 1, 2}, neg{3, 4};
      const Var l = batch_loss(g, LossKind::kVseC, img, g.gather_rows(caps, pos),
                               g.gather_rows(caps, neg), owners, {0.9, true, true});
      if (track) g.backward(l);
      return g.value(l).item();
    };
    for (auto* p : m.parameters()) p->zero_grad();
    ASSERT_GT(loss(true), 0.0);
    const double h = 1e-6;
    for (auto* p : m.parameters()) {
      for (std::size_t i = 0; i < p->value.size(); ++i) {
        const double saved = p->value[i];
        p->value[i] = saved + h;
        const double up = loss(false);
        p->value[i] = saved - h;
        const double down = loss(false);
        p->value[i] = saved;
        const double numeric = (up - down) / (2 * h);
        EXPECT_NEAR(p->grad[i], numeric, 1e-7 + 1e-4 * std::abs(numeric))
            << p->name << "[" << i << "] " << to_string(kind);
      }
    }
  }
}

// --- training --------------------------------------------------------------

struct ToyCorpus {
  ImageFeatureStore features{3};
  std::vector<TrainingExample> examples;
};

ToyCorpus toy_corpus(bool with_candidates) {
  ToyCorpus t;
  t.features.add("red", std::vector<double>{1, 0.1, 0});
  t.features.add("blue", std::vector<double>{0, 1, 0.2});
  t.examples.push_back({{"a", "red", "ball"}, 0, {}});
  t.examples.push_back({{"a", "blue", "cube"}, 1, {}});
  if (with_candidates) {
    t.examples[0].negatives = {{"a", "blue", "ball"}, {"two", "red", "balls"}};
    t.examples[1].negatives = {{"a", "red", "cube"}};
  }
  return t;
}

TEST(Training, LossDecreasesOnTwoPairs) {
  const ToyCorpus t = toy_corpus(false);
  TrainingConfig cfg;
  cfg.epochs = 200;
  cfg.loss = LossKind::kVsePlusPlus;
  cfg.model.word_dim = 4;
  cfg.model.hidden_dim = 4;
  cfg.model.joint_dim = 4;
  cfg.adam.decay_period = 1000;
  const TrainingResult r = train({t.examples, &t.features}, cfg);
  ASSERT_EQ(r.log.size(), 200u);
  EXPECT_LT(r.log.back().loss, r.log.front().loss);
  EXPECT_GT(r.model.similarity(t.features.row(0), t.examples[0].caption),
            r.model.similarity(t.features.row(0), t.examples[1].caption));
}

TEST(Training, VsecWithoutCandidatesFollowsVsepp) {
  const ToyCorpus t = toy_corpus(false);
  TrainingConfig cfg;
  cfg.epochs = 20;
  cfg.model.word_dim = 4;
  cfg.model.hidden_dim = 3;
  cfg.model.joint_dim = 4;
  cfg.loss = LossKind::kVseC;
  const TrainingResult a = train({t.examples, &t.features}, cfg);
  cfg.loss = LossKind::kVsePlusPlus;
  const TrainingResult b = train({t.examples, &t.features}, cfg);
  ASSERT_EQ(a.log.size(), b.log.size());
  for (std::size_t e = 0; e < a.log.size(); ++e) EXPECT_EQ(a.log[e].loss, b.log[e].loss);
  for (const auto& cap : {t.examples[0].caption, t.examples[1].caption}) {
    EXPECT_EQ(a.model.encode_caption(cap), b.model.encode_caption(cap));
  }
}

TEST(Training, DeterministicForAFixedSeed) {
  const ToyCorpus t = toy_corpus(true);
  TrainingConfig cfg;
  cfg.epochs = 15;
  cfg.model.word_dim = 4;
  cfg.model.hidden_dim = 3;
  cfg.model.joint_dim = 4;
  cfg.intra_samples = 1;
  const TrainingResult a = train({t.examples, &t.features}, cfg);
  const TrainingResult b = train({t.examples, &t.features}, cfg);
  for (std::size_t e = 0; e < a.log.size(); ++e) EXPECT_EQ(a.log[e].loss, b.log[e].loss);
  cfg.seed = 2;
  const TrainingResult c = train({t.examples, &t.features}, cfg);
  EXPECT_NE(a.log.back().loss, c.log.back().loss);
}

TEST(Training, CandidateWordsJoinTheVocabulary) {
  const ToyCorpus t = toy_corpus(true);
  const Vocabulary v = build_vocabulary(t.examples);
  EXPECT_TRUE(v.contains("balls"));
  EXPECT_TRUE(v.contains("two"));
}

TEST(Training, RejectsBadInputs) {
  ToyCorpus t = toy_corpus(false);
  TrainingConfig cfg;
  cfg.epochs = 1;
  t.examples[1].image = 7;
  EXPECT_THROW(train({t.examples, &t.features}, cfg), DataError);
  t.examples[1].image = 1;
  t.examples[1].caption.clear();
  EXPECT_THROW(train({t.examples, &t.features}, cfg), DataError);
  cfg.margin = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.margin = 0.2;
  cfg.intra_samples = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Training, NonFiniteInputAborts) {
  ToyCorpus t = toy_corpus(false);
  ImageFeatureStore bad(3);
  bad.add("red", std::vector<double>{1e308, 1e308, 1e308});
  bad.add("blue", std::vector<double>{0, 1, 0});
  TrainingConfig cfg;
  cfg.epochs = 1;
  EXPECT_THROW(train({t.examples, &bad}, cfg), NumericError);
}

// --- IO --------------------------------------------------------------------

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("vsec_vse_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

using VseIo = TempDir;

TEST_F(VseIo, WordVectorsRoundTrip) {
  WordVectors wv{{"dog", "cat"}, Tensor(2, 3, std::vector<double>{1, 2, 3, -0.5, 0.25, 8})};
  write_word_vectors(dir_ / "wv.txt", wv);
  const WordVectors back = read_word_vectors(dir_ / "wv.txt");
  EXPECT_EQ(back.words, wv.words);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(back.vectors[i], wv.vectors[i]);
}

TEST_F(VseIo, FeaturesRoundTripInBothFormats) {
  ImageFeatureStore s(3);
  s.add("img_a", std::vector<double>{0.1, -2.5, 3});
  s.add("img_b", std::vector<double>{1e-3, 0, 7.25});
  write_features_text(dir_ / "f.tsv", s);
  write_features_binary(dir_ / "f.bin", s);
  for (const auto& name : {"f.tsv", "f.bin"}) {
    const ImageFeatureStore back = read_features(dir_ / name);
    ASSERT_EQ(back.ids(), s.ids());
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(back.row(i)[j], s.row(i)[j], 1e-6 * (1 + std::abs(s.row(i)[j])));
      }
    }
  }
}

TEST_F(VseIo, FeatureStoreErrors) {
  ImageFeatureStore s(2);
  s.add("x", std::vector<double>{1, 2});
  EXPECT_THROW(s.add("x", std::vector<double>{1, 2}), DataError);
  EXPECT_THROW(s.add("y", std::vector<double>{1, 2, 3}), DataError);
  EXPECT_THROW(s.index("missing"), DataError);
}

TEST_F(VseIo, ModelCheckpointRoundTrip) {
  std::mt19937_64 rng(10);
  JointModel m(small_config(EncoderKind::kRecurrent), small_vocab(), 4, rng);
  m.save(dir_ / "model.json");
  const JointModel back = JointModel::load(dir_ / "model.json");
  EXPECT_EQ(back.vocabulary().words(), m.vocabulary().words());
  const std::vector<double> f{0.3, 0.1, -0.4, 0.9};
  const Caption c{"two", "cats", "on", "a", "chair"};
  EXPECT_NEAR(back.similarity(f, c), m.similarity(f, c), 1e-5);
}

}  // namespace
}  // namespace vsec::vse
