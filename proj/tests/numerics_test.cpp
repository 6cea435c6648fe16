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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "support/gradcheck.hpp"
#include "vsec/error.hpp"
#include "vsec/nn/adam.hpp"
#include "vsec/nn/checkpoint.hpp"
#include "vsec/nn/graph.hpp"

namespace vsec::nn {
namespace {

using vsec::testing::gradcheck;
using vsec::testing::random_tensor;
using Vars = std::vector<Var>;

// Reduces an arbitrary-shaped output to a scalar with fixed weights so every
// output element receives a distinct upstream gradient.
Var weighted_sum(Graph& g, Var out) {
  const Tensor& v = g.value(out);
  Tensor w(v.rows(), v.cols());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.3 + 0.17 * static_cast<double>(i % 7);
  return g.sum(g.mul(out, g.input(w)));
}

template <typename... Ts>
void expect_grad(const vsec::testing::LossBuilder& builder, Ts... inputs) {
  const auto r = gradcheck(builder, {Tensor(std::move(inputs))...});
  EXPECT_TRUE(r.ok) << r.detail << " (worst " << r.worst << ")";
}

TEST(Forward, HingeExamples) {
  Graph g;
  const Var x = g.input(Tensor::row({-0.3, 0.15, 0.0}));
  const Tensor& y = g.value(g.hinge(x));
  EXPECT_EQ(y[0], 0.0);
  EXPECT_DOUBLE_EQ(y[1], 0.15);
  EXPECT_EQ(y[2], 0.0);
}

TEST(Forward, L2NormalizeExample) {
  Graph g;
  const Tensor& y = g.value(g.l2_normalize(g.input(Tensor::row({3, 4}))));
  EXPECT_NEAR(y[0], 0.6, 1e-15);
  EXPECT_NEAR(y[1], 0.8, 1e-15);
}

TEST(Forward, L2NormalizeUnitNormAndZeroRow) {
  std::mt19937_64 rng(1);
  Graph g;
  const Tensor& y = g.value(g.l2_normalize(g.input(random_tensor(20, 9, rng, -5, 5))));
  for (std::size_t r = 0; r < y.rows(); ++r) {
    double n = 0;
    for (double v : y.row_values(r)) n += v * v;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-12);
  }
  Graph z;
  EXPECT_THROW(z.l2_normalize(z.input(Tensor(2, 3))), NumericError);
}

TEST(Forward, MatmulAgainstNaiveLoop) {
  std::mt19937_64 rng(2);
  const Tensor a = random_tensor(4, 5, rng), b = random_tensor(5, 3, rng);
  Graph g;
  const Tensor& c = g.value(g.matmul(g.input(a), g.input(b)));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < 5; ++k) s += a(i, k) * b(k, j);
      EXPECT_NEAR(c(i, j), s, 1e-14);
    }
  }
}

TEST(Forward, ReductionsAndSelection) {
  Graph g;
  const Var m = g.input(Tensor(2, 3, {1, 5, 5, -2, -1, -3}));
  EXPECT_EQ(g.value(g.max(m)).item(), 5.0);
  const Tensor& mr = g.value(g.max_rows(m));
  EXPECT_EQ(mr[0], 5.0);
  EXPECT_EQ(mr[1], -1.0);
  EXPECT_EQ(g.value(g.sum(m)).item(), 5.0);
  const Tensor& mean = g.value(g.mean_rows(m));
  EXPECT_DOUBLE_EQ(mean[0], -0.5);
  const Var col = g.input(Tensor::column({0.2, 0.9, 0.4, 0.1}));
  const std::vector<std::size_t> seg{0, 0, 2, 2};
  const Tensor& s = g.value(g.segment_max(col, seg, 3, -7.0));
  EXPECT_DOUBLE_EQ(s[0], 0.9);
  EXPECT_DOUBLE_EQ(s[1], -7.0);
  EXPECT_DOUBLE_EQ(s[2], 0.4);
}

TEST(Forward, CosineDistance) {
  Graph g;
  const Var a = g.input(Tensor(2, 2, {1, 0, 1, 1}));
  const Var b = g.input(Tensor(2, 2, {2, 0, -1, -1}));
  const Tensor& d = g.value(g.cosine_distance(a, b));
  EXPECT_NEAR(d[0], 0.0, 1e-15);
  EXPECT_NEAR(d[1], 2.0, 1e-15);
}

TEST(Forward, ShapeErrorsNameOpAndShapes) {
  Graph g;
  const Var a = g.input(Tensor(2, 3)), b = g.input(Tensor(2, 3));
  try {
    g.matmul(a, b);
    FAIL();
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("matmul"), std::string::npos);
    EXPECT_NE(msg.find("2x3"), std::string::npos);
  }
  EXPECT_THROW(g.add(a, g.input(Tensor(3, 2))), ShapeError);
  EXPECT_NO_THROW(g.add(a, g.input(Tensor(1, 3))));
  EXPECT_THROW(g.add(a, g.input(Tensor(2, 1))), ShapeError);
}

TEST(Backward, NonScalarLossIsAnError) {
  Graph g;
  const Var a = g.input(Tensor(2, 2, 1.0));
  EXPECT_THROW(g.backward(a), ShapeError);
}

TEST(Backward, SumOfSquaresGradient) {
  Graph g;
  const Var x = g.input(Tensor::row({1, 2, 3}));
  g.backward(g.sum(g.mul(x, x)));
  const Tensor& gx = g.grad(x);
  EXPECT_DOUBLE_EQ(gx[0], 2.0);
  EXPECT_DOUBLE_EQ(gx[1], 4.0);
  EXPECT_DOUBLE_EQ(gx[2], 6.0);
}

TEST(Backward, HingeSubgradientAtZeroIsZero) {
  Graph g;
  const Var x = g.input(Tensor::row({0.0, 0.5, -0.5}));
  g.backward(g.sum(g.hinge(x)));
  EXPECT_EQ(g.grad(x)[0], 0.0);
  EXPECT_EQ(g.grad(x)[1], 1.0);
  EXPECT_EQ(g.grad(x)[2], 0.0);
}

TEST(Backward, ParametersAccumulateAcrossGraphs) {
  Parameter p("w", Tensor::row({1.0, -2.0}));
  for (int i = 0; i < 2; ++i) {
    Graph g;
    g.backward(g.sum(g.scale(g.param(p), 3.0)));
  }
  EXPECT_DOUBLE_EQ(p.grad[0], 6.0);
  EXPECT_DOUBLE_EQ(p.grad[1], 6.0);
}

TEST(Backward, DeterministicBitwise) {
  std::mt19937_64 rng(9);
  const Tensor a = random_tensor(6, 4, rng), b = random_tensor(4, 6, rng);
  auto run = [&] {
    Graph g;
    const Var x = g.input(a), y = g.input(b);
    g.backward(g.sum(g.tanh(g.matmul(x, y))));
    return std::vector<double>(g.grad(x).values().begin(), g.grad(x).values().end());
  };
  EXPECT_EQ(run(), run());
}

class Gradcheck : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{1234};
  Tensor r(std::size_t m, std::size_t n, std::vector<double> kinks = {}) {
    return random_tensor(m, n, rng_, -1.0, 1.0, std::move(kinks));
  }
};

TEST_F(Gradcheck, ElementwiseOps) {
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.tanh(v[0])); }, r(3, 4));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.sigmoid(v[0])); }, r(3, 4));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.relu(v[0])); }, r(3, 4, {0.0}));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.hinge(v[0])); }, r(3, 4, {0.0}));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.mul(v[0], v[1])); }, r(2, 3), r(2, 3));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.scale(g.add_scalar(v[0], 0.4), -1.5)); }, r(2, 3));
}

TEST_F(Gradcheck, BroadcastAddSub) {
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.add(v[0], v[1])); }, r(4, 3), r(1, 3));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.sub(v[0], v[1])); }, r(4, 3), r(1, 3));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.sub(v[0], v[1])); }, r(4, 3), r(4, 3));
}

TEST_F(Gradcheck, LinearAlgebra) {
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.matmul(v[0], v[1])); }, r(3, 4), r(4, 2));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.transpose(v[0])); }, r(3, 4));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.dot(v[0], v[1])); }, r(3, 4), r(3, 4));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.diag(v[0])); }, r(3, 3));
}

TEST_F(Gradcheck, ShapeOps) {
  expect_grad(
      [](Graph& g, const Vars& v) {
        const Var parts[] = {v[0], v[1], v[0]};
        return weighted_sum(g, g.concat(parts));
      },
      r(2, 3), r(2, 2));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.mean_rows(v[0])); }, r(5, 3));
  expect_grad(
      [](Graph& g, const Vars& v) {
        const std::size_t rows[] = {2, 0, 2, 1};
        return weighted_sum(g, g.gather_rows(v[0], rows));
      },
      r(3, 2));
}

TEST_F(Gradcheck, Normalisation) {
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.l2_normalize(v[0])); }, r(3, 5));
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.cosine_distance(v[0], v[1])); }, r(3, 4), r(3, 4));
  expect_grad(
      [](Graph& g, const Vars& v) {
        const double labels[] = {1, 0, 1, 0};
        return weighted_sum(g, g.bce_with_logits(v[0], labels));
      },
      random_tensor(4, 1, rng_, -3, 3));
}

TEST_F(Gradcheck, MaxOps) {
  // Well-separated values keep the argmax stable under perturbation.
  const Tensor sep(3, 4, {0.1, 0.9, -0.4, 0.3, -0.8, 0.6, 0.2, -0.1, 0.5, -0.3, 0.0, 0.8});
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.max(v[0])); }, sep);
  expect_grad([](Graph& g, const Vars& v) { return weighted_sum(g, g.max_rows(v[0])); }, sep);
  expect_grad(
      [](Graph& g, const Vars& v) {
        const std::size_t seg[] = {0, 0, 0, 2, 2};
        return weighted_sum(g, g.segment_max(v[0], seg, 3));
      },
      Tensor::column({0.1, 0.7, -0.2, 0.4, 0.9}));
}

TEST_F(Gradcheck, ComposedHingeLoss) {
  // A small contrastive objective over a similarity matrix.
  expect_grad(
      [](Graph& g, const Vars& v) {
        const Var a = g.l2_normalize(g.matmul(v[0], v[2]));
        const Var b = g.l2_normalize(g.matmul(v[1], v[3]));
        const Var s = g.matmul(a, g.transpose(b));
        const Var d = g.transpose(g.diag(s));
        return g.sum(g.max_rows(g.hinge(g.add_scalar(g.sub(s, d), 0.2))));
      },
      r(4, 3), r(4, 5), r(3, 6), r(5, 6));
}

TEST(AdamSchedule, LearningRateDecay) {
  Parameter p("w", Tensor::row({1.0}));
  Adam adam({&p});
  EXPECT_DOUBLE_EQ(adam.learning_rate(0), 1e-3);
  EXPECT_DOUBLE_EQ(adam.learning_rate(14), 1e-3);
  EXPECT_NEAR(adam.learning_rate(15), 1e-4, 1e-18);
  EXPECT_NEAR(adam.learning_rate(30), 1e-5, 1e-19);
}

TEST(AdamStep, ZeroGradientLeavesParameters) {
  Parameter p("w", Tensor::row({1.0, -2.0}));
  Adam adam({&p});
  adam.step(0);
  EXPECT_EQ(p.value[0], 1.0);
  EXPECT_EQ(p.value[1], -2.0);
}

TEST(AdamStep, MatchesHandComputedUpdates) {
  Parameter p("w", Tensor::row({0.5}));
  Adam adam({&p});
  const double grads[] = {0.2, -0.1, 0.3};
  double m = 0, v = 0, w = 0.5;
  for (int t = 1; t <= 3; ++t) {
    p.grad[0] = grads[t - 1];
    adam.step(0);
    m = 0.9 * m + 0.1 * grads[t - 1];
    v = 0.999 * v + 0.001 * grads[t - 1] * grads[t - 1];
    const double mh = m / (1 - std::pow(0.9, t)), vh = v / (1 - std::pow(0.999, t));
    w -= 1e-3 * mh / (std::sqrt(vh) + 1e-8);
    EXPECT_NEAR(p.value[0], w, 1e-15);
    adam.zero_grad();
  }
  EXPECT_EQ(adam.steps(), 3);
}

TEST(AdamStep, NonFiniteGradientFailsFast) {
  Parameter p("w", Tensor::row({1.0, 2.0}));
  Adam adam({&p});
  p.grad[1] = std::nan("");
  EXPECT_THROW(adam.step(0), NumericError);
  EXPECT_EQ(p.value[0], 1.0);
}

TEST(Checkpoint, RoundTripAtSinglePrecision) {
  const auto path = std::filesystem::temp_directory_path() / "vsec_ckpt_rt.json";
  std::vector<NamedTensor> ts{{"a", Tensor(2, 3, {1, 2, 3, 4, 5, 6.1})},
                              {"b", Tensor::row({-0.25})}};
  nlohmann::json meta{{"epochs", 3}};
  save_checkpoint(path, ts, meta);
  const auto back = load_checkpoint(path);
  EXPECT_EQ(back.meta["epochs"], 3);
  EXPECT_EQ(back.at("a").rows(), 2u);
  EXPECT_FLOAT_EQ(static_cast<float>(back.at("a")(1, 2)), 6.1f);
  EXPECT_EQ(back.at("b")[0], -0.25);
  EXPECT_THROW(back.at("c"), DataError);
  std::filesystem::remove(path);
  std::filesystem::remove(std::filesystem::path(path).replace_extension(".bin"));
}

}  // namespace
}  // namespace vsec::nn
