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


#include "vsec/metrics.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "support/metrics_oracle.hpp"
#include "vsec/error.hpp"

namespace vsec::metrics {
namespace {

using vsec::testing::OracleQuery;

// A query whose single positive sits at the given 1-indexed rank.
RankingResult with_positive_at(std::size_t rank_pos, std::size_t n = 20) {
  std::vector<double> scores(n);
  std::vector<bool> pos(n, false);
  for (std::size_t i = 0; i < n; ++i) scores[i] = static_cast<double>(n - i);
  pos[rank_pos - 1] = true;
  return rank("q", scores, pos);
}

RankingResult from_labels(std::vector<bool> ranked_labels) {
  std::vector<double> scores;
  for (std::size_t i = 0; i < ranked_labels.size(); ++i) {
    scores.push_back(-static_cast<double>(i));
  }
  return rank("q", scores, ranked_labels);
}

TEST(Recall, Examples) {
  const std::vector<RankingResult> r{with_positive_at(1), with_positive_at(4),
                                     with_positive_at(12)};
  EXPECT_NEAR(recall_at_k(r, 1), 100.0 / 3, 1e-12);
  EXPECT_NEAR(recall_at_k(r, 10), 200.0 / 3, 1e-12);
  EXPECT_DOUBLE_EQ(recall_at_k(r, 50), 100.0);
  const std::vector<RankingResult> top{with_positive_at(1), with_positive_at(1)};
  EXPECT_DOUBLE_EQ(recall_at_k(top, 1), 100.0);
}

TEST(Recall, Errors) {
  EXPECT_THROW(recall_at_k({}, 1), std::invalid_argument);
  const std::vector<RankingResult> r{with_positive_at(1)};
  EXPECT_THROW(recall_at_k(r, 0), std::invalid_argument);
}

TEST(RankStats, Examples) {
  std::vector<RankingResult> r{with_positive_at(1), with_positive_at(2),
                               with_positive_at(5)};
  auto s = rank_stats(r);
  EXPECT_EQ(s.median, 2.0);
  EXPECT_NEAR(s.mean, 8.0 / 3, 1e-12);
  r.push_back(with_positive_at(10));
  r[2] = with_positive_at(3);
  EXPECT_EQ(rank_stats(r).median, 2.0);
  const std::vector<RankingResult> one{with_positive_at(1)};
  EXPECT_EQ(rank_stats(one).median, 1.0);
  EXPECT_EQ(rank_stats(one).mean, 1.0);
}

TEST(RankStats, QueryWithoutPositiveIsAnError) {
  const std::vector<RankingResult> r{from_labels({false, false})};
  EXPECT_THROW(rank_stats(r), std::invalid_argument);
}

TEST(AveragePrecision, Examples) {
  EXPECT_DOUBLE_EQ(average_precision(from_labels({true, true, false})), 1.0);
  EXPECT_NEAR(average_precision(from_labels({true, false, true})), 0.8333333333333334, 1e-15);
  EXPECT_DOUBLE_EQ(average_precision(from_labels({false, true})), 0.5);
  EXPECT_THROW(average_precision(from_labels({false, false})), std::invalid_argument);
  const std::vector<RankingResult> two{from_labels({true}), from_labels({false, true})};
  EXPECT_DOUBLE_EQ(mean_average_precision(two), 0.75);
}

TEST(Rank, PessimisticTies) {
  const std::vector<double> scores{0.5, 0.5, 0.9};
  const std::vector<bool> pos{true, false, false};
  const auto r = rank("q", scores, pos);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(r.best_positive_rank(), 3u);
  const auto s = rank("q", scores, pos, TiePolicy::kStable);
  EXPECT_EQ(s.best_positive_rank(), 2u);
}

TEST(Rank, RejectsNanAndMismatch) {
  const std::vector<double> scores{0.5, std::nan("")};
  EXPECT_THROW(rank("q", scores, std::vector<bool>{true, false}), NumericError);
  EXPECT_THROW(rank("q", scores, std::vector<bool>{true}), std::invalid_argument);
}

// Random score matrices with coarse values so ties are frequent.
std::vector<OracleQuery> random_queries(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nq(1, 10), nc(1, 20), level(0, 6);
  std::vector<OracleQuery> qs(static_cast<std::size_t>(nq(rng)));
  for (auto& q : qs) {
    const auto n = static_cast<std::size_t>(nc(rng));
    for (std::size_t i = 0; i < n; ++i) {
      q.scores.push_back(level(rng) / 6.0);
      q.positive.push_back(level(rng) < 2);
    }
    q.positive[static_cast<std::size_t>(level(rng)) % n] = true;
  }
  return qs;
}

std::vector<RankingResult> rank_all(const std::vector<OracleQuery>& qs) {
  std::vector<RankingResult> out;
  for (const auto& q : qs) out.push_back(rank("q", q.scores, q.positive));
  return out;
}

TEST(Oracle, ThousandRandomMatricesMatchExactly) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto qs = random_queries(rng);
    const auto rs = rank_all(qs);
    for (std::size_t k : {1, 5, 10, 25}) {
      ASSERT_EQ(recall_at_k(rs, k), vsec::testing::oracle_recall(qs, k));
    }
    const auto s = rank_stats(rs);
    ASSERT_EQ(s.median, vsec::testing::oracle_median(qs));
    ASSERT_EQ(s.mean, vsec::testing::oracle_mean(qs));
    for (std::size_t i = 0; i < qs.size(); ++i) {
      ASSERT_NEAR(average_precision(rs[i]), qs[i].ap(), 1e-15);
    }
    ASSERT_NEAR(mean_average_precision(rs), vsec::testing::oracle_map(qs), 1e-15);
  }
}

TEST(Properties, InvariantUnderMonotoneMaps) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto qs = random_queries(rng);
    const auto before = rank_all(qs);
    for (auto& q : qs) {
      for (double& s : q.scores) s = std::exp(3 * s) - 7;  // strictly increasing
    }
    const auto after = rank_all(qs);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      ASSERT_EQ(before[i].relevant, after[i].relevant);
      ASSERT_EQ(average_precision(before[i]), average_precision(after[i]));
    }
  }
}

TEST(Properties, RecallMonotoneAndApBounded) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rs = rank_all(random_queries(rng));
    double prev = 0;
    for (std::size_t k = 1; k <= 21; ++k) {
      const double r = recall_at_k(rs, k);
      ASSERT_GE(r, prev);
      prev = r;
    }
    const double m = mean_average_precision(rs);
    ASSERT_GT(m, 0.0);
    ASSERT_LE(m, 1.0);
  }
}

TEST(Properties, TiedNegativeNeverHelps) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto qs = random_queries(rng);
    const auto base = rank_all(qs);
    for (auto& q : qs) {
      for (std::size_t i = 0; i < q.scores.size(); ++i) {
        if (q.positive[i]) {
          q.scores.push_back(q.scores[i]);
          q.positive.push_back(false);
          break;
        }
      }
    }
    const auto more = rank_all(qs);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      ASSERT_GT(more[i].best_positive_rank(), base[i].best_positive_rank() - 1);
      ASSERT_LE(average_precision(more[i]), average_precision(base[i]));
    }
    ASSERT_LE(recall_at_k(more, 1), recall_at_k(base, 1));
  }
}

TEST(Report, JsonLayoutRoundTrips) {
  const std::vector<RankingResult> r{with_positive_at(1), with_positive_at(4)};
  auto rep = retrieval_report(r);
  rep.map = 0.5;
  rep.breakdown["noun"] = retrieval_report(r, {1});
  const auto j = rep.to_json();
  EXPECT_DOUBLE_EQ(j["r_at"]["1"].get<double>(), 50.0);
  EXPECT_DOUBLE_EQ(j["r_at"]["10"].get<double>(), 100.0);
  EXPECT_DOUBLE_EQ(j["med_r"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["mean_r"].get<double>(), 2.5);
  EXPECT_DOUBLE_EQ(j["map"].get<double>(), 0.5);
  EXPECT_EQ(MetricsReport::from_json(j).to_json(), j);
}

}  // namespace
}  // namespace vsec::metrics
