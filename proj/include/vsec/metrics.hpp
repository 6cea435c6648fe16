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


#ifndef VSEC_METRICS_HPP_
#define VSEC_METRICS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vsec::metrics {

enum class TiePolicy {
  // Equal scores: negatives rank ahead of positives.
  kPessimistic,
  // Equal scores keep candidate order.
  kStable,
};

// One query's candidates sorted by descending score.
struct RankingResult {
  std::string query_id;
  std::vector<std::size_t> order;  // candidate indices, best first
  std::vector<double> scores;      // parallel to `order`
  std::vector<bool> relevant;      // parallel to `order`
  TiePolicy ties = TiePolicy::kPessimistic;

  std::size_t size() const { return order.size(); }
  std::size_t positive_count() const;
  // 1-indexed rank of the first positive. Throws std::invalid_argument when
  // the query has no positive.
  std::size_t best_positive_rank() const;
};

// Throws std::invalid_argument on length mismatch, NumericError on NaN.
RankingResult rank(std::string query_id, std::span<const double> scores,
                   std::span<const bool> positive,
                   TiePolicy ties = TiePolicy::kPessimistic);
RankingResult rank(std::string query_id, std::span<const double> scores,
                   const std::vector<bool>& positive,
                   TiePolicy ties = TiePolicy::kPessimistic);

// Percentage of queries with a positive in the top k.
double recall_at_k(std::span<const RankingResult> results, std::size_t k);

struct RankStats {
  double median = 0.0;  // lower middle for even counts
  double mean = 0.0;
};
RankStats rank_stats(std::span<const RankingResult> results);

double average_precision(const RankingResult& result);
double mean_average_precision(std::span<const RankingResult> results);

struct MetricsReport {
  std::map<std::size_t, double> recall;  // k -> R@k
  double median_rank = 0.0;
  double mean_rank = 0.0;
  std::optional<double> map;
  std::size_t queries = 0;
  std::map<std::string, MetricsReport> breakdown;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
  static MetricsReport from_json(const nlohmann::json& j);
};

// R@k for each k, median and mean rank.
MetricsReport retrieval_report(std::span<const RankingResult> results,
                               std::span<const std::size_t> ks);
MetricsReport retrieval_report(std::span<const RankingResult> results,
                               std::initializer_list<std::size_t> ks = {1, 10});

// One line per query: query,best_rank,candidates,positives,ap.
void write_query_csv(const std::filesystem::path& path,
                     std::span<const RankingResult> results);

}  // namespace vsec::metrics

#endif  // VSEC_METRICS_HPP_
