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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "vsec/error.hpp"

namespace vsec::metrics {

std::size_t RankingResult::positive_count() const {
  return static_cast<std::size_t>(
      std::count(relevant.begin(), relevant.end(), true));
}

std::size_t RankingResult::best_positive_rank() const {
  const auto it = std::find(relevant.begin(), relevant.end(), true);
  if (it == relevant.end()) {
    throw std::invalid_argument("query '" + query_id + "' has no positive");
  }
  return static_cast<std::size_t>(it - relevant.begin()) + 1;
}

RankingResult rank(std::string query_id, std::span<const double> scores,
                   std::span<const bool> positive, TiePolicy ties) {
  if (scores.size() != positive.size()) {
    throw std::invalid_argument("rank: " + std::to_string(scores.size()) +
                                " scores for " +
                                std::to_string(positive.size()) + " labels");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw NumericError("rank: NaN score in '" + query_id + "'");
  }
  RankingResult r;
  r.query_id = std::move(query_id);
  r.ties = ties;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (scores[a] != scores[b]) return scores[a] > scores[b];
                     if (ties == TiePolicy::kPessimistic) {
                       return !positive[a] && positive[b];
                     }
                     return false;
                   });
  r.scores.reserve(scores.size());
  r.relevant.reserve(scores.size());
  for (std::size_t i : r.order) {
    r.scores.push_back(scores[i]);
    r.relevant.push_back(positive[i]);
  }
  return r;
}

RankingResult rank(std::string query_id, std::span<const double> scores,
                   const std::vector<bool>& positive, TiePolicy ties) {
  const std::unique_ptr<bool[]> flags(new bool[positive.size()]);
  std::copy(positive.begin(), positive.end(), flags.get());
  return rank(std::move(query_id), scores,
              std::span<const bool>(flags.get(), positive.size()), ties);
}

namespace {

void require_nonempty(std::span<const RankingResult> results, const char* op) {
  if (results.empty()) throw std::invalid_argument(std::string(op) + ": no queries");
}

}  // namespace

double recall_at_k(std::span<const RankingResult> results, std::size_t k) {
  require_nonempty(results, "recall_at_k");
  if (k == 0) throw std::invalid_argument("recall_at_k: k must be >= 1");
  std::size_t hits = 0;
  for (const auto& r : results) {
    const std::size_t n = std::min(k, r.relevant.size());
    hits += std::find(r.relevant.begin(), r.relevant.begin() + n, true) !=
            r.relevant.begin() + n;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(results.size());
}

RankStats rank_stats(std::span<const RankingResult> results) {
  require_nonempty(results, "rank_stats");
  std::vector<std::size_t> ranks;
  ranks.reserve(results.size());
  for (const auto& r : results) ranks.push_back(r.best_positive_rank());
  std::sort(ranks.begin(), ranks.end());
  RankStats s;
  s.median = static_cast<double>(ranks[(ranks.size() - 1) / 2]);
  s.mean = std::accumulate(ranks.begin(), ranks.end(), 0.0) /
           static_cast<double>(ranks.size());
  return s;
}

double average_precision(const RankingResult& result) {
  double sum = 0.0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < result.relevant.size(); ++i) {
    if (!result.relevant[i]) continue;
    ++seen;
    sum += static_cast<double>(seen) / static_cast<double>(i + 1);
  }
  if (seen == 0) {
    throw std::invalid_argument("average_precision: query '" +
                                result.query_id + "' has no positive");
  }
  return sum / static_cast<double>(seen);
}

double mean_average_precision(std::span<const RankingResult> results) {
  require_nonempty(results, "mean_average_precision");
  double sum = 0.0;
  for (const auto& r : results) sum += average_precision(r);
  return sum / static_cast<double>(results.size());
}

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j;
  nlohmann::json r = nlohmann::json::object();
  for (const auto& [k, v] : recall) r[std::to_string(k)] = v;
  j["r_at"] = r;
  j["med_r"] = median_rank;
  j["mean_r"] = mean_rank;
  if (map) j["map"] = *map;
  j["queries"] = queries;
  if (!breakdown.empty()) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [name, rep] : breakdown) b[name] = rep.to_json();
    j["breakdown"] = b;
  }
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

MetricsReport MetricsReport::from_json(const nlohmann::json& j) {
  MetricsReport m;
  if (j.contains("r_at")) {
    for (const auto& [k, v] : j.at("r_at").items()) {
      m.recall[static_cast<std::size_t>(std::stoul(k))] = v.get<double>();
    }
  }
  m.median_rank = j.value("med_r", 0.0);
  m.mean_rank = j.value("mean_r", 0.0);
  if (j.contains("map")) m.map = j.at("map").get<double>();
  m.queries = j.value("queries", std::size_t{0});
  if (j.contains("breakdown")) {
    for (const auto& [name, sub] : j.at("breakdown").items()) {
      m.breakdown[name] = from_json(sub);
    }
  }
  if (j.contains("extra")) m.extra = j.at("extra");
  return m;
}

MetricsReport retrieval_report(std::span<const RankingResult> results,
                               std::span<const std::size_t> ks) {
  MetricsReport m;
  for (std::size_t k : ks) m.recall[k] = recall_at_k(results, k);
  const RankStats s = rank_stats(results);
  m.median_rank = s.median;
  m.mean_rank = s.mean;
  m.queries = results.size();
  return m;
}

MetricsReport retrieval_report(std::span<const RankingResult> results,
                               std::initializer_list<std::size_t> ks) {
  return retrieval_report(results, std::span<const std::size_t>(ks.begin(), ks.size()));
}

void write_query_csv(const std::filesystem::path& path,
                     std::span<const RankingResult> results) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "query,best_rank,candidates,positives,ap\n";
  for (const auto& r : results) {
    out << r.query_id << ',' << r.best_positive_rank() << ',' << r.size() << ','
        << r.positive_count() << ',' << average_precision(r) << '\n';
  }
}

}  // namespace vsec::metrics
