// Copyright 2026 The rptree Authors.
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

#include "rptree/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "rptree/error.hpp"

namespace rpt {
namespace {

bool parse_integer(std::string_view s, long long& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

double log_choose(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

bool item_less(std::string_view a, std::string_view b) {
  long long ia = 0;
  long long ib = 0;
  if (parse_integer(a, ia) && parse_integer(b, ib) && ia != ib) return ia < ib;
  return a < b;
}

RankingComparison compare_rankings(const std::map<std::string, double>& pred,
                                   const std::map<std::string, double>& truth, int k,
                                   bool by_magnitude) {
  if (k < 1 || k > static_cast<int>(pred.size())) {
    throw Error(Errc::invalid_argument, "k = " + std::to_string(k) + " but prediction has " +
                                            std::to_string(pred.size()) + " items");
  }
  std::vector<std::pair<std::string, double>> items(pred.begin(), pred.end());
  for (const auto& [id, score] : items) {
    if (!std::isfinite(score)) throw Error(Errc::non_finite, "prediction for " + id);
  }
  auto key = [&](double s) { return by_magnitude ? std::abs(s) : s; };
  std::sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
    if (key(x.second) != key(y.second)) return key(x.second) > key(y.second);
    return item_less(x.first, y.first);
  });
  items.resize(static_cast<std::size_t>(k));

  RankingComparison out;
  out.k = k;
  std::vector<double> truth_score(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    const auto& id = items[static_cast<std::size_t>(p)].first;
    out.items.push_back(id);
    auto it = truth.find(id);
    if (it == truth.end()) {
      out.missing_truth.push_back(id);
      truth_score[static_cast<std::size_t>(p)] = 0.0;
    } else {
      truth_score[static_cast<std::size_t>(p)] = it->second;
    }
  }
  std::vector<int> by_truth(static_cast<std::size_t>(k));
  std::iota(by_truth.begin(), by_truth.end(), 0);
  std::stable_sort(by_truth.begin(), by_truth.end(), [&](int x, int y) {
    return truth_score[static_cast<std::size_t>(x)] > truth_score[static_cast<std::size_t>(y)];
  });
  out.truth_ranks.assign(static_cast<std::size_t>(k), 0);
  for (int r = 0; r < k; ++r) out.truth_ranks[static_cast<std::size_t>(by_truth[static_cast<std::size_t>(r)])] = r + 1;
  for (int p = 0; p < k; ++p) {
    out.raw_l1 += std::abs((p + 1) - out.truth_ranks[static_cast<std::size_t>(p)]);
  }
  out.normalizer = static_cast<long long>(k) * k / 2;
  out.normalized = out.normalizer == 0 ? 0.0
                                       : static_cast<double>(out.raw_l1) /
                                             static_cast<double>(out.normalizer);
  return out;
}

double hypergeom_upper(long long population, long long successes, long long sample,
                       long long observed) {
  if (population < 0 || successes < 0 || sample < 0 || successes > population ||
      sample > population) {
    throw Error(Errc::invalid_argument,
                "hypergeometric parameters need 0 <= K <= N and 0 <= n <= N (N=" +
                    std::to_string(population) + ", K=" + std::to_string(successes) +
                    ", n=" + std::to_string(sample) + ")");
  }
  const long long hi = std::min(successes, sample);
  if (observed < 0 || observed > hi) {
    throw Error(Errc::invalid_argument, "observed count " + std::to_string(observed) +
                                            " outside 0.." + std::to_string(hi));
  }
  const long long lo = std::max(0LL, sample - (population - successes));
  if (observed <= lo) return 1.0;

  const double log_total = log_choose(population, sample);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(hi - observed + 1));
  for (long long i = observed; i <= hi; ++i) {
    logs.push_back(log_choose(successes, i) + log_choose(population - successes, sample - i) -
                   log_total);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return std::min(1.0, std::exp(top + std::log(acc)));
}

EnrichmentResult enrichment(long long population, long long successes, long long sample,
                            long long observed) {
  return EnrichmentResult{population, successes, sample, observed,
                          hypergeom_upper(population, successes, sample, observed)};
}

std::vector<GroupEnrichment> enrich_groups(const std::vector<GeneGroupRecord>& groups,
                                           const std::set<std::string>& targets,
                                           long long population) {
  const auto successes = static_cast<long long>(targets.size());
  if (successes > population) {
    throw Error(Errc::invalid_argument, std::to_string(successes) +
                                            " targets exceed the population of " +
                                            std::to_string(population));
  }
  std::vector<GroupEnrichment> out;
  for (const auto& g : groups) {
    for (char sign : {'+', '-'}) {
      const auto& set = sign == '+' ? g.s_plus : g.s_minus;
      if (set.empty()) continue;
      const auto n = static_cast<long long>(set.size());
      if (n > population) {
        throw Error(Errc::invalid_argument, "group " + to_string(g.path) + " has " +
                                                std::to_string(n) +
                                                " members, more than the population");
      }
      const auto x = static_cast<long long>(
          std::count_if(set.begin(), set.end(), [&](const auto& s) { return targets.count(s) > 0; }));
      out.push_back(GroupEnrichment{g.path, g.layer, g.mapped_node, sign,
                                    enrichment(population, successes, n, x)});
    }
  }
  return out;
}

std::vector<GroupEnrichment> enrich_groups(const std::vector<GroupRecord>& groups,
                                           const std::set<std::string>& targets,
                                           long long population) {
  std::vector<GeneGroupRecord> named;
  named.reserve(groups.size());
  auto names = [](const std::vector<int>& v) {
    std::vector<std::string> s;
    for (int i : v) s.push_back(std::to_string(i));
    return s;
  };
  for (const auto& g : groups) {
    named.push_back(GeneGroupRecord{g.path, g.layer, g.mapped_node, names(g.s_plus),
                                    names(g.s_minus)});
  }
  return enrich_groups(named, targets, population);
}

std::vector<std::pair<double, double>> ecdf(std::vector<double> values) {
  if (values.empty()) throw Error(Errc::invalid_argument, "ecdf of an empty sample");
  for (double v : values) {
    if (std::isnan(v)) throw Error(Errc::non_finite, "ecdf: NaN in sample");
  }
  std::sort(values.begin(), values.end());
  const auto total = static_cast<double>(values.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / total);
  }
  return out;
}

std::string_view to_string(KsDirection dir) {
  return dir == KsDirection::a_above_b ? "a-above-b" : "b-above-a";
}

KsDirection parse_ks_direction(std::string_view name) {
  if (name == "a-above-b") return KsDirection::a_above_b;
  if (name == "b-above-a") return KsDirection::b_above_a;
  throw Error(Errc::invalid_argument,
              "unknown KS direction '" + std::string(name) + "' (a-above-b|b-above-a)");
}

KsResult ks_1tail(const std::vector<double>& a, const std::vector<double>& b,
                  KsDirection direction) {
  if (a.empty() || b.empty()) throw Error(Errc::invalid_argument, "KS test on an empty sample");
  std::vector<double> first = direction == KsDirection::a_above_b ? a : b;
  std::vector<double> second = direction == KsDirection::a_above_b ? b : a;
  for (const auto* s : {&first, &second}) {
    for (double v : *s) {
      if (std::isnan(v)) throw Error(Errc::non_finite, "KS test: NaN in sample");
    }
  }
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  const auto m = static_cast<long long>(first.size());
  const auto n = static_cast<long long>(second.size());

  // Track m*n*(F_first - F_second) in integers so D is exact.
  long long best = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < first.size() || j < second.size()) {
    double x;
    if (j == second.size() || (i < first.size() && first[i] <= second[j])) {
      x = first[i];
    } else {
      x = second[j];
    }
    while (i < first.size() && first[i] == x) ++i;
    while (j < second.size() && second[j] == x) ++j;
    best = std::max(best, static_cast<long long>(i) * n - static_cast<long long>(j) * m);
  }
  KsResult out;
  out.size_a = a.size();
  out.size_b = b.size();
  out.direction = direction;
  out.statistic = static_cast<double>(best) / static_cast<double>(m * n);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double p = std::exp(-2.0 * out.statistic * out.statistic * md * nd / (md + nd));
  out.p_value = std::clamp(p, std::numeric_limits<double>::min(), 1.0);
  return out;
}

}  // namespace rpt
