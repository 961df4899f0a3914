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

#ifndef RPTREE_STATS_HPP_
#define RPTREE_STATS_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rptree/tree.hpp"

namespace rpt {

// Orders item identifiers numerically when both are plain integers and
// lexicographically otherwise.
bool item_less(std::string_view a, std::string_view b);

struct RankingComparison {
  int k = 0;
  long long raw_l1 = 0;
  long long normalizer = 0;  // floor(k^2 / 2), the l1 distance of reversed rankings
  double normalized = 0.0;
  std::vector<std::string> items;        // top-k by prediction, pred-rank order
  std::vector<int> truth_ranks;          // truth rank of items[p]
  std::vector<std::string> missing_truth;  // items scored 0 for lack of a truth value
};

// Normalized l1 distance between the prediction ranking of its top-k items
// and the truth ranking of those same items.
//
// Items are selected by descending prediction (by |score| when
// by_magnitude), ties to the lower id. The selected items are re-ranked by
// descending truth score, ties broken by prediction rank. Items without a
// truth value count as truth score 0 and are reported in missing_truth.
// For k = 1 the normalizer is 0 and the distance is defined as 0.
RankingComparison compare_rankings(const std::map<std::string, double>& pred,
                                   const std::map<std::string, double>& truth, int k,
                                   bool by_magnitude = false);

struct EnrichmentResult {
  long long population = 0;  // N
  long long successes = 0;   // K
  long long sample = 0;      // n
  long long observed = 0;    // x
  double p_value = 1.0;
};

/// P(X >= x) for X ~ Hypergeometric(N, K, n), summed in log space.
double hypergeom_upper(long long population, long long successes, long long sample,
                       long long observed);
EnrichmentResult enrichment(long long population, long long successes, long long sample,
                            long long observed);

// Enrichment of one S+ or S- set of a tree node for a target item list.
struct GroupEnrichment {
  TreePath path;
  int layer = 0;
  NodeRef mapped_node;
  char sign = '+';
  EnrichmentResult result;
};

// Scores every non-empty S+/S- set. K is the number of distinct targets and
// the population size is supplied by the caller; each set is a sample of size
// |S| with |S intersect targets| observed successes.
std::vector<GroupEnrichment> enrich_groups(const std::vector<GeneGroupRecord>& groups,
                                           const std::set<std::string>& targets,
                                           long long population);
std::vector<GroupEnrichment> enrich_groups(const std::vector<GroupRecord>& groups,
                                           const std::set<std::string>& targets,
                                           long long population);

/// Sorted distinct values with the fraction of the sample <= each value.
std::vector<std::pair<double, double>> ecdf(std::vector<double> values);

enum class KsDirection { a_above_b, b_above_a };

std::string_view to_string(KsDirection dir);
KsDirection parse_ks_direction(std::string_view name);

struct KsResult {
  double statistic = 0.0;  // D
  double p_value = 1.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  KsDirection direction = KsDirection::a_above_b;
};

// One-sided two-sample Kolmogorov-Smirnov test.
// a_above_b: D = sup_x (F_a(x) - F_b(x)), large when a tends to smaller
// values than b. p = exp(-2 D^2 m n / (m + n)), clipped to (0, 1].
KsResult ks_1tail(const std::vector<double>& a, const std::vector<double>& b,
                  KsDirection direction);

}  // namespace rpt

#endif  // RPTREE_STATS_HPP_
