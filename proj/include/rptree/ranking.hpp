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

#ifndef RPTREE_RANKING_HPP_
#define RPTREE_RANKING_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

#include "rptree/network.hpp"

namespace rpt {

enum class RankKind { weights, gradient, random };

std::string_view to_string(RankKind kind);
RankKind parse_rank_kind(std::string_view name);

// Default seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20180508;

// Configuration of the ranking function r_{i,l,m}.
//
// The seed is only consumed by the random kind and the reference inputs only
// by the gradient kind (gradients are averaged over them), but both are kept
// so that a tree records exactly how it was produced.
struct RankingSpec {
  RankKind kind = RankKind::weights;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Eigen::VectorXd> reference_inputs;

  void validate(const Network& net) const;

  friend bool operator==(const RankingSpec& a, const RankingSpec& b);
};

// An ordering of layer `target_layer` with respect to `source`.
// order[p] holds the 1-based node index with rank p + 1.
class Ranking {
 public:
  Ranking(NodeRef source, int target_layer, std::vector<int> order);

  const NodeRef& source() const { return source_; }
  int target_layer() const { return target_layer_; }
  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }

  /// Node index holding rank `rank` (1-based).
  int at_rank(int rank) const { return order_.at(static_cast<std::size_t>(rank - 1)); }
  /// Rank (1-based) of node `index`; r_{i,l,m}(j) in the usual notation.
  int rank_of(int index) const { return ranks_.at(static_cast<std::size_t>(index - 1)); }

 private:
  NodeRef source_;
  int target_layer_;
  std::vector<int> order_;
  std::vector<int> ranks_;
};

// Orders the nodes of target_layer by their score with respect to source,
// highest first, ties broken by ascending node index.
//
//   weights   score = W_{l,l+1}(i, j); requires target_layer == source.layer + 1
//   gradient  score = mean over reference inputs of d a_source / d a_{m,j}
//   random    a seeded permutation, see random_order()
Ranking rank(const Network& net, const RankingSpec& spec, const NodeRef& source,
             int target_layer);

// Sort indices 1..n by descending score with ascending-index tie-break.
std::vector<int> order_by_score(const Eigen::VectorXd& scores);

// Deterministic permutation of 1..n for the random ranking kind.
//
// key = splitmix64 chain over (seed, source layer, source index, target layer),
// which seeds std::mt19937_64; the permutation is an explicit Fisher-Yates
// shuffle of [1..n] drawing j uniformly from [0, p] for p = n-1 .. 1 by
// rejection sampling. Every step is fully specified so that other
// implementations can reproduce the same order.
std::vector<int> random_order(std::uint64_t seed, const NodeRef& source, int target_layer,
                              int n);

// Quasi-inverse of the ranking: the node of rank b for b > 0, and the node of
// rank N_m + b + 1 for b < 0 (b = -1 is the bottom). Requires b != 0 and
// 2|b| < N_m.
NodeRef quasi_inverse(const Ranking& ranking, int b);

}  // namespace rpt

#endif  // RPTREE_RANKING_HPP_
