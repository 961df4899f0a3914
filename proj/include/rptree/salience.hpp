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

#ifndef RPTREE_SALIENCE_HPP_
#define RPTREE_SALIENCE_HPP_

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rptree/network.hpp"
#include "rptree/tree.hpp"

namespace rpt {

// Aggregator g applied to the cumulative scores of an input's pre-image.
// Nine values: {signed, absolute} x {sum, average, max, min}, plus count.
class Aggregator {
 public:
  enum class Family { signed_values, absolute_values, count };
  enum class Op { sum, average, max, min };

  static Aggregator signed_op(Op op) { return Aggregator(Family::signed_values, op); }
  static Aggregator absolute_op(Op op) { return Aggregator(Family::absolute_values, op); }
  static Aggregator count() { return Aggregator(Family::count, Op::sum); }

  /// All nine aggregators, absolute family first, in a fixed order.
  static std::vector<Aggregator> all();

  Family family() const { return family_; }
  Op op() const { return op_; }

  double apply(const std::vector<double>& scores) const;

  friend bool operator==(const Aggregator&, const Aggregator&) = default;

 private:
  Aggregator(Family family, Op op) : family_(family), op_(op) {}

  Family family_;
  Op op_;
};

// Names look like "abs-average", "signed-min" and "count".
std::string to_string(const Aggregator& agg);
Aggregator parse_aggregator(std::string_view name);

struct SalienceMap {
  // scores[n-1] = pi(n); inputs no leaf reaches score 0 and are not covered.
  std::vector<double> scores;
  std::vector<bool> covered;
  // Aggregator name, or "gradient-abs" for the gradient baseline.
  std::string method;
  // Rank by |score| and report the sign (signed aggregators).
  bool rank_by_magnitude = false;

  friend bool operator==(const SalienceMap&, const SalienceMap&) = default;
};

/// c_t = (sum_l |b_l|) * prod_l sign(b_l) for a leaf path of length `depth`.
double cumulative_score(const TreePath& leaf, int depth);

SalienceMap salience_map(const RankProjectionTree& tree, const Aggregator& agg);

// Top k inputs as (input index, score). Signed maps are ordered by |score|,
// everything else by score, descending; ties go to the lower input index.
std::vector<std::pair<int, double>> rank_inputs(const SalienceMap& map, int k);

// Baseline without a tree: mean over reference inputs of |d a_0 / d x_n|.
SalienceMap gradient_salience(const Network& net,
                              const std::vector<Eigen::VectorXd>& reference_inputs);

}  // namespace rpt

#endif  // RPTREE_SALIENCE_HPP_
