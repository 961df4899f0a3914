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

#include "rptree/salience.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rptree/error.hpp"

namespace rpt {

std::vector<Aggregator> Aggregator::all() {
  std::vector<Aggregator> out;
  for (auto op : {Op::sum, Op::average, Op::max, Op::min}) out.push_back(absolute_op(op));
  for (auto op : {Op::sum, Op::average, Op::max, Op::min}) out.push_back(signed_op(op));
  out.push_back(count());
  return out;
}

double Aggregator::apply(const std::vector<double>& scores) const {
  if (family_ == Family::count) return static_cast<double>(scores.size());
  if (scores.empty()) return 0.0;
  std::vector<double> v = scores;
  if (family_ == Family::absolute_values) {
    for (auto& s : v) s = std::abs(s);
  }
  switch (op_) {
    case Op::sum:
      return std::accumulate(v.begin(), v.end(), 0.0);
    case Op::average:
      return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    case Op::max:
      return *std::max_element(v.begin(), v.end());
    case Op::min:
      return *std::min_element(v.begin(), v.end());
  }
  return 0.0;
}

std::string to_string(const Aggregator& agg) {
  if (agg.family() == Aggregator::Family::count) return "count";
  std::string name = agg.family() == Aggregator::Family::signed_values ? "signed-" : "abs-";
  switch (agg.op()) {
    case Aggregator::Op::sum:
      return name + "sum";
    case Aggregator::Op::average:
      return name + "average";
    case Aggregator::Op::max:
      return name + "max";
    case Aggregator::Op::min:
      return name + "min";
  }
  return name;
}

Aggregator parse_aggregator(std::string_view name) {
  for (const auto& agg : Aggregator::all()) {
    if (to_string(agg) == name) return agg;
  }
  throw Error(Errc::invalid_argument, "unknown aggregator '" + std::string(name) +
                                          "' (expected abs-|signed- sum|average|max|min, or count)");
}

double cumulative_score(const TreePath& leaf, int depth) {
  if (leaf.depth() != depth) {
    throw Error(Errc::invalid_argument, "cumulative score needs a leaf of depth " +
                                            std::to_string(depth) + ", got " + to_string(leaf));
  }
  int magnitude = 0;
  int sign = 1;
  for (int b : leaf.indices) {
    if (b == 0) throw Error(Errc::invalid_argument, "branching index 0 in " + to_string(leaf));
    magnitude += std::abs(b);
    if (b < 0) sign = -sign;
  }
  return static_cast<double>(sign * magnitude);
}

SalienceMap salience_map(const RankProjectionTree& tree, const Aggregator& agg) {
  const auto pre = preimage(tree);
  SalienceMap map;
  map.method = to_string(agg);
  map.rank_by_magnitude = agg.family() == Aggregator::Family::signed_values;
  map.scores.resize(pre.size(), 0.0);
  map.covered.resize(pre.size(), false);
  for (std::size_t n = 0; n < pre.size(); ++n) {
    if (pre[n].empty()) continue;
    std::vector<double> c;
    c.reserve(pre[n].size());
    for (const auto& leaf : pre[n]) c.push_back(cumulative_score(leaf, tree.depth()));
    map.scores[n] = agg.apply(c);
    map.covered[n] = true;
  }
  return map;
}

std::vector<std::pair<int, double>> rank_inputs(const SalienceMap& map, int k) {
  const int n = static_cast<int>(map.scores.size());
  if (k < 1 || k > n) {
    throw Error(Errc::invalid_argument,
                "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  auto key = [&](int i) {
    const double s = map.scores[static_cast<std::size_t>(i - 1)];
    return map.rank_by_magnitude ? std::abs(s) : s;
  };
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 1);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ka = key(a);
    const double kb = key(b);
    if (ka != kb) return ka > kb;
    return a < b;
  });
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    const int i = idx[static_cast<std::size_t>(p)];
    out.emplace_back(i, map.scores[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

SalienceMap gradient_salience(const Network& net,
                              const std::vector<Eigen::VectorXd>& reference_inputs) {
  if (reference_inputs.empty()) {
    throw Error(Errc::invalid_argument, "gradient salience needs at least one reference input");
  }
  Eigen::VectorXd total = Eigen::VectorXd::Zero(net.input_size());
  for (const auto& x : reference_inputs) {
    total += gradient(net, NodeRef{0, 1}, net.depth(), x).cwiseAbs();
  }
  total /= static_cast<double>(reference_inputs.size());
  SalienceMap map;
  map.method = "gradient-abs";
  map.scores.assign(total.data(), total.data() + total.size());
  map.covered.assign(map.scores.size(), true);
  return map;
}

}  // namespace rpt
