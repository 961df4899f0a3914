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

#include "rptree/ranking.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "rptree/error.hpp"

namespace rpt {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = gen();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

std::string_view to_string(RankKind kind) {
  switch (kind) {
    case RankKind::weights:
      return "weights";
    case RankKind::gradient:
      return "gradient";
    case RankKind::random:
      return "random";
  }
  return "weights";
}

RankKind parse_rank_kind(std::string_view name) {
  if (name == "weights") return RankKind::weights;
  if (name == "gradient") return RankKind::gradient;
  if (name == "random") return RankKind::random;
  throw Error(Errc::invalid_argument, "unknown ranking kind '" + std::string(name) + "'");
}

bool operator==(const RankingSpec& a, const RankingSpec& b) {
  if (a.kind != b.kind || a.seed != b.seed ||
      a.reference_inputs.size() != b.reference_inputs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.reference_inputs.size(); ++i) {
    if (a.reference_inputs[i].size() != b.reference_inputs[i].size() ||
        a.reference_inputs[i] != b.reference_inputs[i]) {
      return false;
    }
  }
  return true;
}

void RankingSpec::validate(const Network& net) const {
  if (kind == RankKind::gradient && reference_inputs.empty()) {
    throw Error(Errc::invalid_argument,
                "gradient ranking needs at least one reference input");
  }
  for (std::size_t i = 0; i < reference_inputs.size(); ++i) {
    if (reference_inputs[i].size() != net.input_size()) {
      throw Error(Errc::shape_mismatch,
                  "reference input " + std::to_string(i + 1) + " has length " +
                      std::to_string(reference_inputs[i].size()) + ", network has " +
                      std::to_string(net.input_size()) + " inputs");
    }
  }
}

Ranking::Ranking(NodeRef source, int target_layer, std::vector<int> order)
    : source_(source), target_layer_(target_layer), order_(std::move(order)) {
  ranks_.assign(order_.size(), 0);
  for (std::size_t p = 0; p < order_.size(); ++p) {
    const int j = order_[p];
    if (j < 1 || j > static_cast<int>(order_.size()) || ranks_[static_cast<std::size_t>(j - 1)] != 0) {
      throw Error(Errc::invalid_argument, "ranking order is not a permutation");
    }
    ranks_[static_cast<std::size_t>(j - 1)] = static_cast<int>(p) + 1;
  }
}

std::vector<int> order_by_score(const Eigen::VectorXd& scores) {
  std::vector<int> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = scores(a - 1);
    const double sb = scores(b - 1);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return order;
}

std::vector<int> random_order(std::uint64_t seed, const NodeRef& source, int target_layer,
                              int n) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ static_cast<std::uint64_t>(source.layer));
  key = splitmix64(key ^ static_cast<std::uint64_t>(source.index));
  key = splitmix64(key ^ static_cast<std::uint64_t>(target_layer));
  std::mt19937_64 gen(key);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  for (std::size_t p = order.size(); p > 1; --p) {
    const auto j = static_cast<std::size_t>(bounded(gen, p));
    std::swap(order[p - 1], order[j]);
  }
  return order;
}

Ranking rank(const Network& net, const RankingSpec& spec, const NodeRef& source,
             int target_layer) {
  if (!net.contains(source)) {
    throw Error(Errc::invalid_argument, "rank: source node outside the network");
  }
  if (target_layer <= source.layer || target_layer > net.depth()) {
    throw Error(Errc::invalid_argument,
                "rank: target layer " + std::to_string(target_layer) +
                    " must lie below source layer " + std::to_string(source.layer));
  }
  const int n = net.size(target_layer);
  switch (spec.kind) {
    case RankKind::weights: {
      if (target_layer != source.layer + 1) {
        throw Error(Errc::invalid_argument,
                    "rank: weight ranking is only defined between adjacent layers");
      }
      const Eigen::VectorXd row = net.weights(source.layer).row(source.index - 1).transpose();
      return Ranking(source, target_layer, order_by_score(row));
    }
    case RankKind::gradient: {
      spec.validate(net);
      Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
      for (const auto& x : spec.reference_inputs) {
        mean += gradient(net, source, target_layer, x);
      }
      mean /= static_cast<double>(spec.reference_inputs.size());
      return Ranking(source, target_layer, order_by_score(mean));
    }
    case RankKind::random:
      return Ranking(source, target_layer, random_order(spec.seed, source, target_layer, n));
  }
  throw Error(Errc::invalid_argument, "rank: unknown kind");
}

NodeRef quasi_inverse(const Ranking& ranking, int b) {
  const int n = ranking.size();
  if (b == 0) throw Error(Errc::invalid_argument, "quasi_inverse: branching index 0");
  if (2 * std::abs(b) >= n) {
    throw Error(Errc::constraint, "quasi_inverse: |b| = " + std::to_string(std::abs(b)) +
                                      " must be below N/2 = " + std::to_string(n) + "/2");
  }
  const int r = b > 0 ? b : n + b + 1;
  return NodeRef{ranking.target_layer(), ranking.at_rank(r)};
}

}  // namespace rpt
