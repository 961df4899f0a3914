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

#ifndef RPTREE_TESTS_SUPPORT_FIXTURES_HPP_
#define RPTREE_TESTS_SUPPORT_FIXTURES_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rptree/network.hpp"

namespace rpt::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(RPTREE_TEST_DATA_DIR) / name;
}

// Sizes are listed output first: sizes[0] must be 1.
inline Network random_network(std::mt19937_64& gen, const std::vector<int>& sizes,
                              const std::vector<Activation>& acts) {
  std::uniform_real_distribution<double> w(-1.0, 1.0);
  std::uniform_real_distribution<double> b(-0.5, 0.5);
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Eigen::MatrixXd m(sizes[l], sizes[l + 1]);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = w(gen);
    Eigen::VectorXd v(sizes[l]);
    for (Eigen::Index r = 0; r < v.size(); ++r) v(r) = b(gen);
    weights.push_back(std::move(m));
    biases.push_back(std::move(v));
  }
  return Network(std::move(weights), std::move(biases), acts);
}

inline Network random_network(std::mt19937_64& gen, const std::vector<int>& sizes) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Activation> acts;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) acts.push_back(static_cast<Activation>(pick(gen)));
  return random_network(gen, sizes, acts);
}

// Output-first sizes with depth L and hidden/input widths in [lo, hi].
inline std::vector<int> random_sizes(std::mt19937_64& gen, int depth, int lo, int hi) {
  std::uniform_int_distribution<int> width(lo, hi);
  std::vector<int> sizes{1};
  for (int l = 1; l <= depth; ++l) sizes.push_back(width(gen));
  return sizes;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& gen, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(gen);
  return v;
}

// Network whose last weight layer (into the input layer) gives every target
// input a weight of magnitude in [3, 4] while all other weights lie in
// [-1, 1]. The first ceil(T/2) targets of each row's shuffled target list are
// positive and the rest negative, so target inputs occupy both ends of every
// weight ranking of the input layer. Targets are 1-based input indices.
inline Network planted_network(std::mt19937_64& gen, const std::vector<int>& sizes,
                               const std::vector<int>& targets,
                               const std::vector<Activation>& acts) {
  Network base = random_network(gen, sizes, acts);
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  for (int l = 0; l < base.depth(); ++l) {
    weights.push_back(base.weights(l));
    biases.push_back(base.bias(l));
  }
  std::uniform_real_distribution<double> big(3.0, 4.0);
  auto& last = weights.back();
  for (Eigen::Index r = 0; r < last.rows(); ++r) {
    std::vector<int> order = targets;
    std::shuffle(order.begin(), order.end(), gen);
    const std::size_t positive = (order.size() + 1) / 2;
    for (std::size_t t = 0; t < order.size(); ++t) {
      last(r, order[t] - 1) = (t < positive ? 1.0 : -1.0) * big(gen);
    }
  }
  return Network(std::move(weights), std::move(biases), acts);
}

}  // namespace rpt::testing

#endif  // RPTREE_TESTS_SUPPORT_FIXTURES_HPP_
