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

#ifndef RPTREE_NETWORK_HPP_
#define RPTREE_NETWORK_HPP_

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rpt {

enum class Activation { identity, sigmoid, relu, elu };

std::string_view to_string(Activation act);
Activation parse_activation(std::string_view name);

// Address of a network node. Layers count from the output (layer 0) towards
// the input (layer L); node indices are 1-based.
struct NodeRef {
  int layer = 0;
  int index = 1;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

// A trained dense feed-forward network with a single output node.
//
// weights(l) is the matrix between layer l and layer l+1, shaped
// size(l) x size(l+1), so that a_l = act_l(weights(l) * a_{l+1} + bias(l)).
// Instances are immutable once constructed.
class Network {
 public:
  // Layer vectors are indexed by l = 0..L-1. Throws rpt::Error on any
  // shape, finiteness or single-output violation. An empty digest is replaced
  // by the digest of the canonical weight-file serialization.
  Network(std::vector<Eigen::MatrixXd> weights,
          std::vector<Eigen::VectorXd> biases,
          std::vector<Activation> activations, std::string digest = {});

  /// Number of weight layers, L. The input layer has index L.
  int depth() const { return static_cast<int>(weights_.size()); }
  int size(int layer) const { return sizes_.at(static_cast<std::size_t>(layer)); }
  int input_size() const { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }

  const Eigen::MatrixXd& weights(int l) const { return weights_.at(static_cast<std::size_t>(l)); }
  const Eigen::VectorXd& bias(int l) const { return biases_.at(static_cast<std::size_t>(l)); }
  Activation activation(int l) const { return activations_.at(static_cast<std::size_t>(l)); }

  bool contains(const NodeRef& node) const {
    return node.layer >= 0 && node.layer <= depth() && node.index >= 1 &&
           node.index <= size(node.layer);
  }

  const std::string& digest() const { return digest_; }

 private:
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
  std::vector<Activation> activations_;
  std::vector<int> sizes_;
  std::string digest_;
};

// Weight-file I/O. The file lists layers input -> output; the loader reverses
// them into the output-first convention above. The digest of a loaded network
// is the SHA-256 of the file bytes.
Network load_network(const std::filesystem::path& path);
Network parse_network(std::string_view text);
std::string serialize_network(const Network& net);

// Activations of every layer, indexed by layer: result[L] = x, result[0] is
// the single output.
std::vector<Eigen::VectorXd> forward(const Network& net, const Eigen::VectorXd& x);

// Forward pass started from an arbitrary layer: result[layer] = a, layers
// below it are computed, entries above it are left empty.
std::vector<Eigen::VectorXd> forward_from(const Network& net, int layer,
                                          const Eigen::VectorXd& a);

// d a_target / d a_{wrt_layer, j} for every j, evaluated at input x by reverse
// accumulation. Requires target.layer < wrt_layer <= L. The ReLU derivative
// at exactly zero is taken as 0.
Eigen::VectorXd gradient(const Network& net, const NodeRef& target,
                         int wrt_layer, const Eigen::VectorXd& x);

}  // namespace rpt

#endif  // RPTREE_NETWORK_HPP_
