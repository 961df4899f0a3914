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

#ifndef RPTREE_TREE_HPP_
#define RPTREE_TREE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rptree/network.hpp"
#include "rptree/ranking.hpp"

namespace rpt {

inline constexpr std::uint64_t kDefaultLeafCap = 1'000'000;

// A node of the rank projection tree: the list of branching indices b_1..b_d,
// each in {1..B} or {-B..-1}. The empty path is the root.
struct TreePath {
  std::vector<int> indices;

  int depth() const { return static_cast<int>(indices.size()); }
  bool is_root() const { return indices.empty(); }
  TreePath parent() const;
  TreePath child(int b) const;

  friend bool operator==(const TreePath&, const TreePath&) = default;
  friend auto operator<=>(const TreePath&, const TreePath&) = default;
};

std::string to_string(const TreePath& path);

// Children of a tree node are enumerated as b = 1, 2, .., B, -1, -2, .., -B.
// These convert between b and its position k in that order.
int branch_of_slot(int slot, int half_branch);
int slot_of_branch(int b, int half_branch);

// The tree T together with its image phi(t) for every node t.
//
// Nodes at depth d are stored in enumeration order: node k at depth d has
// children k*2B .. k*2B + 2B - 1 at depth d+1. Depth d maps onto network
// layer d, so the leaves (depth L) all land on the input layer.
class RankProjectionTree {
 public:
  // `images[d]` holds the (2B)^d nodes of depth d in enumeration order.
  // Throws rpt::Error if the structural laws do not hold.
  RankProjectionTree(int half_branch, std::vector<int> layer_sizes, RankingSpec spec,
                     std::string network_digest, std::vector<std::vector<NodeRef>> images);

  int half_branch() const { return half_branch_; }
  int depth() const { return static_cast<int>(images_.size()) - 1; }
  int fanout() const { return 2 * half_branch_; }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  int input_size() const { return layer_sizes_.back(); }
  const RankingSpec& spec() const { return spec_; }
  const std::string& network_digest() const { return network_digest_; }

  std::size_t node_count() const;
  std::size_t leaf_count() const { return images_.back().size(); }

  const std::vector<NodeRef>& nodes_at(int depth) const {
    return images_.at(static_cast<std::size_t>(depth));
  }
  TreePath path_at(int depth, std::size_t slot) const;
  std::size_t slot_of(const TreePath& path) const;

  /// phi(t). Throws if the path is not a node of this tree.
  NodeRef phi(const TreePath& path) const;

  friend bool operator==(const RankProjectionTree&, const RankProjectionTree&) = default;

 private:
  int half_branch_;
  std::vector<int> layer_sizes_;
  RankingSpec spec_;
  std::string network_digest_;
  std::vector<std::vector<NodeRef>> images_;
};

/// (2B)^L, saturating at UINT64_MAX.
std::uint64_t leaf_count_for(int half_branch, int depth);

/// Largest legal B for the network, 0 if none (B < N_l/2 for every l >= 1).
int max_half_branch(const Network& net);

// Builds T by the recursion phi([]) = (0,1), phi([t, b]) = r^{-1}_{phi(t)}(b):
// each tree node mapped to network node n at layer d ranks layer d+1 with
// respect to n and keeps the top-B and bottom-B nodes as its children.
RankProjectionTree build_tree(const Network& net, const RankingSpec& spec, int half_branch,
                              std::uint64_t leaf_cap = kDefaultLeafCap);

std::vector<TreePath> leaves(const RankProjectionTree& tree);

// phi^{-1} restricted to the input layer: entry n-1 lists the leaves mapped to
// input node n, in leaf enumeration order.
std::vector<std::vector<TreePath>> preimage(const RankProjectionTree& tree);

// Positive/negative input groupings of one tree node. Both sets hold sorted,
// distinct 1-based input indices and may overlap.
struct GroupRecord {
  TreePath path;
  int layer = 0;
  NodeRef mapped_node;
  std::vector<int> s_plus;
  std::vector<int> s_minus;

  friend bool operator==(const GroupRecord&, const GroupRecord&) = default;
};

// S+_t collects phi(leaf) over leaves below t whose branching indices below t
// multiply to a positive number; S-_t those with a negative product. One
// record per tree node of depth 0..L-1 in breadth-first enumeration order;
// identical groupings from different tree nodes are all kept.
std::vector<GroupRecord> extract_groups(const RankProjectionTree& tree);

struct Module {
  std::string module_id;
  std::vector<std::string> genes;

  friend bool operator==(const Module&, const Module&) = default;
};

// Input node index (1-based) -> the module it represents.
using ModuleMap = std::map<int, Module>;

struct GeneGroupRecord {
  TreePath path;
  int layer = 0;
  NodeRef mapped_node;
  std::vector<std::string> s_plus;
  std::vector<std::string> s_minus;

  friend bool operator==(const GeneGroupRecord&, const GeneGroupRecord&) = default;
};

// Replaces each input index by its module's genes and takes the union per set.
// Throws if a group references an input the map does not cover.
std::vector<GeneGroupRecord> expand_with_modules(const std::vector<GroupRecord>& groups,
                                                 const ModuleMap& modules);

}  // namespace rpt

#endif  // RPTREE_TREE_HPP_
