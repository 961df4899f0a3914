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

#include "rptree/tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>

#include "rptree/error.hpp"

namespace rpt {
namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TreePath TreePath::parent() const {
  if (indices.empty()) throw Error(Errc::invalid_argument, "the root has no parent");
  return TreePath{std::vector<int>(indices.begin(), indices.end() - 1)};
}

TreePath TreePath::child(int b) const {
  TreePath out = *this;
  out.indices.push_back(b);
  return out;
}

std::string to_string(const TreePath& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(path.indices[i]);
  }
  return s + "]";
}

int branch_of_slot(int slot, int half_branch) {
  return slot < half_branch ? slot + 1 : -(slot - half_branch + 1);
}

int slot_of_branch(int b, int half_branch) {
  if (b == 0 || std::abs(b) > half_branch) {
    throw Error(Errc::invalid_argument, "branching index " + std::to_string(b) +
                                            " outside +-1.." + std::to_string(half_branch));
  }
  return b > 0 ? b - 1 : half_branch - b - 1;
}

std::uint64_t leaf_count_for(int half_branch, int depth) {
  const std::uint64_t fan = 2 * static_cast<std::uint64_t>(half_branch);
  std::uint64_t r = 1;
  for (int d = 0; d < depth; ++d) {
    if (r > std::numeric_limits<std::uint64_t>::max() / fan) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= fan;
  }
  return r;
}

int max_half_branch(const Network& net) {
  int best = std::numeric_limits<int>::max();
  for (int l = 1; l <= net.depth(); ++l) best = std::min(best, (net.size(l) - 1) / 2);
  return best;
}

RankProjectionTree::RankProjectionTree(int half_branch, std::vector<int> layer_sizes,
                                       RankingSpec spec, std::string network_digest,
                                       std::vector<std::vector<NodeRef>> images)
    : half_branch_(half_branch),
      layer_sizes_(std::move(layer_sizes)),
      spec_(std::move(spec)),
      network_digest_(std::move(network_digest)),
      images_(std::move(images)) {
  if (half_branch_ < 1) throw Error(Errc::constraint, "B must be at least 1");
  if (images_.empty() || layer_sizes_.size() != images_.size()) {
    throw Error(Errc::shape_mismatch, "tree depth does not match the layer count");
  }
  if (layer_sizes_[0] != 1) throw Error(Errc::shape_mismatch, "output layer must have one node");
  for (std::size_t l = 1; l < layer_sizes_.size(); ++l) {
    if (2 * half_branch_ >= layer_sizes_[l]) {
      throw Error(Errc::constraint, "B = " + std::to_string(half_branch_) +
                                        " violates B < N/2 at layer " + std::to_string(l) +
                                        " (N = " + std::to_string(layer_sizes_[l]) + ")");
    }
  }
  for (std::size_t d = 0; d < images_.size(); ++d) {
    if (images_[d].size() != ipow(static_cast<std::size_t>(fanout()), static_cast<int>(d))) {
      throw Error(Errc::shape_mismatch, "depth " + std::to_string(d) + " has " +
                                            std::to_string(images_[d].size()) + " nodes");
    }
    for (const auto& n : images_[d]) {
      if (n.layer != static_cast<int>(d) || n.index < 1 || n.index > layer_sizes_[d]) {
        throw Error(Errc::invalid_argument, "node image (" + std::to_string(n.layer) + "," +
                                                std::to_string(n.index) + ") invalid at depth " +
                                                std::to_string(d));
      }
    }
  }
  if (images_[0].front() != NodeRef{0, 1}) {
    throw Error(Errc::invalid_argument, "root must map to the output node");
  }
}

std::size_t RankProjectionTree::node_count() const {
  std::size_t total = 0;
  for (const auto& level : images_) total += level.size();
  return total;
}

TreePath RankProjectionTree::path_at(int depth, std::size_t slot) const {
  const auto fan = static_cast<std::size_t>(fanout());
  TreePath path;
  path.indices.resize(static_cast<std::size_t>(depth));
  for (int d = depth - 1; d >= 0; --d) {
    path.indices[static_cast<std::size_t>(d)] =
        branch_of_slot(static_cast<int>(slot % fan), half_branch_);
    slot /= fan;
  }
  return path;
}

std::size_t RankProjectionTree::slot_of(const TreePath& path) const {
  if (path.depth() > depth()) {
    throw Error(Errc::invalid_argument, "path " + to_string(path) + " deeper than the tree");
  }
  std::size_t slot = 0;
  for (int b : path.indices) {
    slot = slot * static_cast<std::size_t>(fanout()) +
           static_cast<std::size_t>(slot_of_branch(b, half_branch_));
  }
  return slot;
}

NodeRef RankProjectionTree::phi(const TreePath& path) const {
  return images_[static_cast<std::size_t>(path.depth())][slot_of(path)];
}

RankProjectionTree build_tree(const Network& net, const RankingSpec& spec, int half_branch,
                              std::uint64_t leaf_cap) {
  if (half_branch < 1) throw Error(Errc::constraint, "B must be at least 1");
  for (int l = 1; l <= net.depth(); ++l) {
    if (2 * half_branch >= net.size(l)) {
      throw Error(Errc::constraint,
                  "B = " + std::to_string(half_branch) + " violates B < N/2 at layer " +
                      std::to_string(l) + " (N = " + std::to_string(net.size(l)) +
                      "); largest legal B is " + std::to_string(max_half_branch(net)));
    }
  }
  const std::uint64_t leaf_total = leaf_count_for(half_branch, net.depth());
  if (leaf_total > leaf_cap) {
    throw Error(Errc::constraint, "tree would have (2B)^L = " + std::to_string(leaf_total) +
                                      " leaves, above the cap of " + std::to_string(leaf_cap));
  }
  spec.validate(net);

  const int fan = 2 * half_branch;
  // Children depend only on the network node a tree node maps to.
  std::map<NodeRef, std::vector<NodeRef>> children_of;
  auto children = [&](const NodeRef& n) -> const std::vector<NodeRef>& {
    auto it = children_of.find(n);
    if (it != children_of.end()) return it->second;
    const Ranking r = rank(net, spec, n, n.layer + 1);
    std::vector<NodeRef> kids;
    kids.reserve(static_cast<std::size_t>(fan));
    for (int slot = 0; slot < fan; ++slot) {
      kids.push_back(quasi_inverse(r, branch_of_slot(slot, half_branch)));
    }
    return children_of.emplace(n, std::move(kids)).first->second;
  };

  std::vector<std::vector<NodeRef>> images;
  images.push_back({NodeRef{0, 1}});
  for (int d = 0; d < net.depth(); ++d) {
    std::vector<NodeRef> next;
    next.reserve(images.back().size() * static_cast<std::size_t>(fan));
    for (const auto& n : images.back()) {
      const auto& kids = children(n);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    images.push_back(std::move(next));
  }
  return RankProjectionTree(half_branch, net.layer_sizes(), spec, net.digest(),
                            std::move(images));
}

std::vector<TreePath> leaves(const RankProjectionTree& tree) {
  std::vector<TreePath> out;
  out.reserve(tree.leaf_count());
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) out.push_back(tree.path_at(tree.depth(), k));
  return out;
}

std::vector<std::vector<TreePath>> preimage(const RankProjectionTree& tree) {
  std::vector<std::vector<TreePath>> out(static_cast<std::size_t>(tree.input_size()));
  const auto& level = tree.nodes_at(tree.depth());
  for (std::size_t k = 0; k < level.size(); ++k) {
    out[static_cast<std::size_t>(level[k].index - 1)].push_back(tree.path_at(tree.depth(), k));
  }
  return out;
}

std::vector<GroupRecord> extract_groups(const RankProjectionTree& tree) {
  const int depth = tree.depth();
  const auto fan = static_cast<std::size_t>(tree.fanout());
  const auto& leaf_images = tree.nodes_at(depth);
  const std::size_t n_leaves = leaf_images.size();

  // below[q] = sign of the product of leaf q's branching indices strictly
  // below the depth currently being processed.
  std::vector<signed char> below(n_leaves, 1);
  std::vector<std::vector<GroupRecord>> by_depth(static_cast<std::size_t>(depth));
  std::size_t span = 1;  // leaves under one node of the current depth
  for (int d = depth - 1; d >= 0; --d) {
    // Fold in the branching index at depth d+1.
    for (std::size_t q = 0; q < n_leaves; ++q) {
      const auto slot = (q / span) % fan;
      if (branch_of_slot(static_cast<int>(slot), tree.half_branch()) < 0) below[q] = -below[q];
    }
    span *= fan;
    const auto& level = tree.nodes_at(d);
    auto& records = by_depth[static_cast<std::size_t>(d)];
    records.reserve(level.size());
    for (std::size_t k = 0; k < level.size(); ++k) {
      GroupRecord rec;
      rec.path = tree.path_at(d, k);
      rec.layer = d;
      rec.mapped_node = level[k];
      for (std::size_t q = k * span; q < (k + 1) * span; ++q) {
        (below[q] > 0 ? rec.s_plus : rec.s_minus).push_back(leaf_images[q].index);
      }
      sort_unique(rec.s_plus);
      sort_unique(rec.s_minus);
      records.push_back(std::move(rec));
    }
  }
  std::vector<GroupRecord> out;
  for (auto& records : by_depth) {
    std::move(records.begin(), records.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<GeneGroupRecord> expand_with_modules(const std::vector<GroupRecord>& groups,
                                                 const ModuleMap& modules) {
  auto expand = [&](const std::vector<int>& indices, const GroupRecord& g) {
    std::set<std::string> genes;
    for (int i : indices) {
      auto it = modules.find(i);
      if (it == modules.end()) {
        throw Error(Errc::invalid_argument, "module map has no entry for input " +
                                                std::to_string(i) + " (group " +
                                                to_string(g.path) + ")");
      }
      genes.insert(it->second.genes.begin(), it->second.genes.end());
    }
    return std::vector<std::string>(genes.begin(), genes.end());
  };
  std::vector<GeneGroupRecord> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    out.push_back(GeneGroupRecord{g.path, g.layer, g.mapped_node, expand(g.s_plus, g),
                                  expand(g.s_minus, g)});
  }
  return out;
}

}  // namespace rpt
