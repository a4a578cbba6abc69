#pragma once

// Rooted, unordered, bijectively leaf-labeled trees whose internal nodes have
// at least two children, plus the restriction / refinement primitives and the
// named constructions (caterpillars, balanced binary trees, substitution).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mastct/leaf_mask.hpp"

namespace mastct {

// Sorted, duplicate-free list of leaf labels.
using LabelSet = std::vector<std::string>;
using NodeId = std::size_t;

// Labels are nonempty tokens over [A-Za-z0-9_].
bool is_valid_label(std::string_view label);

// Sorts and deduplicates.
LabelSet make_label_set(std::vector<std::string> labels);

// Immutable tree value. Nodes are stored in canonical preorder: the root is
// node 0 and children are ordered by their lexicographically smallest
// descendant leaf label, so two trees are equal as unordered labeled trees
// exactly when their node arrays coincide.
class PhyloTree {
 public:
  static PhyloTree leaf(std::string label);
  // Throws std::invalid_argument on fewer than two children or overlapping
  // leaf sets.
  static PhyloTree join(std::vector<PhyloTree> children);

  NodeId root() const { return 0; }
  std::size_t node_count() const { return nodes_.size(); }
  bool is_leaf(NodeId v) const { return nodes_[v].children.empty(); }
  // Empty for internal nodes.
  const std::string& label(NodeId v) const { return nodes_[v].label; }
  std::span<const NodeId> children(NodeId v) const { return nodes_[v].children; }
  std::optional<NodeId> parent(NodeId v) const;
  std::size_t degree(NodeId v) const { return nodes_[v].children.size(); }
  const std::string& min_label(NodeId v) const { return nodes_[v].min_label; }

  // L(T), sorted.
  const LabelSet& leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }
  LabelSet leaves_below(NodeId v) const;

  std::optional<NodeId> find_leaf(std::string_view label) const;
  // The node whose descendant leaf set is exactly `cluster`, if any.
  std::optional<NodeId> find_cluster(const LabelSet& cluster) const;
  PhyloTree subtree(NodeId v) const;

  friend bool operator==(const PhyloTree& a, const PhyloTree& b);

 private:
  struct Node {
    std::string label;
    std::string min_label;
    std::vector<NodeId> children;
    NodeId parent = 0;
  };
  PhyloTree() = default;
  void append_subtree(const PhyloTree& other, NodeId v, NodeId parent);

  std::vector<Node> nodes_;
  LabelSet leaves_;
};

struct TreeStats {
  std::size_t size = 0;
  std::size_t max_degree = 0;
  std::size_t height = 0;
  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

// Grammar: tree := subtree ";" ; subtree := LABEL | "(" subtree ("," subtree)+ ")".
// Whitespace outside labels is ignored. Syntax errors, duplicate labels and
// unary internal nodes all throw ParseError carrying the byte offset.
PhyloTree parse_tree(std::string_view text);
// Canonical text form, terminated by ';'.
std::string serialize_tree(const PhyloTree& tree);

// Topological restriction T|X. Returns nullopt for X = {}. Throws
// std::invalid_argument if X is not a subset of L(T).
std::optional<PhyloTree> restrict_to(const PhyloTree& tree, const LabelSet& labels);

bool tree_equal(const PhyloTree& a, const PhyloTree& b);

// { L(T_v) : v node of T }, sorted.
std::vector<LabelSet> clusters(const PhyloTree& tree);

// True iff `coarse` is obtained from `fine` by collapsing internal edges,
// decided as clusters(coarse) being a subset of clusters(fine). Throws on
// differing leaf sets.
bool refines(const PhyloTree& fine, const PhyloTree& coarse);

TreeStats tree_stats(const PhyloTree& tree);

// T[T_1, ..., T_n]: replaces leaf "i" of `shape` (labels exactly 1..n) by
// parts[i-1].
PhyloTree substitute(const PhyloTree& shape, std::span<const PhyloTree> parts);

// R_n[l_1, ..., l_n] = <<...<l_1, l_2>, ...>, l_n>.
PhyloTree caterpillar(std::span<const std::string> labels);
// Canonical minimum-height binary tree: the left child takes the first
// ceil(k/2) labels. Height is ceil(log2 k).
PhyloTree min_height_binary(std::span<const std::string> labels);
std::size_t ceil_log2(std::size_t k);

struct PathCollapse {
  PhyloTree tree;
  NodeId lambda;  // least common ancestor of i and j in `tree`
};
// Collapses every edge joining two internal nodes of the i-j leaf path.
PathCollapse collapse_leaf_path(const PhyloTree& tree, std::string_view i, std::string_view j);

// Collapses the edge above each listed internal non-root node, merging it
// into its parent. Node ids refer to `tree`.
PhyloTree collapse_edges(const PhyloTree& tree, std::span<const NodeId> lower_endpoints);

// Every distinct tree on exactly `labels`, sorted by serialization.
std::vector<PhyloTree> enumerate_trees(const LabelSet& labels, std::size_t limit = 6);

// Trees sharing one leaf set, with precomputed cluster masks for the fast
// predicates. Leaf index i is leaves()[i].
class TreeCollection {
 public:
  explicit TreeCollection(std::vector<PhyloTree> trees);

  const std::vector<PhyloTree>& trees() const { return trees_; }
  const PhyloTree& operator[](std::size_t i) const { return trees_[i]; }
  std::size_t size() const { return trees_.size(); }
  const LabelSet& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t max_degree() const { return max_degree_; }

  std::optional<std::size_t> index_of(std::string_view label) const;
  // Throws std::invalid_argument for labels outside the common leaf set.
  LeafMask mask_of(const LabelSet& labels) const;
  LabelSet labels_of(const LeafMask& mask) const;
  LeafMask full_mask() const { return LeafMask::first(leaves_.size()); }

  // Cluster masks of member `i`, sorted, singletons included.
  const std::vector<LeafMask>& cluster_masks(std::size_t i) const { return cluster_masks_[i]; }
  std::vector<LeafMask> cluster_masks_of(const PhyloTree& tree) const;

 private:
  std::vector<PhyloTree> trees_;
  LabelSet leaves_;
  std::size_t max_degree_ = 0;
  std::vector<std::vector<LeafMask>> cluster_masks_;
};

}  // namespace mastct
