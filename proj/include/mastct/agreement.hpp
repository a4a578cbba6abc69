#pragma once

// Agreement and compatibility predicates over a TreeCollection.
//
// A tree T agrees with the collection when every member restricted to L(T)
// equals T, and is compatible when T refines every such restriction. For
// trees on a common leaf set a common refinement exists exactly when the
// union of their cluster families is laminar (no two clusters properly
// overlap); the laminar family itself then spells out the least resolved
// common refinement, which is the witness returned here.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "mastct/leaf_mask.hpp"
#include "mastct/tree.hpp"

namespace mastct {

// Throws std::invalid_argument if L(T) is not inside the common leaf set.
bool is_agreement_subtree(const PhyloTree& tree, const TreeCollection& coll);
bool is_compatible_with(const PhyloTree& tree, const TreeCollection& coll);

struct CompatibleResult {
  bool exists = false;
  std::optional<PhyloTree> witness;
};
// Throws std::invalid_argument on an empty X.
CompatibleResult compatible_exists(const TreeCollection& coll, const LabelSet& labels);

// Scans triples {a < b < c} of X lexicographically and returns the first on
// which two members' restrictions differ.
std::optional<LabelSet> find_disagreement_triple(const TreeCollection& coll, const LabelSet& labels);
// As above, but only reports triples resolved into two different binary
// trees; a star never conflicts.
std::optional<LabelSet> find_conflict_triple(const TreeCollection& coll, const LabelSet& labels);

// Mask-level routes used by the solvers. Leaf indices follow coll.leaves().

using Triple = std::array<std::size_t, 3>;

// Which pair of (a, b, c) a tree groups: 0 for the star, 1 for ab|c, 2 for
// ac|b, 3 for bc|a.
int triple_topology(const std::vector<LeafMask>& clusters, const Triple& t);

// Clusters of the member restricted to x, sorted and deduplicated.
void restricted_clusters(const std::vector<LeafMask>& clusters, const LeafMask& x, std::vector<LeafMask>& out);

bool agree_on(const TreeCollection& coll, const LeafMask& x);
// Union of restricted cluster families, or nullopt when it is not laminar.
std::optional<std::vector<LeafMask>> common_refinement_clusters(const TreeCollection& coll, const LeafMask& x);
bool compatible_on(const TreeCollection& coll, const LeafMask& x);

std::optional<Triple> disagreement_triple(const TreeCollection& coll, const LeafMask& x);
std::optional<Triple> conflict_triple(const TreeCollection& coll, const LeafMask& x);

// Builds the tree whose clusters are exactly `family`. The family must be
// laminar, contain every singleton of its union, and contain the union.
PhyloTree tree_from_clusters(const TreeCollection& coll, std::vector<LeafMask> family);

// Member i restricted to a nonempty x.
PhyloTree restrict_member(const TreeCollection& coll, std::size_t i, const LeafMask& x);

}  // namespace mastct
