#include "mastct/agreement.hpp"

#include <algorithm>
#include <stdexcept>

namespace mastct {

namespace {

void require_inside(const PhyloTree& tree, const TreeCollection& coll) {
  if (!std::includes(coll.leaves().begin(), coll.leaves().end(), tree.leaves().begin(), tree.leaves().end()))
    throw std::invalid_argument("tree leaves are not inside the common leaf set");
}

bool properly_overlap(const LeafMask& a, const LeafMask& b) {
  LeafMask both = a & b;
  return both.any() && both != a && both != b;
}

std::vector<std::size_t> indices_of(const LeafMask& x) {
  std::vector<std::size_t> out;
  x.for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

template <class Differs>
std::optional<Triple> scan_triples(const TreeCollection& coll, const LeafMask& x, Differs differs) {
  const auto idx = indices_of(x);
  std::vector<int> topo(coll.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      for (std::size_t c = b + 1; c < idx.size(); ++c) {
        Triple t{idx[a], idx[b], idx[c]};
        for (std::size_t i = 0; i < coll.size(); ++i) {
          topo[i] = triple_topology(coll.cluster_masks(i), t);
          for (std::size_t j = 0; j < i; ++j)
            if (differs(topo[j], topo[i])) return t;
        }
      }
  return std::nullopt;
}

LabelSet triple_labels(const TreeCollection& coll, const Triple& t) {
  return {coll.leaves()[t[0]], coll.leaves()[t[1]], coll.leaves()[t[2]]};
}

}  // namespace

int triple_topology(const std::vector<LeafMask>& clusters, const Triple& t) {
  for (const auto& c : clusters) {
    const bool a = c.test(t[0]);
    const bool b = c.test(t[1]);
    const bool d = c.test(t[2]);
    if (a + b + d != 2) continue;
    if (!d) return 1;
    if (!b) return 2;
    return 3;
  }
  return 0;
}

void restricted_clusters(const std::vector<LeafMask>& clusters, const LeafMask& x, std::vector<LeafMask>& out) {
  out.clear();
  for (const auto& c : clusters) {
    LeafMask m = c & x;
    if (m.any()) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

bool agree_on(const TreeCollection& coll, const LeafMask& x) {
  thread_local std::vector<LeafMask> first, other;
  restricted_clusters(coll.cluster_masks(0), x, first);
  for (std::size_t i = 1; i < coll.size(); ++i) {
    restricted_clusters(coll.cluster_masks(i), x, other);
    if (other != first) return false;
  }
  return true;
}

std::optional<std::vector<LeafMask>> common_refinement_clusters(const TreeCollection& coll, const LeafMask& x) {
  std::vector<LeafMask> family;
  thread_local std::vector<LeafMask> member;
  for (std::size_t i = 0; i < coll.size(); ++i) {
    restricted_clusters(coll.cluster_masks(i), x, member);
    const std::size_t known = family.size();
    for (const auto& c : member) {
      if (std::find(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(known), c) !=
          family.begin() + static_cast<std::ptrdiff_t>(known))
        continue;
      for (std::size_t f = 0; f < known; ++f)
        if (properly_overlap(c, family[f])) return std::nullopt;
      family.push_back(c);
    }
  }
  return family;
}

bool compatible_on(const TreeCollection& coll, const LeafMask& x) {
  return common_refinement_clusters(coll, x).has_value();
}

std::optional<Triple> disagreement_triple(const TreeCollection& coll, const LeafMask& x) {
  return scan_triples(coll, x, [](int a, int b) { return a != b; });
}

std::optional<Triple> conflict_triple(const TreeCollection& coll, const LeafMask& x) {
  return scan_triples(coll, x, [](int a, int b) { return a != 0 && b != 0 && a != b; });
}

PhyloTree tree_from_clusters(const TreeCollection& coll, std::vector<LeafMask> family) {
  std::sort(family.begin(), family.end(),
            [](const LeafMask& a, const LeafMask& b) { return a.count() > b.count() || (a.count() == b.count() && a < b); });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  if (family.empty()) throw std::invalid_argument("tree_from_clusters: empty family");
  const std::size_t m = family.size();
  std::vector<std::vector<std::size_t>> kids(m);
  for (std::size_t s = 1; s < m; ++s) {
    // Larger sets come first, so the last superset seen is the smallest one.
    std::optional<std::size_t> parent;
    for (std::size_t t = 0; t < s; ++t)
      if (family[s].is_subset_of(family[t]) && family[t] != family[s]) parent = t;
    if (!parent) throw std::invalid_argument("tree_from_clusters: family has no single root");
    kids[*parent].push_back(s);
  }
  auto build = [&](auto&& self, std::size_t s) -> PhyloTree {
    if (kids[s].empty()) {
      if (family[s].count() != 1) throw std::invalid_argument("tree_from_clusters: missing singleton clusters");
      return PhyloTree::leaf(coll.labels_of(family[s]).front());
    }
    std::vector<PhyloTree> children;
    for (auto c : kids[s]) children.push_back(self(self, c));
    return PhyloTree::join(std::move(children));
  };
  return build(build, 0);
}

PhyloTree restrict_member(const TreeCollection& coll, std::size_t i, const LeafMask& x) {
  std::vector<LeafMask> family;
  restricted_clusters(coll.cluster_masks(i), x, family);
  return tree_from_clusters(coll, std::move(family));
}

// ---------------------------------------------------------------------------

bool is_agreement_subtree(const PhyloTree& tree, const TreeCollection& coll) {
  require_inside(tree, coll);
  for (const auto& member : coll.trees()) {
    auto r = restrict_to(member, tree.leaves());
    if (!r || !tree_equal(*r, tree)) return false;
  }
  return true;
}

bool is_compatible_with(const PhyloTree& tree, const TreeCollection& coll) {
  require_inside(tree, coll);
  for (const auto& member : coll.trees()) {
    auto r = restrict_to(member, tree.leaves());
    if (!r || !refines(tree, *r)) return false;
  }
  return true;
}

CompatibleResult compatible_exists(const TreeCollection& coll, const LabelSet& labels) {
  LabelSet x = make_label_set(labels);
  if (x.empty()) throw std::invalid_argument("compatible_exists: empty leaf set");
  auto family = common_refinement_clusters(coll, coll.mask_of(x));
  if (!family) return {};
  return {true, tree_from_clusters(coll, std::move(*family))};
}

std::optional<LabelSet> find_disagreement_triple(const TreeCollection& coll, const LabelSet& labels) {
  auto t = disagreement_triple(coll, coll.mask_of(make_label_set(labels)));
  if (!t) return std::nullopt;
  return triple_labels(coll, *t);
}

std::optional<LabelSet> find_conflict_triple(const TreeCollection& coll, const LabelSet& labels) {
  auto t = conflict_triple(coll, coll.mask_of(make_label_set(labels)));
  if (!t) return std::nullopt;
  return triple_labels(coll, *t);
}

}  // namespace mastct
