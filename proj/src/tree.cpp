#include "mastct/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "mastct/errors.hpp"

namespace mastct {

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

LabelSet make_label_set(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

namespace {

void require_distinct_valid(std::span<const std::string> labels) {
  if (labels.empty()) throw std::invalid_argument("empty label list");
  for (const auto& l : labels)
    if (!is_valid_label(l)) throw std::invalid_argument("invalid leaf label '" + l + "'");
  LabelSet sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw std::invalid_argument("duplicate leaf label '" + *dup + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// PhyloTree

PhyloTree PhyloTree::leaf(std::string label) {
  if (!is_valid_label(label)) throw std::invalid_argument("invalid leaf label '" + label + "'");
  PhyloTree t;
  t.nodes_.push_back(Node{label, label, {}, 0});
  t.leaves_.push_back(std::move(label));
  return t;
}

PhyloTree PhyloTree::join(std::vector<PhyloTree> children) {
  if (children.size() < 2) throw std::invalid_argument("internal node needs at least two children");
  std::sort(children.begin(), children.end(), [](const PhyloTree& a, const PhyloTree& b) {
    return a.min_label(0) < b.min_label(0);
  });
  PhyloTree t;
  for (const auto& c : children) {
    LabelSet merged;
    merged.reserve(t.leaves_.size() + c.leaves_.size());
    std::merge(t.leaves_.begin(), t.leaves_.end(), c.leaves_.begin(), c.leaves_.end(),
               std::back_inserter(merged));
    auto dup = std::adjacent_find(merged.begin(), merged.end());
    if (dup != merged.end()) throw std::invalid_argument("duplicate leaf label '" + *dup + "'");
    t.leaves_ = std::move(merged);
  }
  t.nodes_.push_back(Node{"", children.front().min_label(0), {}, 0});
  for (const auto& c : children) {
    t.nodes_[0].children.push_back(t.nodes_.size());
    t.append_subtree(c, 0, 0);
  }
  return t;
}

void PhyloTree::append_subtree(const PhyloTree& other, NodeId v, NodeId parent) {
  NodeId id = nodes_.size();
  nodes_.push_back(Node{other.nodes_[v].label, other.nodes_[v].min_label, {}, parent});
  for (NodeId c : other.nodes_[v].children) {
    nodes_[id].children.push_back(nodes_.size());
    append_subtree(other, c, id);
  }
}

std::optional<NodeId> PhyloTree::parent(NodeId v) const {
  if (v == root()) return std::nullopt;
  return nodes_[v].parent;
}

LabelSet PhyloTree::leaves_below(NodeId v) const {
  LabelSet out;
  // Preorder layout: the subtree of v is a contiguous block starting at v.
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (is_leaf(u)) out.push_back(nodes_[u].label);
    for (NodeId c : nodes_[u].children) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<NodeId> PhyloTree::find_leaf(std::string_view label) const {
  for (NodeId v = 0; v < nodes_.size(); ++v)
    if (is_leaf(v) && nodes_[v].label == label) return v;
  return std::nullopt;
}

std::optional<NodeId> PhyloTree::find_cluster(const LabelSet& cluster) const {
  if (cluster.empty()) return std::nullopt;
  auto v = find_leaf(cluster.front());
  if (!v) return std::nullopt;
  // Walk up from any member leaf; cluster sizes grow monotonically.
  NodeId u = *v;
  while (true) {
    LabelSet below = leaves_below(u);
    if (below == cluster) return u;
    if (below.size() > cluster.size() || u == root()) return std::nullopt;
    u = nodes_[u].parent;
  }
}

PhyloTree PhyloTree::subtree(NodeId v) const {
  PhyloTree t;
  t.append_subtree(*this, v, 0);
  t.leaves_ = leaves_below(v);
  return t;
}

bool operator==(const PhyloTree& a, const PhyloTree& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t v = 0; v < a.nodes_.size(); ++v) {
    if (a.nodes_[v].label != b.nodes_[v].label) return false;
    if (a.nodes_[v].children != b.nodes_[v].children) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  PhyloTree parse() {
    skip_ws();
    if (at_end()) fail("empty input");
    PhyloTree t = subtree();
    skip_ws();
    if (at_end() || text_[pos_] != ';') fail("expected ';'");
    ++pos_;
    skip_ws();
    if (!at_end()) fail("trailing characters after ';'");
    return t;
  }

 private:
  PhyloTree subtree() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      std::size_t open = pos_;
      ++pos_;
      std::vector<PhyloTree> children;
      children.push_back(subtree());
      skip_ws();
      while (!at_end() && text_[pos_] == ',') {
        ++pos_;
        children.push_back(subtree());
        skip_ws();
      }
      if (at_end() || text_[pos_] != ')') fail("expected ',' or ')'");
      if (children.size() < 2) fail("internal node of degree 1", open);
      ++pos_;
      try {
        return PhyloTree::join(std::move(children));
      } catch (const std::invalid_argument& e) {
        fail(e.what(), open);
      }
    }
    std::size_t start = pos_;
    while (!at_end() && is_valid_label(text_.substr(pos_, 1))) ++pos_;
    if (pos_ == start) fail("expected a leaf label or '('");
    return PhyloTree::leaf(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                         text_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void serialize_node(const PhyloTree& t, NodeId v, std::string& out) {
  if (t.is_leaf(v)) {
    out += t.label(v);
    return;
  }
  out += '(';
  bool first = true;
  for (NodeId c : t.children(v)) {
    if (!first) out += ',';
    first = false;
    serialize_node(t, c, out);
  }
  out += ')';
}

}  // namespace

PhyloTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string serialize_tree(const PhyloTree& tree) {
  std::string out;
  serialize_node(tree, tree.root(), out);
  out += ';';
  return out;
}

// ---------------------------------------------------------------------------
// Restriction, equality, clusters, refinement

namespace {

std::optional<PhyloTree> restrict_node(const PhyloTree& t, NodeId v, const LabelSet& keep) {
  if (t.is_leaf(v)) {
    if (std::binary_search(keep.begin(), keep.end(), t.label(v))) return PhyloTree::leaf(t.label(v));
    return std::nullopt;
  }
  std::vector<PhyloTree> kept;
  for (NodeId c : t.children(v)) {
    auto r = restrict_node(t, c, keep);
    if (r) kept.push_back(std::move(*r));
  }
  if (kept.empty()) return std::nullopt;
  // X inside a single child: descend.
  if (kept.size() == 1) return std::move(kept.front());
  return PhyloTree::join(std::move(kept));
}

}  // namespace

std::optional<PhyloTree> restrict_to(const PhyloTree& tree, const LabelSet& labels) {
  LabelSet keep = make_label_set(labels);
  for (const auto& l : keep)
    if (!std::binary_search(tree.leaves().begin(), tree.leaves().end(), l))
      throw std::invalid_argument("restriction label '" + l + "' is not a leaf of the tree");
  return restrict_node(tree, tree.root(), keep);
}

bool tree_equal(const PhyloTree& a, const PhyloTree& b) { return a == b; }

std::vector<LabelSet> clusters(const PhyloTree& tree) {
  std::vector<LabelSet> below(tree.node_count());
  // Children always have larger ids than their parent.
  for (NodeId v = tree.node_count(); v-- > 0;) {
    if (tree.is_leaf(v)) {
      below[v] = {tree.label(v)};
    } else {
      for (NodeId c : tree.children(v)) below[v].insert(below[v].end(), below[c].begin(), below[c].end());
      std::sort(below[v].begin(), below[v].end());
    }
  }
  std::sort(below.begin(), below.end());
  return below;
}

bool refines(const PhyloTree& fine, const PhyloTree& coarse) {
  if (fine.leaves() != coarse.leaves()) throw std::invalid_argument("refines: leaf sets differ");
  auto fine_clusters = clusters(fine);
  auto coarse_clusters = clusters(coarse);
  return std::includes(fine_clusters.begin(), fine_clusters.end(), coarse_clusters.begin(),
                       coarse_clusters.end());
}

TreeStats tree_stats(const PhyloTree& tree) {
  TreeStats s;
  s.size = tree.size();
  std::vector<std::size_t> height(tree.node_count(), 0);
  for (NodeId v = tree.node_count(); v-- > 0;) {
    s.max_degree = std::max(s.max_degree, tree.degree(v));
    for (NodeId c : tree.children(v)) height[v] = std::max(height[v], height[c] + 1);
  }
  s.height = height[tree.root()];
  return s;
}

// ---------------------------------------------------------------------------
// Constructions

PhyloTree substitute(const PhyloTree& shape, std::span<const PhyloTree> parts) {
  const std::size_t n = parts.size();
  if (shape.size() != n) throw std::invalid_argument("substitute: shape size differs from part count");
  std::vector<std::string> expected;
  for (std::size_t i = 1; i <= n; ++i) expected.push_back(std::to_string(i));
  if (make_label_set(expected) != shape.leaves())
    throw std::invalid_argument("substitute: shape must be labeled 1..n");
  LabelSet all;
  for (const auto& p : parts) all.insert(all.end(), p.leaves().begin(), p.leaves().end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("substitute: part leaf sets overlap");

  std::function<PhyloTree(NodeId)> build = [&](NodeId v) -> PhyloTree {
    if (shape.is_leaf(v)) return parts[std::stoul(shape.label(v)) - 1];
    std::vector<PhyloTree> kids;
    for (NodeId c : shape.children(v)) kids.push_back(build(c));
    return PhyloTree::join(std::move(kids));
  };
  return build(shape.root());
}

PhyloTree caterpillar(std::span<const std::string> labels) {
  require_distinct_valid(labels);
  PhyloTree t = PhyloTree::leaf(labels[0]);
  for (std::size_t i = 1; i < labels.size(); ++i) t = PhyloTree::join({std::move(t), PhyloTree::leaf(labels[i])});
  return t;
}

namespace {

PhyloTree halving(std::span<const std::string> labels) {
  if (labels.size() == 1) return PhyloTree::leaf(labels[0]);
  std::size_t left = (labels.size() + 1) / 2;
  return PhyloTree::join({halving(labels.first(left)), halving(labels.subspan(left))});
}

}  // namespace

PhyloTree min_height_binary(std::span<const std::string> labels) {
  require_distinct_valid(labels);
  return halving(labels);
}

std::size_t ceil_log2(std::size_t k) {
  std::size_t h = 0;
  while ((std::size_t{1} << h) < k) ++h;
  return h;
}

PhyloTree collapse_edges(const PhyloTree& tree, std::span<const NodeId> lower_endpoints) {
  std::vector<bool> collapsed(tree.node_count(), false);
  for (NodeId v : lower_endpoints) {
    if (v >= tree.node_count() || v == tree.root() || tree.is_leaf(v))
      throw std::invalid_argument("collapse_edges: node is not an internal non-root node");
    collapsed[v] = true;
  }
  std::function<PhyloTree(NodeId)> build;
  std::function<void(NodeId, std::vector<PhyloTree>&)> gather = [&](NodeId v, std::vector<PhyloTree>& out) {
    if (collapsed[v]) {
      for (NodeId c : tree.children(v)) gather(c, out);
    } else {
      out.push_back(build(v));
    }
  };
  build = [&](NodeId v) -> PhyloTree {
    if (tree.is_leaf(v)) return PhyloTree::leaf(tree.label(v));
    std::vector<PhyloTree> kids;
    for (NodeId c : tree.children(v)) gather(c, kids);
    return PhyloTree::join(std::move(kids));
  };
  return build(tree.root());
}

PathCollapse collapse_leaf_path(const PhyloTree& tree, std::string_view i, std::string_view j) {
  auto li = tree.find_leaf(i);
  auto lj = tree.find_leaf(j);
  if (!li || !lj) throw std::invalid_argument("collapse_leaf_path: endpoint is not a leaf");
  if (*li == *lj) throw std::invalid_argument("collapse_leaf_path: endpoints must be distinct");

  auto ancestors = [&](NodeId v) {
    std::vector<NodeId> up;
    while (auto p = tree.parent(v)) {
      up.push_back(*p);
      v = *p;
    }
    return up;
  };
  auto up_i = ancestors(*li);
  auto up_j = ancestors(*lj);
  // Strip the shared part above the lca.
  while (up_i.size() >= 2 && up_j.size() >= 2 && up_i[up_i.size() - 2] == up_j[up_j.size() - 2]) {
    up_i.pop_back();
    up_j.pop_back();
  }
  const NodeId lca = up_i.back();
  std::vector<NodeId> lower;
  lower.insert(lower.end(), up_i.begin(), up_i.end() - 1);
  lower.insert(lower.end(), up_j.begin(), up_j.end() - 1);

  PhyloTree collapsed = collapse_edges(tree, lower);
  auto lambda = collapsed.find_cluster(tree.leaves_below(lca));
  return PathCollapse{std::move(collapsed), *lambda};
}

namespace {

void enumerate_on(const LabelSet& labels, std::vector<PhyloTree>& out) {
  if (labels.size() == 1) {
    out.push_back(PhyloTree::leaf(labels[0]));
    return;
  }
  // Set partitions as restricted growth strings; block of labels[0] is 0.
  const std::size_t n = labels.size();
  std::vector<std::size_t> block(n, 0);
  std::vector<std::size_t> running_max(n, 0);
  while (true) {
    std::size_t blocks = running_max[n - 1] + 1;
    if (blocks >= 2) {
      std::vector<LabelSet> parts(blocks);
      for (std::size_t i = 0; i < n; ++i) parts[block[i]].push_back(labels[i]);
      std::vector<std::vector<PhyloTree>> options(blocks);
      for (std::size_t b = 0; b < blocks; ++b) enumerate_on(parts[b], options[b]);
      std::vector<std::size_t> pick(blocks, 0);
      while (true) {
        std::vector<PhyloTree> kids;
        for (std::size_t b = 0; b < blocks; ++b) kids.push_back(options[b][pick[b]]);
        out.push_back(PhyloTree::join(std::move(kids)));
        std::size_t b = 0;
        while (b < blocks && ++pick[b] == options[b].size()) pick[b++] = 0;
        if (b == blocks) break;
      }
    }
    // Next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && block[i] == running_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++block[i];
    running_max[i] = std::max(running_max[i - 1], block[i]);
    for (std::size_t r = i + 1; r < n; ++r) {
      block[r] = 0;
      running_max[r] = running_max[i];
    }
  }
}

}  // namespace

std::vector<PhyloTree> enumerate_trees(const LabelSet& labels, std::size_t limit) {
  LabelSet set = make_label_set(labels);
  if (set.empty()) throw std::invalid_argument("enumerate_trees: empty label set");
  if (set.size() > limit)
    throw std::invalid_argument("enumerate_trees: " + std::to_string(set.size()) + " labels exceed limit " +
                                std::to_string(limit));
  require_distinct_valid(set);
  std::vector<PhyloTree> out;
  enumerate_on(set, out);
  std::vector<std::pair<std::string, std::size_t>> keyed;
  for (std::size_t i = 0; i < out.size(); ++i) keyed.emplace_back(serialize_tree(out[i]), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<PhyloTree> sorted;
  sorted.reserve(out.size());
  for (const auto& [_, i] : keyed) sorted.push_back(out[i]);
  return sorted;
}

// ---------------------------------------------------------------------------
// TreeCollection

TreeCollection::TreeCollection(std::vector<PhyloTree> trees) : trees_(std::move(trees)) {
  if (trees_.empty()) throw std::invalid_argument("tree collection is empty");
  leaves_ = trees_.front().leaves();
  if (leaves_.size() > LeafMask::kCapacity)
    throw std::invalid_argument("tree collection exceeds " + std::to_string(LeafMask::kCapacity) + " leaves");
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (trees_[i].leaves() != leaves_)
      throw std::invalid_argument("tree " + std::to_string(i + 1) + " has a different leaf set");
    max_degree_ = std::max(max_degree_, tree_stats(trees_[i]).max_degree);
    cluster_masks_.push_back(cluster_masks_of(trees_[i]));
  }
}

std::optional<std::size_t> TreeCollection::index_of(std::string_view label) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), label);
  if (it == leaves_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - leaves_.begin());
}

LeafMask TreeCollection::mask_of(const LabelSet& labels) const {
  LeafMask m;
  for (const auto& l : labels) {
    auto i = index_of(l);
    if (!i) throw std::invalid_argument("label '" + l + "' is not in the common leaf set");
    m.set(*i);
  }
  return m;
}

LabelSet TreeCollection::labels_of(const LeafMask& mask) const {
  LabelSet out;
  mask.for_each([&](std::size_t i) { out.push_back(leaves_[i]); });
  return out;
}

std::vector<LeafMask> TreeCollection::cluster_masks_of(const PhyloTree& tree) const {
  std::vector<LeafMask> below(tree.node_count());
  for (NodeId v = tree.node_count(); v-- > 0;) {
    if (tree.is_leaf(v)) {
      auto i = index_of(tree.label(v));
      if (!i) throw std::invalid_argument("label '" + tree.label(v) + "' is not in the common leaf set");
      below[v].set(*i);
    } else {
      for (NodeId c : tree.children(v)) below[v] |= below[c];
    }
  }
  std::sort(below.begin(), below.end());
  return below;
}

}  // namespace mastct
