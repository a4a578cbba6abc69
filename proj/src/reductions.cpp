#include "mastct/reductions.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mastct/agreement.hpp"

namespace mastct {

namespace {

std::string label_of(Vertex v) { return std::to_string(v); }

std::vector<std::string> labels_of(const VertexSet& vs) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(label_of(v));
  return out;
}

LabelSet without(const VertexSet& part, Vertex a, Vertex b) {
  LabelSet out;
  for (Vertex v : part)
    if (v != a && v != b) out.push_back(label_of(v));
  return make_label_set(std::move(out));
}

PhyloTree restricted(const PhyloTree& tree, const LabelSet& keep) {
  auto r = restrict_to(tree, keep);
  if (!r) throw std::logic_error("gadget part restricted to nothing");
  return std::move(*r);
}

std::vector<std::string> index_labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(std::to_string(i));
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_vertices(const VertexSet& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out;
}

}  // namespace

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string instance_digest(const PartitionedInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return digest(out.str());
}

std::string collection_digest(const TreeCollection& coll) {
  std::string text;
  for (const auto& t : coll.trees()) text += serialize_tree(t) + "\n";
  return digest(text);
}

std::string ReductionReport::to_text() const {
  std::ostringstream out;
  out << "construction=" << construction << '\n'
      << "source_digest=" << source_digest << '\n'
      << "produced_digest=" << produced_digest << '\n'
      << "q=" << q << '\n'
      << "k=" << k << '\n'
      << "D=" << max_degree << '\n'
      << "degree_bound=" << degree_bound << '\n'
      << "degree_exact=" << yes_no(degree_exact) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

PartitionedInstance is_to_pis1(std::size_t k, const Graph& graph) {
  if (k < 1) throw std::invalid_argument("is_to_pis1: k must be positive");
  const std::size_t n = graph.vertex_count();
  if (n == 0) throw std::invalid_argument("is_to_pis1: empty graph");
  auto id = [n](Vertex u, std::size_t i) { return static_cast<Vertex>((i - 1) * n + u); };
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = i + 1; j <= k; ++j) {
      for (Vertex u = 1; u <= n; ++u) edges.emplace_back(id(u, i), id(u, j));
      for (auto [u, v] : graph.edges()) {
        edges.emplace_back(id(u, i), id(v, j));
        edges.emplace_back(id(v, i), id(u, j));
      }
    }
  std::vector<VertexSet> parts(k);
  for (std::size_t i = 1; i <= k; ++i)
    for (Vertex u = 1; u <= n; ++u) parts[i - 1].push_back(id(u, i));
  return PartitionedInstance(Graph(k * n, std::move(edges)), std::move(parts), 1);
}

PartitionedInstance pis_pad(const PartitionedInstance& inst) {
  const std::size_t n = inst.graph().vertex_count();
  std::vector<VertexSet> parts = inst.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i].push_back(static_cast<Vertex>(n + i + 1));
  Graph padded(n + parts.size(), inst.graph().edges());
  return PartitionedInstance(std::move(padded), std::move(parts), inst.multiplicity() + 1);
}

GadgetInstance pis1_to_ast(const PartitionedInstance& inst) {
  const std::size_t k = inst.part_count();
  if (inst.multiplicity() != 1) throw std::invalid_argument("pis1_to_ast: instance multiplicity must be 1");
  if (k < 3) throw std::invalid_argument("pis1_to_ast: needs at least three parts");
  if (inst.part_size() < 3) throw std::invalid_argument("pis1_to_ast: parts need at least three vertices");

  std::vector<PhyloTree> blocks;
  for (const auto& part : inst.parts()) blocks.push_back(caterpillar(labels_of(part)));

  // Every tree: the blocks minus {a, b} under one root, plus `extra`.
  auto regraft = [&](Vertex a, Vertex b, std::vector<PhyloTree> extra) {
    std::vector<PhyloTree> kids;
    for (std::size_t i = 0; i < k; ++i) kids.push_back(restricted(blocks[i], without(inst.parts()[i], a, b)));
    for (auto& t : extra) kids.push_back(std::move(t));
    return PhyloTree::join(std::move(kids));
  };

  std::vector<PhyloTree> trees;
  trees.push_back(PhyloTree::join(blocks));
  const std::size_t n = inst.graph().vertex_count();
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b)
      trees.push_back(regraft(a, b, {PhyloTree::leaf(label_of(a)), PhyloTree::leaf(label_of(b))}));
  for (auto [a, b] : inst.graph().edges())
    trees.push_back(regraft(a, b, {PhyloTree::join({PhyloTree::leaf(label_of(a)), PhyloTree::leaf(label_of(b))})}));

  TreeCollection coll(std::move(trees));
  ReductionReport report{"pis1-ast", instance_digest(inst), collection_digest(coll), k, k, coll.max_degree(),
                         k + 2, true};
  return GadgetInstance{k, std::move(coll), std::move(report)};
}

PhyloTree collapsed_caterpillar(const VertexSet& part, std::size_t collapsed_edges) {
  PhyloTree cat = caterpillar(labels_of(part));
  if (collapsed_edges == 0) return cat;
  if (part.size() < collapsed_edges + 2)
    throw std::invalid_argument("collapsed_caterpillar: not enough internal edges");
  std::vector<NodeId> lower;
  NodeId v = *cat.parent(*cat.find_leaf(label_of(part.front())));
  for (std::size_t e = 0; e < collapsed_edges; ++e) {
    lower.push_back(v);
    v = *cat.parent(v);
  }
  return collapse_edges(cat, lower);
}

GadgetInstance pis2_to_ct(const PartitionedInstance& inst, bool repair) {
  const std::size_t k = inst.part_count();
  const std::size_t n = inst.part_size();
  if (inst.multiplicity() != 2) throw std::invalid_argument("pis2_to_ct: instance multiplicity must be 2");
  if (k < 2) throw std::invalid_argument("pis2_to_ct: needs at least two parts");
  if (n < 2) throw std::invalid_argument("pis2_to_ct: parts need at least two vertices");
  const std::size_t bound = 2 * ceil_log2(k) + 1;
  if (repair && n < bound)
    throw std::invalid_argument("pis2_to_ct: repair needs parts of at least " + std::to_string(bound) + " vertices");

  const PhyloTree shape = min_height_binary(index_labels(k));
  std::vector<PhyloTree> forward, backward;
  for (const auto& part : inst.parts()) {
    forward.push_back(caterpillar(labels_of(part)));
    VertexSet reversed(part.rbegin(), part.rend());
    backward.push_back(caterpillar(labels_of(reversed)));
  }

  std::vector<PhyloTree> trees;
  trees.push_back(substitute(shape, forward));
  trees.push_back(substitute(shape, backward));

  for (auto [a, b] : inst.graph().edges()) {
    const std::size_t i = inst.part_of(a);
    const std::size_t j = inst.part_of(b);
    PathCollapse pc = collapse_leaf_path(shape, std::to_string(i + 1), std::to_string(j + 1));
    PhyloTree spread = substitute(pc.tree, forward);
    LabelSet lambda_cluster;
    for (const auto& idx : pc.tree.leaves_below(pc.lambda)) {
      const auto& block = forward[std::stoul(idx) - 1].leaves();
      lambda_cluster.insert(lambda_cluster.end(), block.begin(), block.end());
    }
    const NodeId lambda = *spread.find_cluster(make_label_set(std::move(lambda_cluster)));
    const std::string la = label_of(a), lb = label_of(b);

    auto build = [&](auto&& self, NodeId v) -> std::optional<PhyloTree> {
      if (spread.is_leaf(v)) {
        if (spread.label(v) == la || spread.label(v) == lb) return std::nullopt;
        return PhyloTree::leaf(spread.label(v));
      }
      std::vector<PhyloTree> kids;
      for (NodeId c : spread.children(v))
        if (auto t = self(self, c)) kids.push_back(std::move(*t));
      if (v == lambda) kids.push_back(PhyloTree::join({PhyloTree::leaf(la), PhyloTree::leaf(lb)}));
      if (kids.empty()) return std::nullopt;
      if (kids.size() == 1) return std::move(kids.front());
      return PhyloTree::join(std::move(kids));
    };
    trees.push_back(*build(build, spread.root()));
  }

  if (repair) {
    std::vector<PhyloTree> coarse = forward;
    coarse[0] = collapsed_caterpillar(inst.parts()[0], 2 * ceil_log2(k) - 1);
    trees.push_back(substitute(shape, coarse));
  }

  TreeCollection coll(std::move(trees));
  ReductionReport report{repair ? "pis2-ct-repair" : "pis2-ct", instance_digest(inst), collection_digest(coll),
                         2 * k, k, coll.max_degree(), bound, repair};
  return GadgetInstance{2 * k, std::move(coll), std::move(report)};
}

PhyloTree transversal_star(const PartitionedInstance& inst, const VertexSet& witness) {
  if (witness.size() != inst.part_count()) throw std::invalid_argument("transversal_star: need one vertex per part");
  if (witness.size() == 1) return PhyloTree::leaf(label_of(witness.front()));
  std::vector<PhyloTree> kids;
  for (Vertex v : witness) kids.push_back(PhyloTree::leaf(label_of(v)));
  return PhyloTree::join(std::move(kids));
}

PhyloTree doubleton_tree(const PartitionedInstance& inst, const VertexSet& witness) {
  const std::size_t k = inst.part_count();
  std::vector<VertexSet> per_part(k);
  for (Vertex v : witness) per_part[inst.part_of(v)].push_back(v);
  std::vector<PhyloTree> pairs;
  for (const auto& two : per_part) {
    if (two.size() != 2) throw std::invalid_argument("doubleton_tree: need two vertices per part");
    pairs.push_back(PhyloTree::join({PhyloTree::leaf(label_of(two[0])), PhyloTree::leaf(label_of(two[1]))}));
  }
  return substitute(min_height_binary(index_labels(k)), pairs);
}

// ---------------------------------------------------------------------------

std::string VerificationRecord::to_text() const {
  std::ostringstream out;
  out << "mode=" << (mode == GadgetMode::kMast ? "mast" : "mct") << '\n'
      << "k=" << k << '\n'
      << "vertices=" << vertices << '\n'
      << "edges=" << edges << '\n'
      << "max_independent=" << max_independent << '\n'
      << "is_answer=" << yes_no(is_answer) << '\n'
      << "is_witness=" << join_vertices(is_witness) << '\n'
      << "pis_answer=" << yes_no(pis_answer) << '\n'
      << "gadget_built=" << yes_no(gadget_built) << '\n';
  if (gadget_built) {
    out << "q=" << q << '\n'
        << "gadget_leaves=" << gadget_leaves << '\n'
        << "gadget_trees=" << gadget_trees << '\n'
        << "D=" << gadget_degree << '\n';
    if (gadget_optimum) out << "gadget_optimum=" << *gadget_optimum << '\n';
  }
  out << "gadget_answer=" << yes_no(gadget_answer) << '\n';
  if (gadget_witness) out << "gadget_witness=" << serialize_tree(*gadget_witness) << '\n';
  out << "forward_ok=" << yes_no(forward_ok) << '\n'
      << "backward_ok=" << yes_no(backward_ok) << '\n'
      << "equivalent=" << yes_no(equivalent) << '\n';
  return out.str();
}

VerificationRecord verify_reduction(std::size_t k, const Graph& graph, GadgetMode mode, const VerifyCaps& caps) {
  VerificationRecord rec;
  rec.mode = mode;
  rec.k = k;
  rec.vertices = graph.vertex_count();
  rec.edges = graph.edge_count();

  const IndependentSet mis = max_independent_set(graph, caps.search);
  rec.max_independent = mis.size;
  rec.is_answer = mis.size >= k;
  if (rec.is_answer) rec.is_witness.assign(mis.witness.begin(), mis.witness.begin() + static_cast<std::ptrdiff_t>(k));

  const std::size_t nv = graph.vertex_count();
  const PartitionedInstance pis1 = is_to_pis1(k, graph);
  const PartitionedInstance pis = mode == GadgetMode::kMast ? pis1 : pis_pad(pis1);
  const auto pis_witness = solve_pis(pis, caps.search);
  rec.pis_answer = pis_witness.has_value();

  // Gadget leaves are vertices of `pis`; padding vertices lie above k * |V|.
  // One non-padding vertex per part is projected back onto G.
  auto pull_back = [&](const LabelSet& leaves) {
    std::vector<std::optional<Vertex>> pick(k);
    for (const auto& l : leaves) {
      const auto x = static_cast<Vertex>(std::stoul(l));
      if (x > k * nv) continue;
      auto& slot = pick[(x - 1) / nv];
      if (!slot || x < *slot) slot = x;
    }
    VertexSet out;
    for (const auto& x : pick)
      if (x) out.push_back(static_cast<Vertex>((*x - 1) % nv + 1));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  // (c_i, i) for the i-th chosen vertex, plus a_i when padded.
  auto lift = [&](const VertexSet& chosen) {
    VertexSet out;
    for (std::size_t i = 0; i < k; ++i) {
      out.push_back(static_cast<Vertex>(i * nv + chosen[i]));
      if (mode == GadgetMode::kMct) out.push_back(static_cast<Vertex>(k * nv + i + 1));
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  const bool buildable = mode == GadgetMode::kMast ? (k >= 3 && nv >= 3) : k >= 2;
  if (!buildable) {
    rec.gadget_answer = rec.pis_answer;
    if (pis_witness) {
      LabelSet leaves;
      for (Vertex v : *pis_witness) leaves.push_back(label_of(v));
      VertexSet back = pull_back(leaves);
      rec.backward_ok = back.size() == k && is_independent(graph, back);
    }
  } else {
    GadgetInstance gadget = mode == GadgetMode::kMast ? pis1_to_ast(pis) : pis2_to_ct(pis);
    const TreeCollection& coll = gadget.collection;
    rec.gadget_built = true;
    rec.q = gadget.q;
    rec.gadget_leaves = coll.leaf_count();
    rec.gadget_trees = coll.size();
    rec.gadget_degree = coll.max_degree();

    if (coll.leaf_count() <= caps.optimum_leaves) {
      Solution best = mode == GadgetMode::kMast ? mast_bruteforce(coll, caps.solver) : mct_bruteforce(coll, caps.solver);
      rec.gadget_optimum = best.size;
    }
    rec.gadget_witness = mode == GadgetMode::kMast ? find_agreement_of_size(coll, gadget.q, caps.solver)
                                                   : find_compatible_of_size(coll, gadget.q, caps.solver);
    rec.gadget_answer = rec.gadget_witness.has_value();
    if (rec.gadget_optimum && (*rec.gadget_optimum >= gadget.q) != rec.gadget_answer)
      throw std::logic_error("verify_reduction: optimum and fixed-size search disagree");

    if (rec.is_answer) {
      const VertexSet lifted = lift(rec.is_witness);
      rec.forward_ok = mode == GadgetMode::kMast ? is_agreement_subtree(transversal_star(pis, lifted), coll)
                                                 : is_compatible_with(doubleton_tree(pis, lifted), coll);
    }
    if (rec.gadget_witness) {
      VertexSet back = pull_back(rec.gadget_witness->leaves());
      rec.backward_ok = back.size() == k && is_independent(graph, back);
    }
  }
  rec.equivalent = rec.is_answer == rec.gadget_answer && rec.is_answer == rec.pis_answer && rec.forward_ok &&
                   rec.backward_ok;
  return rec;
}

}  // namespace mastct
