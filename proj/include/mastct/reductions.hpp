#pragma once

// Executable instance maps from independent set to the tree problems:
//
//   IS(k, G) --is_to_pis1--> PIS_1 --pis1_to_ast--> AST (agreement, q = k)
//                              |
//                           pis_pad --> PIS_2 --pis2_to_ct--> CT (compatible, q = 2k)
//
// plus a verifier that solves both ends by brute force and translates
// witnesses in both directions. Tree leaves are the decimal vertex ids of the
// partitioned instance.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mastct/graph.hpp"
#include "mastct/solvers.hpp"
#include "mastct/tree.hpp"

namespace mastct {

struct ReductionReport {
  std::string construction;
  std::string source_digest;
  std::string produced_digest;
  std::size_t q = 0;
  std::size_t k = 0;
  std::size_t max_degree = 0;    // recomputed over the produced collection
  std::size_t degree_bound = 0;  // certified bound for this construction
  bool degree_exact = false;     // the bound is attained by construction

  // Flat "key=value" lines.
  std::string to_text() const;
};

struct GadgetInstance {
  std::size_t q;
  TreeCollection collection;
  ReductionReport report;
};

// 64-bit FNV-1a over the text, as 16 hex digits.
std::string digest(const std::string& text);
std::string instance_digest(const PartitionedInstance& inst);
std::string collection_digest(const TreeCollection& coll);

// Vertex (u, i) of the produced graph is numbered (i - 1) * |V| + u.
PartitionedInstance is_to_pis1(std::size_t k, const Graph& graph);
// Adds vertex n + i to part i and raises the multiplicity by one.
PartitionedInstance pis_pad(const PartitionedInstance& inst);

// Requires p = 1, k >= 3 and parts of size >= 3.
GadgetInstance pis1_to_ast(const PartitionedInstance& inst);
// Requires p = 2, k >= 2, parts of size n >= 2, and with `repair`
// n >= 2 ceil(log2 k) + 1.
GadgetInstance pis2_to_ct(const PartitionedInstance& inst, bool repair = false);

// The binary caterpillar over `part` in ascending order with
// `collapsed_edges` consecutive internal edges collapsed, starting from the
// cherry of the two smallest labels.
PhyloTree collapsed_caterpillar(const VertexSet& part, std::size_t collapsed_edges);

// Candidate gadget solutions built from a PIS witness: <c_1, ..., c_k> for
// p = 1 and H_k[<a_1, b_1>, ..., <a_k, b_k>] for p = 2.
PhyloTree transversal_star(const PartitionedInstance& inst, const VertexSet& witness);
PhyloTree doubleton_tree(const PartitionedInstance& inst, const VertexSet& witness);

enum class GadgetMode { kMast, kMct };

struct VerificationRecord {
  GadgetMode mode = GadgetMode::kMast;
  std::size_t k = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;

  bool is_answer = false;
  std::size_t max_independent = 0;
  VertexSet is_witness;
  bool pis_answer = false;  // PIS_1 (mast) or padded PIS_2 (mct)

  bool gadget_built = false;  // false when the instance is below the gadget preconditions
  std::size_t q = 0;
  std::size_t gadget_leaves = 0;
  std::size_t gadget_trees = 0;
  std::size_t gadget_degree = 0;
  bool gadget_answer = false;
  std::optional<std::size_t> gadget_optimum;  // full brute force, when within caps
  std::optional<PhyloTree> gadget_witness;

  // IS witness -> gadget tree passes the agreement / compatibility check.
  bool forward_ok = true;
  // Gadget witness leaves -> vertex set of G that is independent of size k.
  bool backward_ok = true;
  bool equivalent = false;

  std::string to_text() const;
};

struct VerifyCaps {
  SearchCaps search;
  SolverCaps solver;
  // Largest gadget on which the full optimum is also computed.
  std::size_t optimum_leaves = 18;
};

VerificationRecord verify_reduction(std::size_t k, const Graph& graph, GadgetMode mode, const VerifyCaps& caps = {});

}  // namespace mastct
