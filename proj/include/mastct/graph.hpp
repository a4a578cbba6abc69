#pragma once

// Undirected simple graphs on vertices 1..n, independent sets, and
// partitioned independent set (PIS_p) instances with exact brute-force
// solvers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace mastct {

using Vertex = std::uint32_t;  // 1-based
using VertexSet = std::vector<Vertex>;  // sorted
using Edge = std::pair<Vertex, Vertex>;  // first < second

class Graph {
 public:
  Graph() = default;
  // Throws std::invalid_argument on self-loops, duplicate edges, or endpoints
  // outside 1..n. Edge orientation in the input does not matter.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Sorted, each with first < second.
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v - 1]; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

// A PIS_p instance: the parts partition the vertices, have equal size, and are
// each independent.
class PartitionedInstance {
 public:
  // Throws std::invalid_argument when any invariant fails.
  PartitionedInstance(Graph graph, std::vector<VertexSet> parts, std::size_t p);

  const Graph& graph() const { return graph_; }
  const std::vector<VertexSet>& parts() const { return parts_; }
  std::size_t part_count() const { return parts_.size(); }
  std::size_t part_size() const { return parts_.front().size(); }
  std::size_t multiplicity() const { return p_; }
  // 0-based index of the part containing v.
  std::size_t part_of(Vertex v) const { return part_index_[v - 1]; }

 private:
  Graph graph_;
  std::vector<VertexSet> parts_;
  std::size_t p_;
  std::vector<std::size_t> part_index_;
};

struct IndependentSet {
  std::size_t size = 0;
  VertexSet witness;
};

struct SearchCaps {
  std::size_t max_is_vertices = 24;
  // Upper bound on the product over parts of C(|part|, p).
  std::uint64_t max_pis_choices = std::uint64_t{1} << 26;
};

// Throws std::invalid_argument for vertices outside 1..n.
bool is_independent(const Graph& graph, const VertexSet& set);

// Exact maximum; ties broken towards the lexicographically smallest witness.
// Throws CapExceeded above caps.max_is_vertices.
IndependentSet max_independent_set(const Graph& graph, const SearchCaps& caps = {});

// An independent set meeting every part in exactly p vertices, or nullopt.
// The first such set in lexicographic order of per-part choices is returned.
std::optional<VertexSet> solve_pis(const PartitionedInstance& inst, const SearchCaps& caps = {});

// Line-oriented formats. Graph: "n m" then m lines "u v" with 1 <= u < v <= n.
// Partition: "k p" then k lines listing the vertices of each part. Parse
// failures throw ParseError with a 1-based line number.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& graph);
PartitionedInstance read_partition(std::istream& in, Graph graph);
void write_partition(std::ostream& out, const PartitionedInstance& inst);
// An instance file is a graph section immediately followed by a partition
// section.
PartitionedInstance read_instance(std::istream& in);
void write_instance(std::ostream& out, const PartitionedInstance& inst);

}  // namespace mastct
