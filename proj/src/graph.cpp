#include "mastct/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mastct/errors.hpp"

namespace mastct {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count), adjacency_(vertex_count) {
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (u < 1 || v < 1 || u > n_ || v > n_)
      throw std::invalid_argument("edge endpoint outside 1.." + std::to_string(n_));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw std::invalid_argument("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adjacency_[u - 1].push_back(v);
    adjacency_[v - 1].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& adj = adjacency_[u - 1];
  return std::binary_search(adj.begin(), adj.end(), v);
}

PartitionedInstance::PartitionedInstance(Graph graph, std::vector<VertexSet> parts, std::size_t p)
    : graph_(std::move(graph)), parts_(std::move(parts)), p_(p), part_index_(graph_.vertex_count(), 0) {
  if (p_ < 1) throw std::invalid_argument("multiplicity p must be positive");
  if (parts_.empty()) throw std::invalid_argument("instance needs at least one part");
  std::vector<bool> seen(graph_.vertex_count(), false);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    auto& part = parts_[i];
    std::sort(part.begin(), part.end());
    if (part.size() != parts_.front().size()) throw std::invalid_argument("parts must have equal cardinality");
    for (Vertex v : part) {
      if (v < 1 || v > graph_.vertex_count())
        throw std::invalid_argument("part vertex " + std::to_string(v) + " out of range");
      if (seen[v - 1]) throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two parts");
      seen[v - 1] = true;
      part_index_[v - 1] = i;
    }
    if (!is_independent(graph_, part))
      throw std::invalid_argument("part " + std::to_string(i + 1) + " is not an independent set");
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("parts do not cover every vertex");
}

bool is_independent(const Graph& graph, const VertexSet& set) {
  for (Vertex v : set)
    if (v < 1 || v > graph.vertex_count()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (set[a] != set[b] && graph.adjacent(set[a], set[b])) return false;
  return true;
}

namespace {

struct MisSearch {
  std::size_t n;
  std::vector<std::uint64_t> adj;  // bit j-1 set when j is a neighbour
  std::uint64_t best = 0;
  std::size_t best_size = 0;

  // Vertices are decided in order 1..n; including before excluding visits
  // equal-size sets in lexicographic order, so only strict improvements count.
  void run(std::size_t next, std::uint64_t chosen, std::size_t size, std::uint64_t blocked) {
    if (size + (n - next) <= best_size) return;
    if (next == n) {
      if (size > best_size) {
        best_size = size;
        best = chosen;
      }
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << next;
    if ((blocked & bit) == 0) run(next + 1, chosen | bit, size + 1, blocked | adj[next]);
    run(next + 1, chosen, size, blocked);
  }
};

}  // namespace

IndependentSet max_independent_set(const Graph& graph, const SearchCaps& caps) {
  const std::size_t n = graph.vertex_count();
  if (n > caps.max_is_vertices || n > 64)
    throw CapExceeded("independent set oracle: " + std::to_string(n) + " vertices exceed cap " +
                      std::to_string(std::min<std::size_t>(caps.max_is_vertices, 64)));
  MisSearch search{n, std::vector<std::uint64_t>(n, 0)};
  for (auto [u, v] : graph.edges()) {
    search.adj[u - 1] |= std::uint64_t{1} << (v - 1);
    search.adj[v - 1] |= std::uint64_t{1} << (u - 1);
  }
  search.run(0, 0, 0, 0);
  IndependentSet out;
  out.size = search.best_size;
  for (std::size_t i = 0; i < n; ++i)
    if ((search.best >> i) & 1U) out.witness.push_back(static_cast<Vertex>(i + 1));
  return out;
}

namespace {

std::uint64_t saturating_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

// All p-subsets of `part` in lexicographic order.
std::vector<VertexSet> choices(const VertexSet& part, std::size_t p) {
  std::vector<VertexSet> out;
  if (p > part.size()) return out;
  std::vector<std::size_t> idx(p);
  for (std::size_t i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    VertexSet pick;
    for (auto i : idx) pick.push_back(part[i]);
    out.push_back(std::move(pick));
    std::size_t i = p;
    while (i > 0 && idx[i - 1] == part.size() - p + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::optional<VertexSet> solve_pis(const PartitionedInstance& inst, const SearchCaps& caps) {
  const auto& g = inst.graph();
  const std::size_t p = inst.multiplicity();
  std::uint64_t product = 1;
  for (const auto& part : inst.parts()) {
    std::uint64_t c = saturating_choose(part.size(), p);
    if (c == 0) return std::nullopt;
    if (product > caps.max_pis_choices / c)
      throw CapExceeded("partitioned independent set oracle: choice product exceeds cap " +
                        std::to_string(caps.max_pis_choices));
    product *= c;
  }
  if (product > caps.max_pis_choices)
    throw CapExceeded("partitioned independent set oracle: choice product exceeds cap " +
                      std::to_string(caps.max_pis_choices));

  std::vector<std::vector<VertexSet>> options;
  for (const auto& part : inst.parts()) options.push_back(choices(part, p));
  std::vector<Vertex> chosen;
  auto compatible = [&](const VertexSet& pick) {
    for (Vertex v : pick)
      for (Vertex u : chosen)
        if (g.adjacent(u, v)) return false;
    return true;
  };
  std::function<bool(std::size_t)> dfs = [&](std::size_t part) -> bool {
    if (part == options.size()) return true;
    for (const auto& pick : options[part]) {
      if (!compatible(pick)) continue;
      chosen.insert(chosen.end(), pick.begin(), pick.end());
      if (dfs(part + 1)) return true;
      chosen.resize(chosen.size() - pick.size());
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// ---------------------------------------------------------------------------
// Formats

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::vector<std::uint64_t> numbers(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(std::string("missing ") + what, line_ + 1, "line");
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ') {
        ++i;
        continue;
      }
      if (line[i] < '0' || line[i] > '9') throw ParseError(std::string("non-numeric token in ") + what, line_, "line");
      std::uint64_t value = 0;
      while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
        if (value > (1ULL << 40)) throw ParseError(std::string("number too large in ") + what, line_, "line");
        value = value * 10 + static_cast<std::uint64_t>(line[i] - '0');
        ++i;
      }
      out.push_back(value);
    }
    return out;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

Graph read_graph_section(LineReader& r) {
  auto header = r.numbers("graph header");
  if (header.size() != 2) throw ParseError("graph header must be \"n m\"", r.line(), "line");
  const std::size_t n = header[0];
  const std::size_t m = header[1];
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < m; ++e) {
    auto uv = r.numbers("edge line");
    if (uv.size() != 2) throw ParseError("edge line must be \"u v\"", r.line(), "line");
    if (!(1 <= uv[0] && uv[0] < uv[1] && uv[1] <= n)) throw ParseError("edge must satisfy 1 <= u < v <= n", r.line(), "line");
    edges.emplace_back(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), r.line(), "line");
  }
}

PartitionedInstance read_partition_section(LineReader& r, Graph graph) {
  auto header = r.numbers("partition header");
  if (header.size() != 2) throw ParseError("partition header must be \"k p\"", r.line(), "line");
  std::vector<VertexSet> parts;
  for (std::size_t i = 0; i < header[0]; ++i) {
    auto vs = r.numbers("part line");
    VertexSet part;
    for (auto v : vs) part.push_back(static_cast<Vertex>(v));
    parts.push_back(std::move(part));
  }
  try {
    return PartitionedInstance(std::move(graph), std::move(parts), header[1]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), r.line(), "line");
  }
}

}  // namespace

Graph read_graph(std::istream& in) {
  LineReader r(in);
  return read_graph_section(r);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
  for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

PartitionedInstance read_partition(std::istream& in, Graph graph) {
  LineReader r(in);
  return read_partition_section(r, std::move(graph));
}

void write_partition(std::ostream& out, const PartitionedInstance& inst) {
  out << inst.part_count() << ' ' << inst.multiplicity() << '\n';
  for (const auto& part : inst.parts()) {
    for (std::size_t i = 0; i < part.size(); ++i) out << (i ? " " : "") << part[i];
    out << '\n';
  }
}

PartitionedInstance read_instance(std::istream& in) {
  LineReader r(in);
  Graph g = read_graph_section(r);
  return read_partition_section(r, std::move(g));
}

void write_instance(std::ostream& out, const PartitionedInstance& inst) {
  write_graph(out, inst.graph());
  write_partition(out, inst);
}

}  // namespace mastct
