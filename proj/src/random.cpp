#include "mastct/random.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mastct {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

Graph random_graph(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<Edge> all;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) all.emplace_back(u, v);
  if (m > all.size())
    throw std::invalid_argument("random_graph: " + std::to_string(m) + " edges exceed C(n,2) = " +
                                std::to_string(all.size()));
  for (std::size_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
  all.resize(m);
  return Graph(n, std::move(all));
}

Graph random_dense_graph(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (rng.below(2) == 1) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

PhyloTree random_tree(const LabelSet& labels, Rng& rng, unsigned collapse_pct) {
  if (labels.empty()) throw std::invalid_argument("random_tree: empty label set");
  std::vector<PhyloTree> pool;
  for (const auto& l : labels) pool.push_back(PhyloTree::leaf(l));
  while (pool.size() > 1) {
    std::size_t a = rng.below(pool.size());
    std::size_t b = rng.below(pool.size() - 1);
    if (b >= a) ++b;
    PhyloTree merged = PhyloTree::join({pool[a], pool[b]});
    if (a < b) std::swap(a, b);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(b));
    pool.push_back(std::move(merged));
  }
  PhyloTree binary = std::move(pool.front());
  std::vector<NodeId> collapse;
  for (NodeId v = 1; v < binary.node_count(); ++v)
    if (!binary.is_leaf(v) && rng.percent(collapse_pct)) collapse.push_back(v);
  return collapse_edges(binary, collapse);
}

LabelSet numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return make_label_set(std::move(out));
}

}  // namespace mastct
