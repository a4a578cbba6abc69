#pragma once

// Seeded generators for graphs and tree collections. Draws avoid the
// implementation-defined standard distributions so that a seed yields the
// same instance with every standard library.

#include <cstddef>
#include <cstdint>
#include <random>

#include "mastct/graph.hpp"
#include "mastct/tree.hpp"

namespace mastct {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool percent(unsigned pct) { return below(100) < pct; }

 private:
  std::mt19937_64 engine_;
};

// Exactly m distinct edges; throws std::invalid_argument if m > C(n, 2).
Graph random_graph(std::size_t n, std::size_t m, Rng& rng);
// Each of the C(n, 2) edges present independently with probability 1/2.
Graph random_dense_graph(std::size_t n, Rng& rng);

// Random binary tree by merging random pairs, then each internal non-root
// edge collapsed with probability collapse_pct / 100.
PhyloTree random_tree(const LabelSet& labels, Rng& rng, unsigned collapse_pct = 30);

// Labels "1".."n".
LabelSet numbered_labels(std::size_t n);

}  // namespace mastct
