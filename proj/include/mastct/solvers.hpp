#pragma once

// Exact MAST / MCT solvers. The brute-force oracles scan leaf subsets by
// decreasing size and lexicographically within a size, so the first hit is an
// optimum with a canonical witness. The FPT solvers branch on the three
// leaves of a disagreement (resp. hard-conflict) triple, at most p deep.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mastct/tree.hpp"

namespace mastct {

struct SolverCaps {
  std::size_t mast_leaves = 20;
  std::size_t mct_leaves = 18;
  // Upper bound on the number of q-subsets scanned by the fixed-size searches.
  std::uint64_t subset_budget = std::uint64_t{1} << 26;
};

struct Solution {
  std::size_t size = 0;
  PhyloTree witness;
};

// Throw CapExceeded when the leaf count is above the cap.
Solution mast_bruteforce(const TreeCollection& coll, const SolverCaps& caps = {});
Solution mct_bruteforce(const TreeCollection& coll, const SolverCaps& caps = {});

// Decision by brute force: the lexicographically first agreement subtree
// (resp. compatible tree) on exactly q leaves. Both properties are inherited
// by subsets, so this decides whether the optimum is at least q.
std::optional<PhyloTree> find_agreement_of_size(const TreeCollection& coll, std::size_t q,
                                                const SolverCaps& caps = {});
std::optional<PhyloTree> find_compatible_of_size(const TreeCollection& coll, std::size_t q,
                                                 const SolverCaps& caps = {});

// An agreement subtree (resp. compatible tree) on at least n - p leaves, or
// nullopt. Visited leaf sets are memoized.
std::optional<PhyloTree> mast_fpt(const TreeCollection& coll, std::size_t p);
std::optional<PhyloTree> mct_fpt(const TreeCollection& coll, std::size_t p);

}  // namespace mastct
