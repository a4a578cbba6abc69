#include "mastct/solvers.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mastct/agreement.hpp"
#include "mastct/errors.hpp"

namespace mastct {

namespace {

// Visits the size-q subsets of {0..n-1} in lexicographic order until
// `visit` returns true. Returns the accepted subset.
template <class Visit>
std::optional<LeafMask> first_subset(std::size_t n, std::size_t q, Visit visit) {
  if (q > n) return std::nullopt;
  std::vector<std::size_t> idx(q);
  for (std::size_t i = 0; i < q; ++i) idx[i] = i;
  while (true) {
    LeafMask m;
    for (auto i : idx) m.set(i);
    if (visit(m)) return m;
    std::size_t i = q;
    while (i > 0 && idx[i - 1] == n - q + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++idx[i - 1];
    for (std::size_t j = i; j < q; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

void check_cap(const char* what, std::size_t n, std::size_t cap) {
  if (n > cap)
    throw CapExceeded(std::string(what) + ": " + std::to_string(n) + " leaves exceed cap " + std::to_string(cap));
}

void check_budget(const char* what, std::size_t n, std::size_t q, const SolverCaps& caps) {
  if (binomial(n, q) > caps.subset_budget)
    throw CapExceeded(std::string(what) + ": C(" + std::to_string(n) + "," + std::to_string(q) +
                      ") subsets exceed budget " + std::to_string(caps.subset_budget));
}

PhyloTree compatible_witness(const TreeCollection& coll, const LeafMask& x) {
  auto family = common_refinement_clusters(coll, x);
  return tree_from_clusters(coll, std::move(*family));
}

template <class Accept, class Build>
Solution bruteforce(const TreeCollection& coll, Accept accept, Build build) {
  const std::size_t n = coll.leaf_count();
  for (std::size_t q = n; q >= 1; --q) {
    if (auto hit = first_subset(n, q, accept)) return Solution{q, build(*hit)};
  }
  throw std::logic_error("bruteforce: no single leaf accepted");
}

// Depth-bounded branching on a violating triple. `failed` maps a leaf set to
// the largest budget already shown insufficient for it.
template <class Accept, class Triple>
class BranchSearch {
 public:
  BranchSearch(Accept accept, Triple triple) : accept_(accept), triple_(triple) {}

  std::optional<LeafMask> run(const LeafMask& x, std::size_t budget) {
    if (accept_(x)) return x;
    if (budget == 0) return std::nullopt;
    auto it = failed_.find(x);
    if (it != failed_.end() && it->second >= budget) return std::nullopt;
    auto t = triple_(x);
    if (!t) throw std::logic_error("branch search: rejected leaf set has no violating triple");
    for (std::size_t leaf : *t) {
      LeafMask smaller = x;
      smaller.reset(leaf);
      if (auto hit = run(smaller, budget - 1)) return hit;
    }
    auto& slot = failed_[x];
    slot = std::max(slot, budget);
    return std::nullopt;
  }

 private:
  Accept accept_;
  Triple triple_;
  std::unordered_map<LeafMask, std::size_t, LeafMaskHash> failed_;
};

}  // namespace

Solution mast_bruteforce(const TreeCollection& coll, const SolverCaps& caps) {
  check_cap("mast_bruteforce", coll.leaf_count(), caps.mast_leaves);
  return bruteforce(
      coll, [&](const LeafMask& x) { return agree_on(coll, x); },
      [&](const LeafMask& x) { return restrict_member(coll, 0, x); });
}

Solution mct_bruteforce(const TreeCollection& coll, const SolverCaps& caps) {
  check_cap("mct_bruteforce", coll.leaf_count(), caps.mct_leaves);
  return bruteforce(
      coll, [&](const LeafMask& x) { return compatible_on(coll, x); },
      [&](const LeafMask& x) { return compatible_witness(coll, x); });
}

std::optional<PhyloTree> find_agreement_of_size(const TreeCollection& coll, std::size_t q, const SolverCaps& caps) {
  if (q == 0) throw std::invalid_argument("target size must be positive");
  check_budget("find_agreement_of_size", coll.leaf_count(), q, caps);
  auto hit = first_subset(coll.leaf_count(), q, [&](const LeafMask& x) { return agree_on(coll, x); });
  if (!hit) return std::nullopt;
  return restrict_member(coll, 0, *hit);
}

std::optional<PhyloTree> find_compatible_of_size(const TreeCollection& coll, std::size_t q,
                                                 const SolverCaps& caps) {
  if (q == 0) throw std::invalid_argument("target size must be positive");
  check_budget("find_compatible_of_size", coll.leaf_count(), q, caps);
  auto hit = first_subset(coll.leaf_count(), q, [&](const LeafMask& x) { return compatible_on(coll, x); });
  if (!hit) return std::nullopt;
  return compatible_witness(coll, *hit);
}

std::optional<PhyloTree> mast_fpt(const TreeCollection& coll, std::size_t p) {
  BranchSearch search([&](const LeafMask& x) { return agree_on(coll, x); },
                      [&](const LeafMask& x) { return disagreement_triple(coll, x); });
  auto hit = search.run(coll.full_mask(), p);
  if (!hit) return std::nullopt;
  return restrict_member(coll, 0, *hit);
}

std::optional<PhyloTree> mct_fpt(const TreeCollection& coll, std::size_t p) {
  BranchSearch search([&](const LeafMask& x) { return compatible_on(coll, x); },
                      [&](const LeafMask& x) { return conflict_triple(coll, x); });
  auto hit = search.run(coll.full_mask(), p);
  if (!hit) return std::nullopt;
  return compatible_witness(coll, *hit);
}

}  // namespace mastct
