#include <doctest.h>

#include <stdexcept>

#include "mastct/agreement.hpp"
#include "mastct/random.hpp"
#include "mastct/reductions.hpp"
#include "mastct/tree.hpp"

using namespace mastct;

namespace {

PhyloTree T(const char* text) { return parse_tree(text); }

LabelSet L(std::initializer_list<const char*> labels) {
  std::vector<std::string> v(labels.begin(), labels.end());
  return make_label_set(v);
}

std::vector<LabelSet> nonempty_subsets(const LabelSet& labels) {
  std::vector<LabelSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << labels.size()); ++mask) {
    LabelSet s;
    for (std::size_t b = 0; b < labels.size(); ++b)
      if ((mask >> b) & 1U) s.push_back(labels[b]);
    out.push_back(s);
  }
  return out;
}

// Some tree on X refines every restriction; found by trying them all.
bool compatible_by_enumeration(const TreeCollection& coll, const LabelSet& x) {
  for (const auto& t : enumerate_trees(x)) {
    bool ok = true;
    for (const auto& member : coll.trees()) ok = ok && refines(t, *restrict_to(member, x));
    if (ok) return true;
  }
  return false;
}

bool restrictions_equal(const TreeCollection& coll, const LabelSet& x) {
  const PhyloTree first = *restrict_to(coll.trees().front(), x);
  for (const auto& member : coll.trees())
    if (!(*restrict_to(member, x) == first)) return false;
  return true;
}

TreeCollection random_collection(Rng& rng, std::size_t n, std::size_t k) {
  const LabelSet labels = numbered_labels(n);
  std::vector<PhyloTree> trees;
  for (std::size_t i = 0; i < k; ++i) trees.push_back(random_tree(labels, rng, static_cast<unsigned>(rng.below(70))));
  return TreeCollection(std::move(trees));
}

}  // namespace

TEST_CASE("is_agreement_subtree") {
  TreeCollection coll({T("((a,b),(c,d));"), T("(((a,b),c),d);")});
  for (const auto& l : coll.leaves()) CHECK(is_agreement_subtree(PhyloTree::leaf(l), coll));
  CHECK(is_agreement_subtree(T("((a,b),c);"), coll));
  CHECK_FALSE(is_agreement_subtree(T("((a,b),c,d);"), coll));
  CHECK_FALSE(is_agreement_subtree(T("(a,(b,c));"), coll));
  CHECK_THROWS_AS(is_agreement_subtree(T("(a,z);"), coll), std::invalid_argument);
}

TEST_CASE("control collection accepts transversal stars") {
  // Three parts of three vertices, one edge between parts 1 and 2.
  PartitionedInstance inst(Graph(9, {{1, 4}}), {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, 1);
  GadgetInstance g = pis1_to_ast(inst);
  // C and the C_{a,b} come first: one C plus C(3,2) pairs.
  TreeCollection control(std::vector<PhyloTree>(g.collection.trees().begin(), g.collection.trees().begin() + 4));
  for (const char* c1 : {"1", "2", "3"})
    for (const char* c2 : {"4", "5", "6"})
      for (const char* c3 : {"7", "8", "9"})
        CHECK(is_agreement_subtree(PhyloTree::join({PhyloTree::leaf(c1), PhyloTree::leaf(c2), PhyloTree::leaf(c3)}),
                                   control));
  // Two leaves from one part against a third leaf: C_{a,b} sees a different shape.
  CHECK_FALSE(is_agreement_subtree(T("((1,2),4);"), control));
  CHECK_FALSE(is_agreement_subtree(T("((1,4),7);"), control));
}

TEST_CASE("is_compatible_with") {
  CHECK(is_compatible_with(T("((a,b),c);"), TreeCollection({T("(a,b,c);")})));
  CHECK_FALSE(is_compatible_with(T("(a,b,c);"), TreeCollection({T("((a,b),c);")})));
  CHECK(is_compatible_with(T("(a,b,c);"), TreeCollection({T("(a,b,c);")})));
  std::vector<std::string> up{"1", "2", "3", "4"}, down{"4", "3", "2", "1"};
  TreeCollection reversed({caterpillar(up), caterpillar(down)});
  for (const auto& x : nonempty_subsets(reversed.leaves())) {
    if (x.size() != 3) continue;
    for (const auto& t : enumerate_trees(x)) CHECK_FALSE(is_compatible_with(t, reversed));
  }
}

TEST_CASE("compatible_exists") {
  TreeCollection coll({T("((a,b),(c,d));"), T("((a,c),(b,d));")});
  for (const auto& x : nonempty_subsets(coll.leaves()))
    if (x.size() <= 2) CHECK(compatible_exists(coll, x).exists);
  CHECK_FALSE(compatible_exists(coll, L({"a", "b", "c"})).exists);
  CHECK_THROWS_AS(compatible_exists(coll, {}), std::invalid_argument);

  std::vector<std::string> up{"1", "2", "3", "4", "5"}, down{"5", "4", "3", "2", "1"};
  TreeCollection reversed({caterpillar(up), caterpillar(down)});
  CHECK_FALSE(compatible_exists(reversed, L({"1", "3", "5"})).exists);

  TreeCollection same({T("((a,b),c,(d,e));"), T("((a,b),c,(d,e));")});
  for (const auto& x : nonempty_subsets(same.leaves())) {
    auto r = compatible_exists(same, x);
    CHECK(r.exists);
    CHECK(*r.witness == *restrict_to(same.trees().front(), x));
  }

  auto merged = compatible_exists(TreeCollection({T("((a,b),c,d);"), T("(a,b,(c,d));")}), L({"a", "b", "c", "d"}));
  REQUIRE(merged.exists);
  CHECK(*merged.witness == T("((a,b),(c,d));"));
}

TEST_CASE("compatible_exists matches enumeration of all trees on X") {
  Rng rng(31);
  for (int round = 0; round < 120; ++round) {
    const std::size_t n = 3 + rng.below(3);
    TreeCollection coll = random_collection(rng, n, 1 + rng.below(3));
    for (const auto& x : nonempty_subsets(coll.leaves())) {
      if (x.size() > 4) continue;
      auto r = compatible_exists(coll, x);
      CHECK(r.exists == compatible_by_enumeration(coll, x));
      if (r.exists) {
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->leaves() == x);
        CHECK(is_compatible_with(*r.witness, coll));
      }
    }
  }
}

TEST_CASE("triple finders") {
  TreeCollection twice({T("((a,b),c);"), T("((a,b),c);")});
  CHECK_FALSE(find_disagreement_triple(twice, twice.leaves()).has_value());
  CHECK_FALSE(find_conflict_triple(twice, twice.leaves()).has_value());

  TreeCollection star({T("((a,b),c);"), T("(a,b,c);")});
  CHECK(find_disagreement_triple(star, star.leaves()) == L({"a", "b", "c"}));
  CHECK_FALSE(find_conflict_triple(star, star.leaves()).has_value());

  TreeCollection clash({T("((a,b),c);"), T("((a,c),b);")});
  CHECK(find_conflict_triple(clash, clash.leaves()) == L({"a", "b", "c"}));

  // First triple in lexicographic order.
  TreeCollection four({T("(((a,b),c),d);"), T("(((a,b),d),c);")});
  CHECK(find_disagreement_triple(four, four.leaves()) == L({"a", "c", "d"}));
  CHECK_FALSE(find_disagreement_triple(four, L({"a", "b", "c"})).has_value());
}

TEST_CASE("conflict triples decide compatibility on up to five labels") {
  Rng rng(47);
  for (int round = 0; round < 150; ++round) {
    TreeCollection coll = random_collection(rng, 5, 2 + rng.below(3));
    for (const auto& x : nonempty_subsets(coll.leaves())) {
      auto triple = find_conflict_triple(coll, x);
      auto r = compatible_exists(coll, x);
      CHECK(triple.has_value() != r.exists);
      if (x.size() <= 4) CHECK(r.exists == compatible_by_enumeration(coll, x));
      if (triple) {
        REQUIRE(triple->size() == 3);
        CHECK_FALSE(compatible_exists(coll, *triple).exists);
      }
    }
  }
}

TEST_CASE("disagreement triples decide agreement on up to five labels") {
  Rng rng(53);
  for (int round = 0; round < 150; ++round) {
    TreeCollection coll = random_collection(rng, 5, 2 + rng.below(3));
    for (const auto& x : nonempty_subsets(coll.leaves())) {
      auto triple = find_disagreement_triple(coll, x);
      const bool equal = restrictions_equal(coll, x);
      CHECK(triple.has_value() != equal);
      const PhyloTree first = *restrict_to(coll.trees().front(), x);
      CHECK(is_agreement_subtree(first, coll) == equal);
      if (triple) CHECK_FALSE(restrictions_equal(coll, *triple));
    }
  }
}

TEST_CASE("agreement implies compatibility") {
  Rng rng(61);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 3 + rng.below(4);
    TreeCollection coll = random_collection(rng, n, 1 + rng.below(4));
    for (const auto& x : nonempty_subsets(coll.leaves())) {
      if (x.size() > 4) continue;
      for (const auto& t : enumerate_trees(x))
        if (is_agreement_subtree(t, coll)) CHECK(is_compatible_with(t, coll));
    }
  }
}

TEST_CASE("mask-level helpers") {
  TreeCollection coll({T("((a,b),(c,d));"), T("(a,b,c,d);")});
  const auto& clusters = coll.cluster_masks(0);
  CHECK(triple_topology(clusters, {0, 1, 2}) == 1);
  CHECK(triple_topology(clusters, {0, 2, 3}) == 3);
  CHECK(triple_topology(coll.cluster_masks(1), {0, 1, 2}) == 0);
  CHECK(triple_topology(coll.cluster_masks_of(T("((a,c),b,d);")), {0, 1, 2}) == 2);
  CHECK(agree_on(coll, coll.mask_of(L({"a", "b"}))));
  CHECK_FALSE(agree_on(coll, coll.full_mask()));
  CHECK(compatible_on(coll, coll.full_mask()));
  CHECK(restrict_member(coll, 0, coll.mask_of(L({"a", "c", "d"}))) == T("(a,(c,d));"));
  auto family = common_refinement_clusters(coll, coll.full_mask());
  REQUIRE(family.has_value());
  CHECK(tree_from_clusters(coll, *family) == coll.trees().front());
}
