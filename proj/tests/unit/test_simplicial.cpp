#include <gtest/gtest.h>

#include "generators.hpp"
#include "thma/error.hpp"
#include "thma/simplicial.hpp"

namespace thma {
namespace {

using testing::Rng;

// Composable strings of length n, counted by dynamic programming over the
// last object.
std::vector<std::size_t> string_counts(const FinCat& c, int top) {
  std::vector<std::size_t> counts = {c.num_objects()};
  std::vector<std::size_t> ending(c.num_objects(), 1);
  for (int n = 1; n <= top; ++n) {
    std::vector<std::size_t> next(c.num_objects(), 0);
    for (const auto& m : c.morphisms()) next[m.tgt] += ending[m.src];
    std::size_t total = 0;
    for (auto v : next) total += v;
    counts.push_back(total);
    ending = std::move(next);
  }
  return counts;
}

TEST(Simplicial, NerveOfTwo) {
  const Nerve n = nerve(share(interval_category()), 3);
  EXPECT_EQ(n.sset->sizes, (std::vector<std::size_t>{2, 3, 4, 5}));
  EXPECT_TRUE(check_simplicial_identities(*n.sset).ok());
}

TEST(Simplicial, NerveOfZ2) {
  const Nerve n = nerve(share(cyclic_group_category(2)), 4);
  EXPECT_EQ(n.sset->sizes, (std::vector<std::size_t>{1, 2, 4, 8, 16}));
}

TEST(Simplicial, NerveArguments) {
  EXPECT_THROW(nerve(share(interval_category()), 0), InvalidArgument);
  EXPECT_THROW(nerve(share(codisc({"a", "b", "c"})), 4, 50), BudgetExceeded);
}

TEST(Simplicial, FindsStrings) {
  const Nerve n = nerve(share(interval_category()), 2);
  const std::vector<MorId> s = {0, 2};  // id0 then u
  const SimplexId x = n.find(0, s);
  ASSERT_GE(x, 0);
  EXPECT_EQ(n.morphism(2, x, 1), 2);
  EXPECT_EQ(n.last_vertex(2, x), 1);
}

TEST(Simplicial, BrokenIdentitiesAreReported) {
  SimplicialSet s = *nerve(share(interval_category()), 2).sset;
  std::size_t u = 0;
  while (s.degenerate[1][u]) ++u;
  ASSERT_NE(s.faces[1][0][u], s.faces[1][1][u]);
  std::swap(s.faces[1][0][u], s.faces[1][1][u]);
  EXPECT_FALSE(check_simplicial_identities(s).ok());
}

TEST(Simplicial, DOfIdentityOnTwo) {
  const BisimplicialD d = bisimplicial_D(identity_functor(share(interval_category())), 2);
  EXPECT_TRUE(check_bisimplicial_identities(*d.sset).ok());
  EXPECT_EQ(d.sset->size(0, 0), 3u);
  EXPECT_EQ(d.sset->size(1, 1), 5u);
}

TEST(Simplicial, IntervalSimplices) {
  const Nerve interval = nerve(share(interval_category()), 3);
  for (int n = 0; n <= 3; ++n) {
    std::vector<bool> seen(interval.sset->size(n));
    for (int zeros = 0; zeros <= n + 1; ++zeros) {
      const SimplexId x = interval_simplex(interval, n, zeros);
      ASSERT_GE(x, 0);
      EXPECT_FALSE(seen[x]);
      seen[x] = true;
    }
  }
}

// Properties.

TEST(SimplicialProperty, NerveSizesAndIdentities) {
  Rng rng(30);
  for (int i = 0; i < 100; ++i) {
    const CatPtr c = testing::random_category(rng, 4, 12);
    const Nerve n = nerve(c, 4);
    EXPECT_EQ(n.sset->sizes, string_counts(*c, 4));
    EXPECT_TRUE(check_simplicial_identities(*n.sset).ok());
    // Nondegenerate 1-simplices are the non-identity morphisms.
    std::size_t nondeg = 0;
    for (bool d : n.sset->degenerate[1]) nondeg += !d;
    std::size_t non_identity = 0;
    for (MorId f = 0; f < static_cast<MorId>(c->num_morphisms()); ++f) non_identity += !c->is_identity(f);
    EXPECT_EQ(nondeg, non_identity);
  }
}

TEST(SimplicialProperty, NerveMapsCommuteWithStructure) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const CatFunctor f = testing::random_test_functor(rng);
    const SimplicialMap m = nerve_map(f, 3);
    EXPECT_TRUE(check_simplicial_map(m).ok());
    const SimplicialMap id = identity_map(m.source);
    EXPECT_EQ(compose(m, id).levels, m.levels);
  }
}

TEST(SimplicialProperty, ProductOfNerves) {
  Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    const CatPtr a = testing::random_category(rng, 3, 6);
    const CatPtr b = testing::random_category(rng, 3, 6);
    const SimplicialSet p = product(*nerve(a, 3).sset, *nerve(b, 3).sset);
    EXPECT_TRUE(check_simplicial_identities(p).ok());
    // N(A x B) = N(A) x N(B) levelwise.
    EXPECT_EQ(p.sizes, nerve(share(product(*a, *b)), 3).sset->sizes);
  }
}

TEST(SimplicialProperty, ConstantBisimplicialDiagonalIsTheSet) {
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    const Nerve n = nerve(testing::random_category(rng, 3, 8), 3);
    const BiSimplicialSet t = constant_in_q(*n.sset);
    EXPECT_TRUE(check_bisimplicial_identities(t).ok());
    const SimplicialSet d = diagonal(t);
    EXPECT_EQ(d.sizes, n.sset->sizes);
    EXPECT_EQ(d.faces, n.sset->faces);
  }
}

TEST(SimplicialProperty, DIdentitiesAndProjection) {
  Rng rng(34);
  for (int i = 0; i < 60; ++i) {
    const CatFunctor f = testing::random_test_functor(rng);
    const BisimplicialD d = bisimplicial_D(f, 3);
    ASSERT_TRUE(check_bisimplicial_identities(*d.sset).ok()) << i;
    const ProjectionBeta beta = projection_beta(d);
    EXPECT_TRUE(check_bisimplicial_map(beta.map).ok());
    // Elements round-trip through index_of.
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; q <= 2; ++q) {
        const auto elements = d.elements(p, q);
        ASSERT_EQ(elements.size(), d.sset->size(p, q));
        for (std::size_t k = 0; k < elements.size(); ++k) EXPECT_EQ(d.index_of(p, q, elements[k]), static_cast<SimplexId>(k));
      }
  }
}

TEST(SimplicialProperty, HomotopyEndsAreTheFunctors) {
  Rng rng(35);
  for (int i = 0; i < 60; ++i) {
    const CatPtr x = testing::random_category(rng, 3, 8);
    const CatPtr y = testing::random_category(rng, 4, 12);
    const auto alpha = testing::random_nat_trans(x, y, rng);
    ASSERT_TRUE(alpha);
    const SimplicialHomotopy h = nat_trans_to_homotopy(*alpha, 3);
    EXPECT_TRUE(check_simplicial_map(h.map).ok());
    EXPECT_EQ(restrict_to_end(h, 0).levels, nerve_map(alpha->source, 3).levels);
    EXPECT_EQ(restrict_to_end(h, 1).levels, nerve_map(alpha->target, 3).levels);
  }
}

}  // namespace
}  // namespace thma
