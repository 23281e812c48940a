#include <gtest/gtest.h>

#include "generators.hpp"
#include "thma/constructions.hpp"
#include "thma/error.hpp"

namespace thma {
namespace {

using testing::Rng;

std::size_t incoming(const FinCat& c, ObjId a) {
  std::size_t n = 0;
  for (const auto& m : c.morphisms()) n += m.tgt == a;
  return n;
}

std::size_t outgoing(const FinCat& c, ObjId a) {
  std::size_t n = 0;
  for (const auto& m : c.morphisms()) n += m.src == a;
  return n;
}

TEST(Constructions, SizesOnTwo) {
  const CatPtr two = share(interval_category());
  const TCategory t = t_category(two);
  EXPECT_EQ(t.category->num_objects(), 3u);
  EXPECT_EQ(t.category->num_morphisms(), 4u);
  const TwistedArrow tw = twisted_arrow(two);
  EXPECT_EQ(tw.category->num_objects(), 3u);
  EXPECT_EQ(tw.category->num_morphisms(), 5u);
  const TOpCategory top = t_op_category(two);
  EXPECT_EQ(top.category->num_objects(), 3u);
  EXPECT_EQ(top.category->num_morphisms(), 4u);
  const SpanDiagram s = s_category(identity_functor(two));
  EXPECT_EQ(s.category->num_objects(), 3u);
  EXPECT_EQ(s.category->num_morphisms(), 5u);
}

TEST(Constructions, WitnessesValidateOnTwo) {
  const CatPtr two = share(interval_category());
  EXPECT_TRUE(validate_witness(t_category(two).sigma).ok());
  const auto tau = t_op_category(two).tau;
  EXPECT_TRUE(validate_witness(tau).ok());
  EXPECT_EQ(tau.direction, AdjointSectionWitness::Direction::left);
}

TEST(Constructions, BrokenWitnessIsRejected) {
  const CatPtr two = share(interval_category());
  AdjointSectionWitness w = t_category(two).sigma;
  w.direction = AdjointSectionWitness::Direction::right;
  EXPECT_FALSE(validate_witness(w).ok());
}

TEST(Constructions, CommaFibersOfSelector) {
  // The functor * -> 2 picking 1: the fibre over 0 is a point (0 -> 1), the
  // fibre over 1 is a point (id1).
  const CatPtr point = share(terminal_category());
  const CatPtr two = share(interval_category());
  const CatFunctor f = constant_functor(point, two, 1);
  const CommaSlice slice = comma_slice(f);
  EXPECT_EQ(slice.category->num_objects(), 2u);
  EXPECT_EQ(comma_fiber(0, slice)->num_objects(), 1u);
  EXPECT_EQ(comma_fiber(1, slice)->num_objects(), 1u);
  EXPECT_THROW(comma_fiber(2, slice), InvalidArgument);
}

TEST(Constructions, CechOfTwoPointCover) {
  const CoverData cover{{"1", "2"}, {{"a", {"1", "2"}}, {"b", {"2"}}}};
  EXPECT_TRUE(cover_problems(cover).empty());
  const CechCategory cech = cech_category(cover);
  EXPECT_EQ(cech.category->num_objects(), 3u);
  EXPECT_EQ(cech.category->num_morphisms(), 5u);
  EXPECT_TRUE(validate_functor(cech.pi).ok());
}

TEST(Constructions, CoverProblems) {
  EXPECT_FALSE(cover_problems({{"1", "2"}, {{"a", {"1"}}}}).empty());
  EXPECT_FALSE(cover_problems({{"1"}, {{"a", {"1", "9"}}}}).empty());
  EXPECT_FALSE(cover_problems({{"1"}, {{"a", {"1"}}, {"a", {"1"}}}}).empty());
  EXPECT_THROW(cech_category({{"1", "2"}, {{"a", {"1"}}}}), InvalidArgument);
}

TEST(Constructions, FattenTwo) {
  const CatPtr two = share(interval_category());
  const Fattening fat = fatten(two, {{"0", "0'", "1"}, {0, 0, 1}});
  EXPECT_EQ(fat.x->num_objects(), 3u);
  EXPECT_EQ(fat.x->num_morphisms(), 7u);
  EXPECT_TRUE(validate_functor(fat.f).ok());
  EXPECT_THROW(fatten(two, {{"0"}, {0}}), InvalidArgument);
}

TEST(Constructions, DecompositionChecksSeparate) {
  const CatPtr two = share(interval_category());
  const CatPtr disc01 = share(disc({"0", "1"}));
  EXPECT_TRUE(codisc_decomposition_check(identity_functor(two)).passed);
  EXPECT_FALSE(codisc_decomposition_check(disc_inclusion(disc01, two)).passed);
  EXPECT_TRUE(slice_decomposition_check(identity_functor(two)).passed);
}

// Properties with brute-force counts.

TEST(ConstructionsProperty, TCategoryCounts) {
  Rng rng(20);
  for (int i = 0; i < 100; ++i) {
    const CatPtr y = testing::random_category(rng, 4, 12);
    const TCategory t = t_category(y);
    ASSERT_TRUE(validate_category(*t.category).ok());
    std::size_t morphisms = 0;
    for (const auto& g : y->morphisms()) morphisms += outgoing(*y, g.tgt);
    EXPECT_EQ(t.category->num_objects(), y->num_morphisms());
    EXPECT_EQ(t.category->num_morphisms(), morphisms);
    EXPECT_TRUE(validate_witness(t.sigma).ok());
  }
}

TEST(ConstructionsProperty, TwistedArrowCounts) {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const CatPtr y = testing::random_category(rng, 4, 12);
    const TwistedArrow tw = twisted_arrow(y);
    ASSERT_TRUE(validate_category(*tw.category).ok());
    std::size_t morphisms = 0;
    for (const auto& g : y->morphisms()) morphisms += incoming(*y, g.src) * outgoing(*y, g.tgt);
    EXPECT_EQ(tw.category->num_morphisms(), morphisms);
    EXPECT_TRUE(validate_functor(tw.cod).ok());
    EXPECT_TRUE(validate_functor(tw.dom).ok());
    EXPECT_TRUE(validate_functor(tw.include_t).ok());
    EXPECT_TRUE(tw.include_t.injective_on_morphisms());
    const TOpCategory top = t_op_category(y);
    EXPECT_TRUE(validate_functor(top.include).ok());
    EXPECT_TRUE(validate_witness(top.tau).ok());
  }
}

TEST(ConstructionsProperty, CommaSliceAndSCounts) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const CatFunctor f = testing::random_test_functor(rng);
    const FinCat& x = *f.dom();
    const FinCat& y = *f.cod();
    std::size_t comma_objects = 0, comma_morphisms = 0, s_objects = 0, s_morphisms = 0;
    for (ObjId b = 0; b < static_cast<ObjId>(x.num_objects()); ++b) {
      const std::size_t into = incoming(y, f.on_object(b));
      comma_objects += into;
      comma_morphisms += into * outgoing(x, b);
      std::size_t twisted_out = 0;
      for (const auto& g : y.morphisms())
        if (g.tgt == f.on_object(b)) twisted_out += incoming(y, g.src);
      s_objects += into;
      s_morphisms += twisted_out * outgoing(x, b);
    }
    const CommaSlice slice = comma_slice(f);
    ASSERT_TRUE(validate_category(*slice.category).ok());
    EXPECT_EQ(slice.category->num_objects(), comma_objects);
    EXPECT_EQ(slice.category->num_morphisms(), comma_morphisms);
    EXPECT_TRUE(validate_functor(slice.rho).ok());
    EXPECT_TRUE(validate_functor(slice.proj_x).ok());
    EXPECT_TRUE(validate_functor(slice.proj_t).ok());
    std::size_t fibre_objects = 0;
    for (ObjId c = 0; c < static_cast<ObjId>(y.num_objects()); ++c) fibre_objects += comma_fiber(c, slice)->num_objects();
    EXPECT_EQ(fibre_objects, comma_objects);

    const SpanDiagram s = s_category(f);
    ASSERT_TRUE(validate_category(*s.category).ok());
    EXPECT_EQ(s.category->num_objects(), s_objects);
    EXPECT_EQ(s.category->num_morphisms(), s_morphisms);
    EXPECT_EQ(compose(f, s.q), compose(s.twisted.cod, s.f_hat));
  }
}

TEST(ConstructionsProperty, CechCounts) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const CoverData cover = testing::random_cover(1 + i % 6, 4, rng);
    const CechCategory cech = cech_category(cover);
    ASSERT_TRUE(validate_category(*cech.category).ok());
    std::size_t objects = 0, morphisms = 0;
    for (const auto& point : cover.base) {
      std::size_t pieces = 0;
      for (const auto& [name, subset] : cover.pieces) pieces += std::count(subset.begin(), subset.end(), point);
      objects += pieces;
      morphisms += pieces * pieces;
    }
    EXPECT_EQ(cech.category->num_objects(), objects);
    EXPECT_EQ(cech.category->num_morphisms(), morphisms);
  }
}

TEST(ConstructionsProperty, FatteningIsFullyFaithfulAndOnto) {
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const CatPtr y = testing::random_category(rng, 3, 8);
    const Surjection p = testing::random_surjection(*y, i % 3, rng);
    const Fattening fat = fatten(y, p);
    ASSERT_TRUE(validate_category(*fat.x).ok());
    ASSERT_TRUE(validate_functor(fat.f).ok());
    std::size_t morphisms = 0;
    for (ObjId a : p.image)
      for (ObjId b : p.image) morphisms += y->hom(a, b).size();
    EXPECT_EQ(fat.x->num_morphisms(), morphisms);
    EXPECT_TRUE(codisc_decomposition_check(fat.f).passed);
    EXPECT_TRUE(slice_decomposition_check(fat.f).passed);
  }
}

}  // namespace
}  // namespace thma
