#include <gtest/gtest.h>

#include "generators.hpp"
#include "thma/category.hpp"
#include "thma/error.hpp"

namespace thma {
namespace {

using testing::Rng;

TEST(Category, ElementaryCategoriesValidate) {
  for (const FinCat& c : {terminal_category(), interval_category(), disc({"a", "b", "c"}), codisc({"a", "b"}),
                          cyclic_group_category(3), testing::idempotent_monoid(), testing::linear_order(4)}) {
    EXPECT_TRUE(validate_category(c).ok());
  }
}

TEST(Category, ElementarySizes) {
  EXPECT_EQ(terminal_category().num_morphisms(), 1u);
  const FinCat two = interval_category();
  EXPECT_EQ(two.num_objects(), 2u);
  EXPECT_EQ(two.num_morphisms(), 3u);
  EXPECT_EQ(two.morphism_name(2), "u");
  EXPECT_EQ(codisc({"a", "b", "c"}).num_morphisms(), 9u);
  EXPECT_EQ(disc({"a", "b", "c"}).num_morphisms(), 3u);
  EXPECT_EQ(cyclic_group_category(5).num_morphisms(), 5u);
  EXPECT_EQ(testing::linear_order(4).num_morphisms(), 10u);
}

TEST(Category, BuilderAndLookups) {
  CategoryBuilder b;
  const ObjId x = b.add_object("x");
  const ObjId y = b.add_object("y");
  b.add_identity(x, "1x");
  b.add_identity(y, "1y");
  const MorId f = b.add_morphism("f", x, y);
  b.fill_unit_composites();
  const FinCat c = b.build();
  EXPECT_TRUE(validate_category(c).ok());
  EXPECT_EQ(c.find_object("y"), y);
  EXPECT_EQ(c.find_morphism("f"), f);
  EXPECT_FALSE(c.find_object("z"));
  EXPECT_EQ(c.compose(c.identity(y), f), f);
  EXPECT_EQ(c.compose(f, f), kUndefined);
  ASSERT_EQ(c.hom(x, y).size(), 1u);
  EXPECT_EQ(c.outgoing(x).size(), 2u);
  EXPECT_THROW(b.object("nope"), InvalidArgument);
}

TEST(Category, BuilderRequiresIdentities) {
  CategoryBuilder b;
  b.add_object("x");
  EXPECT_THROW(b.build(), InvalidArgument);
}

TEST(Category, ConstructorRejectsBadShapes) {
  EXPECT_THROW(FinCat({"a"}, {{"f", 0, 1}}, {0}, {kUndefined}), InvalidArgument);
  EXPECT_THROW(FinCat({"a"}, {{"f", 0, 0}}, {0}, {}), InvalidArgument);
  EXPECT_THROW(FinCat({"a"}, {{"f", 0, 0}}, {0}, {3}), InvalidArgument);
}

TEST(Category, ValidationFindsBrokenUnitLaw) {
  // Two endomorphisms e, z of one object with e declared the identity but
  // e∘z = e.
  const FinCat c({"*"}, {{"e", 0, 0}, {"z", 0, 0}}, {0}, {0, 0, 1, 1});
  EXPECT_FALSE(validate_category(c).ok());
}

TEST(Category, ValidationFindsNonAssociativity) {
  // Magma on {e, a, b} with e the unit and a*a = b, a*b = a, b*a = b,
  // b*b = a: (a*a)*a = b*a = b but a*(a*a) = a*b = a.
  const std::vector<std::vector<int>> table = {{0, 1, 2}, {1, 2, 1}, {2, 2, 1}};
  const FinCat c = monoid_category({"e", "a", "b"}, table);
  const auto report = validate_category(c);
  ASSERT_FALSE(report.ok());
}

TEST(Category, ValidationFindsMissingComposite) {
  FinCat two = interval_category();
  auto table = two.composition_table();
  table[2 * 3 + 0] = kUndefined;  // u∘id0
  const FinCat broken(two.objects(), two.morphisms(), two.identities(), table);
  EXPECT_FALSE(validate_category(broken).ok());
}

TEST(Category, RenderTupleIsInjective) {
  EXPECT_EQ(render_tuple({{"a", "x"}, {"b", "y"}}), "(a=x,b=y)");
  EXPECT_NE(render_tuple({{"a", "x,b=y"}}), render_tuple({{"a", "x"}, {"b", "y"}}));
  EXPECT_NE(render_pair("a,b", "c"), render_pair("a", "b,c"));
}

TEST(Category, InverseAndIsoPart) {
  const FinCat z3 = cyclic_group_category(3);
  for (MorId f = 0; f < 3; ++f) {
    const auto inv = inverse_of(z3, f);
    ASSERT_TRUE(inv);
    EXPECT_TRUE(z3.is_identity(z3.compose(*inv, f)));
  }
  const FinCat two = interval_category();
  EXPECT_FALSE(inverse_of(two, 2));
  EXPECT_EQ(iso_part(two).num_morphisms(), 2u);
  EXPECT_EQ(iso_part(codisc({"a", "b"})).num_morphisms(), 4u);
  EXPECT_EQ(iso_part(testing::idempotent_monoid()).num_morphisms(), 1u);
}

TEST(Category, FullSubcategory) {
  const FinCat c = testing::linear_order(3);
  const FinCat sub = full_subcategory(c, {true, false, true});
  EXPECT_TRUE(validate_category(sub).ok());
  EXPECT_EQ(sub.num_objects(), 2u);
  EXPECT_EQ(sub.num_morphisms(), 3u);
}

TEST(Category, ProductSizes) {
  const FinCat p = product(interval_category(), cyclic_group_category(2));
  EXPECT_TRUE(validate_category(p).ok());
  EXPECT_EQ(p.num_objects(), 2u);
  EXPECT_EQ(p.num_morphisms(), 6u);
}

// Properties over the random families.

TEST(CategoryProperty, RandomCategoriesValidate) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const CatPtr c = testing::random_category(rng, 4, 12);
    ASSERT_TRUE(validate_category(*c).ok()) << i;
  }
}

TEST(CategoryProperty, OppositeIsAnInvolution) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const CatPtr c = testing::random_category(rng, 4, 12);
    const FinCat op = opposite(*c);
    EXPECT_TRUE(validate_category(op).ok());
    EXPECT_TRUE(opposite(op).same_tables(*c));
    for (std::size_t f = 0; f < c->num_morphisms(); ++f) {
      EXPECT_EQ(op.src(static_cast<MorId>(f)), c->tgt(static_cast<MorId>(f)));
    }
  }
}

TEST(CategoryProperty, ProductCountsMultiply) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const CatPtr a = testing::random_category(rng, 3, 6);
    const CatPtr b = testing::random_category(rng, 3, 6);
    const FinCat p = product(*a, *b);
    EXPECT_TRUE(validate_category(p).ok());
    EXPECT_EQ(p.num_objects(), a->num_objects() * b->num_objects());
    EXPECT_EQ(p.num_morphisms(), a->num_morphisms() * b->num_morphisms());
  }
}

TEST(CategoryProperty, HomBucketsPartitionMorphisms) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const CatPtr c = testing::random_category(rng, 4, 12);
    std::size_t total = 0;
    for (std::size_t a = 0; a < c->num_objects(); ++a) {
      std::size_t out = 0;
      for (std::size_t b = 0; b < c->num_objects(); ++b) {
        for (MorId f : c->hom(static_cast<ObjId>(a), static_cast<ObjId>(b))) {
          EXPECT_EQ(c->src(f), static_cast<ObjId>(a));
          EXPECT_EQ(c->tgt(f), static_cast<ObjId>(b));
        }
        out += c->hom(static_cast<ObjId>(a), static_cast<ObjId>(b)).size();
      }
      EXPECT_EQ(out, c->outgoing(static_cast<ObjId>(a)).size());
      for (MorId f : c->outgoing(static_cast<ObjId>(a)))
        EXPECT_EQ(c->outgoing(static_cast<ObjId>(a))[c->outgoing_position(f)], f);
      total += out;
    }
    EXPECT_EQ(total, c->num_morphisms());
  }
}

TEST(CategoryProperty, SmallCategoryEnumerationCounts) {
  // Monoids of order 1..4 up to isomorphism: 1, 2, 7, 35 (cumulative 1, 3, 10, 45).
  const std::vector<std::size_t> cumulative = {1, 3, 10, 45};
  for (int k = 1; k <= 4; ++k) {
    std::size_t invalid = 0;
    const std::size_t n = testing::for_each_small_category({1, k, k}, [&](const FinCat& c) {
      invalid += !validate_category(c).ok();
    });
    EXPECT_EQ(n, cumulative[k - 1]) << k;
    EXPECT_EQ(invalid, 0u);
  }
}

}  // namespace
}  // namespace thma
