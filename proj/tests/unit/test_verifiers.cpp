#include <gtest/gtest.h>

#include "generators.hpp"
#include "thma/error.hpp"
#include "thma/verifiers.hpp"

namespace thma {
namespace {

using testing::Rng;
using Kind = ContractibilityCertificate::Kind;

TEST(Verifiers, FullyFaithful) {
  const CatPtr two = share(interval_category());
  const CatPtr disc01 = share(disc({"0", "1"}));
  EXPECT_TRUE(is_fully_faithful(identity_functor(two)).holds);
  const auto v = is_fully_faithful(disc_inclusion(disc01, two));
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.failures.empty());
  EXPECT_FALSE(v.pullback_agrees && v.holds);
}

TEST(Verifiers, EssentiallySurjective) {
  const CatPtr two = share(interval_category());
  const CatPtr point = share(terminal_category());
  const auto v = is_essentially_surjective(constant_functor(point, two, 1));
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.missing, std::vector<std::string>{"0"});
  // Every object of codisc{a,b} is isomorphic to a.
  const CatPtr codisc_ab = share(codisc({"a", "b"}));
  EXPECT_TRUE(is_essentially_surjective(constant_functor(point, codisc_ab, 0)).holds);
}

TEST(Verifiers, ContractibilityCertificates) {
  const auto two = certify_contractible(share(interval_category()), 3);
  EXPECT_EQ(two.kind, Kind::initial_object);
  EXPECT_EQ(two.witness_name, "0");
  EXPECT_TRUE(two.proxy_confirms);
  // The cospan a -> c <- b has a terminal object and no initial one.
  const FinCat cospan = poset_category({"a", "b", "c"}, {{true, false, true}, {false, true, true}, {false, false, true}});
  const auto t = certify_contractible(share(cospan), 3);
  EXPECT_EQ(t.kind, Kind::terminal_object);
  EXPECT_EQ(t.witness_name, "c");
  EXPECT_EQ(certify_contractible(share(cyclic_group_category(2)), 3).kind, Kind::refused);
  EXPECT_EQ(certify_contractible(share(disc({"a", "b"})), 3).kind, Kind::refused);
  EXPECT_EQ(certify_contractible(share(FinCat()), 3).kind, Kind::refused);
  // The idempotent monoid has no initial or terminal object but is acyclic.
  EXPECT_EQ(certify_contractible(share(testing::idempotent_monoid()), 4).kind, Kind::acyclic_connected);
}

TEST(Verifiers, WitnessNameIsCanonical) {
  // codisc{c, a, b}: every object is initial, the smallest name wins.
  EXPECT_EQ(certify_contractible(share(codisc({"c", "a", "b"})), 3).witness_name, "a");
}

TEST(Verifiers, TheoremANegativeControls) {
  const CatPtr two = share(interval_category());
  const CatPtr disc01 = share(disc({"0", "1"}));
  const TheoremVerdict v = theorem_a_check(disc_inclusion(disc01, two), 4);
  EXPECT_FALSE(v.hypothesis);
  EXPECT_FALSE(v.conclusion.holds);
  EXPECT_TRUE(v.sound());
  EXPECT_THROW(theorem_a_check(identity_functor(two), 1), InvalidArgument);
}

TEST(Verifiers, TheoremAOnSelector) {
  const CatPtr two = share(interval_category());
  const TheoremVerdict v = theorem_a_check(constant_functor(share(terminal_category()), two, 1), 4);
  EXPECT_TRUE(v.hypothesis);
  EXPECT_TRUE(v.conclusion.holds);
  EXPECT_EQ(v.theorem, "A");
}

TEST(Verifiers, MoritaOnFattening) {
  const CatPtr two = share(interval_category());
  const Fattening fat = fatten(two, {{"0", "0'", "1"}, {0, 0, 1}});
  const TheoremVerdict v = morita_check(fat.f, 4);
  EXPECT_TRUE(v.hypothesis);
  EXPECT_TRUE(v.conclusion.holds);
  for (const auto& [name, ok] : v.checks) EXPECT_TRUE(ok) << name;
  EXPECT_EQ(v.checks.size(), 3u);
}

TEST(Verifiers, MoritaRejectsNonEquivalence) {
  const CatPtr two = share(interval_category());
  const CatPtr disc01 = share(disc({"0", "1"}));
  const TheoremVerdict v = morita_check(disc_inclusion(disc01, two), 4);
  EXPECT_FALSE(v.hypothesis);
  EXPECT_FALSE(v.notes.empty());
}

TEST(Verifiers, SegalCoverFibres) {
  const TheoremVerdict v = segal_cover_check({{"1", "2"}, {{"a", {"1", "2"}}, {"b", {"2"}}}}, 4);
  EXPECT_TRUE(v.hypothesis);
  EXPECT_TRUE(v.conclusion.holds);
  ASSERT_EQ(v.fibers.size(), 2u);
  for (const auto& f : v.fibers) EXPECT_EQ(f.certificate.kind, Kind::initial_object);
  EXPECT_EQ(v.fibers[1].objects, 2u);
  EXPECT_THROW(segal_cover_check({{"1"}, {{"a", {}}}}, 4), InvalidArgument);
}

// Properties.

TEST(VerifiersProperty, TheoremAIsSound) {
  Rng rng(50);
  for (int i = 0; i < 150; ++i) {
    const CatFunctor f = testing::random_test_functor(rng);
    const TheoremVerdict v = theorem_a_check(f, 4);
    EXPECT_TRUE(v.sound()) << i;
    EXPECT_EQ(v.fibers.size(), f.cod()->num_objects());
  }
}

TEST(VerifiersProperty, CertificatesAgreeWithHomology) {
  Rng rng(51);
  for (int i = 0; i < 150; ++i) {
    const auto c = certify_contractible(testing::random_category(rng, 4, 12), 4);
    if (c.kind == Kind::initial_object || c.kind == Kind::terminal_object) {
      ASSERT_TRUE(c.homology);
      EXPECT_TRUE(c.proxy_confirms);
      EXPECT_TRUE(c.strong);
    }
  }
}

TEST(VerifiersProperty, IdentitiesAreEquivalences) {
  Rng rng(52);
  for (int i = 0; i < 60; ++i) {
    const CatPtr c = testing::random_category(rng, 4, 12);
    const CatFunctor id = identity_functor(c);
    EXPECT_TRUE(is_fully_faithful(id).holds);
    EXPECT_TRUE(is_essentially_surjective(id).holds);
    EXPECT_TRUE(morita_check(id, 3).conclusion.holds);
    EXPECT_TRUE(theorem_a_check(id, 3).hypothesis);
  }
}

TEST(VerifiersProperty, ShrinkableWitnesses) {
  Rng rng(53);
  for (int i = 0; i < 60; ++i) {
    const CatPtr y = testing::random_category(rng, 4, 12);
    const WitnessVerdict sigma = shrinkable_witness_check(t_category(y).sigma, 3);
    EXPECT_TRUE(sigma.holds);
    EXPECT_TRUE(sigma.witness_valid && sigma.section_ok && sigma.chain_identity);
    EXPECT_TRUE(shrinkable_witness_check(t_op_category(y).tau, 3).holds);
  }
}

TEST(VerifiersProperty, SegalCoversHold) {
  Rng rng(54);
  for (int i = 0; i < 60; ++i) {
    const TheoremVerdict v = segal_cover_check(testing::random_cover(1 + i % 6, 4, rng), 4);
    EXPECT_TRUE(v.hypothesis);
    EXPECT_TRUE(v.conclusion.holds);
  }
}

}  // namespace
}  // namespace thma
