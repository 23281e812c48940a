#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thma/category.hpp"
#include "thma/constructions.hpp"
#include "thma/functor.hpp"

namespace thma::testing {

using Rng = std::mt19937_64;

/// Random partial order on n objects ("p0", "p1", ...), each pair related
/// with probability `density` before transitive closure.
FinCat random_poset(int n, double density, Rng& rng);

/// Free category on a random DAG with n vertices: morphisms are paths.
FinCat free_category_on_dag(int n, int edges, Rng& rng);

/// {e, z} with z∘z = z.
FinCat idempotent_monoid();

/// The linear order 0 < 1 < ... < n-1.
FinCat linear_order(int n);

/// One of the families above (posets, free categories, Z/n, the idempotent
/// monoid, disc, codisc, small products), with at most `max_objects` objects
/// and `max_morphisms` morphisms.
CatPtr random_category(Rng& rng, int max_objects = 4, int max_morphisms = 12);

/// A uniformly ordered backtracking search; the constant functor guarantees a
/// solution whenever cod is nonempty. Returns nullopt only for empty cod.
std::optional<CatFunctor> random_functor(const CatPtr& dom, const CatPtr& cod, Rng& rng);

/// Mixes random functors (retried towards ones that move some morphism off
/// the identities), full subcategory inclusions, product projections, identity
/// functors and fattenings, all between categories within the limits.
CatFunctor random_test_functor(Rng& rng, int max_objects = 4, int max_morphisms = 12);

/// A natural transformation read off a random functor dom x 2 -> cod, retried
/// towards one with a non-identity component.
std::optional<NatTrans> random_nat_trans(const CatPtr& dom, const CatPtr& cod, Rng& rng);

/// Random surjection from a set of `extra` + |Y0| elements onto Y0.
Surjection random_surjection(const FinCat& y, int extra, Rng& rng);

/// Random cover of {"m0", ..} by at most `max_pieces` pieces.
CoverData random_cover(int points, int max_pieces, Rng& rng);

struct SmallCategoryLimits {
  int max_objects = 3;
  int max_morphisms = 8;
  int max_endomorphisms = 4;  ///< size cap on every endomorphism monoid
};

/// Every category within the limits up to isomorphism, one representative per
/// class. Returns the count.
std::size_t for_each_small_category(const SmallCategoryLimits& limits, const std::function<void(const FinCat&)>& visit);

}  // namespace thma::testing
