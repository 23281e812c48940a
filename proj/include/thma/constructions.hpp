#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <string>
#include <utility>
#include <vector>

#include "thma/category.hpp"
#include "thma/functor.hpp"

namespace thma {

/// A section of a projection together with a natural transformation
/// relating section∘projection and the identity.
///
/// For Direction::left the unit runs section∘projection => id_E (the section
/// is a left adjoint); for Direction::right it runs id_E => section∘projection.
struct AdjointSectionWitness {
  enum class Direction { left, right };

  CatFunctor projection;  ///< E -> B
  CatFunctor section;     ///< B -> E
  Direction direction = Direction::left;
  NatTrans unit;
};

/// Checks p∘s = id, validity of the unit, and that p whiskered with the unit
/// is the identity transformation of p.
ValidationReport validate_witness(const AdjointSectionWitness& w);

/// TY = disc(Y0) x_Y Y^2: objects are the morphisms g of Y, morphisms g -> g'
/// are h with g' = h∘g.
struct TCategory {
  CatPtr category;
  CatPtr base;      ///< disc(Y0)
  CatFunctor dom;   ///< TY -> disc(Y0)
  CatFunctor cod;   ///< TY -> Y
  AdjointSectionWitness sigma;
  std::vector<ObjId> object_of_morphism;  ///< Y morphism g -> TY object
  std::vector<MorId> morphism_of_object;  ///< TY object -> Y morphism g
};

TCategory t_category(const CatPtr& y);

/// Twisted arrow category: objects are the morphisms of Y, morphisms
/// (h, k): g -> g' with g' = h∘g∘k.
struct TwistedArrow {
  CatPtr category;
  CatPtr opposite;          ///< Y^op
  CatFunctor cod;           ///< ♮Y -> Y
  CatFunctor dom;           ///< ♮Y -> Y^op
  CatFunctor include_t;     ///< TY -> ♮Y
  TCategory t;

  /// The morphism (h, k) out of the object g.
  std::optional<MorId> find(MorId g, MorId h, MorId k) const;
  std::vector<MorId> h_leg;
  std::vector<MorId> k_leg;
  std::size_t base_morphisms = 0;
  std::unordered_map<std::uint64_t, MorId> index;
};

TwistedArrow twisted_arrow(const CatPtr& y);

/// T°Y, computed as T(Y^op) and embedded in ♮Y as the morphisms (id, k).
struct TOpCategory {
  CatPtr category;
  CatFunctor cod;        ///< T°Y -> disc(Y0)
  CatFunctor include;    ///< T°Y -> ♮Y
  AdjointSectionWitness tau;
};

TOpCategory t_op_category(const CatPtr& y);

/// Y0↓f with its canonical functors.
struct CommaSlice {
  CatPtr category;
  CatFunctor rho;      ///< Y0↓f -> disc(Y0), (eta, b) |-> src eta
  CatFunctor proj_x;   ///< Y0↓f -> X
  CatFunctor proj_t;   ///< Y0↓f -> TY
  TCategory t;
  Pullback pullback;
};

CommaSlice comma_slice(const CatFunctor& f);
/// The fibre y↓f of rho. Throws InvalidArgument for an unknown object.
CatPtr comma_fiber(ObjId y, const CatFunctor& f);
CatPtr comma_fiber(ObjId y, const CommaSlice& slice);

/// S(f) and the commuting map of spans X <- S(f) -> Y^op over Y <- ♮Y -> Y^op.
struct SpanDiagram {
  CatPtr category;      ///< S(f)
  CatFunctor f;
  CatFunctor q;         ///< S(f) -> X
  CatFunctor f_hat;     ///< S(f) -> ♮Y
  CatFunctor p;         ///< S(f) -> Y^op
  TwistedArrow twisted;
  Pullback pullback;    ///< over (cod_nat, f); left leg is f_hat
};

/// Throws ConsistencyFault if either square fails to commute.
SpanDiagram s_category(const CatFunctor& f);

struct CoverData {
  std::vector<std::string> base;
  std::vector<std::pair<std::string, std::vector<std::string>>> pieces;
};

/// Empty when the pieces cover the base; otherwise the reasons.
std::vector<std::string> cover_problems(const CoverData& cover);

struct CechCategory {
  CatPtr category;       ///< U^[2]
  CatPtr base;           ///< disc(M)
  CatFunctor pi;
  std::vector<int> piece_of_object;
  std::vector<int> point_of_object;
};

/// Throws InvalidArgument if the pieces do not cover the base.
CechCategory cech_category(const CoverData& cover);

/// A surjection from a finite set onto the objects of a category.
struct Surjection {
  std::vector<std::string> elements;
  std::vector<ObjId> image;
};

struct Fattening {
  CatPtr x;
  CatFunctor f;   ///< fully faithful, essentially surjective by construction
};

/// X = codisc(S) x_{codisc(Y0)} Y. Throws InvalidArgument unless p is onto.
Fattening fatten(const CatPtr& y, const Surjection& p);

struct ComparisonCheck {
  bool passed = false;
  std::string detail;
  std::optional<CatFunctor> comparison;
};

/// Canonical comparison X -> codisc(X0) x_{codisc(Y0)} Y; passes iff it is
/// an isomorphism of categories.
ComparisonCheck codisc_decomposition_check(const CatFunctor& f);
/// Canonical comparison Y0↓f -> codisc(X0) x_{codisc(Y0)} TY.
ComparisonCheck slice_decomposition_check(const CatFunctor& f);

}  // namespace thma
