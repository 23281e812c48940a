#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "thma/category.hpp"

namespace thma {

/// A functor between finite categories, given pointwise on objects and
/// morphisms. Construction checks shapes only; validate_functor checks the
/// functor laws.
class CatFunctor {
 public:
  CatFunctor() = default;
  CatFunctor(CatPtr dom, CatPtr cod, std::vector<ObjId> obj_map, std::vector<MorId> mor_map);

  const CatPtr& dom() const { return dom_; }
  const CatPtr& cod() const { return cod_; }
  ObjId on_object(ObjId a) const { return obj_map_[a]; }
  MorId on_morphism(MorId f) const { return mor_map_[f]; }
  const std::vector<ObjId>& object_map() const { return obj_map_; }
  const std::vector<MorId>& morphism_map() const { return mor_map_; }

  bool injective_on_objects() const;
  bool injective_on_morphisms() const;
  bool bijective() const;

  friend bool operator==(const CatFunctor& a, const CatFunctor& b);

 private:
  CatPtr dom_;
  CatPtr cod_;
  std::vector<ObjId> obj_map_;
  std::vector<MorId> mor_map_;
};

/// Same category by pointer or by table/name equality.
bool same_category(const CatPtr& a, const CatPtr& b);

CatFunctor identity_functor(const CatPtr& c);
/// g∘f. Throws InvalidArgument when cod f differs from dom g.
CatFunctor compose(const CatFunctor& g, const CatFunctor& f);
/// The functor C -> terminal.
CatFunctor to_terminal(const CatPtr& c);
/// Constant functor at object `d`.
CatFunctor constant_functor(const CatPtr& c, const CatPtr& d, ObjId at);

ValidationReport validate_functor(const CatFunctor& f);

/// A natural transformation source => target. components[c] : F(c) -> G(c).
struct NatTrans {
  CatFunctor source;
  CatFunctor target;
  std::vector<MorId> components;
};

NatTrans identity_transformation(const CatFunctor& f);
/// Whiskering p·alpha (apply p to every component).
NatTrans whisker_left(const CatFunctor& p, const NatTrans& alpha);
ValidationReport validate_nat_trans(const NatTrans& alpha);
/// The transformation as a functor C x 2 -> D, over product(C, interval).
CatFunctor nat_trans_as_functor(const NatTrans& alpha);

/// Arrow category C^2 with its domain and codomain functors.
struct ArrowCategory {
  CatPtr category;
  CatFunctor dom;
  CatFunctor cod;
};

/// Objects are the morphisms of C (same order); morphisms g -> g' are
/// commuting squares (k, h) with g'∘k = h∘g, named "(k=..,h=..)".
ArrowCategory arrow_category(const CatPtr& c);

/// Strict pullback of F: A -> E and G: B -> E.
///
/// Objects are pairs (a, b) with F(a) = G(b), morphisms pairs (f, g) with
/// F(f) = G(g), both enumerated in lexicographic index order (left component
/// outermost).
struct Pullback {
  CatPtr category;
  CatFunctor left;   ///< projection to dom F
  CatFunctor right;  ///< projection to dom G

  /// Index of the object (a, b), if it lies in the pullback.
  std::optional<ObjId> object_of(ObjId a, ObjId b) const;
  std::optional<MorId> morphism_of(MorId f, MorId g) const;

  std::unordered_map<std::uint64_t, ObjId> object_index;
  std::unordered_map<std::uint64_t, MorId> morphism_index;
};

Pullback strict_pullback(const CatFunctor& f, const CatFunctor& g);

/// Mediating functor for a cone (to_left: T -> A, to_right: T -> B). Returns
/// nullopt when the cone does not commute over E; otherwise the unique
/// functor u with left∘u = to_left and right∘u = to_right.
std::optional<CatFunctor> pullback_mediator(const Pullback& pb, const CatFunctor& f,
                                            const CatFunctor& g, const CatFunctor& to_left,
                                            const CatFunctor& to_right);

/// The functor codisc(S) -> codisc(T) induced by a map of sets.
CatFunctor codisc_map(const CatPtr& source, const CatPtr& target, const std::vector<ObjId>& on_objects);
/// The canonical functor C -> codisc(Obj C), identity on objects.
CatFunctor to_codisc(const CatPtr& c, const CatPtr& codisc_objects);
/// Inclusion of disc(Obj C) into C.
CatFunctor disc_inclusion(const CatPtr& discrete, const CatPtr& c);

}  // namespace thma
