#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace thma {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr std::int32_t kUndefined = -1;

struct Morphism {
  std::string name;
  ObjId src = kUndefined;
  ObjId tgt = kUndefined;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// A finite category stored as explicit tables.
///
/// Objects and morphisms are addressed by dense indices; names are opaque
/// labels used for documents and reports. The composition table is a full
/// |Mor| x |Mor| array where entry (g, f) holds g∘f, or kUndefined when the
/// pair is not composable (or the table is incomplete).
///
/// Construction only checks that the tables are well-shaped (indices in
/// range). The category axioms are checked by validate_category, so broken
/// tables can be represented and diagnosed.
class FinCat {
 public:
  FinCat() = default;
  FinCat(std::vector<std::string> objects, std::vector<Morphism> morphisms,
         std::vector<MorId> identities, std::vector<MorId> composition);

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  const std::string& object_name(ObjId a) const { return objects_.at(a); }
  const std::string& morphism_name(MorId f) const { return morphisms_.at(f).name; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Morphism>& morphisms() const { return morphisms_; }
  const std::vector<MorId>& identities() const { return identities_; }
  const std::vector<MorId>& composition_table() const { return composition_; }

  ObjId src(MorId f) const { return morphisms_[f].src; }
  ObjId tgt(MorId f) const { return morphisms_[f].tgt; }
  MorId identity(ObjId a) const { return identities_[a]; }
  bool is_identity(MorId f) const { return identities_[src(f)] == f; }

  /// g∘f, or kUndefined.
  MorId compose(MorId g, MorId f) const {
    return composition_[static_cast<std::size_t>(g) * morphisms_.size() + f];
  }

  /// Morphisms a -> b in index order.
  std::span<const MorId> hom(ObjId a, ObjId b) const {
    const std::size_t cell = static_cast<std::size_t>(a) * objects_.size() + b;
    return {hom_.data() + hom_start_[cell], hom_start_[cell + 1] - hom_start_[cell]};
  }
  /// Morphisms with source a, in index order.
  std::span<const MorId> outgoing(ObjId a) const {
    return {out_.data() + out_start_[a], out_start_[a + 1] - out_start_[a]};
  }
  /// Position of f inside outgoing(src f).
  std::size_t outgoing_position(MorId f) const { return out_pos_[f]; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  /// Table equality ignoring names.
  bool same_tables(const FinCat& other) const;

  friend bool operator==(const FinCat& a, const FinCat& b) {
    return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ &&
           a.identities_ == b.identities_ && a.composition_ == b.composition_;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<MorId> composition_;

  // Morphisms bucketed by (src, tgt) and by src, each bucket in index order.
  std::vector<MorId> hom_;
  std::vector<std::size_t> hom_start_;
  std::vector<MorId> out_;
  std::vector<std::size_t> out_start_;
  std::vector<std::size_t> out_pos_;
};

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

/// Incremental construction by name. Composites not set stay undefined.
class CategoryBuilder {
 public:
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId src, ObjId tgt);
  /// Adds an identity morphism named `name` for `a` and registers it.
  MorId add_identity(ObjId a, std::string name);
  void set_identity(ObjId a, MorId f);
  void set_composite(MorId g, MorId f, MorId gf);
  /// Fills every composite that involves an identity.
  void fill_unit_composites();
  FinCat build() const;

  ObjId object(std::string_view name) const;
  MorId morphism(std::string_view name) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<std::tuple<MorId, MorId, MorId>> composites_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_category(const FinCat& c);

/// Renders a labelled tuple canonically, e.g. "(eta=u,b=x0)". Reserved
/// characters inside components are backslash-escaped so the encoding is
/// injective.
std::string render_tuple(std::initializer_list<std::pair<std::string_view, std::string_view>> fields);
std::string render_pair(std::string_view a, std::string_view b);

// Elementary categories.
FinCat terminal_category();
/// The interval category: objects "0", "1"; morphisms "id0", "id1", "u: 0->1".
FinCat interval_category();
FinCat disc(const std::vector<std::string>& s);
FinCat codisc(const std::vector<std::string>& s);
/// One-object category from a monoid multiplication table; element 0 is the
/// unit and table[a][b] is the product a*b (apply b first, then a).
FinCat monoid_category(const std::vector<std::string>& elements,
                       const std::vector<std::vector<int>>& table,
                       std::string object_name = "*");
FinCat cyclic_group_category(int order);
/// Poset category from a reflexive, transitive relation leq[a][b] (a <= b).
FinCat poset_category(const std::vector<std::string>& objects,
                      const std::vector<std::vector<bool>>& leq);

FinCat opposite(const FinCat& c);
FinCat product(const FinCat& c, const FinCat& d);
/// Full subcategory on the objects selected by `keep` (index order kept).
FinCat full_subcategory(const FinCat& c, const std::vector<bool>& keep);
/// Wide subcategory on the invertible morphisms.
FinCat iso_part(const FinCat& c);
/// Inverse of f when f is invertible.
std::optional<MorId> inverse_of(const FinCat& c, MorId f);

}  // namespace thma
