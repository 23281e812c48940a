#include "thma/category.hpp"

#include <algorithm>
#include <sstream>

#include "thma/error.hpp"

namespace thma {

namespace {

// Guard on the quadratic composition table.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 27;

void require(bool cond, std::string_view message) {
  if (!cond) throw InvalidArgument(std::string(message));
}

}  // namespace

FinCat::FinCat(std::vector<std::string> objects, std::vector<Morphism> morphisms,
               std::vector<MorId> identities, std::vector<MorId> composition)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      composition_(std::move(composition)) {
  const auto n = objects_.size();
  const auto m = morphisms_.size();
  require(m == 0 || m <= kMaxTableEntries / m, "category too large for an explicit composition table");
  require(identities_.size() == n, "identity table must have one entry per object");
  require(composition_.size() == m * m, "composition table must be |Mor| x |Mor|");
  for (const auto& f : morphisms_) {
    if (f.src < 0 || static_cast<std::size_t>(f.src) >= n) require(false, "morphism '" + f.name + "' has a bad source");
    if (f.tgt < 0 || static_cast<std::size_t>(f.tgt) >= n) require(false, "morphism '" + f.name + "' has a bad target");
  }
  for (MorId e : identities_) require(e >= 0 && static_cast<std::size_t>(e) < m, "identity index out of range");
  for (MorId c : composition_) {
    require(c == kUndefined || (c >= 0 && static_cast<std::size_t>(c) < m), "composite index out of range");
  }

  hom_start_.assign(n * n + 1, 0);
  out_start_.assign(n + 1, 0);
  for (const auto& mor : morphisms_) {
    ++hom_start_[static_cast<std::size_t>(mor.src) * n + mor.tgt + 1];
    ++out_start_[mor.src + 1];
  }
  for (std::size_t i = 0; i < n * n; ++i) hom_start_[i + 1] += hom_start_[i];
  for (std::size_t i = 0; i < n; ++i) out_start_[i + 1] += out_start_[i];
  hom_.resize(m);
  out_.resize(m);
  out_pos_.assign(m, 0);
  std::vector<std::size_t> hom_fill(hom_start_.begin(), hom_start_.end() - 1);
  std::vector<std::size_t> out_fill(out_start_.begin(), out_start_.end() - 1);
  for (std::size_t f = 0; f < m; ++f) {
    const auto& mor = morphisms_[f];
    hom_[hom_fill[static_cast<std::size_t>(mor.src) * n + mor.tgt]++] = static_cast<MorId>(f);
    out_pos_[f] = out_fill[mor.src] - out_start_[mor.src];
    out_[out_fill[mor.src]++] = static_cast<MorId>(f);
  }
}

std::optional<ObjId> FinCat::find_object(std::string_view name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjId>(it - objects_.begin());
}

std::optional<MorId> FinCat::find_morphism(std::string_view name) const {
  auto it = std::find_if(morphisms_.begin(), morphisms_.end(), [&](const Morphism& f) { return f.name == name; });
  if (it == morphisms_.end()) return std::nullopt;
  return static_cast<MorId>(it - morphisms_.begin());
}

bool FinCat::same_tables(const FinCat& other) const {
  if (objects_.size() != other.objects_.size() || morphisms_.size() != other.morphisms_.size()) return false;
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    if (morphisms_[f].src != other.morphisms_[f].src || morphisms_[f].tgt != other.morphisms_[f].tgt) return false;
  }
  return identities_ == other.identities_ && composition_ == other.composition_;
}

// ---------------------------------------------------------------------------

ObjId CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identities_.push_back(kUndefined);
  return static_cast<ObjId>(objects_.size() - 1);
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId src, ObjId tgt) {
  morphisms_.push_back({std::move(name), src, tgt});
  return static_cast<MorId>(morphisms_.size() - 1);
}

MorId CategoryBuilder::add_identity(ObjId a, std::string name) {
  MorId e = add_morphism(std::move(name), a, a);
  set_identity(a, e);
  return e;
}

void CategoryBuilder::set_identity(ObjId a, MorId f) { identities_.at(a) = f; }

void CategoryBuilder::set_composite(MorId g, MorId f, MorId gf) { composites_.emplace_back(g, f, gf); }

void CategoryBuilder::fill_unit_composites() {
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    const auto& mor = morphisms_[f];
    const auto fid = static_cast<MorId>(f);
    if (identities_.at(mor.tgt) != kUndefined) set_composite(identities_[mor.tgt], fid, fid);
    if (identities_.at(mor.src) != kUndefined) set_composite(fid, identities_[mor.src], fid);
  }
}

FinCat CategoryBuilder::build() const {
  const auto m = morphisms_.size();
  std::vector<MorId> table(m * m, kUndefined);
  for (auto [g, f, gf] : composites_) {
    require(g >= 0 && static_cast<std::size_t>(g) < m && f >= 0 && static_cast<std::size_t>(f) < m,
            "composite refers to an unknown morphism");
    table[static_cast<std::size_t>(g) * m + f] = gf;
  }
  for (std::size_t a = 0; a < identities_.size(); ++a) {
    if (identities_[a] == kUndefined) require(false, "object '" + objects_[a] + "' has no identity");
  }
  return FinCat(objects_, morphisms_, identities_, std::move(table));
}

ObjId CategoryBuilder::object(std::string_view name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) require(false, "unknown object '" + std::string(name) + "'");
  return static_cast<ObjId>(it - objects_.begin());
}

MorId CategoryBuilder::morphism(std::string_view name) const {
  auto it = std::find_if(morphisms_.begin(), morphisms_.end(), [&](const Morphism& f) { return f.name == name; });
  if (it == morphisms_.end()) require(false, "unknown morphism '" + std::string(name) + "'");
  return static_cast<MorId>(it - morphisms_.begin());
}

// ---------------------------------------------------------------------------

ValidationReport validate_category(const FinCat& c) {
  ValidationReport report;
  auto& out = report.violations;
  const auto m = static_cast<MorId>(c.num_morphisms());
  const auto name = [&](MorId f) { return "'" + c.morphism_name(f) + "'"; };

  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    MorId e = c.identity(a);
    if (c.src(e) != a || c.tgt(e) != a) {
      out.push_back("identity " + name(e) + " of object '" + c.object_name(a) + "' is not an endomorphism of it");
    }
  }
  for (MorId g = 0; g < m; ++g) {
    for (MorId f = 0; f < m; ++f) {
      MorId gf = c.compose(g, f);
      bool composable = c.tgt(f) == c.src(g);
      if (!composable) {
        if (gf != kUndefined) out.push_back("composite defined for non-composable pair (" + name(g) + ", " + name(f) + ")");
        continue;
      }
      if (gf == kUndefined) {
        out.push_back("composite missing for composable pair (" + name(g) + ", " + name(f) + ")");
        continue;
      }
      if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)) {
        out.push_back("composite of (" + name(g) + ", " + name(f) + ") has wrong source or target");
      }
    }
  }
  for (MorId f = 0; f < m; ++f) {
    if (c.compose(c.identity(c.tgt(f)), f) != f) out.push_back("left unit law fails at " + name(f));
    if (c.compose(f, c.identity(c.src(f))) != f) out.push_back("right unit law fails at " + name(f));
  }
  for (MorId f = 0; f < m; ++f) {
    for (MorId g : c.outgoing(c.tgt(f))) {
      MorId gf = c.compose(g, f);
      if (gf == kUndefined) continue;
      for (MorId h : c.outgoing(c.tgt(g))) {
        MorId hg = c.compose(h, g);
        if (hg == kUndefined) continue;
        if (c.compose(h, gf) != c.compose(hg, f)) {
          out.push_back("associativity fails at (" + name(h) + ", " + name(g) + ", " + name(f) + ")");
        }
      }
    }
  }
  return report;
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
  for (char ch : s) {
    if (ch == '\\' || ch == ',' || ch == '(' || ch == ')' || ch == '=') out.push_back('\\');
    out.push_back(ch);
  }
}

}  // namespace

std::string render_tuple(std::initializer_list<std::pair<std::string_view, std::string_view>> fields) {
  std::string out = "(";
  bool first = true;
  for (const auto& [label, value] : fields) {
    if (!first) out.push_back(',');
    first = false;
    out.append(label);
    out.push_back('=');
    append_escaped(out, value);
  }
  out.push_back(')');
  return out;
}

std::string render_pair(std::string_view a, std::string_view b) {
  std::string out = "(";
  append_escaped(out, a);
  out.push_back(',');
  append_escaped(out, b);
  out.push_back(')');
  return out;
}

// ---------------------------------------------------------------------------

FinCat terminal_category() { return disc({"*"}); }

FinCat interval_category() {
  CategoryBuilder b;
  ObjId zero = b.add_object("0");
  ObjId one = b.add_object("1");
  b.add_identity(zero, "id0");
  b.add_identity(one, "id1");
  b.add_morphism("u", zero, one);
  b.fill_unit_composites();
  return b.build();
}

FinCat disc(const std::vector<std::string>& s) {
  std::vector<Morphism> mors;
  std::vector<MorId> ids;
  for (std::size_t a = 0; a < s.size(); ++a) {
    mors.push_back({"id_" + s[a], static_cast<ObjId>(a), static_cast<ObjId>(a)});
    ids.push_back(static_cast<MorId>(a));
  }
  std::vector<MorId> table(s.size() * s.size(), kUndefined);
  for (std::size_t a = 0; a < s.size(); ++a) table[a * s.size() + a] = static_cast<MorId>(a);
  return FinCat(s, std::move(mors), std::move(ids), std::move(table));
}

// Morphism (a, b) of codisc(S) has index a*|S| + b.
FinCat codisc(const std::vector<std::string>& s) {
  const auto n = s.size();
  std::vector<Morphism> mors;
  std::vector<MorId> ids(n);
  mors.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      mors.push_back({render_pair(s[a], s[b]), static_cast<ObjId>(a), static_cast<ObjId>(b)});
    }
    ids[a] = static_cast<MorId>(a * n + a);
  }
  const auto m = n * n;
  std::vector<MorId> table(m * m, kUndefined);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      if (mors[g].src == mors[f].tgt) {
        table[g * m + f] = static_cast<MorId>(static_cast<std::size_t>(mors[f].src) * n + mors[g].tgt);
      }
    }
  }
  return FinCat(s, std::move(mors), std::move(ids), std::move(table));
}

FinCat monoid_category(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table,
                       std::string object_name) {
  const auto m = elements.size();
  require(m >= 1 && table.size() == m, "monoid table must be square and nonempty");
  std::vector<Morphism> mors;
  for (const auto& e : elements) mors.push_back({e, 0, 0});
  std::vector<MorId> comp(m * m);
  for (std::size_t g = 0; g < m; ++g) {
    require(table[g].size() == m, "monoid table must be square");
    for (std::size_t f = 0; f < m; ++f) comp[g * m + f] = table[g][f];
  }
  return FinCat({std::move(object_name)}, std::move(mors), {0}, std::move(comp));
}

FinCat cyclic_group_category(int order) {
  require(order >= 1, "group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int k = 0; k < order; ++k) {
    names.push_back(k == 0 ? "e" : "g" + std::to_string(k));
    for (int l = 0; l < order; ++l) table[k][l] = (k + l) % order;
  }
  return monoid_category(names, table);
}

FinCat poset_category(const std::vector<std::string>& objects, const std::vector<std::vector<bool>>& leq) {
  const auto n = objects.size();
  require(leq.size() == n, "relation must be |P| x |P|");
  CategoryBuilder b;
  for (const auto& o : objects) b.add_object(o);
  std::vector<std::vector<MorId>> arrow(n, std::vector<MorId>(n, kUndefined));
  for (std::size_t a = 0; a < n; ++a) {
    require(leq[a].size() == n && leq[a][a], "relation must be reflexive");
    for (std::size_t c = 0; c < n; ++c) {
      if (!leq[a][c]) continue;
      std::string name = a == c ? "id_" + objects[a] : objects[a] + "<" + objects[c];
      arrow[a][c] = b.add_morphism(name, static_cast<ObjId>(a), static_cast<ObjId>(c));
      if (a == c) b.set_identity(static_cast<ObjId>(a), arrow[a][c]);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) {
        if (arrow[a][c] == kUndefined || arrow[c][d] == kUndefined) continue;
        require(arrow[a][d] != kUndefined, "relation must be transitive");
        b.set_composite(arrow[c][d], arrow[a][c], arrow[a][d]);
      }
  return b.build();
}

FinCat opposite(const FinCat& c) {
  std::vector<Morphism> mors = c.morphisms();
  for (auto& f : mors) std::swap(f.src, f.tgt);
  const auto m = c.num_morphisms();
  std::vector<MorId> table(m * m);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) table[g * m + f] = c.compose(static_cast<MorId>(f), static_cast<MorId>(g));
  return FinCat(c.objects(), std::move(mors), c.identities(), std::move(table));
}

FinCat product(const FinCat& c, const FinCat& d) {
  const auto nc = c.num_objects(), nd = d.num_objects();
  const auto mc = c.num_morphisms(), md = d.num_morphisms();
  std::vector<std::string> objs;
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nd; ++b) objs.push_back(render_pair(c.object_name(a), d.object_name(b)));
  std::vector<Morphism> mors;
  for (std::size_t f = 0; f < mc; ++f)
    for (std::size_t g = 0; g < md; ++g) {
      mors.push_back({render_pair(c.morphism_name(f), d.morphism_name(g)),
                      static_cast<ObjId>(c.src(f) * nd + d.src(g)), static_cast<ObjId>(c.tgt(f) * nd + d.tgt(g))});
    }
  std::vector<MorId> ids;
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nd; ++b) ids.push_back(static_cast<MorId>(c.identity(a) * md + d.identity(b)));
  const auto m = mc * md;
  require(m == 0 || m <= kMaxTableEntries / m, "product too large for an explicit composition table");
  std::vector<MorId> table(m * m, kUndefined);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      MorId l = c.compose(static_cast<MorId>(x / md), static_cast<MorId>(y / md));
      MorId r = d.compose(static_cast<MorId>(x % md), static_cast<MorId>(y % md));
      if (l != kUndefined && r != kUndefined) table[x * m + y] = static_cast<MorId>(l * md + r);
    }
  return FinCat(std::move(objs), std::move(mors), std::move(ids), std::move(table));
}

namespace {

// Wide-or-full subcategory on selected objects and morphisms; selections must
// be closed under composition and identities.
FinCat restrict_to(const FinCat& c, const std::vector<bool>& keep_obj, const std::vector<bool>& keep_mor) {
  std::vector<ObjId> new_obj(c.num_objects(), kUndefined);
  std::vector<MorId> new_mor(c.num_morphisms(), kUndefined);
  std::vector<std::string> objs;
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    if (keep_obj[a]) {
      new_obj[a] = static_cast<ObjId>(objs.size());
      objs.push_back(c.object_name(a));
    }
  std::vector<Morphism> mors;
  std::vector<MorId> old_of;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f)
    if (keep_mor[f]) {
      new_mor[f] = static_cast<MorId>(mors.size());
      mors.push_back({c.morphism_name(f), new_obj[c.src(f)], new_obj[c.tgt(f)]});
      old_of.push_back(static_cast<MorId>(f));
    }
  std::vector<MorId> ids;
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    if (keep_obj[a]) ids.push_back(new_mor[c.identity(a)]);
  const auto m = mors.size();
  std::vector<MorId> table(m * m, kUndefined);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      MorId gf = c.compose(old_of[g], old_of[f]);
      if (gf != kUndefined) table[g * m + f] = new_mor[gf];
    }
  return FinCat(std::move(objs), std::move(mors), std::move(ids), std::move(table));
}

}  // namespace

FinCat full_subcategory(const FinCat& c, const std::vector<bool>& keep) {
  require(keep.size() == c.num_objects(), "selection must have one flag per object");
  std::vector<bool> keep_mor(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) keep_mor[f] = keep[c.src(f)] && keep[c.tgt(f)];
  return restrict_to(c, keep, keep_mor);
}

std::optional<MorId> inverse_of(const FinCat& c, MorId f) {
  for (MorId g : c.hom(c.tgt(f), c.src(f))) {
    if (c.compose(g, f) == c.identity(c.src(f)) && c.compose(f, g) == c.identity(c.tgt(f))) return g;
  }
  return std::nullopt;
}

FinCat iso_part(const FinCat& c) {
  std::vector<bool> keep_mor(c.num_morphisms());
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) keep_mor[f] = inverse_of(c, static_cast<MorId>(f)).has_value();
  return restrict_to(c, std::vector<bool>(c.num_objects(), true), keep_mor);
}

}  // namespace thma
