#include "thma/functor.hpp"

#include <algorithm>

#include "thma/error.hpp"

namespace thma {

namespace {

std::uint64_t pack(std::int64_t a, std::int64_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

bool injective(const std::vector<std::int32_t>& map) {
  std::vector<std::int32_t> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace

CatFunctor::CatFunctor(CatPtr dom, CatPtr cod, std::vector<ObjId> obj_map, std::vector<MorId> mor_map)
    : dom_(std::move(dom)), cod_(std::move(cod)), obj_map_(std::move(obj_map)), mor_map_(std::move(mor_map)) {
  if (!dom_ || !cod_) throw InvalidArgument("functor needs a domain and a codomain");
  if (obj_map_.size() != dom_->num_objects() || mor_map_.size() != dom_->num_morphisms()) {
    throw InvalidArgument("functor tables must cover the domain");
  }
  for (ObjId a : obj_map_)
    if (a < 0 || static_cast<std::size_t>(a) >= cod_->num_objects()) throw InvalidArgument("object image out of range");
  for (MorId f : mor_map_)
    if (f < 0 || static_cast<std::size_t>(f) >= cod_->num_morphisms()) throw InvalidArgument("morphism image out of range");
}

bool CatFunctor::injective_on_objects() const { return injective(obj_map_); }
bool CatFunctor::injective_on_morphisms() const { return injective(mor_map_); }

bool CatFunctor::bijective() const {
  return injective_on_objects() && injective_on_morphisms() && obj_map_.size() == cod_->num_objects() &&
         mor_map_.size() == cod_->num_morphisms();
}

bool operator==(const CatFunctor& a, const CatFunctor& b) {
  return same_category(a.dom_, b.dom_) && same_category(a.cod_, b.cod_) && a.obj_map_ == b.obj_map_ &&
         a.mor_map_ == b.mor_map_;
}

bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && *a == *b); }

CatFunctor identity_functor(const CatPtr& c) {
  std::vector<ObjId> objs(c->num_objects());
  std::vector<MorId> mors(c->num_morphisms());
  for (std::size_t a = 0; a < objs.size(); ++a) objs[a] = static_cast<ObjId>(a);
  for (std::size_t f = 0; f < mors.size(); ++f) mors[f] = static_cast<MorId>(f);
  return CatFunctor(c, c, std::move(objs), std::move(mors));
}

CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
  if (!same_category(f.cod(), g.dom())) throw InvalidArgument("cannot compose functors: codomain/domain mismatch");
  std::vector<ObjId> objs(f.object_map().size());
  std::vector<MorId> mors(f.morphism_map().size());
  for (std::size_t a = 0; a < objs.size(); ++a) objs[a] = g.on_object(f.on_object(static_cast<ObjId>(a)));
  for (std::size_t m = 0; m < mors.size(); ++m) mors[m] = g.on_morphism(f.on_morphism(static_cast<MorId>(m)));
  return CatFunctor(f.dom(), g.cod(), std::move(objs), std::move(mors));
}

CatFunctor to_terminal(const CatPtr& c) {
  return constant_functor(c, share(terminal_category()), 0);
}

CatFunctor constant_functor(const CatPtr& c, const CatPtr& d, ObjId at) {
  return CatFunctor(c, d, std::vector<ObjId>(c->num_objects(), at),
                    std::vector<MorId>(c->num_morphisms(), d->identity(at)));
}

ValidationReport validate_functor(const CatFunctor& f) {
  ValidationReport report;
  const FinCat& c = *f.dom();
  const FinCat& d = *f.cod();
  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    if (f.on_morphism(c.identity(a)) != d.identity(f.on_object(a))) {
      report.violations.push_back("identity of '" + c.object_name(a) + "' not preserved");
    }
  }
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    MorId fm = f.on_morphism(m);
    if (d.src(fm) != f.on_object(c.src(m))) report.violations.push_back("source of '" + c.morphism_name(m) + "' not preserved");
    if (d.tgt(fm) != f.on_object(c.tgt(m))) report.violations.push_back("target of '" + c.morphism_name(m) + "' not preserved");
  }
  if (!report.ok()) return report;
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    for (MorId g : c.outgoing(c.tgt(m))) {
      MorId gm = c.compose(g, m);
      if (gm == kUndefined) continue;
      if (f.on_morphism(gm) != d.compose(f.on_morphism(g), f.on_morphism(m))) {
        report.violations.push_back("composite (" + c.morphism_name(g) + ", " + c.morphism_name(m) + ") not preserved");
      }
    }
  }
  return report;
}

NatTrans identity_transformation(const CatFunctor& f) {
  std::vector<MorId> comps(f.dom()->num_objects());
  for (std::size_t a = 0; a < comps.size(); ++a) comps[a] = f.cod()->identity(f.on_object(static_cast<ObjId>(a)));
  return {f, f, std::move(comps)};
}

NatTrans whisker_left(const CatFunctor& p, const NatTrans& alpha) {
  std::vector<MorId> comps(alpha.components.size());
  for (std::size_t a = 0; a < comps.size(); ++a) comps[a] = p.on_morphism(alpha.components[a]);
  return {compose(p, alpha.source), compose(p, alpha.target), std::move(comps)};
}

ValidationReport validate_nat_trans(const NatTrans& alpha) {
  ValidationReport report;
  const auto& F = alpha.source;
  const auto& G = alpha.target;
  if (!same_category(F.dom(), G.dom()) || !same_category(F.cod(), G.cod())) {
    throw InvalidArgument("natural transformation between functors with different domains or codomains");
  }
  const FinCat& c = *F.dom();
  const FinCat& d = *F.cod();
  if (alpha.components.size() != c.num_objects()) throw InvalidArgument("one component per object required");
  for (ObjId a = 0; a < static_cast<ObjId>(c.num_objects()); ++a) {
    MorId comp = alpha.components[a];
    if (comp < 0 || static_cast<std::size_t>(comp) >= d.num_morphisms()) {
      report.violations.push_back("component at '" + c.object_name(a) + "' is not a morphism");
      continue;
    }
    if (d.src(comp) != F.on_object(a) || d.tgt(comp) != G.on_object(a)) {
      report.violations.push_back("component at '" + c.object_name(a) + "' has the wrong source or target");
    }
  }
  if (!report.ok()) return report;
  for (MorId h = 0; h < static_cast<MorId>(c.num_morphisms()); ++h) {
    MorId lhs = d.compose(G.on_morphism(h), alpha.components[c.src(h)]);
    MorId rhs = d.compose(alpha.components[c.tgt(h)], F.on_morphism(h));
    if (lhs != rhs) report.violations.push_back("naturality fails at '" + c.morphism_name(h) + "'");
  }
  return report;
}

CatFunctor nat_trans_as_functor(const NatTrans& alpha) {
  const auto& F = alpha.source;
  const auto& G = alpha.target;
  const FinCat& c = *F.dom();
  const FinCat& d = *F.cod();
  CatPtr two = share(interval_category());
  CatPtr cyl = share(product(c, *two));
  // interval: objects 0, 1; morphisms id0 = 0, id1 = 1, u = 2.
  std::vector<ObjId> objs(cyl->num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    objs[2 * a] = F.on_object(static_cast<ObjId>(a));
    objs[2 * a + 1] = G.on_object(static_cast<ObjId>(a));
  }
  std::vector<MorId> mors(cyl->num_morphisms());
  for (std::size_t h = 0; h < c.num_morphisms(); ++h) {
    const auto hid = static_cast<MorId>(h);
    mors[3 * h + 0] = F.on_morphism(hid);
    mors[3 * h + 1] = G.on_morphism(hid);
    mors[3 * h + 2] = d.compose(G.on_morphism(hid), alpha.components[c.src(hid)]);
  }
  return CatFunctor(cyl, F.cod(), std::move(objs), std::move(mors));
}

// ---------------------------------------------------------------------------

ArrowCategory arrow_category(const CatPtr& cp) {
  const FinCat& c = *cp;
  const auto m = c.num_morphisms();
  std::vector<std::string> objs;
  for (const auto& f : c.morphisms()) objs.push_back(f.name);

  struct Square {
    MorId from, to, k, h;
  };
  std::vector<Square> squares;
  std::vector<MorId> ids(m, kUndefined);
  for (std::size_t g = 0; g < m; ++g) {
    const auto gi = static_cast<MorId>(g);
    for (std::size_t g2 = 0; g2 < m; ++g2) {
      const auto g2i = static_cast<MorId>(g2);
      for (MorId k : c.hom(c.src(gi), c.src(g2i)))
        for (MorId h : c.hom(c.tgt(gi), c.tgt(g2i))) {
          if (c.compose(g2i, k) != c.compose(h, gi)) continue;
          if (g == g2 && c.is_identity(k) && c.is_identity(h)) ids[g] = static_cast<MorId>(squares.size());
          squares.push_back({gi, g2i, k, h});
        }
    }
  }
  std::vector<Morphism> mors;
  const auto key = [m](MorId from, MorId to, MorId k, MorId h) {
    const std::uint64_t w = m;
    return ((static_cast<std::uint64_t>(from) * w + static_cast<std::uint64_t>(to)) * w + static_cast<std::uint64_t>(k)) * w +
           static_cast<std::uint64_t>(h);
  };
  const bool dense = m <= 24;
  std::unordered_map<std::uint64_t, MorId> index;
  std::vector<MorId> dense_index(dense ? m * m * m * m : 0, kUndefined);
  std::vector<std::vector<std::size_t>> incoming(m);
  for (std::size_t s = 0; s < squares.size(); ++s) {
    const auto& sq = squares[s];
    mors.push_back({render_tuple({{"k", c.morphism_name(sq.k)}, {"h", c.morphism_name(sq.h)}, {"g", c.morphism_name(sq.from)}}),
                    sq.from, sq.to});
    if (dense) dense_index[key(sq.from, sq.to, sq.k, sq.h)] = static_cast<MorId>(s);
    else index[key(sq.from, sq.to, sq.k, sq.h)] = static_cast<MorId>(s);
    incoming[sq.to].push_back(s);
  }
  const auto sm = squares.size();
  std::vector<MorId> table(sm * sm, kUndefined);
  for (std::size_t t = 0; t < sm; ++t)
    for (std::size_t s : incoming[squares[t].from]) {
      MorId k = c.compose(squares[t].k, squares[s].k);
      MorId h = c.compose(squares[t].h, squares[s].h);
      MorId ts = kUndefined;
      if (dense) {
        ts = dense_index[key(squares[s].from, squares[t].to, k, h)];
      } else if (auto it = index.find(key(squares[s].from, squares[t].to, k, h)); it != index.end()) {
        ts = it->second;
      }
      if (ts == kUndefined) throw ConsistencyFault("arrow category not closed under composition");
      table[t * sm + s] = ts;
    }
  CatPtr arrows = share(FinCat(std::move(objs), std::move(mors), std::move(ids), std::move(table)));

  std::vector<ObjId> dom_obj(m), cod_obj(m);
  for (std::size_t g = 0; g < m; ++g) {
    dom_obj[g] = c.src(static_cast<MorId>(g));
    cod_obj[g] = c.tgt(static_cast<MorId>(g));
  }
  std::vector<MorId> dom_mor(sm), cod_mor(sm);
  for (std::size_t s = 0; s < sm; ++s) {
    dom_mor[s] = squares[s].k;
    cod_mor[s] = squares[s].h;
  }
  return {arrows, CatFunctor(arrows, cp, std::move(dom_obj), std::move(dom_mor)),
          CatFunctor(arrows, cp, std::move(cod_obj), std::move(cod_mor))};
}

std::optional<ObjId> Pullback::object_of(ObjId a, ObjId b) const {
  auto it = object_index.find(pack(a, b));
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> Pullback::morphism_of(MorId f, MorId g) const {
  auto it = morphism_index.find(pack(f, g));
  if (it == morphism_index.end()) return std::nullopt;
  return it->second;
}

Pullback strict_pullback(const CatFunctor& f, const CatFunctor& g) {
  if (!same_category(f.cod(), g.cod())) throw InvalidArgument("strict pullback needs a common codomain");
  const FinCat& a = *f.dom();
  const FinCat& b = *g.dom();
  Pullback pb;

  // Group the right-hand side by image so the enumeration stays output-sized.
  std::vector<std::vector<ObjId>> right_objs(f.cod()->num_objects());
  std::vector<std::size_t> obj_slot(b.num_objects());
  for (ObjId y = 0; y < static_cast<ObjId>(b.num_objects()); ++y) {
    auto& group = right_objs[g.on_object(y)];
    obj_slot[y] = group.size();
    group.push_back(y);
  }
  std::vector<std::vector<MorId>> right_mors(f.cod()->num_morphisms());
  std::vector<std::size_t> mor_slot(b.num_morphisms());
  for (MorId y = 0; y < static_cast<MorId>(b.num_morphisms()); ++y) {
    auto& group = right_mors[g.on_morphism(y)];
    mor_slot[y] = group.size();
    group.push_back(y);
  }

  // Pairs are numbered left-major, so (x, y) sits at first[x] + slot[y].
  std::vector<std::string> objs;
  std::vector<ObjId> left_obj, right_obj;
  std::vector<std::size_t> first_obj(a.num_objects());
  for (ObjId x = 0; x < static_cast<ObjId>(a.num_objects()); ++x) {
    first_obj[x] = objs.size();
    for (ObjId y : right_objs[f.on_object(x)]) {
      pb.object_index[pack(x, y)] = static_cast<ObjId>(objs.size());
      objs.push_back(render_pair(a.object_name(x), b.object_name(y)));
      left_obj.push_back(x);
      right_obj.push_back(y);
    }
  }
  const auto object_at = [&](ObjId x, ObjId y) { return static_cast<ObjId>(first_obj[x] + obj_slot[y]); };
  std::vector<Morphism> mors;
  std::vector<MorId> left_mor, right_mor;
  std::vector<std::size_t> first_mor(a.num_morphisms());
  for (MorId x = 0; x < static_cast<MorId>(a.num_morphisms()); ++x) {
    first_mor[x] = mors.size();
    for (MorId y : right_mors[f.on_morphism(x)]) {
      pb.morphism_index[pack(x, y)] = static_cast<MorId>(mors.size());
      mors.push_back({render_pair(a.morphism_name(x), b.morphism_name(y)), object_at(a.src(x), b.src(y)),
                      object_at(a.tgt(x), b.tgt(y))});
      left_mor.push_back(x);
      right_mor.push_back(y);
    }
  }
  const auto morphism_at = [&](MorId x, MorId y) { return static_cast<MorId>(first_mor[x] + mor_slot[y]); };
  std::vector<MorId> ids;
  for (std::size_t o = 0; o < objs.size(); ++o) ids.push_back(morphism_at(a.identity(left_obj[o]), b.identity(right_obj[o])));
  const auto m = mors.size();
  std::vector<MorId> table(m * m, kUndefined);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      if (mors[s].src != mors[t].tgt) continue;
      table[s * m + t] = morphism_at(a.compose(left_mor[s], left_mor[t]), b.compose(right_mor[s], right_mor[t]));
    }
  pb.category = share(FinCat(std::move(objs), std::move(mors), std::move(ids), std::move(table)));
  pb.left = CatFunctor(pb.category, f.dom(), std::move(left_obj), std::move(left_mor));
  pb.right = CatFunctor(pb.category, g.dom(), std::move(right_obj), std::move(right_mor));
  return pb;
}

std::optional<CatFunctor> pullback_mediator(const Pullback& pb, const CatFunctor& f, const CatFunctor& g,
                                            const CatFunctor& to_left, const CatFunctor& to_right) {
  if (!same_category(to_left.dom(), to_right.dom())) throw InvalidArgument("cone legs need a common domain");
  if (!(compose(f, to_left) == compose(g, to_right))) return std::nullopt;
  const FinCat& t = *to_left.dom();
  std::vector<ObjId> objs(t.num_objects());
  std::vector<MorId> mors(t.num_morphisms());
  for (ObjId x = 0; x < static_cast<ObjId>(t.num_objects()); ++x) {
    objs[x] = pb.object_of(to_left.on_object(x), to_right.on_object(x)).value();
  }
  for (MorId x = 0; x < static_cast<MorId>(t.num_morphisms()); ++x) {
    mors[x] = pb.morphism_of(to_left.on_morphism(x), to_right.on_morphism(x)).value();
  }
  CatFunctor u(to_left.dom(), pb.category, std::move(objs), std::move(mors));
  if (!(compose(pb.left, u) == to_left) || !(compose(pb.right, u) == to_right)) {
    throw ConsistencyFault("pullback mediator does not factor the cone");
  }
  return u;
}

CatFunctor codisc_map(const CatPtr& source, const CatPtr& target, const std::vector<ObjId>& on_objects) {
  const auto n = source->num_objects();
  const auto t = target->num_objects();
  if (on_objects.size() != n) throw InvalidArgument("map must be total on the source set");
  std::vector<MorId> mors(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mors[a * n + b] = static_cast<MorId>(on_objects[a] * t + on_objects[b]);
  return CatFunctor(source, target, on_objects, std::move(mors));
}

CatFunctor to_codisc(const CatPtr& c, const CatPtr& codisc_objects) {
  const auto n = c->num_objects();
  if (codisc_objects->num_objects() != n) throw InvalidArgument("codiscrete category must share the object set");
  std::vector<ObjId> objs(n);
  for (std::size_t a = 0; a < n; ++a) objs[a] = static_cast<ObjId>(a);
  std::vector<MorId> mors(c->num_morphisms());
  for (std::size_t f = 0; f < mors.size(); ++f) {
    mors[f] = static_cast<MorId>(c->src(static_cast<MorId>(f)) * n + c->tgt(static_cast<MorId>(f)));
  }
  return CatFunctor(c, codisc_objects, std::move(objs), std::move(mors));
}

CatFunctor disc_inclusion(const CatPtr& discrete, const CatPtr& c) {
  const auto n = c->num_objects();
  if (discrete->num_objects() != n) throw InvalidArgument("discrete category must share the object set");
  std::vector<ObjId> objs(n);
  std::vector<MorId> mors(n);
  for (std::size_t a = 0; a < n; ++a) {
    objs[a] = static_cast<ObjId>(a);
    mors[discrete->identity(static_cast<ObjId>(a))] = c->identity(static_cast<ObjId>(a));
  }
  return CatFunctor(discrete, c, std::move(objs), std::move(mors));
}

}  // namespace thma
