#include "thma/constructions.hpp"

#include <algorithm>
#include <set>

#include "thma/error.hpp"

namespace thma {

namespace {

// Replaces the element names of a pullback, keeping every table.
Pullback renamed(Pullback pb, std::vector<std::string> objects, const std::vector<std::string>& morphisms) {
  const FinCat& c = *pb.category;
  std::vector<Morphism> mors = c.morphisms();
  for (std::size_t f = 0; f < mors.size(); ++f) mors[f].name = morphisms[f];
  CatPtr cat = share(FinCat(std::move(objects), std::move(mors), c.identities(), c.composition_table()));
  pb.left = CatFunctor(cat, pb.left.cod(), pb.left.object_map(), pb.left.morphism_map());
  pb.right = CatFunctor(cat, pb.right.cod(), pb.right.object_map(), pb.right.morphism_map());
  pb.category = std::move(cat);
  return pb;
}

// The square (k = id, h) out of g in the arrow category.
MorId find_square(const ArrowCategory& arrows, MorId g, MorId g2, MorId k, MorId h) {
  for (MorId s : arrows.category->hom(g, g2)) {
    if (arrows.dom.on_morphism(s) == k && arrows.cod.on_morphism(s) == h) return s;
  }
  throw ConsistencyFault("expected commuting square is missing from the arrow category");
}

TCategory t_category_impl(const CatPtr& y, std::string_view leg_label) {
  const FinCat& c = *y;
  CatPtr base = share(disc(c.objects()));
  ArrowCategory arrows = arrow_category(y);
  Pullback pb = strict_pullback(disc_inclusion(base, y), arrows.dom);

  const FinCat& raw = *pb.category;
  std::vector<std::string> objs(raw.num_objects());
  std::vector<MorId> g_of(raw.num_objects());
  for (std::size_t o = 0; o < objs.size(); ++o) {
    g_of[o] = pb.right.on_object(static_cast<ObjId>(o));
    objs[o] = c.morphism_name(g_of[o]);
  }
  std::vector<std::string> mors(raw.num_morphisms());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    MorId square = pb.right.on_morphism(static_cast<MorId>(m));
    MorId h = arrows.cod.on_morphism(square);
    MorId g = arrows.category->src(square);
    mors[m] = render_tuple({{leg_label, c.morphism_name(h)}, {"g", c.morphism_name(g)}});
  }
  pb = renamed(std::move(pb), std::move(objs), mors);

  TCategory t;
  t.category = pb.category;
  t.base = base;
  t.dom = pb.left;
  t.cod = compose(arrows.cod, pb.right);
  t.morphism_of_object = g_of;
  t.object_of_morphism.assign(c.num_morphisms(), kUndefined);
  for (std::size_t o = 0; o < g_of.size(); ++o) t.object_of_morphism[g_of[o]] = static_cast<ObjId>(o);

  // sigma(a) = id_a; the unit at g is the triangle id_a -> g with leg g.
  const auto n = c.num_objects();
  std::vector<ObjId> s_obj(n);
  std::vector<MorId> s_mor(n);
  for (std::size_t a = 0; a < n; ++a) {
    s_obj[a] = t.object_of_morphism[c.identity(static_cast<ObjId>(a))];
    s_mor[base->identity(static_cast<ObjId>(a))] = t.category->identity(s_obj[a]);
  }
  CatFunctor section(base, t.category, std::move(s_obj), std::move(s_mor));
  std::vector<MorId> comps(t.category->num_objects());
  for (std::size_t o = 0; o < comps.size(); ++o) {
    MorId g = g_of[o];
    ObjId a = c.src(g);
    MorId square = find_square(arrows, c.identity(a), g, c.identity(a), g);
    comps[o] = pb.morphism_of(base->identity(a), square).value();
  }
  t.sigma.projection = t.dom;
  t.sigma.section = section;
  t.sigma.direction = AdjointSectionWitness::Direction::left;
  t.sigma.unit = NatTrans{compose(section, t.dom), identity_functor(t.category), std::move(comps)};
  return t;
}

}  // namespace

ValidationReport validate_witness(const AdjointSectionWitness& w) {
  ValidationReport report;
  auto& out = report.violations;
  const CatPtr& base = w.projection.cod();
  const CatPtr& total = w.projection.dom();
  if (!same_category(w.section.dom(), base) || !same_category(w.section.cod(), total)) {
    out.push_back("section does not run from the base to the total category");
    return report;
  }
  for (const auto& v : validate_functor(w.projection).violations) out.push_back("projection: " + v);
  for (const auto& v : validate_functor(w.section).violations) out.push_back("section: " + v);
  if (!(compose(w.projection, w.section) == identity_functor(base))) out.push_back("projection∘section is not the identity");

  const CatFunctor sp = compose(w.section, w.projection);
  const CatFunctor id = identity_functor(total);
  const bool left = w.direction == AdjointSectionWitness::Direction::left;
  const CatFunctor& want_source = left ? sp : id;
  const CatFunctor& want_target = left ? id : sp;
  if (!(w.unit.source == want_source) || !(w.unit.target == want_target)) {
    out.push_back("unit does not relate section∘projection and the identity in the stated direction");
    return report;
  }
  for (const auto& v : validate_nat_trans(w.unit).violations) out.push_back("unit: " + v);
  if (!out.empty()) return report;
  const NatTrans whiskered = whisker_left(w.projection, w.unit);
  for (std::size_t e = 0; e < whiskered.components.size(); ++e) {
    ObjId b = w.projection.on_object(static_cast<ObjId>(e));
    if (whiskered.components[e] != base->identity(b)) {
      out.push_back("unit is not vertical over the base at '" + total->object_name(static_cast<ObjId>(e)) + "'");
    }
  }
  return report;
}

TCategory t_category(const CatPtr& y) { return t_category_impl(y, "h"); }

std::optional<MorId> TwistedArrow::find(MorId g, MorId h, MorId k) const {
  const auto m = static_cast<std::uint64_t>(base_morphisms);
  auto it = index.find((static_cast<std::uint64_t>(g) * m + static_cast<std::uint64_t>(h)) * m + static_cast<std::uint64_t>(k));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TwistedArrow twisted_arrow(const CatPtr& y) {
  const FinCat& c = *y;
  const auto m = c.num_morphisms();
  TwistedArrow tw;
  tw.base_morphisms = m;
  const auto key = [m](MorId g, MorId h, MorId k) {
    return (static_cast<std::uint64_t>(g) * m + static_cast<std::uint64_t>(h)) * m + static_cast<std::uint64_t>(k);
  };

  const bool dense = m <= 128;
  std::vector<MorId> table_index(dense ? m * m * m : 0, kUndefined);
  const auto lookup = [&](MorId g, MorId h, MorId k) -> MorId {
    if (dense) return table_index[key(g, h, k)];
    auto it = tw.index.find(key(g, h, k));
    return it == tw.index.end() ? kUndefined : it->second;
  };

  std::vector<std::string> objs;
  for (const auto& g : c.morphisms()) objs.push_back(g.name);
  std::vector<Morphism> mors;
  std::vector<MorId> ids(m, kUndefined);
  for (std::size_t gi = 0; gi < m; ++gi) {
    const auto g = static_cast<MorId>(gi);
    for (std::size_t g2i = 0; g2i < m; ++g2i) {
      const auto g2 = static_cast<MorId>(g2i);
      for (MorId k : c.hom(c.src(g2), c.src(g)))
        for (MorId h : c.hom(c.tgt(g), c.tgt(g2))) {
          if (c.compose(h, c.compose(g, k)) != g2) continue;
          const auto idx = static_cast<MorId>(mors.size());
          if (g == g2 && c.is_identity(h) && c.is_identity(k)) ids[gi] = idx;
          tw.index[key(g, h, k)] = idx;
          if (dense) table_index[key(g, h, k)] = idx;
          tw.h_leg.push_back(h);
          tw.k_leg.push_back(k);
          mors.push_back({render_tuple({{"h", c.morphism_name(h)}, {"k", c.morphism_name(k)}, {"g", c.morphism_name(g)}}),
                          g, g2});
        }
    }
  }
  const auto tm = mors.size();
  std::vector<std::vector<std::size_t>> incoming(m);
  for (std::size_t a = 0; a < tm; ++a) incoming[mors[a].tgt].push_back(a);
  std::vector<MorId> table(tm * tm, kUndefined);
  for (std::size_t b = 0; b < tm; ++b)
    for (std::size_t a : incoming[mors[b].src]) {
      MorId h = c.compose(tw.h_leg[b], tw.h_leg[a]);
      MorId k = c.compose(tw.k_leg[a], tw.k_leg[b]);
      const MorId ba = lookup(mors[a].src, h, k);
      if (ba == kUndefined) throw ConsistencyFault("twisted arrow category not closed under composition");
      table[b * tm + a] = ba;
    }
  tw.category = share(FinCat(std::move(objs), std::move(mors), std::move(ids), std::move(table)));
  tw.opposite = share(opposite(c));

  std::vector<ObjId> cod_obj(m), dom_obj(m);
  for (std::size_t g = 0; g < m; ++g) {
    cod_obj[g] = c.tgt(static_cast<MorId>(g));
    dom_obj[g] = c.src(static_cast<MorId>(g));
  }
  tw.cod = CatFunctor(tw.category, y, std::move(cod_obj), tw.h_leg);
  tw.dom = CatFunctor(tw.category, tw.opposite, std::move(dom_obj), tw.k_leg);

  tw.t = t_category(y);
  const FinCat& t = *tw.t.category;
  std::vector<ObjId> inc_obj(t.num_objects());
  for (std::size_t o = 0; o < inc_obj.size(); ++o) inc_obj[o] = tw.t.morphism_of_object[o];
  std::vector<MorId> inc_mor(t.num_morphisms());
  for (std::size_t f = 0; f < inc_mor.size(); ++f) {
    MorId g = tw.t.morphism_of_object[t.src(static_cast<MorId>(f))];
    MorId h = tw.t.cod.on_morphism(static_cast<MorId>(f));
    inc_mor[f] = tw.find(g, h, c.identity(c.src(g))).value();
  }
  tw.include_t = CatFunctor(tw.t.category, tw.category, std::move(inc_obj), std::move(inc_mor));
  return tw;
}

TOpCategory t_op_category(const CatPtr& y) {
  const FinCat& c = *y;
  CatPtr yop = share(opposite(c));
  TCategory t = t_category_impl(yop, "k");
  TwistedArrow tw = twisted_arrow(y);

  TOpCategory out;
  out.category = t.category;
  out.cod = t.dom;
  out.tau = t.sigma;
  const FinCat& cat = *t.category;
  std::vector<ObjId> inc_obj(cat.num_objects());
  for (std::size_t o = 0; o < inc_obj.size(); ++o) inc_obj[o] = t.morphism_of_object[o];
  std::vector<MorId> inc_mor(cat.num_morphisms());
  for (std::size_t f = 0; f < inc_mor.size(); ++f) {
    MorId g = t.morphism_of_object[cat.src(static_cast<MorId>(f))];
    MorId k = t.cod.on_morphism(static_cast<MorId>(f));  // a morphism of Y^op, same index in Y
    inc_mor[f] = tw.find(g, c.identity(c.tgt(g)), k).value();
  }
  out.include = CatFunctor(out.category, tw.category, std::move(inc_obj), std::move(inc_mor));
  return out;
}

CommaSlice comma_slice(const CatFunctor& f) {
  const FinCat& y = *f.cod();
  const FinCat& x = *f.dom();
  CommaSlice out;
  out.t = t_category(f.cod());
  Pullback pb = strict_pullback(out.t.cod, f);
  const FinCat& raw = *pb.category;
  const FinCat& t = *out.t.category;
  std::vector<std::string> objs(raw.num_objects());
  for (std::size_t o = 0; o < objs.size(); ++o) {
    MorId eta = out.t.morphism_of_object[pb.left.on_object(static_cast<ObjId>(o))];
    objs[o] = render_tuple({{"eta", y.morphism_name(eta)}, {"b", x.object_name(pb.right.on_object(static_cast<ObjId>(o)))}});
  }
  std::vector<std::string> mors(raw.num_morphisms());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    MorId tm = pb.left.on_morphism(static_cast<MorId>(m));
    MorId eta = out.t.morphism_of_object[t.src(tm)];
    mors[m] = render_tuple({{"h", y.morphism_name(out.t.cod.on_morphism(tm))},
                            {"eta", y.morphism_name(eta)},
                            {"nu", x.morphism_name(pb.right.on_morphism(static_cast<MorId>(m)))}});
  }
  pb = renamed(std::move(pb), std::move(objs), mors);
  out.category = pb.category;
  out.proj_t = pb.left;
  out.proj_x = pb.right;
  out.rho = compose(out.t.dom, pb.left);
  out.pullback = std::move(pb);
  return out;
}

CatPtr comma_fiber(ObjId y, const CommaSlice& slice) {
  const auto n = slice.t.base->num_objects();
  if (y < 0 || static_cast<std::size_t>(y) >= n) throw InvalidArgument("comma_fiber: not an object of the codomain");
  std::vector<bool> keep(slice.category->num_objects());
  for (std::size_t o = 0; o < keep.size(); ++o) keep[o] = slice.rho.on_object(static_cast<ObjId>(o)) == y;
  return share(full_subcategory(*slice.category, keep));
}

CatPtr comma_fiber(ObjId y, const CatFunctor& f) { return comma_fiber(y, comma_slice(f)); }

SpanDiagram s_category(const CatFunctor& f) {
  const FinCat& y = *f.cod();
  const FinCat& x = *f.dom();
  SpanDiagram out;
  out.f = f;
  out.twisted = twisted_arrow(f.cod());
  const TwistedArrow& tw = out.twisted;
  Pullback pb = strict_pullback(tw.cod, f);
  const FinCat& raw = *pb.category;
  std::vector<std::string> objs(raw.num_objects());
  for (std::size_t o = 0; o < objs.size(); ++o) {
    objs[o] = render_tuple({{"g", y.morphism_name(pb.left.on_object(static_cast<ObjId>(o)))},
                            {"x", x.object_name(pb.right.on_object(static_cast<ObjId>(o)))}});
  }
  std::vector<std::string> mors(raw.num_morphisms());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    MorId tm = pb.left.on_morphism(static_cast<MorId>(m));
    mors[m] = render_tuple({{"h", y.morphism_name(tw.h_leg[tm])},
                            {"k", y.morphism_name(tw.k_leg[tm])},
                            {"g", y.morphism_name(tw.category->src(tm))},
                            {"nu", x.morphism_name(pb.right.on_morphism(static_cast<MorId>(m)))}});
  }
  pb = renamed(std::move(pb), std::move(objs), mors);
  out.category = pb.category;
  out.f_hat = pb.left;
  out.q = pb.right;
  out.p = compose(tw.dom, out.f_hat);
  out.pullback = std::move(pb);

  if (!(compose(f, out.q) == compose(tw.cod, out.f_hat))) {
    throw ConsistencyFault("S(f): square f∘Q = cod∘f_hat does not commute");
  }
  if (!(out.p == compose(identity_functor(tw.opposite), compose(tw.dom, out.f_hat)))) {
    throw ConsistencyFault("S(f): square P = dom∘f_hat does not commute");
  }
  return out;
}

std::vector<std::string> cover_problems(const CoverData& cover) {
  std::vector<std::string> problems;
  std::set<std::string> base(cover.base.begin(), cover.base.end());
  if (base.size() != cover.base.size()) problems.push_back("base has repeated points");
  std::set<std::string> names;
  std::set<std::string> covered;
  for (const auto& [name, subset] : cover.pieces) {
    if (!names.insert(name).second) problems.push_back("piece '" + name + "' is repeated");
    for (const auto& point : subset) {
      if (!base.count(point)) problems.push_back("piece '" + name + "' contains '" + point + "' outside the base");
      covered.insert(point);
    }
  }
  for (const auto& point : cover.base) {
    if (!covered.count(point)) problems.push_back("point '" + point + "' is not covered");
  }
  return problems;
}

CechCategory cech_category(const CoverData& cover) {
  auto problems = cover_problems(cover);
  if (!problems.empty()) throw InvalidArgument("not a cover: " + problems.front());

  CechCategory out;
  const auto npoints = cover.base.size();
  std::vector<std::vector<bool>> member(cover.pieces.size(), std::vector<bool>(npoints));
  for (std::size_t i = 0; i < cover.pieces.size(); ++i)
    for (const auto& point : cover.pieces[i].second) {
      auto pos = std::find(cover.base.begin(), cover.base.end(), point) - cover.base.begin();
      member[i][pos] = true;
    }
  CategoryBuilder b;
  for (std::size_t i = 0; i < cover.pieces.size(); ++i)
    for (std::size_t m = 0; m < npoints; ++m) {
      if (!member[i][m]) continue;
      b.add_object(render_tuple({{"i", cover.pieces[i].first}, {"m", cover.base[m]}}));
      out.piece_of_object.push_back(static_cast<int>(i));
      out.point_of_object.push_back(static_cast<int>(m));
    }
  const auto n = out.piece_of_object.size();
  std::vector<std::vector<MorId>> arrow(n, std::vector<MorId>(n, kUndefined));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      if (out.point_of_object[a] != out.point_of_object[c]) continue;
      arrow[a][c] = b.add_morphism(render_tuple({{"i", cover.pieces[out.piece_of_object[a]].first},
                                                 {"j", cover.pieces[out.piece_of_object[c]].first},
                                                 {"m", cover.base[out.point_of_object[a]]}}),
                                   static_cast<ObjId>(a), static_cast<ObjId>(c));
      if (a == c) b.set_identity(static_cast<ObjId>(a), arrow[a][c]);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) {
        if (arrow[a][c] != kUndefined && arrow[c][d] != kUndefined) b.set_composite(arrow[c][d], arrow[a][c], arrow[a][d]);
      }
  out.category = share(b.build());
  out.base = share(disc(cover.base));
  std::vector<ObjId> pi_obj(n);
  for (std::size_t a = 0; a < n; ++a) pi_obj[a] = out.point_of_object[a];
  std::vector<MorId> pi_mor(out.category->num_morphisms());
  for (std::size_t f = 0; f < pi_mor.size(); ++f) {
    pi_mor[f] = out.base->identity(pi_obj[out.category->src(static_cast<MorId>(f))]);
  }
  out.pi = CatFunctor(out.category, out.base, std::move(pi_obj), std::move(pi_mor));
  return out;
}

Fattening fatten(const CatPtr& y, const Surjection& p) {
  if (p.image.size() != p.elements.size()) throw InvalidArgument("fatten: surjection must map every element");
  std::set<std::string> distinct(p.elements.begin(), p.elements.end());
  if (distinct.size() != p.elements.size()) throw InvalidArgument("fatten: repeated element");
  std::vector<bool> hit(y->num_objects());
  for (ObjId a : p.image) {
    if (a < 0 || static_cast<std::size_t>(a) >= hit.size()) throw InvalidArgument("fatten: image is not an object");
    hit[a] = true;
  }
  for (std::size_t a = 0; a < hit.size(); ++a)
    if (!hit[a]) throw InvalidArgument("fatten: map is not surjective (misses '" + y->object_name(static_cast<ObjId>(a)) + "')");

  CatPtr cs = share(codisc(p.elements));
  CatPtr cy = share(codisc(y->objects()));
  Pullback pb = strict_pullback(codisc_map(cs, cy, p.image), to_codisc(y, cy));
  const FinCat& raw = *pb.category;
  std::vector<std::string> objs(raw.num_objects());
  for (std::size_t o = 0; o < objs.size(); ++o) objs[o] = p.elements[pb.left.on_object(static_cast<ObjId>(o))];
  std::vector<std::string> mors(raw.num_morphisms());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    MorId pair = pb.left.on_morphism(static_cast<MorId>(m));
    mors[m] = render_tuple({{"from", p.elements[cs->src(pair)]},
                            {"to", p.elements[cs->tgt(pair)]},
                            {"g", y->morphism_name(pb.right.on_morphism(static_cast<MorId>(m)))}});
  }
  pb = renamed(std::move(pb), std::move(objs), mors);
  return {pb.category, pb.right};
}

namespace {

ComparisonCheck check_comparison(const Pullback& pb, const CatFunctor& f, const CatFunctor& g, const CatFunctor& to_left,
                                 const CatFunctor& to_right) {
  ComparisonCheck out;
  auto mediator = pullback_mediator(pb, f, g, to_left, to_right);
  if (!mediator) {
    out.detail = "cone does not commute";
    return out;
  }
  const auto& u = *mediator;
  const bool objects_ok = u.injective_on_objects() && u.dom()->num_objects() == u.cod()->num_objects();
  const bool morphisms_ok = u.injective_on_morphisms() && u.dom()->num_morphisms() == u.cod()->num_morphisms();
  out.passed = objects_ok && morphisms_ok;
  if (!objects_ok) {
    out.detail = "comparison is not bijective on objects";
  } else if (!morphisms_ok) {
    out.detail = "comparison is not bijective on morphisms (" + std::to_string(u.dom()->num_morphisms()) + " vs " +
                 std::to_string(u.cod()->num_morphisms()) + ")";
  } else {
    out.detail = "comparison is an isomorphism";
  }
  out.comparison = std::move(mediator);
  return out;
}

}  // namespace

ComparisonCheck codisc_decomposition_check(const CatFunctor& f) {
  CatPtr cx = share(codisc(f.dom()->objects()));
  CatPtr cy = share(codisc(f.cod()->objects()));
  CatFunctor left = codisc_map(cx, cy, f.object_map());
  CatFunctor right = to_codisc(f.cod(), cy);
  Pullback pb = strict_pullback(left, right);
  return check_comparison(pb, left, right, to_codisc(f.dom(), cx), f);
}

ComparisonCheck slice_decomposition_check(const CatFunctor& f) {
  CommaSlice slice = comma_slice(f);
  CatPtr cx = share(codisc(f.dom()->objects()));
  CatPtr cy = share(codisc(f.cod()->objects()));
  CatFunctor left = codisc_map(cx, cy, f.object_map());
  CatFunctor right = compose(to_codisc(f.cod(), cy), slice.t.cod);
  Pullback pb = strict_pullback(left, right);
  return check_comparison(pb, left, right, compose(to_codisc(f.dom(), cx), slice.proj_x), slice.proj_t);
}

}  // namespace thma
