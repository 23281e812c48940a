#include "thma/verifiers.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "thma/error.hpp"

namespace thma {

FullyFaithfulVerdict is_fully_faithful(const CatFunctor& f) {
  const FinCat& x = *f.dom();
  const FinCat& y = *f.cod();
  FullyFaithfulVerdict v;

  std::vector<bool> seen(y.num_morphisms());
  for (std::size_t a = 0; a < x.num_objects(); ++a)
    for (std::size_t b = 0; b < x.num_objects(); ++b) {
      const auto src = x.hom(static_cast<ObjId>(a), static_cast<ObjId>(b));
      const auto tgt = y.hom(f.on_object(static_cast<ObjId>(a)), f.on_object(static_cast<ObjId>(b)));
      bool injective = true;
      for (MorId g : src) {
        const MorId fg = f.on_morphism(g);
        if (seen[fg]) injective = false;
        seen[fg] = true;
      }
      for (MorId g : src) seen[f.on_morphism(g)] = false;
      const bool surjective = injective && src.size() == tgt.size();
      if (injective && surjective) continue;
      v.failures.push_back(x.object_name(static_cast<ObjId>(a)) + "," + x.object_name(static_cast<ObjId>(b)) + ": " +
                           std::to_string(src.size()) + " morphisms over " + std::to_string(tgt.size()) +
                           (injective ? "" : ", not injective"));
    }
  v.holds = v.failures.empty();

  // Materialize (X0 x X0) x_{Y0 x Y0} Y1 and compare it with X1.
  std::map<std::tuple<ObjId, ObjId, MorId>, std::size_t> pullback;
  for (std::size_t a = 0; a < x.num_objects(); ++a)
    for (std::size_t b = 0; b < x.num_objects(); ++b)
      for (MorId g : y.hom(f.on_object(static_cast<ObjId>(a)), f.on_object(static_cast<ObjId>(b))))
        pullback.emplace(std::tuple{static_cast<ObjId>(a), static_cast<ObjId>(b), g}, 0);
  bool bijective = true;
  for (std::size_t g = 0; g < x.num_morphisms(); ++g) {
    const auto gi = static_cast<MorId>(g);
    auto it = pullback.find({x.src(gi), x.tgt(gi), f.on_morphism(gi)});
    if (it == pullback.end() || ++it->second > 1) bijective = false;
  }
  for (const auto& [key, hits] : pullback)
    if (hits != 1) bijective = false;
  v.pullback_agrees = bijective == v.holds;
  return v;
}

EssentialSurjectivityVerdict is_essentially_surjective(const CatFunctor& f) {
  const FinCat& y = *f.cod();
  const FinCat iso = iso_part(y);
  EssentialSurjectivityVerdict v;
  std::vector<bool> hit(y.num_objects());
  for (std::size_t x = 0; x < f.dom()->num_objects(); ++x)
    for (const auto& g : iso.morphisms()) {
      if (g.src != f.on_object(static_cast<ObjId>(x))) continue;
      ++v.pullback_size;
      hit[g.tgt] = true;
    }
  for (std::size_t b = 0; b < hit.size(); ++b)
    if (!hit[b]) v.missing.push_back(y.object_name(static_cast<ObjId>(b)));
  v.holds = v.missing.empty();
  v.justification = "Y0 is discrete: a surjection onto it has a global section and every cover is numerable";
  return v;
}

const char* kind_name(ContractibilityCertificate::Kind k) {
  switch (k) {
    case ContractibilityCertificate::Kind::initial_object: return "initial-object";
    case ContractibilityCertificate::Kind::terminal_object: return "terminal-object";
    case ContractibilityCertificate::Kind::acyclic_connected: return "acyclic-and-connected";
    case ContractibilityCertificate::Kind::refused: return "refused";
  }
  return "refused";
}

namespace {

bool proxy_holds(const HomologyReport& r) {
  if (r.groups.empty() || !(r.groups[0] == HomologyGroup{1, {}})) return false;
  for (int k = 1; k <= r.certified_through; ++k)
    if (!r.groups[k].trivial()) return false;
  return true;
}

// The universal object with the smallest name.
std::optional<ObjId> find_universal(const FinCat& c, bool initial) {
  std::optional<ObjId> best;
  for (std::size_t i = 0; i < c.num_objects(); ++i) {
    bool ok = true;
    for (std::size_t b = 0; b < c.num_objects() && ok; ++b) {
      const auto n = initial ? c.hom(static_cast<ObjId>(i), static_cast<ObjId>(b)).size()
                             : c.hom(static_cast<ObjId>(b), static_cast<ObjId>(i)).size();
      ok = n == 1;
    }
    if (ok && (!best || c.object_name(static_cast<ObjId>(i)) < c.object_name(*best))) best = static_cast<ObjId>(i);
  }
  return best;
}

}  // namespace

ContractibilityCertificate certify_contractible(const CatPtr& c, int N, std::size_t budget) {
  ContractibilityCertificate cert;
  if (c->num_objects() == 0) {
    cert.detail = "empty category";
    return cert;
  }
  if (auto i = find_universal(*c, true)) {
    cert.kind = ContractibilityCertificate::Kind::initial_object;
    cert.witness = i;
  } else if (auto t = find_universal(*c, false)) {
    cert.kind = ContractibilityCertificate::Kind::terminal_object;
    cert.witness = t;
  }
  cert.strong = cert.witness.has_value();
  if (cert.witness) cert.witness_name = c->object_name(*cert.witness);

  try {
    cert.homology = simplicial_homology(*nerve(c, N, budget).sset);
    cert.proxy_confirms = proxy_holds(*cert.homology);
  } catch (const BudgetExceeded& e) {
    if (!cert.strong) throw;
    cert.detail = std::string("homology proxy skipped: ") + e.what();
  }
  if (cert.strong) {
    if (cert.homology && !cert.proxy_confirms) throw ConsistencyFault("object witness contradicts the homology proxy");
    return cert;
  }
  if (cert.proxy_confirms) {
    cert.kind = ContractibilityCertificate::Kind::acyclic_connected;
    cert.detail = "H_0 = Z and H_k = 0 for 1 <= k <= " + std::to_string(cert.homology->certified_through);
  } else {
    cert.detail = "no initial or terminal object and the nerve is not acyclic";
  }
  return cert;
}

namespace {

void require_depth(int N) {
  if (N < 2) throw InvalidArgument("theorem checks need truncation at least 2");
}

FiberCertificate fiber_certificate(const std::string& name, const CatPtr& fiber, int N, std::size_t budget) {
  return {name, fiber->num_objects(), fiber->num_morphisms(), certify_contractible(fiber, N, budget)};
}

}  // namespace

TheoremVerdict theorem_a_check(const CatFunctor& f, int N, std::size_t budget) {
  require_depth(N);
  TheoremVerdict v;
  const CommaSlice slice = comma_slice(f);
  bool weak = false;
  v.hypothesis = true;
  for (std::size_t y = 0; y < f.cod()->num_objects(); ++y) {
    const auto& name = f.cod()->object_name(static_cast<ObjId>(y));
    v.fibers.push_back(fiber_certificate(name, comma_fiber(static_cast<ObjId>(y), slice), N, budget));
    const auto& cert = v.fibers.back().certificate;
    v.hypothesis = v.hypothesis && cert.certified();
    weak = weak || cert.kind == ContractibilityCertificate::Kind::acyclic_connected;
  }
  v.theorem = weak ? "A-prime" : "A";
  v.hypotheses.push_back({"every fibre y|f contractible", v.hypothesis});
  if (weak) v.notes.push_back("a fibre is certified only by the homology proxy; conclusion read as a weak equivalence");
  v.conclusion = is_homology_equivalence(nerve_map(f, N, budget), N - 2);
  return v;
}

TheoremVerdict morita_check(const CatFunctor& f, int N, std::size_t budget) {
  require_depth(N);
  TheoremVerdict v;
  v.theorem = "Morita";
  const auto ff = is_fully_faithful(f);
  const auto eso = is_essentially_surjective(f);
  v.hypotheses.push_back({"fully faithful", ff.holds});
  v.hypotheses.push_back({"essentially surjective", eso.holds});
  v.hypothesis = ff.holds && eso.holds;
  for (const auto& failure : ff.failures) v.notes.push_back("not full/faithful at " + failure);
  for (const auto& m : eso.missing) v.notes.push_back("no object isomorphic to " + m + " in the image");

  v.checks.push_back({"hom pullback agrees with per-pair check", ff.pullback_agrees});
  const auto codisc = codisc_decomposition_check(f);
  v.checks.push_back({"X = codisc(X0) x codisc(Y0) Y", codisc.passed});
  if (codisc.passed != ff.holds) v.notes.push_back("codiscrete decomposition disagrees with full faithfulness");
  if (ff.holds) {
    const auto slice = slice_decomposition_check(f);
    v.checks.push_back({"Y0|f = codisc(X0) x codisc(Y0) TY", slice.passed});
  }
  v.conclusion = is_homology_equivalence(nerve_map(f, N, budget), N - 2);
  return v;
}

TheoremVerdict segal_cover_check(const CoverData& cover, int N, std::size_t budget) {
  require_depth(N);
  const CechCategory cech = cech_category(cover);
  TheoremVerdict v;
  v.theorem = "Segal-cover";
  v.hypothesis = true;
  for (std::size_t m = 0; m < cover.base.size(); ++m) {
    std::vector<bool> keep(cech.category->num_objects());
    for (std::size_t o = 0; o < keep.size(); ++o) keep[o] = cech.point_of_object[o] == static_cast<int>(m);
    v.fibers.push_back(fiber_certificate(cover.base[m], share(full_subcategory(*cech.category, keep)), N, budget));
    v.hypothesis = v.hypothesis && v.fibers.back().certificate.strong;
  }
  v.hypotheses.push_back({"every fibre of pi nonempty and codiscrete", v.hypothesis});
  v.conclusion = is_homology_equivalence(nerve_map(cech.pi, N, budget), N - 2);
  return v;
}

WitnessVerdict shrinkable_witness_check(const AdjointSectionWitness& w, int N, std::size_t budget) {
  WitnessVerdict v;
  const CatPtr& base = w.projection.cod();
  if (same_category(w.section.dom(), base) && same_category(w.section.cod(), w.projection.dom())) {
    v.section_ok = compose(w.projection, w.section) == identity_functor(base);
  }
  const auto report = validate_witness(w);
  v.witness_valid = report.ok();
  v.notes = report.violations;
  if (!v.witness_valid) return v;

  const SimplicialHomotopy hom = nat_trans_to_homotopy(w.unit, N, budget);
  const auto source = normalized_chains(*hom.source.sset);
  const auto target = normalized_chains(*hom.target.sset);
  const ChainHomotopy h = chain_homotopy_from_simplicial(hom, source, target, N - 1);
  const auto failing =
      verify_chain_homotopy(h, source.complex, target.complex, chain_map(hom.start, source, target), chain_map(hom.end, source, target));
  v.chain_identity = failing.empty();
  for (int n : failing) v.notes.push_back("chain homotopy identity fails in degree " + std::to_string(n));

  const FinCat& b = *base;
  v.fibrewise_applicable = true;
  for (std::size_t m = 0; m < b.num_morphisms(); ++m) v.fibrewise_applicable &= b.is_identity(static_cast<MorId>(m));
  if (v.fibrewise_applicable) {
    v.fibrewise = true;
    const Nerve& e = hom.source;  // the unit lives on E, so source and target nerves are both N(E)
    auto over = [&](int n, SimplexId x) { return w.projection.on_object(e.first_vertex(n, x)); };
    for (std::size_t n = 0; n < h.h.size() && v.fibrewise; ++n)
      for (std::size_t k = 0; k < h.h[n].cols() && v.fibrewise; ++k) {
        const ObjId col_base = over(static_cast<int>(n), source.basis[n][k]);
        for (const auto& [r, val] : h.h[n].column(k))
          if (over(static_cast<int>(n) + 1, target.basis[n + 1][r]) != col_base) v.fibrewise = false;
      }
    if (!v.fibrewise) v.notes.push_back("chain homotopy mixes fibres over different base objects");
  } else {
    v.notes.push_back("base is not discrete; fibrewise splitting not applicable");
  }
  v.holds = v.section_ok && v.witness_valid && v.chain_identity && (!v.fibrewise_applicable || v.fibrewise);
  return v;
}

}  // namespace thma
