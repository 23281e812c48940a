#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "generators.hpp"
#include "golden.hpp"
#include "oracle.hpp"
#include "thma/error.hpp"
#include "thma/io.hpp"

using namespace thma;
using namespace thma::testing;

namespace {

namespace fs = std::filesystem;

const fs::path kGoldenDir = THMA_GOLDEN_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
class Tally {
 public:
  void fail(const std::string& what) {
    ++failures_;
    if (examples_.size() < 3) examples_.push_back(what);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  Outcome outcome(const std::string& summary) const {
    std::string detail = summary;
    if (failures_) {
      detail += "; " + std::to_string(failures_) + " failure(s):";
      for (const auto& e : examples_) detail += " [" + e + "]";
    }
    return {failures_ == 0, detail};
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> examples_;
};

std::string describe(const FinCat& c) {
  return std::to_string(c.num_objects()) + " objects/" + std::to_string(c.num_morphisms()) + " morphisms";
}

std::string describe(const CatFunctor& f) { return "functor from " + describe(*f.dom()) + " to " + describe(*f.cod()); }

// A reproducible family of functors between categories with at most four
// objects.
std::vector<CatFunctor> functor_family(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<CatFunctor> out;
  while (static_cast<int>(out.size()) < count) out.push_back(random_test_functor(rng, 4, 12));
  return out;
}

bool same_groups(const HomologyReport& a, const HomologyReport& b, int through) {
  for (int k = 0; k <= through; ++k)
    if (!(a.groups.at(k) == b.groups.at(k))) return false;
  return true;
}

std::string groups_string(const HomologyReport& r, int through) {
  std::string s;
  for (int k = 0; k <= through; ++k) s += (k ? "; " : "") + r.groups.at(k).str();
  return s;
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("thma_acceptance_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string write(const std::string& name, const Json& doc) const {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << canonical(doc);
    return path.string();
  }

 private:
  fs::path dir_;
};

Outcome construction_identities() {
  Tally t;
  const std::size_t count = for_each_small_category({3, 8, 4}, [&](const FinCat& c) {
    const CatPtr y = share(c);
    const CatFunctor id = identity_functor(y);
    const CommaSlice slice = comma_slice(id);
    t.expect(slice.category->same_tables(*slice.t.category), "comma slice of id differs from T on " + describe(c));
    const SpanDiagram s = s_category(id);
    t.expect(s.category->same_tables(*s.twisted.category), "S(id) differs from the twisted arrow category on " + describe(c));
  });
  return t.outcome(std::to_string(count) + " categories up to isomorphism (<= 3 objects, <= 8 morphisms)");
}

Outcome diagonal_identity(const std::vector<CatFunctor>& family) {
  Tally t;
  for (const auto& f : family) {
    try {
      const DiagonalNerveIso iso = check_diag_equals_nerve_S(f, 3);
      t.expect(iso.diagonal->sizes == iso.nerve_s.sset->sizes, "level sizes differ for " + describe(f));
    } catch (const Error& e) {
      t.fail(describe(f) + ": " + e.what());
    }
  }
  return t.outcome(std::to_string(family.size()) + " functors at N = 3");
}

Outcome total_complex_matches_diagonal(const std::vector<CatFunctor>& family) {
  constexpr int N = 4;
  Tally t;
  for (const auto& f : family) {
    try {
      const BisimplicialD d = bisimplicial_D(f, N);
      const HomologyReport tot = homology(total_complex(*d.sset));
      const HomologyReport diag = simplicial_homology(diagonal(*d.sset));
      if (!same_groups(tot, diag, N - 2))
        t.fail(describe(f) + ": total " + groups_string(tot, N - 2) + " vs diagonal " + groups_string(diag, N - 2));
    } catch (const Error& e) {
      t.fail(describe(f) + ": " + e.what());
    }
  }
  return t.outcome(std::to_string(family.size()) + " functors at N = 4, degrees 0..2");
}

Outcome adjoint_sections_shrink(const std::vector<CatPtr>& categories) {
  constexpr int N = 3;
  Tally t;
  for (const auto& y : categories) {
    try {
      const TCategory tc = t_category(y);
      t.expect(shrinkable_witness_check(tc.sigma, N).holds, "sigma on " + describe(*y));
      t.expect(shrinkable_witness_check(t_op_category(y).tau, N).holds, "tau on " + describe(*y));
      t.expect(is_homology_equivalence(nerve_map(tc.dom, N), 2).holds, "dom^T not an equivalence on " + describe(*y));
    } catch (const Error& e) {
      t.fail(describe(*y) + ": " + e.what());
    }
  }
  return t.outcome(std::to_string(categories.size()) + " categories, witnesses at N = 3");
}

CatFunctor inclusion(const CatPtr& sub, const CatPtr& whole, const std::vector<ObjId>& objects) {
  std::vector<MorId> mors(sub->num_morphisms());
  for (std::size_t f = 0; f < mors.size(); ++f) {
    const auto src = objects[sub->src(static_cast<MorId>(f))], tgt = objects[sub->tgt(static_cast<MorId>(f))];
    const auto hom = whole->hom(src, tgt);
    if (hom.size() != 1) throw InvalidArgument("inclusion needs thin hom-sets");
    mors[f] = hom[0];
  }
  return CatFunctor(sub, whole, objects, std::move(mors));
}

Outcome theorem_a_soundness() {
  constexpr int N = 4;
  Tally t;
  std::size_t certified = 0;
  const auto family = functor_family(0xA11CE, 200);
  for (const auto& f : family) {
    try {
      const TheoremVerdict v = theorem_a_check(f, N);
      if (!v.hypothesis) continue;
      ++certified;
      t.expect(v.conclusion.holds, "conclusion fails for " + describe(f));
    } catch (const Error& e) {
      t.fail(describe(f) + ": " + e.what());
    }
  }

  const CatPtr two = share(interval_category());
  const CatPtr disc01 = share(disc({"0", "1"}));
  const CatPtr disc_ab = share(disc({"a", "b"}));
  const CatPtr codisc_ab = share(codisc({"a", "b"}));
  const CatPtr z2 = share(cyclic_group_category(2));
  const CatPtr point = share(terminal_category());
  const std::vector<std::pair<std::string, CatFunctor>> controls = {
      {"disc{0,1} -> 2", disc_inclusion(disc01, two)},
      {"disc{a,b} -> codisc{a,b}", inclusion(disc_ab, codisc_ab, {0, 1})},
      {"Z/2 -> point", to_terminal(z2)},
      {"point -> Z/2", constant_functor(point, z2, 0)},
  };
  for (const auto& [name, f] : controls) {
    const TheoremVerdict v = theorem_a_check(f, N);
    t.expect(!v.hypothesis, "control " + name + " passes the hypothesis");
    t.expect(!v.conclusion.holds, "control " + name + " passes the conclusion");
  }
  return t.outcome(std::to_string(family.size()) + " functors, " + std::to_string(certified) +
                   " with certified fibres; " + std::to_string(controls.size()) + " negative controls rejected");
}

Outcome morita_soundness(const Scratch& scratch) {
  Tally t;
  Rng rng(0x4D0217A);
  std::size_t runs = 0;
  std::size_t with_slice = 0;
  for (int i = 0; i < 120; ++i) {
    CatPtr y;
    switch (i % 4) {
      case 0: y = share(random_poset(1 + i % 4, 0.5, rng)); break;
      case 1: y = share(cyclic_group_category(2)); break;
      case 2: y = share(cyclic_group_category(3)); break;
      default: y = random_category(rng, 3, 8); break;
    }
    const int extra = static_cast<int>(rng() % 3);
    const Fattening fat = fatten(y, random_surjection(*y, extra, rng));
    const std::string label = "fattening of " + describe(*y) + " by " + std::to_string(extra);
    const std::string path = scratch.write("morita_" + std::to_string(i) + ".json", functor_to_json(fat.f));
    const CliRun run = run_cli({"check", "morita", path});
    ++runs;
    t.expect(run.code == 0, label + ": exit " + std::to_string(run.code));
    const Json report = Json::parse(run.out);
    const Json& checks = report["result"]["checks"];
    const bool slice = checks.contains("Y0|f = codisc(X0) x codisc(Y0) TY") && checks["Y0|f = codisc(X0) x codisc(Y0) TY"] == true;
    with_slice += slice;
    t.expect(slice, label + ": slice decomposition check missing or failed");
  }
  return t.outcome(std::to_string(runs) + " fattenings through the CLI, slice decomposition passed in " +
                   std::to_string(with_slice));
}

Outcome segal_cover(const Scratch& scratch) {
  Tally t;
  Rng rng(0xC0FE);
  constexpr int kCovers = 120;
  for (int i = 0; i < kCovers; ++i) {
    const int points = 1 + static_cast<int>(rng() % 6);
    const CoverData cover = random_cover(points, 4, rng);
    const std::string path = scratch.write("cover_" + std::to_string(i) + ".json", cover_to_json(cover));
    const CliRun run = run_cli({"check", "cover", path});
    t.expect(run.code == 0, "cover " + std::to_string(i) + " with " + std::to_string(points) + " points: exit " +
                                std::to_string(run.code));
  }

  const CliRun specific = run_cli({"check", "cover", "cover_12.json"});
  t.expect(specific.code == 0, "cover_12.json: exit " + std::to_string(specific.code));
  std::size_t initial = 0;
  if (specific.code == 0) {
    const Json report = Json::parse(specific.out);
    for (const auto& fiber : report["result"]["fibers"]) {
      const bool ok = fiber["certificate"]["kind"] == "initial-object";
      initial += ok;
      t.expect(ok, "fibre over " + fiber["object"].get<std::string>() + " is not certified by an initial object");
    }
    t.expect(initial == 2, "expected two fibres in cover_12.json");
  }
  return t.outcome(std::to_string(kCovers) + " random covers through the CLI; M = {1,2}: " + std::to_string(initial) +
                   " fibres with initial-object witnesses");
}

Outcome homology_fixtures() {
  struct Fixture {
    std::string name;
    CatPtr category;
    int truncation;
    std::vector<std::string> expected;
    std::string golden;
  };
  // Frozen from the brute-force Smith oracle.
  const std::vector<Fixture> fixtures = {
      {"BZ/2", share(cyclic_group_category(2)), 4, {"Z", "Z/2", "0", "Z/2"}, "homology_z2.out"},
      {"B codisc{a,b}", share(codisc({"a", "b"})), 4, {"Z", "0", "0", "0"}, "homology_codisc_ab.out"},
      {"B2", share(interval_category()), 3, {"Z", "0", "0"}, "homology_two.out"},
  };
  Tally t;
  for (const auto& fx : fixtures) {
    const int through = static_cast<int>(fx.expected.size()) - 1;
    const HomologyReport got = simplicial_homology(*nerve(fx.category, fx.truncation).sset);
    const auto oracle = oracle::nerve_homology(*fx.category, through);
    t.expect(got.certified_through >= through, fx.name + ": certified only through " + std::to_string(got.certified_through));
    const Json golden = Json::parse(read_text(kGoldenDir / fx.golden));
    const Json& groups = golden["result"]["homology"]["groups"];
    for (int k = 0; k <= through; ++k) {
      const std::string at = fx.name + " H_" + std::to_string(k);
      t.expect(got.groups.at(k).str() == fx.expected[k], at + " = " + got.groups.at(k).str() + ", expected " + fx.expected[k]);
      t.expect(oracle.at(k) == got.groups.at(k), at + ": oracle gives " + oracle.at(k).str());
      t.expect(groups.at(k)["group"] == fx.expected[k], at + ": golden file holds " + groups.at(k)["group"].dump());
    }
  }
  return t.outcome("BZ/2, B codisc{a,b}, B2 against frozen values, the oracle and the golden files");
}

Outcome chain_homotopy_exactness() {
  constexpr int N = 3;
  Tally t;
  Rng rng(0x5EED);
  std::size_t count = 0;
  while (count < 100) {
    const CatPtr x = random_category(rng, 3, 8);
    const CatPtr y = random_category(rng, 4, 12);
    const auto alpha = random_nat_trans(x, y, rng);
    if (!alpha) continue;
    ++count;
    try {
      const SimplicialHomotopy hom = nat_trans_to_homotopy(*alpha, N);
      const auto source = normalized_chains(*hom.source.sset);
      const auto target = normalized_chains(*hom.target.sset);
      const ChainHomotopy h = chain_homotopy_from_simplicial(hom, source, target, N - 1);
      const auto failing = verify_chain_homotopy(h, source.complex, target.complex, chain_map(hom.start, source, target),
                                                 chain_map(hom.end, source, target));
      t.expect(failing.empty(), "identity fails for a transformation on " + describe(*x));
    } catch (const Error& e) {
      t.fail(describe(*x) + ": " + e.what());
    }
  }
  return t.outcome(std::to_string(count) + " natural transformations, degrees 0..2");
}

Outcome cli_determinism() {
  Tally t;
  const auto cases = load_golden_cases(kGoldenDir / "cases.txt");
  std::size_t runs = 0;
  for (const auto& c : cases) {
    const std::string stored = read_text(kGoldenDir / (c.name + ".out"));
    std::vector<std::vector<std::string>> variants = {c.args, c.args};
    for (int seed : {11, 12, 13}) {
      auto args = c.args;
      args.push_back("--shuffle-seed");
      args.push_back(std::to_string(seed));
      variants.push_back(args);
    }
    for (const auto& args : variants) {
      const CliRun run = run_cli(args);
      ++runs;
      t.expect(run.out == stored, c.name + " differs from its golden report");
      t.expect(run.code == c.exit_code, c.name + ": exit " + std::to_string(run.code));
    }
  }
  return t.outcome(std::to_string(cases.size()) + " golden reports, " + std::to_string(runs) + " runs");
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const Scratch scratch;
  std::vector<CatFunctor> family;
  std::vector<CatPtr> categories;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"construction identities", construction_identities},
      {"diagonal of D(f) is the nerve of S(f)",
       [&] {
         family = functor_family(0xD1A6, 100);
         for (const auto& f : family) {
           categories.push_back(f.dom());
           categories.push_back(f.cod());
         }
         return diagonal_identity(family);
       }},
      {"total complex and diagonal agree", [&] { return total_complex_matches_diagonal(family); }},
      {"adjoint sections shrink", [&] { return adjoint_sections_shrink(categories); }},
      {"theorem A soundness", theorem_a_soundness},
      {"Morita soundness", [&] { return morita_soundness(scratch); }},
      {"Segal cover check", [&] { return segal_cover(scratch); }},
      {"homology oracle fixtures", homology_fixtures},
      {"chain homotopy exactness", chain_homotopy_exactness},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("uncaught: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.2fs", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ("
              << elapsed << ")" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
