#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "thma/error.hpp"
#include "thma/io.hpp"

namespace thma::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  int truncation = kDefaultTruncation;
  std::size_t budget = kDefaultLevelBudget;
  std::string output;
  std::string format = "json";
  std::optional<std::uint64_t> shuffle_seed;
  bool timing = false;
};

struct Input {
  std::string path;
  Json doc;
  std::string digest;
  fs::path dir;
};

struct Outcome {
  int code = kOk;
  Json result = Json::object();
};

const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kAxiomViolation: return "axiom-violation";
    case kParseError: return "parse-error";
    case kBudgetExceeded: return "budget-exceeded";
    case kHypothesisFails: return "hypothesis-fails";
    default: return "soundness-alarm";
  }
}

class Session {
 public:
  explicit Session(const Options& o) : opts_(o) {
    if (o.shuffle_seed) rng_.emplace(*o.shuffle_seed);
  }

  Input load(const std::string& path) {
    const std::string bytes = read_file(path);
    const std::string digest = sha256_hex(bytes);
    inputs_.push_back({{"path", path}, {"sha256", digest}});
    return {path, parse_json(bytes, path), digest, fs::path(path).parent_path()};
  }

  const Json& inputs() const { return inputs_; }

  CatPtr category(const Input& in) {
    auto c = category_from_json(in.doc);
    require_valid(validate_category(c), "");
    return share(rng_ ? shuffled(c, *rng_) : std::move(c));
  }

  CatFunctor functor(const Input& in) {
    CatFunctor f = functor_from_json(in.doc, in.dir);
    require_valid(validate_category(*f.dom()), "dom: ");
    if (f.cod() != f.dom()) require_valid(validate_category(*f.cod()), "cod: ");
    require_valid(validate_functor(f), "");
    return rng_ ? shuffled(f, *rng_) : f;
  }

  CoverData cover(const Input& in) {
    auto c = cover_from_json(in.doc);
    return rng_ ? shuffled(c, *rng_) : c;
  }

  SimplicialSet sset(const Input& in) {
    auto s = sset_from_json(in.doc);
    return rng_ ? shuffled(s, *rng_) : s;
  }

  void write_output(const std::string& content) const {
    std::ofstream out(opts_.output, std::ios::binary);
    if (!out || !(out << content)) throw DocumentError(opts_.output + ": cannot write file");
  }

  const Options& opts() const { return opts_; }

 private:
  static void require_valid(const ValidationReport& r, const std::string& prefix) {
    if (!r.ok()) throw AxiomViolation(prefix + r.violations.front());
  }

  Options opts_;
  std::optional<std::mt19937_64> rng_;
  Json inputs_ = Json::array();
};

Json category_sizes(const FinCat& c) { return {{"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}}; }

Outcome cmd_validate(Session& s, const std::string& path, bool close) {
  Outcome o;
  const Input in = s.load(path);
  const std::string format = document_format(in.doc);
  o.result["kind"] = format;
  ValidationReport report;
  if (close) {
    if (format != kCategoryFormat) throw DocumentError(path + ": --close needs a category document");
    const Json closed = close_composition(in.doc);
    const FinCat c = category_from_json(closed);
    o.result["sizes"] = category_sizes(c);
    o.result["composites"] = closed["composition"].size();
    if (s.opts().output.empty()) {
      o.result["document"] = closed;
    } else {
      s.write_output(canonical(closed));
      o.result["output"] = s.opts().output;
    }
  } else if (format == kCategoryFormat) {
    const FinCat c = category_from_json(in.doc);
    o.result["sizes"] = category_sizes(c);
    report = validate_category(c);
  } else if (format == kFunctorFormat) {
    const CatFunctor f = functor_from_json(in.doc, in.dir);
    for (const auto& v : validate_category(*f.dom()).violations) report.violations.push_back("dom: " + v);
    for (const auto& v : validate_category(*f.cod()).violations) report.violations.push_back("cod: " + v);
    if (report.ok()) report = validate_functor(f);
    o.result["sizes"] = {{"dom", category_sizes(*f.dom())}, {"cod", category_sizes(*f.cod())}};
  } else if (format == kCoverFormat) {
    const CoverData cover = cover_from_json(in.doc);
    o.result["sizes"] = {{"base", cover.base.size()}, {"pieces", cover.pieces.size()}};
  } else if (format == kSurjectionFormat) {
    const auto doc = surjection_from_json(in.doc, in.dir);
    report = validate_category(*doc.category);
    std::vector<bool> hit(doc.category->num_objects());
    for (ObjId a : doc.surjection.image) hit[a] = true;
    for (std::size_t a = 0; a < hit.size(); ++a)
      if (!hit[a]) report.violations.push_back("object '" + doc.category->object_name(static_cast<ObjId>(a)) + "' has no preimage");
    o.result["sizes"] = {{"elements", doc.surjection.elements.size()}, {"category", category_sizes(*doc.category)}};
  } else if (format == kSimplicialFormat) {
    const SimplicialSet x = sset_from_json(in.doc);
    o.result["sizes"] = level_sizes(x);
  } else {
    throw DocumentError(path + ": unsupported format '" + format + "'");
  }
  o.result["violations"] = violations_to_json(report);
  if (!report.ok()) o.code = kAxiomViolation;
  return o;
}

Outcome cmd_build(Session& s, const std::string& construction, const std::string& path) {
  Outcome o;
  const Input in = s.load(path);
  const int N = s.opts().truncation;
  const std::size_t budget = s.opts().budget;
  o.result["construction"] = construction;
  Json doc;
  auto category_result = [&](const CatPtr& c) {
    o.result["sizes"] = category_sizes(*c);
    doc = category_to_json(*c);
  };
  if (construction == "T") {
    category_result(t_category(s.category(in)).category);
  } else if (construction == "Top") {
    category_result(t_op_category(s.category(in)).category);
  } else if (construction == "twisted") {
    category_result(twisted_arrow(s.category(in)).category);
  } else if (construction == "comma") {
    category_result(comma_slice(s.functor(in)).category);
  } else if (construction == "S") {
    category_result(s_category(s.functor(in)).category);
  } else if (construction == "cech") {
    category_result(cech_category(s.cover(in)).category);
  } else if (construction == "fatten") {
    const auto surj = surjection_from_json(in.doc, in.dir);
    const auto report = validate_category(*surj.category);
    if (!report.ok()) throw AxiomViolation(report.violations.front());
    const Fattening fat = fatten(surj.category, surj.surjection);
    o.result["sizes"] = category_sizes(*fat.x);
    doc = functor_to_json(fat.f);
  } else if (construction == "D") {
    const BisimplicialD d = bisimplicial_D(s.functor(in), N, budget);
    const auto identities = check_bisimplicial_identities(*d.sset, 1);
    if (!identities.ok()) throw ConsistencyFault(identities.violations.front());
    Json sizes = Json::array();
    for (int p = 0; p <= N; ++p)
      for (int q = 0; q <= N; ++q) sizes.push_back({{"p", p}, {"q", q}, {"size", d.sset->at(p, q).size}});
    o.result["sizes"] = sizes;
    o.result["truncation"] = N;
    doc = bisset_to_json(*d.sset);
  } else if (construction == "diag") {
    const DiagonalNerveIso iso = check_diag_equals_nerve_S(s.functor(in), N, budget);
    o.result["sizes"] = level_sizes(*iso.diagonal);
    o.result["truncation"] = N;
    o.result["isomorphic_to_nerve_of_S"] = true;
    doc = sset_to_json(*iso.diagonal);
  } else {
    throw DocumentError("unknown construction '" + construction + "'");
  }
  if (!s.opts().output.empty()) {
    s.write_output(canonical(doc));
    o.result["output"] = s.opts().output;
  }
  return o;
}

Outcome cmd_homology(Session& s, const std::string& path) {
  Outcome o;
  const Input in = s.load(path);
  const std::string format = document_format(in.doc);
  o.result["kind"] = format;
  std::optional<SimplicialSet> x;
  if (format == kCategoryFormat) {
    const Nerve n = nerve(s.category(in), s.opts().truncation, s.opts().budget);
    x = *n.sset;
  } else if (format == kSimplicialFormat) {
    x = s.sset(in);
    for (int n = 0; n <= x->truncation; ++n)
      if (x->size(n) > s.opts().budget) throw BudgetExceeded("level " + std::to_string(n) + " exceeds the budget");
  } else {
    throw DocumentError(path + ": homology needs a category or simplicial-set document");
  }
  o.result["truncation"] = x->truncation;
  o.result["sizes"] = level_sizes(*x);
  o.result["homology"] = homology_to_json(simplicial_homology(*x));
  return o;
}

Outcome cmd_check(Session& s, const std::string& theorem, const std::string& path) {
  Outcome o;
  const Input in = s.load(path);
  const int N = s.opts().truncation;
  const std::size_t budget = s.opts().budget;
  TheoremVerdict v;
  if (theorem == "a") {
    v = theorem_a_check(s.functor(in), N, budget);
  } else if (theorem == "morita") {
    v = morita_check(s.functor(in), N, budget);
  } else if (theorem == "cover") {
    v = segal_cover_check(s.cover(in), N, budget);
  } else {
    throw DocumentError("unknown theorem '" + theorem + "'");
  }
  o.result = verdict_to_json(v);
  Json failed = Json::array();
  for (const auto& [name, ok] : v.hypotheses)
    if (!ok) failed.push_back(name);
  for (const auto& f : o.result["fibers"])
    if (f["certificate"]["kind"] == "refused") failed.push_back("fibre over " + f["object"].get<std::string>() + ": refused");
  o.result["failed"] = failed;
  const bool checks_ok = std::all_of(v.checks.begin(), v.checks.end(), [](const auto& c) { return c.second; });
  if (!v.hypothesis) {
    o.code = kHypothesisFails;
  } else if (!v.conclusion.holds || !checks_ok) {
    o.code = kSoundnessAlarm;
  }
  return o;
}

Outcome cmd_export_dot(Session& s, const std::string& path, std::ostream& out, bool& printed) {
  Outcome o;
  const Input in = s.load(path);
  const FinCat c = category_from_json(in.doc);
  const std::string dot = to_dot(c);
  std::size_t edges = 0;
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) edges += !c.is_identity(static_cast<MorId>(f));
  o.result["sizes"] = {{"nodes", c.num_objects()}, {"edges", edges}};
  if (s.opts().output.empty()) {
    out << dot;
    printed = true;
  } else {
    s.write_output(dot);
    o.result["output"] = s.opts().output;
  }
  return o;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--trunc", o.truncation, "truncation level N")->check(CLI::Range(1, 12));
  cmd->add_option("--budget", o.budget, "maximum simplices per level");
  cmd->add_option("-o,--output", o.output, "output file");
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--shuffle-seed", o.shuffle_seed, "enumerate inputs in a shuffled order");
  cmd->add_flag("--timing", o.timing, "print the elapsed time to stderr");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite category toolkit: constructions, nerves, homology and theorem checks", "thma"};
  app.require_subcommand(1);
  Options opts;
  std::string path, what;
  bool close = false;

  auto* validate = app.add_subcommand("validate", "check a document against the axioms");
  validate->add_option("path", path, "document")->required();
  validate->add_flag("--close", close, "close a partial composition table");
  auto* build = app.add_subcommand("build", "build a construction");
  build->add_option("construction", what, "T, Top, twisted, comma, S, cech, fatten, D or diag")
      ->required()
      ->check(CLI::IsMember({"T", "Top", "twisted", "comma", "S", "cech", "fatten", "D", "diag"}));
  build->add_option("path", path, "input document")->required();
  auto* hom = app.add_subcommand("homology", "homology of a nerve or simplicial set");
  hom->add_option("path", path, "category or simplicial-set document")->required();
  auto* check = app.add_subcommand("check", "run a theorem checker");
  check->add_option("theorem", what, "a, morita or cover")->required()->check(CLI::IsMember({"a", "morita", "cover"}));
  check->add_option("path", path, "functor or cover document")->required();
  auto* dot = app.add_subcommand("export-dot", "export a category as a DOT digraph");
  dot->add_option("path", path, "category document")->required();
  for (auto* cmd : {validate, build, hom, check, dot}) add_common(cmd, opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Session session(opts);
  Outcome outcome;
  std::string error;
  bool printed = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (cmd == validate) outcome = cmd_validate(session, path, close);
    if (cmd == build) outcome = cmd_build(session, what, path);
    if (cmd == hom) outcome = cmd_homology(session, path);
    if (cmd == check) outcome = cmd_check(session, what, path);
    if (cmd == dot) outcome = cmd_export_dot(session, path, out, printed);
  } catch (const AxiomViolation& e) {
    outcome = {kAxiomViolation, {{"violations", {e.what()}}}};
    error = e.what();
  } catch (const BudgetExceeded& e) {
    outcome.code = kBudgetExceeded;
    error = e.what();
  } catch (const ConsistencyFault& e) {
    outcome.code = kSoundnessAlarm;
    error = e.what();
  } catch (const InvalidArgument& e) {
    outcome.code = kParseError;
    error = e.what();
  } catch (const Json::exception& e) {
    outcome.code = kParseError;
    error = e.what();
  } catch (const std::exception& e) {
    outcome.code = kSoundnessAlarm;
    error = std::string("internal error: ") + e.what();
  }
  if (opts.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    err << "elapsed: " << elapsed.count() << " s\n";
  }
  if (!error.empty()) err << "thma: " << error << "\n";
  if (printed && outcome.code == kOk) return kOk;

  Json report;
  Json command = {{"name", cmd->get_name()}, {"path", path}, {"truncation", opts.truncation}, {"budget", opts.budget}};
  if (!what.empty()) command["argument"] = what;
  if (close) command["close"] = true;
  report["command"] = command;
  report["inputs"] = session.inputs();
  report["result"] = outcome.result;
  report["exit_code"] = outcome.code;
  report["status"] = status_name(outcome.code);
  if (!error.empty()) report["error"] = error;
  out << (opts.format == "text" ? to_text(report) : canonical(report));
  return outcome.code;
}

}  // namespace thma::cli
