#include "thma/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <openssl/evp.h>

#include "thma/error.hpp"

namespace thma {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw DocumentError(where + ": " + what);
}

const Json& field(const Json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

const std::string& text(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get_ref<const std::string&>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

void expect_format(const Json& doc, std::string_view format) {
  const auto found = document_format(doc);
  if (found != format) fail("/format", "expected '" + std::string(format) + "', found '" + found + "'");
}

std::string in_quotes(const std::string& s) { return "'" + s + "'"; }

// A category document before the composition table is assembled.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<MorId> identities;
  std::vector<std::tuple<MorId, MorId, MorId>> triples;
  std::map<std::string, ObjId, std::less<>> object_index;
  std::map<std::string, MorId, std::less<>> morphism_index;
};

RawCategory parse_raw(const Json& doc, bool need_composition) {
  expect_format(doc, kCategoryFormat);
  RawCategory raw;
  const auto& objects = array(field(doc, "objects", ""), "/objects");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& name = text(objects[i], "/objects/" + std::to_string(i));
    if (!raw.object_index.emplace(name, static_cast<ObjId>(i)).second) fail("/objects", "duplicate object " + in_quotes(name));
    raw.objects.push_back(name);
  }
  const auto& morphisms = array(field(doc, "morphisms", ""), "/morphisms");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto where = "/morphisms/" + std::to_string(i);
    const auto& id = text(field(morphisms[i], "id", where), where + "/id");
    auto endpoint = [&](const char* key) {
      const auto& name = text(field(morphisms[i], key, where), where + "/" + key);
      auto it = raw.object_index.find(name);
      if (it == raw.object_index.end()) fail(where + "/" + key, "unknown object " + in_quotes(name));
      return it->second;
    };
    const ObjId src = endpoint("src");
    const ObjId tgt = endpoint("tgt");
    if (!raw.morphism_index.emplace(id, static_cast<MorId>(i)).second) fail(where, "duplicate morphism " + in_quotes(id));
    raw.morphisms.push_back({id, src, tgt});
  }
  auto morphism = [&](const Json& j, const std::string& where) {
    const auto& name = text(j, where);
    auto it = raw.morphism_index.find(name);
    if (it == raw.morphism_index.end()) fail(where, "unknown morphism " + in_quotes(name));
    return it->second;
  };

  const auto& identities = field(doc, "identities", "");
  if (!identities.is_object()) fail("/identities", "expected an object");
  raw.identities.assign(raw.objects.size(), kUndefined);
  for (const auto& [name, value] : identities.items()) {
    auto it = raw.object_index.find(name);
    if (it == raw.object_index.end()) fail("/identities", "unknown object " + in_quotes(name));
    raw.identities[it->second] = morphism(value, "/identities/" + name);
  }
  for (std::size_t a = 0; a < raw.objects.size(); ++a)
    if (raw.identities[a] == kUndefined) throw AxiomViolation("object " + in_quotes(raw.objects[a]) + " has no identity");

  if (!need_composition && !doc.contains("composition")) return raw;
  const auto& composition = array(field(doc, "composition", ""), "/composition");
  for (std::size_t i = 0; i < composition.size(); ++i) {
    const auto where = "/composition/" + std::to_string(i);
    const auto& t = array(composition[i], where);
    if (t.size() != 3) fail(where, "expected a triple [g, f, g∘f]");
    raw.triples.emplace_back(morphism(t[0], where + "/0"), morphism(t[1], where + "/1"), morphism(t[2], where + "/2"));
  }
  return raw;
}

std::vector<MorId> table_of(const RawCategory& raw) {
  const std::size_t m = raw.morphisms.size();
  std::vector<MorId> table(m * m, kUndefined);
  for (const auto& [g, f, gf] : raw.triples) {
    auto& slot = table[static_cast<std::size_t>(g) * m + f];
    if (slot != kUndefined && slot != gf)
      throw AxiomViolation("conflicting composites for (" + in_quotes(raw.morphisms[g].name) + ", " +
                           in_quotes(raw.morphisms[f].name) + ")");
    slot = gf;
  }
  return table;
}

CatPtr category_operand(const Json& j, const std::filesystem::path& base_dir, const std::string& where) {
  try {
    if (j.is_string()) return share(category_from_json(read_json(base_dir / j.get<std::string>())));
    if (j.is_object()) return share(category_from_json(j));
  } catch (const DocumentError& e) {
    fail(where, e.what());
  }
  fail(where, "expected a path or an inline category document");
}

std::vector<SimplexId> index_list(const Json& j, std::size_t length, std::size_t range, const std::string& where) {
  const auto& a = array(j, where);
  if (a.size() != length) fail(where, "expected " + std::to_string(length) + " entries");
  std::vector<SimplexId> out;
  out.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    const auto v = integer(a[k], where + "/" + std::to_string(k));
    if (v < 0 || static_cast<std::size_t>(v) >= range) fail(where + "/" + std::to_string(k), "index out of range");
    out.push_back(static_cast<SimplexId>(v));
  }
  return out;
}

std::vector<std::int32_t> random_ids(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::int32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<std::int32_t> inverse(const std::vector<std::int32_t>& order) {
  std::vector<std::int32_t> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<std::int32_t>(i);
  return inv;
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
    if (flat) {
      out << prefix << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar(j[i]);
      out << "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << scalar(j) << "\n";
  }
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out + "\"";
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t end = std::min(e.byte == 0 ? std::size_t{0} : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw DocumentError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
  }
}

Json read_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

std::string canonical(const Json& doc) { return doc.dump(2) + "\n"; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

std::string document_format(const Json& doc) { return text(field(doc, "format", ""), "/format"); }

// ---------------------------------------------------------------------------

Json category_to_json(const FinCat& c) {
  Json doc;
  doc["format"] = kCategoryFormat;
  doc["objects"] = c.objects();
  doc["morphisms"] = Json::array();
  for (const auto& f : c.morphisms())
    doc["morphisms"].push_back({{"id", f.name}, {"src", c.object_name(f.src)}, {"tgt", c.object_name(f.tgt)}});
  doc["identities"] = Json::object();
  for (std::size_t a = 0; a < c.num_objects(); ++a)
    doc["identities"][c.object_name(static_cast<ObjId>(a))] = c.morphism_name(c.identity(static_cast<ObjId>(a)));
  doc["composition"] = Json::array();
  for (std::size_t g = 0; g < c.num_morphisms(); ++g)
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      const MorId gf = c.compose(static_cast<MorId>(g), static_cast<MorId>(f));
      if (gf == kUndefined) continue;
      doc["composition"].push_back(
          {c.morphism_name(static_cast<MorId>(g)), c.morphism_name(static_cast<MorId>(f)), c.morphism_name(gf)});
    }
  return doc;
}

FinCat category_from_json(const Json& doc) {
  RawCategory raw = parse_raw(doc, true);
  auto table = table_of(raw);
  return FinCat(std::move(raw.objects), std::move(raw.morphisms), std::move(raw.identities), std::move(table));
}

Json close_composition(const Json& doc) {
  RawCategory raw = parse_raw(doc, false);
  const std::size_t m = raw.morphisms.size();
  auto table = table_of(raw);
  const auto name = [&](MorId f) { return in_quotes(raw.morphisms[f].name); };
  const auto pair = [&](MorId g, MorId f) { return "(" + name(g) + ", " + name(f) + ")"; };
  auto at = [&](MorId g, MorId f) -> MorId& { return table[static_cast<std::size_t>(g) * m + f]; };
  auto force = [&](MorId g, MorId f, MorId v) {
    MorId& slot = at(g, f);
    if (slot != kUndefined && slot != v) throw AxiomViolation("ambiguous composite for " + pair(g, f));
    slot = v;
  };
  for (std::size_t f = 0; f < m; ++f) {
    const auto& mor = raw.morphisms[f];
    force(raw.identities[mor.tgt], static_cast<MorId>(f), static_cast<MorId>(f));
    force(static_cast<MorId>(f), raw.identities[mor.src], static_cast<MorId>(f));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::pair<MorId, MorId>>> factorizations(m);
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f)
        if (MorId v = at(static_cast<MorId>(g), static_cast<MorId>(f)); v != kUndefined)
          factorizations[v].emplace_back(static_cast<MorId>(g), static_cast<MorId>(f));
    for (std::size_t gi = 0; gi < m; ++gi)
      for (std::size_t fi = 0; fi < m; ++fi) {
        const auto g = static_cast<MorId>(gi), f = static_cast<MorId>(fi);
        if (raw.morphisms[f].tgt != raw.morphisms[g].src || at(g, f) != kUndefined) continue;
        std::set<MorId> candidates;
        // g = g2∘g1 gives g∘f = g2∘(g1∘f); f = f2∘f1 gives g∘f = (g∘f2)∘f1.
        for (const auto& [g2, g1] : factorizations[g]) {
          const MorId j = at(g1, f);
          if (j != kUndefined && at(g2, j) != kUndefined) candidates.insert(at(g2, j));
        }
        for (const auto& [f2, f1] : factorizations[f]) {
          const MorId j = at(g, f2);
          if (j != kUndefined && at(j, f1) != kUndefined) candidates.insert(at(j, f1));
        }
        if (candidates.size() > 1) throw AxiomViolation("ambiguous composite for " + pair(g, f));
        if (candidates.size() == 1) {
          at(g, f) = *candidates.begin();
          changed = true;
        }
      }
  }
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (raw.morphisms[f].tgt == raw.morphisms[g].src && at(static_cast<MorId>(g), static_cast<MorId>(f)) == kUndefined)
        throw AxiomViolation("composite for " + pair(static_cast<MorId>(g), static_cast<MorId>(f)) +
                             " is not determined by the given triples");
  FinCat closed(std::move(raw.objects), std::move(raw.morphisms), std::move(raw.identities), std::move(table));
  const auto report = validate_category(closed);
  if (!report.ok()) throw AxiomViolation("closed table is not a category: " + report.violations.front());
  return category_to_json(closed);
}

Json functor_to_json(const CatFunctor& f) {
  Json doc;
  doc["format"] = kFunctorFormat;
  doc["dom"] = category_to_json(*f.dom());
  doc["cod"] = category_to_json(*f.cod());
  doc["obj_map"] = Json::object();
  doc["mor_map"] = Json::object();
  for (std::size_t a = 0; a < f.dom()->num_objects(); ++a)
    doc["obj_map"][f.dom()->object_name(static_cast<ObjId>(a))] = f.cod()->object_name(f.on_object(static_cast<ObjId>(a)));
  for (std::size_t g = 0; g < f.dom()->num_morphisms(); ++g)
    doc["mor_map"][f.dom()->morphism_name(static_cast<MorId>(g))] =
        f.cod()->morphism_name(f.on_morphism(static_cast<MorId>(g)));
  return doc;
}

CatFunctor functor_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  expect_format(doc, kFunctorFormat);
  const CatPtr dom = category_operand(field(doc, "dom", ""), base_dir, "/dom");
  const CatPtr cod = category_operand(field(doc, "cod", ""), base_dir, "/cod");
  auto total_map = [&](const char* key, std::size_t count, auto dom_name, auto lookup) {
    const auto& j = field(doc, key, "");
    const std::string where = std::string("/") + key;
    if (!j.is_object()) fail(where, "expected an object");
    std::vector<std::int32_t> out(count, kUndefined);
    for (const auto& [from, to] : j.items()) {
      std::optional<std::int32_t> src;
      for (std::size_t i = 0; i < count && !src; ++i)
        if (dom_name(i) == from) src = static_cast<std::int32_t>(i);
      if (!src) fail(where, "unknown source element " + in_quotes(from));
      const std::string& image = text(to, where + "/" + from);
      const auto target = lookup(image);
      if (!target) fail(where + "/" + from, "unknown target element " + in_quotes(image));
      out[*src] = *target;
    }
    for (std::size_t i = 0; i < count; ++i)
      if (out[i] == kUndefined) fail(where, "no image for " + in_quotes(dom_name(i)));
    return out;
  };
  auto obj = total_map(
      "obj_map", dom->num_objects(), [&](std::size_t i) { return dom->object_name(static_cast<ObjId>(i)); },
      [&](const std::string& s) { return cod->find_object(s); });
  auto mor = total_map(
      "mor_map", dom->num_morphisms(), [&](std::size_t i) { return dom->morphism_name(static_cast<MorId>(i)); },
      [&](const std::string& s) { return cod->find_morphism(s); });
  return CatFunctor(dom, cod, std::move(obj), std::move(mor));
}

Json cover_to_json(const CoverData& cover) {
  Json doc;
  doc["format"] = kCoverFormat;
  doc["base"] = cover.base;
  doc["pieces"] = Json::object();
  for (const auto& [name, points] : cover.pieces) doc["pieces"][name] = points;
  return doc;
}

CoverData cover_from_json(const Json& doc) {
  expect_format(doc, kCoverFormat);
  CoverData cover;
  const auto& base = array(field(doc, "base", ""), "/base");
  for (std::size_t i = 0; i < base.size(); ++i) cover.base.push_back(text(base[i], "/base/" + std::to_string(i)));
  const auto& pieces = field(doc, "pieces", "");
  if (!pieces.is_object()) fail("/pieces", "expected an object");
  for (const auto& [name, points] : pieces.items()) {
    const auto where = "/pieces/" + name;
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < array(points, where).size(); ++i)
      subset.push_back(text(points[i], where + "/" + std::to_string(i)));
    cover.pieces.emplace_back(name, std::move(subset));
  }
  const auto problems = cover_problems(cover);
  if (!problems.empty()) fail("/pieces", problems.front());
  return cover;
}

Json surjection_to_json(const SurjectionDocument& s) {
  Json doc;
  doc["format"] = kSurjectionFormat;
  doc["category"] = category_to_json(*s.category);
  doc["elements"] = Json::object();
  for (std::size_t i = 0; i < s.surjection.elements.size(); ++i)
    doc["elements"][s.surjection.elements[i]] = s.category->object_name(s.surjection.image[i]);
  return doc;
}

SurjectionDocument surjection_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  expect_format(doc, kSurjectionFormat);
  SurjectionDocument out;
  out.category = category_operand(field(doc, "category", ""), base_dir, "/category");
  const auto& elements = field(doc, "elements", "");
  if (!elements.is_object()) fail("/elements", "expected an object");
  for (const auto& [element, object] : elements.items()) {
    const auto& name = text(object, "/elements/" + element);
    const auto a = out.category->find_object(name);
    if (!a) fail("/elements/" + element, "unknown object " + in_quotes(name));
    out.surjection.elements.push_back(element);
    out.surjection.image.push_back(*a);
  }
  return out;
}

Json sset_to_json(const SimplicialSet& s) {
  Json doc;
  doc["format"] = kSimplicialFormat;
  doc["truncation"] = s.truncation;
  doc["levels"] = Json::array();
  for (int n = 0; n <= s.truncation; ++n) {
    Json level;
    level["size"] = s.size(n);
    level["faces"] = n == 0 ? Json::array() : Json(s.faces[n]);
    level["degeneracies"] = n == s.truncation ? Json::array() : Json(s.degeneracies[n]);
    doc["levels"].push_back(std::move(level));
  }
  return doc;
}

SimplicialSet sset_from_json(const Json& doc) {
  expect_format(doc, kSimplicialFormat);
  SimplicialSet s;
  const auto top = integer(field(doc, "truncation", ""), "/truncation");
  if (top < 0 || top > 64) fail("/truncation", "out of range");
  s.truncation = static_cast<int>(top);
  const auto& levels = array(field(doc, "levels", ""), "/levels");
  if (levels.size() != static_cast<std::size_t>(top) + 1) fail("/levels", "expected truncation + 1 levels");
  for (const auto& level : levels) {
    const auto size = integer(field(level, "size", "/levels"), "/levels/size");
    if (size < 0 || size > std::numeric_limits<SimplexId>::max()) fail("/levels", "size out of range");
    s.sizes.push_back(static_cast<std::size_t>(size));
  }
  s.faces.resize(s.sizes.size());
  s.degeneracies.resize(s.sizes.size());
  for (int n = 0; n <= s.truncation; ++n) {
    const auto where = "/levels/" + std::to_string(n);
    const auto& faces = array(field(levels[n], "faces", where), where + "/faces");
    const auto& degs = array(field(levels[n], "degeneracies", where), where + "/degeneracies");
    if (faces.size() != (n == 0 ? 0u : static_cast<std::size_t>(n) + 1)) fail(where + "/faces", "expected n + 1 face maps");
    if (degs.size() != (n == s.truncation ? 0u : static_cast<std::size_t>(n) + 1))
      fail(where + "/degeneracies", "expected n + 1 degeneracy maps");
    for (std::size_t i = 0; i < faces.size(); ++i)
      s.faces[n].push_back(index_list(faces[i], s.sizes[n], s.sizes[n - 1], where + "/faces/" + std::to_string(i)));
    for (std::size_t i = 0; i < degs.size(); ++i)
      s.degeneracies[n].push_back(
          index_list(degs[i], s.sizes[n], s.sizes[n + 1], where + "/degeneracies/" + std::to_string(i)));
  }
  mark_degenerate(s);
  const auto report = check_simplicial_identities(s, 1);
  if (!report.ok()) throw AxiomViolation(report.violations.front());
  return s;
}

Json bisset_to_json(const BiSimplicialSet& t) {
  Json doc;
  doc["format"] = kBisimplicialFormat;
  doc["truncation"] = t.truncation;
  doc["cells"] = Json::array();
  for (int p = 0; p <= t.truncation; ++p)
    for (int q = 0; q <= t.truncation; ++q) {
      const auto& c = t.at(p, q);
      doc["cells"].push_back({{"p", p},
                              {"q", q},
                              {"size", c.size},
                              {"hface", c.hface},
                              {"hdeg", c.hdeg},
                              {"vface", c.vface},
                              {"vdeg", c.vdeg}});
    }
  return doc;
}

// ---------------------------------------------------------------------------

Json integer_to_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return n.convert_to<std::int64_t>();
  return n.str();
}

Json homology_to_json(const HomologyReport& r) {
  Json doc;
  const int top = static_cast<int>(r.groups.size()) - 1;
  doc["certified_through"] = r.certified_through;
  doc["top_degree"] = top;
  doc["groups"] = Json::array();
  for (int k = 0; k <= top; ++k) {
    const auto& g = r.groups[k];
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(integer_to_json(t));
    doc["groups"].push_back(
        {{"degree", k}, {"group", g.str()}, {"betti", g.betti}, {"torsion", torsion}, {"certified", k <= r.certified_through}});
  }
  std::string bound = "exact through degree " + std::to_string(r.certified_through);
  if (top > r.certified_through)
    bound += "; degrees above are computed without the boundaries from the truncated level and are not reliable";
  doc["reliability"] = bound;
  return doc;
}

Json level_sizes(const SimplicialSet& s) {
  Json out = Json::array();
  for (int n = 0; n <= s.truncation; ++n) {
    const auto nondeg = std::count(s.degenerate[n].begin(), s.degenerate[n].end(), false);
    out.push_back({{"level", n}, {"simplices", s.size(n)}, {"nondegenerate", nondeg}});
  }
  return out;
}

Json certificate_to_json(const ContractibilityCertificate& c) {
  Json doc;
  doc["kind"] = kind_name(c.kind);
  doc["strong"] = c.strong;
  doc["witness"] = c.witness ? Json(c.witness_name) : Json(nullptr);
  doc["proxy_confirms"] = c.proxy_confirms;
  doc["detail"] = c.detail;
  doc["homology"] = c.homology ? homology_to_json(*c.homology) : Json(nullptr);
  return doc;
}

Json equivalence_to_json(const EquivalenceVerdict& v) {
  Json cone = Json::array();
  for (const auto& g : v.cone) cone.push_back(g.str());
  return {{"holds", v.holds},
          {"cone_acyclic", v.cone_acyclic},
          {"pi0_bijective", v.pi0_bijective},
          {"through_degree", v.through_degree},
          {"cone_homology", cone},
          {"guarantee", v.guarantee}};
}

Json verdict_to_json(const TheoremVerdict& v) {
  Json doc;
  doc["theorem"] = v.theorem;
  doc["hypothesis"] = v.hypothesis;
  doc["hypotheses"] = Json::object();
  for (const auto& [name, ok] : v.hypotheses) doc["hypotheses"][name] = ok;
  doc["checks"] = Json::object();
  for (const auto& [name, ok] : v.checks) doc["checks"][name] = ok;
  auto fibers = v.fibers;
  std::sort(fibers.begin(), fibers.end(), [](const auto& a, const auto& b) { return a.object < b.object; });
  doc["fibers"] = Json::array();
  for (const auto& f : fibers)
    doc["fibers"].push_back(
        {{"object", f.object}, {"objects", f.objects}, {"morphisms", f.morphisms}, {"certificate", certificate_to_json(f.certificate)}});
  doc["conclusion"] = equivalence_to_json(v.conclusion);
  doc["sound"] = v.sound();
  auto notes = v.notes;
  std::sort(notes.begin(), notes.end());
  doc["notes"] = notes;
  return doc;
}

Json witness_verdict_to_json(const WitnessVerdict& v) {
  auto notes = v.notes;
  std::sort(notes.begin(), notes.end());
  return {{"holds", v.holds},
          {"witness_valid", v.witness_valid},
          {"section_ok", v.section_ok},
          {"chain_identity", v.chain_identity},
          {"fibrewise_applicable", v.fibrewise_applicable},
          {"fibrewise", v.fibrewise},
          {"notes", notes}};
}

Json violations_to_json(const ValidationReport& r) { return r.violations; }

std::string to_dot(const FinCat& c, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph " << dot_id(std::string(graph_name)) << " {\n";
  for (const auto& a : c.objects()) out << "  " << dot_id(a) << ";\n";
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(static_cast<MorId>(f))) continue;
    const auto& m = c.morphisms()[f];
    out << "  " << dot_id(c.object_name(m.src)) << " -> " << dot_id(c.object_name(m.tgt)) << " [label=" << dot_id(m.name)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_text(const Json& doc) {
  std::ostringstream out;
  flatten(doc, "", out);
  return out.str();
}

// ---------------------------------------------------------------------------

FinCat reorder(const FinCat& c, const std::vector<ObjId>& objects, const std::vector<MorId>& morphisms) {
  if (objects.size() != c.num_objects() || morphisms.size() != c.num_morphisms())
    throw InvalidArgument("reorder: permutation sizes do not match the category");
  const auto oinv = inverse(objects);
  const auto minv = inverse(morphisms);
  const std::size_t m = morphisms.size();
  std::vector<std::string> names;
  for (ObjId a : objects) names.push_back(c.object_name(a));
  std::vector<Morphism> mors;
  for (MorId f : morphisms) mors.push_back({c.morphism_name(f), oinv[c.src(f)], oinv[c.tgt(f)]});
  std::vector<MorId> ids;
  for (ObjId a : objects) ids.push_back(minv[c.identity(a)]);
  std::vector<MorId> table(m * m, kUndefined);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (MorId gf = c.compose(morphisms[g], morphisms[f]); gf != kUndefined) table[g * m + f] = minv[gf];
  return FinCat(std::move(names), std::move(mors), std::move(ids), std::move(table));
}

FinCat shuffled(const FinCat& c, std::mt19937_64& rng) {
  const auto objects = random_ids(c.num_objects(), rng);
  const auto morphisms = random_ids(c.num_morphisms(), rng);
  return reorder(c, objects, morphisms);
}

CatFunctor shuffled(const CatFunctor& f, std::mt19937_64& rng) {
  struct Shuffle {
    CatPtr category;
    std::vector<std::int32_t> objects, morphisms, oinv, minv;
  };
  auto make = [&](const CatPtr& c) {
    Shuffle s;
    s.objects = random_ids(c->num_objects(), rng);
    s.morphisms = random_ids(c->num_morphisms(), rng);
    s.oinv = inverse(s.objects);
    s.minv = inverse(s.morphisms);
    s.category = share(reorder(*c, s.objects, s.morphisms));
    return s;
  };
  const Shuffle dom = make(f.dom());
  const Shuffle cod = f.dom() == f.cod() ? dom : make(f.cod());
  std::vector<ObjId> obj;
  for (ObjId a : dom.objects) obj.push_back(cod.oinv[f.on_object(a)]);
  std::vector<MorId> mor;
  for (MorId g : dom.morphisms) mor.push_back(cod.minv[f.on_morphism(g)]);
  return CatFunctor(dom.category, cod.category, std::move(obj), std::move(mor));
}

CoverData shuffled(const CoverData& cover, std::mt19937_64& rng) {
  CoverData out = cover;
  std::shuffle(out.base.begin(), out.base.end(), rng);
  std::shuffle(out.pieces.begin(), out.pieces.end(), rng);
  for (auto& [name, points] : out.pieces) std::shuffle(points.begin(), points.end(), rng);
  return out;
}

SimplicialSet shuffled(const SimplicialSet& s, std::mt19937_64& rng) {
  std::vector<std::vector<SimplexId>> order, inv;
  for (int n = 0; n <= s.truncation; ++n) {
    order.push_back(random_ids(s.size(n), rng));
    inv.push_back(inverse(order.back()));
  }
  SimplicialSet out;
  out.truncation = s.truncation;
  out.sizes = s.sizes;
  out.faces.resize(s.faces.size());
  out.degeneracies.resize(s.degeneracies.size());
  for (int n = 0; n <= s.truncation; ++n) {
    for (const auto& d : s.faces[n]) {
      std::vector<SimplexId> map(s.size(n));
      for (std::size_t k = 0; k < map.size(); ++k) map[k] = inv[n - 1][d[order[n][k]]];
      out.faces[n].push_back(std::move(map));
    }
    for (const auto& sd : s.degeneracies[n]) {
      std::vector<SimplexId> map(s.size(n));
      for (std::size_t k = 0; k < map.size(); ++k) map[k] = inv[n + 1][sd[order[n][k]]];
      out.degeneracies[n].push_back(std::move(map));
    }
  }
  mark_degenerate(out);
  return out;
}

}  // namespace thma
