#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "thma/category.hpp"
#include "thma/constructions.hpp"
#include "thma/functor.hpp"
#include "thma/homology.hpp"
#include "thma/simplicial.hpp"
#include "thma/verifiers.hpp"

namespace thma {

using Json = nlohmann::json;

inline constexpr std::string_view kCategoryFormat = "thma-category/1";
inline constexpr std::string_view kFunctorFormat = "thma-functor/1";
inline constexpr std::string_view kCoverFormat = "thma-cover/1";
inline constexpr std::string_view kSurjectionFormat = "thma-surjection/1";
inline constexpr std::string_view kSimplicialFormat = "thma-sset/1";
inline constexpr std::string_view kBisimplicialFormat = "thma-bisset/1";

std::string read_file(const std::filesystem::path& path);
/// Parse errors carry "origin:line:column".
Json parse_json(std::string_view text, const std::string& origin);
Json read_json(const std::filesystem::path& path);
/// Sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& doc);
std::string sha256_hex(std::string_view bytes);

/// The "format" field, or DocumentError.
std::string document_format(const Json& doc);

// Documents. Readers throw DocumentError for malformed or mistyped input and
// AxiomViolation for tables that cannot satisfy the axioms (a missing identity,
// conflicting composites).

/// Composition triples are listed in (g, f) index order, composable pairs only.
Json category_to_json(const FinCat& c);
FinCat category_from_json(const Json& doc);

/// Fills composites forced by the unit laws and associativity. Throws
/// AxiomViolation when a composite is ambiguous, undetermined, or the closed
/// table is not a category.
Json close_composition(const Json& doc);

/// dom and cod are written inline.
Json functor_to_json(const CatFunctor& f);
/// dom and cod are inline category documents or paths relative to base_dir.
CatFunctor functor_from_json(const Json& doc, const std::filesystem::path& base_dir);

Json cover_to_json(const CoverData& cover);
CoverData cover_from_json(const Json& doc);

struct SurjectionDocument {
  CatPtr category;
  Surjection surjection;
};

Json surjection_to_json(const SurjectionDocument& s);
SurjectionDocument surjection_from_json(const Json& doc, const std::filesystem::path& base_dir);

Json sset_to_json(const SimplicialSet& s);
/// Re-derives the degenerate flags and checks the simplicial identities.
SimplicialSet sset_from_json(const Json& doc);
Json bisset_to_json(const BiSimplicialSet& t);

// Report fragments.

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json integer_to_json(const Integer& n);
Json homology_to_json(const HomologyReport& r);
/// Per level: total simplices and nondegenerate ones.
Json level_sizes(const SimplicialSet& s);
Json certificate_to_json(const ContractibilityCertificate& c);
Json equivalence_to_json(const EquivalenceVerdict& v);
/// Fibres sorted by object name, notes sorted.
Json verdict_to_json(const TheoremVerdict& v);
Json witness_verdict_to_json(const WitnessVerdict& v);
Json violations_to_json(const ValidationReport& r);

/// Nodes are objects, edges the non-identity morphisms labelled by name.
std::string to_dot(const FinCat& c, std::string_view graph_name = "C");

/// "key.sub: value" lines, keys in canonical order.
std::string to_text(const Json& doc);

// Order shuffling. The results are isomorphic to the inputs with the objects,
// morphisms or simplices enumerated in a different order.

/// New object i is old objects[i]; likewise for morphisms.
FinCat reorder(const FinCat& c, const std::vector<ObjId>& objects, const std::vector<MorId>& morphisms);
FinCat shuffled(const FinCat& c, std::mt19937_64& rng);
CatFunctor shuffled(const CatFunctor& f, std::mt19937_64& rng);
CoverData shuffled(const CoverData& cover, std::mt19937_64& rng);
SimplicialSet shuffled(const SimplicialSet& s, std::mt19937_64& rng);

}  // namespace thma
