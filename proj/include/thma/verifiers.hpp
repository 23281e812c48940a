#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thma/constructions.hpp"
#include "thma/homology.hpp"

namespace thma {

struct FullyFaithfulVerdict {
  bool holds = false;
  /// The comparison X1 -> (X0 x X0) x_{Y0 x Y0} Y1, materialized, is a
  /// bijection exactly when the per-pair check passes.
  bool pullback_agrees = false;
  std::vector<std::string> failures;  ///< "a,b: ..." per failing pair
};

FullyFaithfulVerdict is_fully_faithful(const CatFunctor& f);

struct EssentialSurjectivityVerdict {
  bool holds = false;
  std::size_t pullback_size = 0;      ///< |X0 x_{Y0} Y1^iso|
  std::vector<std::string> missing;   ///< objects of Y not hit by rho0
  std::string justification;
};

/// rho0: X0 x_{Y0} Y1^iso -> Y0, (x, g: f(x) ≅ y) |-> y, must be onto.
EssentialSurjectivityVerdict is_essentially_surjective(const CatFunctor& f);

struct ContractibilityCertificate {
  enum class Kind { initial_object, terminal_object, acyclic_connected, refused };

  Kind kind = Kind::refused;
  bool strong = false;
  std::optional<ObjId> witness;
  std::string witness_name;
  /// Homology of the nerve; for object witnesses this re-confirms the proxy.
  std::optional<HomologyReport> homology;
  bool proxy_confirms = false;
  std::string detail;

  bool certified() const { return kind != Kind::refused; }
};

const char* kind_name(ContractibilityCertificate::Kind k);

/// Initial object, then terminal object, then the homology proxy
/// (H_0 = Z, H_k = 0 for 1 <= k <= N-1). The empty category is refused.
ContractibilityCertificate certify_contractible(const CatPtr& c, int truncation = kDefaultTruncation,
                                                std::size_t budget = kDefaultLevelBudget);

struct FiberCertificate {
  std::string object;
  std::size_t objects = 0;
  std::size_t morphisms = 0;
  ContractibilityCertificate certificate;
};

struct TheoremVerdict {
  std::string theorem;  ///< "A", "A-prime", "Morita", "Segal-cover"
  bool hypothesis = false;
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::vector<FiberCertificate> fibers;
  std::vector<std::pair<std::string, bool>> checks;  ///< auxiliary structural checks
  EquivalenceVerdict conclusion;
  std::vector<std::string> notes;

  /// False only when the hypothesis holds and the conclusion does not.
  bool sound() const { return !hypothesis || conclusion.holds; }
};

/// Conclusions are certified through degree N - 2; N must be at least 2.
TheoremVerdict theorem_a_check(const CatFunctor& f, int truncation = kDefaultTruncation,
                               std::size_t budget = kDefaultLevelBudget);
TheoremVerdict morita_check(const CatFunctor& f, int truncation = kDefaultTruncation,
                            std::size_t budget = kDefaultLevelBudget);
/// Throws InvalidArgument if the pieces do not cover the base.
TheoremVerdict segal_cover_check(const CoverData& cover, int truncation = kDefaultTruncation,
                                 std::size_t budget = kDefaultLevelBudget);

struct WitnessVerdict {
  bool holds = false;
  bool witness_valid = false;
  bool section_ok = false;       ///< p∘s = id
  bool chain_identity = false;   ///< ∂h + h∂ = end - start in degrees 0..N-1
  bool fibrewise_applicable = false;
  bool fibrewise = false;        ///< h respects the splitting of chains by base object
  std::vector<std::string> notes;
};

WitnessVerdict shrinkable_witness_check(const AdjointSectionWitness& w, int truncation = kDefaultTruncation,
                                        std::size_t budget = kDefaultLevelBudget);

}  // namespace thma
