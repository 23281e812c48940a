#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "thma/simplicial.hpp"

namespace thma {

using Integer = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Integer>>;

/// Column-major sparse integer matrix. Arithmetic is checked: an entry that
/// leaves the 64-bit range raises ConsistencyFault.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, std::int64_t>;  ///< (row, value)

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  /// Entries of column c, sorted by row, no zeros.
  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }
  std::int64_t at(std::size_t r, std::size_t c) const;
  /// Adds v to entry (r, c).
  void add(std::size_t r, std::size_t c, std::int64_t v);
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  IntMatrix dense() const;
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

/// U·A·V = S with S diagonal, the diagonal a divisibility chain of
/// non-negative entries, and U, V unimodular.
struct SmithForm {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;
  std::vector<Integer> factors;  ///< the nonzero diagonal entries, in order
};

/// Throws ConsistencyFault if the witnesses fail to multiply out.
SmithForm smith_normal_form(const IntMatrix& a);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Rank and the invariant factors greater than one.
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

/// Unit-pivot sparse elimination followed by Smith normal form of the
/// remaining block.
InvariantFactors invariant_factors(const SparseMatrix& a);

/// A truncated chain complex of free abelian groups; boundary[n] has shape
/// ranks[n-1] x ranks[n] (boundary[0] is 0 x ranks[0]).
struct ChainComplex {
  int top = 0;
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrix> boundary;
};

/// Throws ConsistencyFault unless every ∂∂ vanishes and the shapes match.
void verify_complex(const ChainComplex& c);

/// Chains on the nondegenerate simplices. position[n][x] is the basis index of
/// simplex x, or -1 when x is degenerate.
struct NormalizedChains {
  ChainComplex complex;
  std::vector<std::vector<SimplexId>> basis;
  std::vector<std::vector<std::int64_t>> position;
};

NormalizedChains normalized_chains(const SimplicialSet& x);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return betti == 0 && torsion.empty(); }
  /// "0", "Z", "Z^2 + Z/2", ...
  std::string str() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// H_0 .. H_top; degrees above certified_through are not trustworthy because
/// the boundaries into them were cut off.
struct HomologyReport {
  std::vector<HomologyGroup> groups;
  int certified_through = -1;

  friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

HomologyReport homology(const ChainComplex& c);
HomologyReport simplicial_homology(const SimplicialSet& x);

/// Per-degree matrices target_n x source_n.
struct ChainMap {
  std::vector<SparseMatrix> maps;
};

/// Throws ConsistencyFault if the result does not commute with ∂.
ChainMap chain_map(const SimplicialMap& f, const NormalizedChains& source, const NormalizedChains& target);
/// cone_n = target_n + source_{n-1}, ∂(d, c) = (∂d + φc, -∂c), up to the
/// target's top degree.
ChainComplex mapping_cone(const ChainMap& phi, const ChainComplex& source, const ChainComplex& target);

/// Connected components of the 1-skeleton; component[x] for each vertex.
std::vector<std::size_t> components(const SimplicialSet& x);

struct EquivalenceVerdict {
  bool holds = false;          ///< cone acyclic through the degree and π0 bijective
  bool cone_acyclic = false;
  bool pi0_bijective = false;
  int through_degree = 0;
  std::vector<HomologyGroup> cone;  ///< H_0 .. H_through of the cone
  std::string guarantee;
};

/// Throws InvalidArgument unless 0 <= through_degree <= N - 1.
EquivalenceVerdict is_homology_equivalence(const SimplicialMap& f, int through_degree);

/// Tot_n = sum over p + q = n of the bidegree (p, q) simplices that are
/// nondegenerate in both directions, ∂ = ∂^v + (-1)^p ∂^h (∂^v lowers p,
/// ∂^h lowers q).
ChainComplex total_complex(const BiSimplicialSet& t);

/// h[n]: target_{n+1} x source_n for n = 0 .. N-1.
struct ChainHomotopy {
  std::vector<SparseMatrix> h;
};

/// Prism operator of H: X x Δ¹ -> Y. Throws InvalidArgument when
/// max_degree > N - 1.
ChainHomotopy chain_homotopy_from_simplicial(const SimplicialHomotopy& hom, const NormalizedChains& source,
                                             const NormalizedChains& target, int max_degree);

/// Checks ∂h + h∂ = end - start exactly in degrees 0 .. h.size()-1; returns the
/// failing degrees.
std::vector<int> verify_chain_homotopy(const ChainHomotopy& h, const ChainComplex& source, const ChainComplex& target,
                                       const ChainMap& start, const ChainMap& end);

}  // namespace thma
