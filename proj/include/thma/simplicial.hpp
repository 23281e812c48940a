#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "thma/category.hpp"
#include "thma/constructions.hpp"
#include "thma/functor.hpp"

namespace thma {

using SimplexId = std::int32_t;

inline constexpr int kDefaultTruncation = 4;
inline constexpr std::size_t kDefaultLevelBudget = 200000;

/// A simplicial set truncated at level N, with every structure map tabulated.
///
/// faces[n][i] maps X_n -> X_{n-1} (n >= 1, 0 <= i <= n); degeneracies[n][i]
/// maps X_n -> X_{n+1} (n < N, 0 <= i <= n). Degenerate simplices are stored
/// explicitly and flagged.
struct SimplicialSet {
  int truncation = 0;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::vector<SimplexId>>> faces;
  std::vector<std::vector<std::vector<SimplexId>>> degeneracies;
  std::vector<std::vector<bool>> degenerate;

  std::size_t size(int n) const { return sizes[n]; }
  SimplexId face(int n, int i, SimplexId x) const { return faces[n][i][x]; }
  SimplexId degeneracy(int n, int i, SimplexId x) const { return degeneracies[n][i][x]; }
};

/// Sets the degenerate flags from the images of the degeneracies.
void mark_degenerate(SimplicialSet& s);

/// Every simplicial identity inside the truncation window; at most `limit`
/// violations are reported.
ValidationReport check_simplicial_identities(const SimplicialSet& s, std::size_t limit = 20);

struct SimplicialMap {
  std::shared_ptr<const SimplicialSet> source;
  std::shared_ptr<const SimplicialSet> target;
  std::vector<std::vector<SimplexId>> levels;

  SimplexId operator()(int n, SimplexId x) const { return levels[n][x]; }
};

ValidationReport check_simplicial_map(const SimplicialMap& m, std::size_t limit = 20);
SimplicialMap identity_map(const std::shared_ptr<const SimplicialSet>& s);
/// g∘f. Throws InvalidArgument when the sets do not line up.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// The nerve truncated at N, with the strings it is built from.
///
/// An n-simplex is a string a_0 -> ... -> a_n of n composable morphisms. The
/// strings at level n+1 extending x are contiguous, starting at
/// first_child[n][x], in the order of outgoing(last vertex of x).
struct Nerve {
  CatPtr category;
  std::shared_ptr<const SimplicialSet> sset;
  std::vector<std::vector<MorId>> strings;  ///< level n: n morphisms per simplex
  std::vector<std::vector<SimplexId>> first_child;

  MorId morphism(int n, SimplexId x, int j) const { return strings[n][static_cast<std::size_t>(x) * n + j]; }
  std::span<const MorId> string(int n, SimplexId x) const {
    return {strings[n].data() + static_cast<std::size_t>(x) * n, static_cast<std::size_t>(n)};
  }
  ObjId first_vertex(int n, SimplexId x) const { return n == 0 ? x : category->src(morphism(n, x, 0)); }
  ObjId last_vertex(int n, SimplexId x) const { return n == 0 ? x : category->tgt(morphism(n, x, n - 1)); }
  /// The simplex for a composable string starting at `start`.
  SimplexId find(ObjId start, std::span<const MorId> string) const;
};

/// Throws InvalidArgument unless N >= 1 and BudgetExceeded if a level would
/// hold more than `budget` simplices.
Nerve nerve(const CatPtr& c, int truncation = kDefaultTruncation, std::size_t budget = kDefaultLevelBudget);

SimplicialMap nerve_map(const CatFunctor& f, const Nerve& source, const Nerve& target);
SimplicialMap nerve_map(const CatFunctor& f, int truncation = kDefaultTruncation,
                        std::size_t budget = kDefaultLevelBudget);

/// Levelwise product X x Y; the simplex (x, y) at level n has index
/// x * |Y_n| + y.
SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y, std::size_t budget = kDefaultLevelBudget);

/// A bisimplicial set truncated at N in both directions. Horizontal maps act
/// on q, vertical maps on p.
struct BiSimplicialSet {
  struct Cell {
    std::size_t size = 0;
    std::vector<std::vector<SimplexId>> hface;  ///< T_{p,q} -> T_{p,q-1}
    std::vector<std::vector<SimplexId>> hdeg;   ///< T_{p,q} -> T_{p,q+1}
    std::vector<std::vector<SimplexId>> vface;  ///< T_{p,q} -> T_{p-1,q}
    std::vector<std::vector<SimplexId>> vdeg;   ///< T_{p,q} -> T_{p+1,q}
  };

  int truncation = 0;
  std::vector<Cell> cells;

  Cell& at(int p, int q) { return cells[static_cast<std::size_t>(p) * (truncation + 1) + q]; }
  const Cell& at(int p, int q) const { return cells[static_cast<std::size_t>(p) * (truncation + 1) + q]; }
  std::size_t size(int p, int q) const { return at(p, q).size; }
};

/// Horizontal and vertical identities plus commutation of every horizontal
/// map with every vertical map.
ValidationReport check_bisimplicial_identities(const BiSimplicialSet& t, std::size_t limit = 20);

/// T_{pq} = K_p, horizontal maps the identity.
BiSimplicialSet constant_in_q(const SimplicialSet& k);

/// The simplicial set of the rows p = n: T_{n,n}, d_i = d_i^h d_i^v,
/// s_i = s_i^h s_i^v.
SimplicialSet diagonal(const BiSimplicialSet& t);

struct BiSimplicialMap {
  std::shared_ptr<const BiSimplicialSet> source;
  std::shared_ptr<const BiSimplicialSet> target;
  std::vector<std::vector<SimplexId>> cells;  ///< same layout as BiSimplicialSet::cells
};

ValidationReport check_bisimplicial_map(const BiSimplicialMap& m, std::size_t limit = 20);
SimplicialMap diagonal_map(const BiSimplicialMap& m, std::shared_ptr<const SimplicialSet> source,
                           std::shared_ptr<const SimplicialSet> target);

/// D(f) for f: X -> Y. A (p, q)-simplex is a Y-string z_0 -> ... -> z_p (read
/// in Y^op as the chain from z_p back to z_0), a morphism eta: z_p -> f(x_0)
/// and an X-string x_0 -> ... -> x_q.
struct BisimplicialD {
  CatFunctor f;
  Nerve ny;
  Nerve nx;
  std::shared_ptr<const BiSimplicialSet> sset;

  struct Element {
    SimplexId y_string;
    MorId eta;
    SimplexId x_string;
  };
  /// All elements of T_{pq} in index order.
  std::vector<Element> elements(int p, int q) const;
  SimplexId index_of(int p, int q, const Element& e) const;

  std::vector<std::vector<SimplexId>> group_position;               ///< [q][x-string]
  std::vector<std::vector<std::vector<SimplexId>>> groups;          ///< [q][y object] -> x-strings
  std::vector<std::vector<std::size_t>> slot_base;                  ///< [p][y-string]
  std::vector<std::vector<std::size_t>> offsets;                    ///< [p * (N+1) + q][slot]
};

BisimplicialD bisimplicial_D(const CatFunctor& f, int truncation = kDefaultTruncation,
                             std::size_t budget = kDefaultLevelBudget);

/// The levelwise bijection dD(f)_n -> N(S(f))_n, checked against every face
/// and degeneracy.
struct DiagonalNerveIso {
  BisimplicialD d;
  std::shared_ptr<const SimplicialSet> diagonal;
  SpanDiagram span;
  Nerve nerve_s;
  SimplicialMap forward;
};

/// Throws ConsistencyFault if a level fails to biject or a square fails.
DiagonalNerveIso check_diag_equals_nerve_S(const CatFunctor& f, int truncation = kDefaultTruncation,
                                           std::size_t budget = kDefaultLevelBudget);

/// D(f) -> constant-in-q N(Y^op), forgetting eta and the X-string.
struct ProjectionBeta {
  Nerve ny_op;
  BiSimplicialMap map;
};

ProjectionBeta projection_beta(const BisimplicialD& d);

/// H: X x Δ¹ -> Y with its two ends.
struct SimplicialHomotopy {
  Nerve source;                                   ///< N(C)
  Nerve target;                                   ///< N(D)
  Nerve interval;                                 ///< Δ¹ = N(2)
  std::shared_ptr<const SimplicialSet> cylinder;  ///< N(C) x Δ¹
  SimplicialMap map;
  SimplicialMap start;
  SimplicialMap end;
};

/// The two ends of a homotopy obtained by restricting to the vertex 0 or 1.
SimplicialMap restrict_to_end(const SimplicialHomotopy& h, int vertex);

/// Throws ConsistencyFault if the ends are not nerve_map(F) and nerve_map(G).
SimplicialHomotopy nat_trans_to_homotopy(const NatTrans& alpha, int truncation = kDefaultTruncation,
                                         std::size_t budget = kDefaultLevelBudget);

/// The Δ¹ n-simplex 0..0 1..1 with `zeros` zeros (0 <= zeros <= n + 1).
SimplexId interval_simplex(const Nerve& interval, int n, int zeros);

}  // namespace thma
