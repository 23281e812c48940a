#include "thma/homology.hpp"

#include <algorithm>
#include <numeric>

#include "thma/error.hpp"

namespace thma {

namespace {

struct Overflow {};

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ConsistencyFault("matrix entry leaves the 64-bit range");
  return static_cast<std::int64_t>(v);
}

// Overflow-signalling arithmetic for the fast elimination path; the cpp_int
// overloads never signal.
std::int64_t mul(std::int64_t a, std::int64_t b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t sub(std::int64_t a, std::int64_t b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
Integer mul(const Integer& a, const Integer& b) { return a * b; }
Integer sub(const Integer& a, const Integer& b) { return a - b; }

template <typename T>
bool is_unit(const T& v) {
  return v == 1 || v == -1;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

SmithForm smith_impl(IntMatrix a, std::size_t cols, bool witnesses) {
  const std::size_t m = a.size(), n = cols;
  SmithForm out;
  if (witnesses) {
    out.u = identity_matrix(m);
    out.v = identity_matrix(n);
  }
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (witnesses) std::swap(out.u[i], out.u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    if (witnesses)
      for (auto& row : out.v) std::swap(row[i], row[j]);
  };
  // row dst -= q * row src
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (a[src][j] != 0) a[dst][j] -= q * a[src][j];
    if (witnesses)
      for (std::size_t j = 0; j < m; ++j)
        if (out.u[src][j] != 0) out.u[dst][j] -= q * out.u[src][j];
  };
  // col dst -= q * col src
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (a[i][src] != 0) a[i][dst] -= q * a[i][src];
    if (witnesses)
      for (std::size_t i = 0; i < n; ++i)
        if (out.v[i][src] != 0) out.v[i][dst] -= q * out.v[i][src];
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t bi = m, bj = n;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (a[i][j] == 0) continue;
        Integer v = abs(a[i][j]);
        if (bi == m || v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi == m) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        add_row(i, t, Integer(a[i][t] / a[t][t]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        add_col(j, t, Integer(a[t][j] / a[t][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        std::size_t ri = m, cj = n;
        Integer small = abs(a[t][t]);
        for (std::size_t i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && abs(a[i][t]) < small) {
            small = abs(a[i][t]);
            ri = i;
            cj = n;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[t][j] != 0 && abs(a[t][j]) < small) {
            small = abs(a[t][j]);
            cj = j;
            ri = m;
          }
        if (ri != m) swap_rows(t, ri);
        if (cj != n) swap_cols(t, cj);
        continue;
      }
      bool spread = false;
      for (std::size_t i = t + 1; i < m && !spread; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, i, Integer(-1));
            spread = true;
            break;
          }
      if (!spread) break;
    }
    if (a[t][t] < 0) {
      for (auto& v : a[t]) v = -v;
      if (witnesses)
        for (auto& v : out.u[t]) v = -v;
    }
  }
  for (std::size_t t = 0; t < steps; ++t)
    if (a[t][t] != 0) out.factors.push_back(a[t][t]);
  out.s = std::move(a);
  return out;
}

template <typename T>
InvariantFactors eliminate(const SparseMatrix& a) {
  using Row = std::vector<std::pair<std::size_t, T>>;
  const std::size_t nrows = a.rows(), ncols = a.cols();
  std::vector<Row> rows(nrows);
  std::vector<std::vector<std::size_t>> col_rows(ncols);
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto& [r, v] : a.column(c)) {
      rows[r].push_back({c, T(v)});
      col_rows[c].push_back(r);
    }
  std::vector<bool> row_live(nrows, true), col_done(ncols, false);
  std::vector<std::size_t> stamp(nrows, SIZE_MAX);

  auto entry = [&](std::size_t r, std::size_t c) -> const T* {
    const Row& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  };

  InvariantFactors out;
  Row merged;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (col_done[c]) continue;
      std::vector<std::size_t> live;
      for (std::size_t r : col_rows[c]) {
        if (!row_live[r] || stamp[r] == c || !entry(r, c)) continue;
        stamp[r] = c;
        live.push_back(r);
      }
      for (std::size_t r : live) stamp[r] = SIZE_MAX;
      col_rows[c] = live;
      if (live.empty()) {
        col_done[c] = true;
        continue;
      }
      std::size_t pivot = nrows;
      for (std::size_t r : live)
        if (is_unit(*entry(r, c)) && (pivot == nrows || rows[r].size() < rows[pivot].size())) pivot = r;
      if (pivot == nrows) continue;

      const T pv = *entry(pivot, c);
      const Row& prow = rows[pivot];
      for (std::size_t r : live) {
        if (r == pivot) continue;
        const T factor = mul(*entry(r, c), pv);
        Row& row = rows[r];
        merged.clear();
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < prow.size()) {
          if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
            merged.push_back(row[i++]);
          } else if (i == row.size() || prow[j].first < row[i].first) {
            T v = sub(T(0), mul(factor, prow[j].second));
            if (v != 0) {
              merged.push_back({prow[j].first, v});
              col_rows[prow[j].first].push_back(r);
            }
            ++j;
          } else {
            T v = sub(row[i].second, mul(factor, prow[j].second));
            if (v != 0) merged.push_back({row[i].first, v});
            ++i;
            ++j;
          }
        }
        row.swap(merged);
      }
      row_live[pivot] = false;
      col_done[c] = true;
      ++out.rank;
      progress = true;
    }
  }

  std::vector<std::size_t> rest_rows, rest_cols;
  std::vector<std::int64_t> col_index(ncols, -1);
  for (std::size_t r = 0; r < nrows; ++r) {
    if (!row_live[r] || rows[r].empty()) continue;
    rest_rows.push_back(r);
    for (const auto& e : rows[r])
      if (col_index[e.first] < 0) {
        col_index[e.first] = 0;
        rest_cols.push_back(e.first);
      }
  }
  if (rest_rows.empty()) return out;
  std::sort(rest_cols.begin(), rest_cols.end());
  for (std::size_t k = 0; k < rest_cols.size(); ++k) col_index[rest_cols[k]] = static_cast<std::int64_t>(k);
  IntMatrix block(rest_rows.size(), std::vector<Integer>(rest_cols.size()));
  for (std::size_t k = 0; k < rest_rows.size(); ++k)
    for (const auto& [c, v] : rows[rest_rows[k]]) block[k][col_index[c]] = Integer(v);
  SmithForm snf = smith_impl(std::move(block), rest_cols.size(), false);
  for (const auto& f : snf.factors) {
    ++out.rank;
    if (f != 1) out.torsion.push_back(f);
  }
  return out;
}

void copy_block(SparseMatrix& dst, const SparseMatrix& src, std::size_t row0, std::size_t col0, std::int64_t sign) {
  for (std::size_t c = 0; c < src.cols(); ++c)
    for (const auto& [r, v] : src.column(c)) dst.add(row0 + r, col0 + c, sign * v);
}

}  // namespace

// ---------------------------------------------------------------------------

std::int64_t SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t k) { return e.first < k; });
  return it != col.end() && it->first == r ? it->second : 0;
}

void SparseMatrix::add(std::size_t r, std::size_t c, std::int64_t v) {
  if (r >= rows_ || c >= columns_.size()) throw InvalidArgument("matrix index out of range");
  if (v == 0) return;
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != col.end() && it->first == r) {
    it->second = narrow(static_cast<__int128>(it->second) + v);
    if (it->second == 0) col.erase(it);
  } else {
    col.insert(it, {r, v});
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

IntMatrix SparseMatrix::dense() const {
  IntMatrix m(rows_, std::vector<Integer>(cols()));
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : columns_[c]) m[r][c] = v;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw InvalidArgument("ragged matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.add(r, c, rows[r][c]);
  }
  return m;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shapes do not multiply");
  SparseMatrix out(a.rows(), b.cols());
  std::vector<__int128> acc(a.rows());
  std::vector<bool> seen(a.rows());
  std::vector<std::size_t> touched;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    touched.clear();
    for (const auto& [k, bv] : b.column(j))
      for (const auto& [i, av] : a.column(k)) {
        if (!seen[i]) {
          seen[i] = true;
          touched.push_back(i);
        }
        acc[i] += static_cast<__int128>(av) * bv;
      }
    std::sort(touched.begin(), touched.end());
    auto& col = out.columns_[j];
    for (std::size_t i : touched) {
      if (acc[i] != 0) col.push_back({i, narrow(acc[i])});
      acc[i] = 0;
      seen[i] = false;
    }
  }
  return out;
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, std::int64_t sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix shapes differ");
  SparseMatrix out = a;
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (const auto& [r, v] : b.column(c)) out.add(r, c, sign * v);
  return out;
}

}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, 1); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, -1); }

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t m = a.size(), k = b.size();
  const std::size_t n = b.empty() ? 0 : b[0].size();
  IntMatrix out(m, std::vector<Integer>(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != k) throw InvalidArgument("matrix shapes do not multiply");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != cols) throw InvalidArgument("ragged matrix");
  SmithForm snf = smith_impl(a, cols, true);
  if (!a.empty() && cols > 0 && multiply(multiply(snf.u, a), snf.v) != snf.s) {
    throw ConsistencyFault("Smith normal form witnesses do not multiply out");
  }
  for (std::size_t i = 0; i < snf.s.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (i != j && snf.s[i][j] != 0) throw ConsistencyFault("Smith normal form is not diagonal");
  for (std::size_t k = 1; k < snf.factors.size(); ++k)
    if (snf.factors[k] % snf.factors[k - 1] != 0) throw ConsistencyFault("invariant factors do not form a divisibility chain");
  return snf;
}

InvariantFactors invariant_factors(const SparseMatrix& a) {
  try {
    return eliminate<std::int64_t>(a);
  } catch (const Overflow&) {
    return eliminate<Integer>(a);
  }
}

// ---------------------------------------------------------------------------

void verify_complex(const ChainComplex& c) {
  if (c.ranks.size() != static_cast<std::size_t>(c.top + 1) || c.boundary.size() != c.ranks.size()) {
    throw ConsistencyFault("chain complex has the wrong number of degrees");
  }
  for (int n = 0; n <= c.top; ++n) {
    const auto& d = c.boundary[n];
    const std::size_t below = n == 0 ? 0 : c.ranks[n - 1];
    if (d.rows() != below || d.cols() != c.ranks[n]) throw ConsistencyFault("boundary matrix has the wrong shape");
    if (n >= 2 && !(c.boundary[n - 1] * d).is_zero()) {
      throw ConsistencyFault("boundary squares to a nonzero map in degree " + std::to_string(n));
    }
  }
}

NormalizedChains normalized_chains(const SimplicialSet& x) {
  const int N = x.truncation;
  NormalizedChains out;
  out.complex.top = N;
  out.basis.resize(N + 1);
  out.position.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    out.position[n].assign(x.sizes[n], -1);
    for (std::size_t s = 0; s < x.sizes[n]; ++s) {
      if (x.degenerate[n][s]) continue;
      out.position[n][s] = static_cast<std::int64_t>(out.basis[n].size());
      out.basis[n].push_back(static_cast<SimplexId>(s));
    }
    out.complex.ranks.push_back(out.basis[n].size());
  }
  out.complex.boundary.emplace_back(0, out.complex.ranks[0]);
  for (int n = 1; n <= N; ++n) {
    SparseMatrix d(out.complex.ranks[n - 1], out.complex.ranks[n]);
    for (std::size_t k = 0; k < out.basis[n].size(); ++k)
      for (int i = 0; i <= n; ++i) {
        const auto pos = out.position[n - 1][x.faces[n][i][out.basis[n][k]]];
        if (pos >= 0) d.add(static_cast<std::size_t>(pos), k, i % 2 == 0 ? 1 : -1);
      }
    out.complex.boundary.push_back(std::move(d));
  }
  verify_complex(out.complex);
  return out;
}

std::string HomologyGroup::str() const {
  if (trivial()) return "0";
  std::string s;
  auto append = [&](const std::string& part) { s += (s.empty() ? "" : " + ") + part; };
  if (betti == 1) append("Z");
  if (betti > 1) append("Z^" + std::to_string(betti));
  for (const auto& t : torsion) append("Z/" + t.str());
  return s;
}

HomologyReport homology(const ChainComplex& c) {
  const int N = c.top;
  std::vector<InvariantFactors> elim(N + 1);
  for (int n = 1; n <= N; ++n) elim[n] = invariant_factors(c.boundary[n]);
  HomologyReport report;
  report.certified_through = N - 1;
  for (int n = 0; n <= N; ++n) {
    HomologyGroup g;
    const std::size_t out_rank = n >= 1 ? elim[n].rank : 0;
    const std::size_t in_rank = n < N ? elim[n + 1].rank : 0;
    g.betti = c.ranks[n] - out_rank - in_rank;
    if (n < N) g.torsion = elim[n + 1].torsion;
    report.groups.push_back(std::move(g));
  }
  return report;
}

HomologyReport simplicial_homology(const SimplicialSet& x) { return homology(normalized_chains(x).complex); }

ChainMap chain_map(const SimplicialMap& f, const NormalizedChains& source, const NormalizedChains& target) {
  const int N = source.complex.top;
  ChainMap phi;
  for (int n = 0; n <= N; ++n) {
    SparseMatrix m(target.complex.ranks[n], source.complex.ranks[n]);
    for (std::size_t k = 0; k < source.basis[n].size(); ++k) {
      const auto pos = target.position[n][f.levels[n][source.basis[n][k]]];
      if (pos >= 0) m.add(static_cast<std::size_t>(pos), k, 1);
    }
    phi.maps.push_back(std::move(m));
  }
  for (int n = 1; n <= N; ++n) {
    if (!(target.complex.boundary[n] * phi.maps[n] == phi.maps[n - 1] * source.complex.boundary[n])) {
      throw ConsistencyFault("chain map does not commute with the boundary in degree " + std::to_string(n));
    }
  }
  return phi;
}

ChainComplex mapping_cone(const ChainMap& phi, const ChainComplex& source, const ChainComplex& target) {
  const int N = target.top;
  if (source.top != N || phi.maps.size() != static_cast<std::size_t>(N + 1)) throw InvalidArgument("mapping_cone: degrees differ");
  auto src_rank = [&](int n) -> std::size_t { return n < 0 ? 0 : source.ranks[n]; };
  ChainComplex cone;
  cone.top = N;
  for (int n = 0; n <= N; ++n) cone.ranks.push_back(target.ranks[n] + src_rank(n - 1));
  cone.boundary.emplace_back(0, cone.ranks[0]);
  for (int n = 1; n <= N; ++n) {
    SparseMatrix d(cone.ranks[n - 1], cone.ranks[n]);
    copy_block(d, target.boundary[n], 0, 0, 1);
    copy_block(d, phi.maps[n - 1], 0, target.ranks[n], 1);
    if (n >= 2) copy_block(d, source.boundary[n - 1], target.ranks[n - 1], target.ranks[n], -1);
    cone.boundary.push_back(std::move(d));
  }
  verify_complex(cone);
  return cone;
}

std::vector<std::size_t> components(const SimplicialSet& x) {
  std::vector<std::size_t> parent(x.sizes[0]);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  if (x.truncation >= 1)
    for (std::size_t e = 0; e < x.sizes[1]; ++e) {
      auto a = root(x.faces[1][0][e]), b = root(x.faces[1][1][e]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> label(x.sizes[0]);
  std::vector<std::int64_t> relabel(x.sizes[0], -1);
  std::size_t next = 0;
  for (std::size_t v = 0; v < label.size(); ++v) {
    auto r = root(v);
    if (relabel[r] < 0) relabel[r] = static_cast<std::int64_t>(next++);
    label[v] = static_cast<std::size_t>(relabel[r]);
  }
  return label;
}

EquivalenceVerdict is_homology_equivalence(const SimplicialMap& f, int through_degree) {
  const int N = f.source->truncation;
  if (through_degree < 0 || through_degree > N - 1) {
    throw InvalidArgument("is_homology_equivalence: degree must lie in 0.." + std::to_string(N - 1));
  }
  const auto source = normalized_chains(*f.source);
  const auto target = normalized_chains(*f.target);
  const auto cone = mapping_cone(chain_map(f, source, target), source.complex, target.complex);
  const auto report = homology(cone);

  EquivalenceVerdict v;
  v.through_degree = through_degree;
  v.cone.assign(report.groups.begin(), report.groups.begin() + through_degree + 1);
  v.cone_acyclic = std::all_of(v.cone.begin(), v.cone.end(), [](const HomologyGroup& g) { return g.trivial(); });

  const auto cs = components(*f.source);
  const auto ct = components(*f.target);
  const std::size_t ns = cs.empty() ? 0 : *std::max_element(cs.begin(), cs.end()) + 1;
  const std::size_t nt = ct.empty() ? 0 : *std::max_element(ct.begin(), ct.end()) + 1;
  std::vector<std::int64_t> image(ns, -1);
  std::vector<bool> hit(nt, false);
  bool injective = true;
  for (std::size_t x = 0; x < cs.size(); ++x) {
    const auto t = static_cast<std::int64_t>(ct[f.levels[0][x]]);
    if (image[cs[x]] < 0) {
      image[cs[x]] = t;
      if (hit[t]) injective = false;
      hit[t] = true;
    }
  }
  v.pi0_bijective = injective && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  v.holds = v.cone_acyclic && v.pi0_bijective;
  const std::string d = std::to_string(through_degree);
  if (v.holds) {
    v.guarantee = "pi0 bijective; H_k isomorphic for k < " + d + " and onto in degree " + d +
                  " (homology proxy, fundamental groups not checked)";
  } else if (!v.pi0_bijective) {
    v.guarantee = "pi0 is not bijective";
  } else {
    v.guarantee = "mapping cone has homology in degree <= " + d;
  }
  return v;
}

ChainComplex total_complex(const BiSimplicialSet& t) {
  const int N = t.truncation;
  const std::size_t width = static_cast<std::size_t>(N + 1);
  std::vector<std::vector<std::int64_t>> position(width * width);
  std::vector<std::vector<SimplexId>> basis(width * width);
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      std::vector<bool> degenerate(t.size(p, q));
      if (q >= 1)
        for (const auto& level : t.at(p, q - 1).hdeg)
          for (SimplexId y : level) degenerate[y] = true;
      if (p >= 1)
        for (const auto& level : t.at(p - 1, q).vdeg)
          for (SimplexId y : level) degenerate[y] = true;
      auto& pos = position[p * width + q];
      pos.assign(t.size(p, q), -1);
      for (std::size_t x = 0; x < pos.size(); ++x) {
        if (degenerate[x]) continue;
        pos[x] = static_cast<std::int64_t>(basis[p * width + q].size());
        basis[p * width + q].push_back(static_cast<SimplexId>(x));
      }
    }

  ChainComplex tot;
  tot.top = N;
  std::vector<std::size_t> offset(width * width, 0);
  for (int n = 0; n <= N; ++n) {
    std::size_t rank = 0;
    for (int p = 0; p <= n; ++p) {
      offset[p * width + (n - p)] = rank;
      rank += basis[p * width + (n - p)].size();
    }
    tot.ranks.push_back(rank);
  }
  tot.boundary.emplace_back(0, tot.ranks[0]);
  for (int n = 1; n <= N; ++n) {
    SparseMatrix d(tot.ranks[n - 1], tot.ranks[n]);
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      const auto& cell = t.at(p, q);
      const auto& b = basis[p * width + q];
      for (std::size_t k = 0; k < b.size(); ++k) {
        const std::size_t col = offset[p * width + q] + k;
        for (int i = 0; q >= 1 && i <= q; ++i) {
          const auto pos = position[p * width + (q - 1)][cell.hface[i][b[k]]];
          if (pos >= 0) d.add(offset[p * width + (q - 1)] + pos, col, (p + i) % 2 == 0 ? 1 : -1);
        }
        for (int i = 0; p >= 1 && i <= p; ++i) {
          const auto pos = position[(p - 1) * width + q][cell.vface[i][b[k]]];
          if (pos >= 0) d.add(offset[(p - 1) * width + q] + pos, col, i % 2 == 0 ? 1 : -1);
        }
      }
    }
    tot.boundary.push_back(std::move(d));
  }
  verify_complex(tot);
  return tot;
}

ChainHomotopy chain_homotopy_from_simplicial(const SimplicialHomotopy& hom, const NormalizedChains& source,
                                             const NormalizedChains& target, int max_degree) {
  const int N = hom.cylinder->truncation;
  if (max_degree > N - 1) {
    throw InvalidArgument("chain homotopy in degree " + std::to_string(max_degree) + " needs truncation " +
                          std::to_string(max_degree + 1) + ", have " + std::to_string(N));
  }
  const SimplicialSet& x = *hom.source.sset;
  ChainHomotopy out;
  for (int n = 0; n <= max_degree; ++n) {
    SparseMatrix h(target.complex.ranks[n + 1], source.complex.ranks[n]);
    const std::size_t width = hom.interval.sset->sizes[n + 1];
    for (std::size_t k = 0; k < source.basis[n].size(); ++k)
      for (int i = 0; i <= n; ++i) {
        const SimplexId up = x.degeneracies[n][i][source.basis[n][k]];
        const SimplexId gamma = interval_simplex(hom.interval, n + 1, i + 1);
        const SimplexId y = hom.map.levels[n + 1][static_cast<std::size_t>(up) * width + gamma];
        const auto pos = target.position[n + 1][y];
        if (pos >= 0) h.add(static_cast<std::size_t>(pos), k, i % 2 == 0 ? 1 : -1);
      }
    out.h.push_back(std::move(h));
  }
  return out;
}

std::vector<int> verify_chain_homotopy(const ChainHomotopy& h, const ChainComplex& source, const ChainComplex& target,
                                       const ChainMap& start, const ChainMap& end) {
  std::vector<int> failing;
  for (std::size_t n = 0; n < h.h.size(); ++n) {
    SparseMatrix lhs = target.boundary[n + 1] * h.h[n];
    if (n >= 1) lhs = lhs + h.h[n - 1] * source.boundary[n];
    if (!(lhs == end.maps[n] - start.maps[n])) failing.push_back(static_cast<int>(n));
  }
  return failing;
}

}  // namespace thma
