#include "thma/simplicial.hpp"

#include <algorithm>
#include <string>

#include "thma/error.hpp"

namespace thma {

namespace {

using Level = std::vector<SimplexId>;

void check_budget(std::size_t count, std::size_t budget, const std::string& what) {
  if (count > budget) {
    throw BudgetExceeded(what + " needs " + std::to_string(count) + " simplices, budget is " + std::to_string(budget));
  }
}

// Walks every simplicial identity of a truncated simplicial object given by
// accessors; `where` names the row in messages.
template <typename Size, typename Face, typename Deg>
void check_identities(int N, Size size, Face d, Deg s, const std::string& where, std::size_t limit,
                      std::vector<std::string>& out) {
  auto fail = [&](const std::string& what, int n, std::size_t x) {
    if (out.size() < limit) out.push_back(where + what + " fails on simplex " + std::to_string(x) + " of level " + std::to_string(n));
  };
  for (int n = 2; n <= N; ++n)
    for (std::size_t x = 0; x < size(n); ++x) {
      const auto sx = static_cast<SimplexId>(x);
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          if (d(n - 1, i, d(n, j, sx)) != d(n - 1, j - 1, d(n, i, sx))) {
            fail("d" + std::to_string(i) + "d" + std::to_string(j) + " = d" + std::to_string(j - 1) + "d" + std::to_string(i), n, x);
          }
        }
    }
  for (int n = 0; n < N; ++n)
    for (std::size_t x = 0; x < size(n); ++x) {
      const auto sx = static_cast<SimplexId>(x);
      for (int j = 0; j <= n; ++j) {
        const SimplexId up = s(n, j, sx);
        for (int i = 0; i <= n + 1; ++i) {
          const SimplexId lhs = d(n + 1, i, up);
          SimplexId rhs;
          if (i == j || i == j + 1) {
            rhs = sx;
          } else if (i < j) {
            rhs = s(n - 1, j - 1, d(n, i, sx));
          } else {
            rhs = s(n - 1, j, d(n, i - 1, sx));
          }
          if (lhs != rhs) fail("d" + std::to_string(i) + "s" + std::to_string(j), n, x);
        }
        if (n + 2 > N) continue;
        for (int i = 0; i <= j; ++i) {
          if (s(n + 1, i, up) != s(n + 1, j + 1, s(n, i, sx))) {
            fail("s" + std::to_string(i) + "s" + std::to_string(j) + " = s" + std::to_string(j + 1) + "s" + std::to_string(i), n, x);
          }
        }
      }
    }
}

std::shared_ptr<const SimplicialSet> share_sset(SimplicialSet s) {
  return std::make_shared<const SimplicialSet>(std::move(s));
}

SimplicialSet empty_levels(int N) {
  SimplicialSet s;
  s.truncation = N;
  s.sizes.assign(N + 1, 0);
  s.faces.resize(N + 1);
  s.degeneracies.resize(N + 1);
  s.degenerate.resize(N + 1);
  return s;
}

}  // namespace

void mark_degenerate(SimplicialSet& s) {
  s.degenerate.assign(s.truncation + 1, {});
  for (int n = 0; n <= s.truncation; ++n) s.degenerate[n].assign(s.sizes[n], false);
  for (int n = 0; n < s.truncation; ++n)
    for (const auto& level : s.degeneracies[n])
      for (SimplexId y : level) s.degenerate[n + 1][y] = true;
}

ValidationReport check_simplicial_identities(const SimplicialSet& s, std::size_t limit) {
  ValidationReport report;
  check_identities(
      s.truncation, [&](int n) { return s.sizes[n]; },
      [&](int n, int i, SimplexId x) { return s.faces[n][i][x]; },
      [&](int n, int i, SimplexId x) { return s.degeneracies[n][i][x]; }, "", limit, report.violations);
  return report;
}

ValidationReport check_simplicial_map(const SimplicialMap& m, std::size_t limit) {
  ValidationReport report;
  auto& out = report.violations;
  const SimplicialSet& a = *m.source;
  const SimplicialSet& b = *m.target;
  if (a.truncation != b.truncation || static_cast<int>(m.levels.size()) != a.truncation + 1) {
    out.push_back("truncations do not match");
    return report;
  }
  for (int n = 0; n <= a.truncation; ++n) {
    if (m.levels[n].size() != a.sizes[n]) {
      out.push_back("level " + std::to_string(n) + " has the wrong size");
      return report;
    }
  }
  for (int n = 0; n <= a.truncation && out.size() < limit; ++n)
    for (std::size_t x = 0; x < a.sizes[n] && out.size() < limit; ++x) {
      const auto sx = static_cast<SimplexId>(x);
      const SimplexId fx = m.levels[n][x];
      if (fx < 0 || static_cast<std::size_t>(fx) >= b.sizes[n]) {
        out.push_back("simplex " + std::to_string(x) + " of level " + std::to_string(n) + " maps out of range");
        continue;
      }
      if (n >= 1)
        for (int i = 0; i <= n; ++i)
          if (m.levels[n - 1][a.faces[n][i][sx]] != b.faces[n][i][fx]) {
            out.push_back("d" + std::to_string(i) + " not preserved at simplex " + std::to_string(x) + " of level " + std::to_string(n));
          }
      if (n < a.truncation)
        for (int i = 0; i <= n; ++i)
          if (m.levels[n + 1][a.degeneracies[n][i][sx]] != b.degeneracies[n][i][fx]) {
            out.push_back("s" + std::to_string(i) + " not preserved at simplex " + std::to_string(x) + " of level " + std::to_string(n));
          }
    }
  return report;
}

SimplicialMap identity_map(const std::shared_ptr<const SimplicialSet>& s) {
  SimplicialMap m{s, s, {}};
  for (int n = 0; n <= s->truncation; ++n) {
    Level level(s->sizes[n]);
    for (std::size_t x = 0; x < level.size(); ++x) level[x] = static_cast<SimplexId>(x);
    m.levels.push_back(std::move(level));
  }
  return m;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (f.target != g.source && f.target->sizes != g.source->sizes) throw InvalidArgument("simplicial maps do not compose");
  SimplicialMap m{f.source, g.target, {}};
  for (std::size_t n = 0; n < f.levels.size(); ++n) {
    Level level(f.levels[n].size());
    for (std::size_t x = 0; x < level.size(); ++x) level[x] = g.levels[n][f.levels[n][x]];
    m.levels.push_back(std::move(level));
  }
  return m;
}

// ---------------------------------------------------------------------------

SimplexId Nerve::find(ObjId start, std::span<const MorId> string) const {
  if (string.size() >= first_child.size()) throw InvalidArgument("string longer than the truncation");
  SimplexId idx = start;
  ObjId v = start;
  for (std::size_t j = 0; j < string.size(); ++j) {
    const MorId m = string[j];
    if (category->src(m) != v) throw InvalidArgument("string is not composable");
    idx = first_child[j][idx] + static_cast<SimplexId>(category->outgoing_position(m));
    v = category->tgt(m);
  }
  return idx;
}

Nerve nerve(const CatPtr& cp, int N, std::size_t budget) {
  if (N < 1) throw InvalidArgument("nerve: truncation must be at least 1");
  const FinCat& c = *cp;
  Nerve nv;
  nv.category = cp;
  nv.strings.assign(N + 1, {});
  nv.first_child.assign(N + 1, {});
  SimplicialSet s = empty_levels(N);
  check_budget(c.num_objects(), budget, "nerve level 0");
  s.sizes[0] = c.num_objects();

  for (int n = 0; n < N; ++n) {
    std::size_t count = 0;
    for (std::size_t x = 0; x < s.sizes[n]; ++x) count += c.outgoing(nv.last_vertex(n, static_cast<SimplexId>(x))).size();
    check_budget(count, budget, "nerve level " + std::to_string(n + 1));
    auto& children = nv.first_child[n];
    children.resize(s.sizes[n]);
    auto& next = nv.strings[n + 1];
    next.reserve(count * (n + 1));
    std::size_t running = 0;
    for (std::size_t x = 0; x < s.sizes[n]; ++x) {
      const auto sx = static_cast<SimplexId>(x);
      children[x] = static_cast<SimplexId>(running);
      const auto prefix = nv.string(n, sx);
      for (MorId m : c.outgoing(nv.last_vertex(n, sx))) {
        next.insert(next.end(), prefix.begin(), prefix.end());
        next.push_back(m);
        ++running;
      }
    }
    s.sizes[n + 1] = count;
  }

  std::vector<MorId> buf;
  for (int n = 1; n <= N; ++n) {
    s.faces[n].assign(n + 1, Level(s.sizes[n]));
    for (std::size_t x = 0; x < s.sizes[n]; ++x) {
      const auto sx = static_cast<SimplexId>(x);
      const auto str = nv.string(n, sx);
      for (int i = 0; i <= n; ++i) {
        SimplexId r;
        if (n == 1) {
          r = i == 0 ? c.tgt(str[0]) : c.src(str[0]);
        } else if (i == 0) {
          r = nv.find(c.tgt(str[0]), str.subspan(1));
        } else if (i == n) {
          r = nv.find(c.src(str[0]), str.first(n - 1));
        } else {
          buf.assign(str.begin(), str.end());
          buf[i - 1] = c.compose(str[i], str[i - 1]);
          buf.erase(buf.begin() + i);
          r = nv.find(c.src(str[0]), buf);
        }
        s.faces[n][i][x] = r;
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    s.degeneracies[n].assign(n + 1, Level(s.sizes[n]));
    for (std::size_t x = 0; x < s.sizes[n]; ++x) {
      const auto sx = static_cast<SimplexId>(x);
      const auto str = nv.string(n, sx);
      for (int i = 0; i <= n; ++i) {
        const ObjId v = i == 0 ? nv.first_vertex(n, sx) : c.tgt(str[i - 1]);
        buf.assign(str.begin(), str.end());
        buf.insert(buf.begin() + i, c.identity(v));
        s.degeneracies[n][i][x] = nv.find(nv.first_vertex(n, sx), buf);
      }
    }
  }
  mark_degenerate(s);
  nv.sset = share_sset(std::move(s));
  return nv;
}

SimplicialMap nerve_map(const CatFunctor& f, const Nerve& source, const Nerve& target) {
  SimplicialMap m{source.sset, target.sset, {}};
  std::vector<MorId> buf;
  for (int n = 0; n <= source.sset->truncation; ++n) {
    Level level(source.sset->sizes[n]);
    for (std::size_t x = 0; x < level.size(); ++x) {
      const auto sx = static_cast<SimplexId>(x);
      buf.clear();
      for (MorId g : source.string(n, sx)) buf.push_back(f.on_morphism(g));
      level[x] = target.find(f.on_object(source.first_vertex(n, sx)), buf);
    }
    m.levels.push_back(std::move(level));
  }
  return m;
}

SimplicialMap nerve_map(const CatFunctor& f, int N, std::size_t budget) {
  return nerve_map(f, nerve(f.dom(), N, budget), nerve(f.cod(), N, budget));
}

SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y, std::size_t budget) {
  if (x.truncation != y.truncation) throw InvalidArgument("product: truncations differ");
  const int N = x.truncation;
  SimplicialSet s = empty_levels(N);
  for (int n = 0; n <= N; ++n) {
    check_budget(x.sizes[n] * y.sizes[n], budget, "product level " + std::to_string(n));
    s.sizes[n] = x.sizes[n] * y.sizes[n];
  }
  for (int n = 0; n <= N; ++n) {
    const std::size_t ny = y.sizes[n];
    if (n >= 1) {
      s.faces[n].assign(n + 1, Level(s.sizes[n]));
      for (int i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < s.sizes[n]; ++k)
          s.faces[n][i][k] = static_cast<SimplexId>(x.faces[n][i][k / ny] * y.sizes[n - 1] + y.faces[n][i][k % ny]);
    }
    if (n < N) {
      s.degeneracies[n].assign(n + 1, Level(s.sizes[n]));
      for (int i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < s.sizes[n]; ++k)
          s.degeneracies[n][i][k] =
              static_cast<SimplexId>(x.degeneracies[n][i][k / ny] * y.sizes[n + 1] + y.degeneracies[n][i][k % ny]);
    }
  }
  mark_degenerate(s);
  return s;
}

// ---------------------------------------------------------------------------

ValidationReport check_bisimplicial_identities(const BiSimplicialSet& t, std::size_t limit) {
  ValidationReport report;
  auto& out = report.violations;
  const int N = t.truncation;
  for (int p = 0; p <= N; ++p) {
    check_identities(
        N, [&](int q) { return t.size(p, q); },
        [&](int q, int i, SimplexId x) { return t.at(p, q).hface[i][x]; },
        [&](int q, int i, SimplexId x) { return t.at(p, q).hdeg[i][x]; }, "row p=" + std::to_string(p) + ": ", limit,
        out);
  }
  for (int q = 0; q <= N; ++q) {
    check_identities(
        N, [&](int p) { return t.size(p, q); },
        [&](int p, int i, SimplexId x) { return t.at(p, q).vface[i][x]; },
        [&](int p, int i, SimplexId x) { return t.at(p, q).vdeg[i][x]; }, "column q=" + std::to_string(q) + ": ", limit,
        out);
  }
  auto fail = [&](const std::string& what, int p, int q, std::size_t x) {
    if (out.size() < limit) {
      out.push_back(what + " do not commute on simplex " + std::to_string(x) + " of (" + std::to_string(p) + "," +
                    std::to_string(q) + ")");
    }
  };
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      const auto& cell = t.at(p, q);
      for (std::size_t x = 0; x < cell.size; ++x) {
        // Horizontal maps: (q-1 via face, q+1 via degeneracy); vertical likewise in p.
        for (int i = 0; q >= 1 && i <= q; ++i) {
          const SimplexId h = cell.hface[i][x];
          for (int j = 0; p >= 1 && j <= p; ++j)
            if (t.at(p - 1, q).hface[i][cell.vface[j][x]] != t.at(p, q - 1).vface[j][h]) fail("horizontal and vertical faces", p, q, x);
          for (int j = 0; p < N && j <= p; ++j)
            if (t.at(p + 1, q).hface[i][cell.vdeg[j][x]] != t.at(p, q - 1).vdeg[j][h]) fail("horizontal face and vertical degeneracy", p, q, x);
        }
        for (int i = 0; q < N && i <= q; ++i) {
          const SimplexId h = cell.hdeg[i][x];
          for (int j = 0; p >= 1 && j <= p; ++j)
            if (t.at(p - 1, q).hdeg[i][cell.vface[j][x]] != t.at(p, q + 1).vface[j][h]) fail("horizontal degeneracy and vertical face", p, q, x);
          for (int j = 0; p < N && j <= p; ++j)
            if (t.at(p + 1, q).hdeg[i][cell.vdeg[j][x]] != t.at(p, q + 1).vdeg[j][h]) fail("horizontal and vertical degeneracies", p, q, x);
        }
      }
    }
  return report;
}

namespace {

BiSimplicialSet empty_bisimplicial(int N) {
  BiSimplicialSet t;
  t.truncation = N;
  t.cells.resize(static_cast<std::size_t>(N + 1) * (N + 1));
  return t;
}

}  // namespace

BiSimplicialSet constant_in_q(const SimplicialSet& k) {
  const int N = k.truncation;
  BiSimplicialSet t = empty_bisimplicial(N);
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      auto& cell = t.at(p, q);
      cell.size = k.sizes[p];
      Level id(cell.size);
      for (std::size_t x = 0; x < id.size(); ++x) id[x] = static_cast<SimplexId>(x);
      if (q >= 1) cell.hface.assign(q + 1, id);
      if (q < N) cell.hdeg.assign(q + 1, id);
      if (p >= 1) cell.vface = k.faces[p];
      if (p < N) cell.vdeg = k.degeneracies[p];
    }
  return t;
}

SimplicialSet diagonal(const BiSimplicialSet& t) {
  const int N = t.truncation;
  SimplicialSet s = empty_levels(N);
  for (int n = 0; n <= N; ++n) s.sizes[n] = t.size(n, n);
  for (int n = 0; n <= N; ++n) {
    const auto& cell = t.at(n, n);
    if (n >= 1) {
      s.faces[n].assign(n + 1, Level(cell.size));
      for (int i = 0; i <= n; ++i)
        for (std::size_t x = 0; x < cell.size; ++x) s.faces[n][i][x] = t.at(n - 1, n).hface[i][cell.vface[i][x]];
    }
    if (n < N) {
      s.degeneracies[n].assign(n + 1, Level(cell.size));
      for (int i = 0; i <= n; ++i)
        for (std::size_t x = 0; x < cell.size; ++x) s.degeneracies[n][i][x] = t.at(n + 1, n).hdeg[i][cell.vdeg[i][x]];
    }
  }
  mark_degenerate(s);
  return s;
}

ValidationReport check_bisimplicial_map(const BiSimplicialMap& m, std::size_t limit) {
  ValidationReport report;
  auto& out = report.violations;
  const BiSimplicialSet& a = *m.source;
  const BiSimplicialSet& b = *m.target;
  const int N = a.truncation;
  if (b.truncation != N || m.cells.size() != a.cells.size()) {
    out.push_back("truncations do not match");
    return report;
  }
  auto at = [&](int p, int q) -> const Level& { return m.cells[static_cast<std::size_t>(p) * (N + 1) + q]; };
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q)
      if (at(p, q).size() != a.size(p, q)) {
        out.push_back("cell (" + std::to_string(p) + "," + std::to_string(q) + ") has the wrong size");
        return report;
      }
  auto fail = [&](const std::string& what, int p, int q, std::size_t x) {
    if (out.size() < limit) {
      out.push_back(what + " not preserved at simplex " + std::to_string(x) + " of (" + std::to_string(p) + "," +
                    std::to_string(q) + ")");
    }
  };
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      const auto& ca = a.at(p, q);
      const auto& cb = b.at(p, q);
      for (std::size_t x = 0; x < ca.size; ++x) {
        const SimplexId fx = at(p, q)[x];
        for (int i = 0; q >= 1 && i <= q; ++i)
          if (at(p, q - 1)[ca.hface[i][x]] != cb.hface[i][fx]) fail("horizontal face", p, q, x);
        for (int i = 0; q < N && i <= q; ++i)
          if (at(p, q + 1)[ca.hdeg[i][x]] != cb.hdeg[i][fx]) fail("horizontal degeneracy", p, q, x);
        for (int i = 0; p >= 1 && i <= p; ++i)
          if (at(p - 1, q)[ca.vface[i][x]] != cb.vface[i][fx]) fail("vertical face", p, q, x);
        for (int i = 0; p < N && i <= p; ++i)
          if (at(p + 1, q)[ca.vdeg[i][x]] != cb.vdeg[i][fx]) fail("vertical degeneracy", p, q, x);
      }
    }
  return report;
}

SimplicialMap diagonal_map(const BiSimplicialMap& m, std::shared_ptr<const SimplicialSet> source,
                           std::shared_ptr<const SimplicialSet> target) {
  const int N = m.source->truncation;
  SimplicialMap out{std::move(source), std::move(target), {}};
  for (int n = 0; n <= N; ++n) out.levels.push_back(m.cells[static_cast<std::size_t>(n) * (N + 1) + n]);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<BisimplicialD::Element> BisimplicialD::elements(int p, int q) const {
  const FinCat& y = *ny.category;
  std::vector<Element> out;
  out.reserve(sset->size(p, q));
  for (std::size_t s = 0; s < ny.sset->sizes[p]; ++s) {
    const auto ss = static_cast<SimplexId>(s);
    for (MorId eta : y.outgoing(ny.last_vertex(p, ss)))
      for (SimplexId t : groups[q][y.tgt(eta)]) out.push_back({ss, eta, t});
  }
  return out;
}

SimplexId BisimplicialD::index_of(int p, int q, const Element& e) const {
  const int N = sset->truncation;
  const std::size_t slot = slot_base[p][e.y_string] + ny.category->outgoing_position(e.eta);
  return static_cast<SimplexId>(offsets[static_cast<std::size_t>(p) * (N + 1) + q][slot] + group_position[q][e.x_string]);
}

BisimplicialD bisimplicial_D(const CatFunctor& f, int N, std::size_t budget) {
  BisimplicialD d;
  d.f = f;
  d.ny = nerve(f.cod(), N, budget);
  d.nx = nerve(f.dom(), N, budget);
  const FinCat& y = *f.cod();
  const Nerve& ny = d.ny;
  const Nerve& nx = d.nx;

  d.groups.assign(N + 1, std::vector<std::vector<SimplexId>>(y.num_objects()));
  d.group_position.resize(N + 1);
  for (int q = 0; q <= N; ++q) {
    d.group_position[q].resize(nx.sset->sizes[q]);
    for (std::size_t t = 0; t < nx.sset->sizes[q]; ++t) {
      auto& group = d.groups[q][f.on_object(nx.first_vertex(q, static_cast<SimplexId>(t)))];
      d.group_position[q][t] = static_cast<SimplexId>(group.size());
      group.push_back(static_cast<SimplexId>(t));
    }
  }
  d.slot_base.resize(N + 1);
  for (int p = 0; p <= N; ++p) {
    std::size_t running = 0;
    d.slot_base[p].resize(ny.sset->sizes[p]);
    for (std::size_t s = 0; s < ny.sset->sizes[p]; ++s) {
      d.slot_base[p][s] = running;
      running += y.outgoing(ny.last_vertex(p, static_cast<SimplexId>(s))).size();
    }
    check_budget(running, budget * 16, "D(f) slot table at p=" + std::to_string(p));
  }

  BiSimplicialSet t = empty_bisimplicial(N);
  d.offsets.resize(t.cells.size());
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      auto& offs = d.offsets[static_cast<std::size_t>(p) * (N + 1) + q];
      std::size_t running = 0;
      for (std::size_t s = 0; s < ny.sset->sizes[p]; ++s)
        for (MorId eta : y.outgoing(ny.last_vertex(p, static_cast<SimplexId>(s)))) {
          offs.push_back(running);
          running += d.groups[q][y.tgt(eta)].size();
        }
      check_budget(running, budget, "D(f) at (" + std::to_string(p) + "," + std::to_string(q) + ")");
      t.at(p, q).size = running;
    }
  d.sset = std::make_shared<const BiSimplicialSet>(t);

  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      auto& cell = t.at(p, q);
      const auto elems = d.elements(p, q);
      if (p >= 1) cell.vface.assign(p + 1, Level(cell.size));
      if (p < N) cell.vdeg.assign(p + 1, Level(cell.size));
      if (q >= 1) cell.hface.assign(q + 1, Level(cell.size));
      if (q < N) cell.hdeg.assign(q + 1, Level(cell.size));
      for (std::size_t x = 0; x < elems.size(); ++x) {
        const auto& [s, eta, tt] = elems[x];
        for (int i = 0; p >= 1 && i <= p; ++i) {
          BisimplicialD::Element e{ny.sset->faces[p][p - i][s], eta, tt};
          if (i == 0) e.eta = y.compose(eta, ny.morphism(p, s, p - 1));
          cell.vface[i][x] = d.index_of(p - 1, q, e);
        }
        for (int i = 0; p < N && i <= p; ++i) {
          cell.vdeg[i][x] = d.index_of(p + 1, q, {ny.sset->degeneracies[p][p - i][s], eta, tt});
        }
        for (int i = 0; q >= 1 && i <= q; ++i) {
          BisimplicialD::Element e{s, eta, nx.sset->faces[q][i][tt]};
          if (i == 0) e.eta = y.compose(f.on_morphism(nx.morphism(q, tt, 0)), eta);
          cell.hface[i][x] = d.index_of(p, q - 1, e);
        }
        for (int i = 0; q < N && i <= q; ++i) {
          cell.hdeg[i][x] = d.index_of(p, q + 1, {s, eta, nx.sset->degeneracies[q][i][tt]});
        }
      }
    }
  d.sset = std::make_shared<const BiSimplicialSet>(std::move(t));
  return d;
}

DiagonalNerveIso check_diag_equals_nerve_S(const CatFunctor& f, int N, std::size_t budget) {
  DiagonalNerveIso iso{bisimplicial_D(f, N, budget), nullptr, s_category(f), {}, {}};
  iso.diagonal = share_sset(diagonal(*iso.d.sset));
  iso.nerve_s = nerve(iso.span.category, N, budget);
  const FinCat& y = *f.cod();
  const Nerve& ny = iso.d.ny;
  const Nerve& nx = iso.d.nx;
  const TwistedArrow& tw = iso.span.twisted;
  const Pullback& pb = iso.span.pullback;

  iso.forward = SimplicialMap{iso.diagonal, iso.nerve_s.sset, {}};
  std::vector<MorId> buf;
  for (int n = 0; n <= N; ++n) {
    if (iso.diagonal->sizes[n] != iso.nerve_s.sset->sizes[n]) {
      throw ConsistencyFault("dD(f) and N(S(f)) differ in size at level " + std::to_string(n) + ": " +
                             std::to_string(iso.diagonal->sizes[n]) + " vs " + std::to_string(iso.nerve_s.sset->sizes[n]));
    }
    Level level;
    std::vector<bool> hit(iso.nerve_s.sset->sizes[n]);
    for (const auto& [s, eta, t] : iso.d.elements(n, n)) {
      auto start = pb.object_of(eta, nx.first_vertex(n, t));
      if (!start) throw ConsistencyFault("diagonal vertex is not an object of S(f)");
      buf.clear();
      MorId g = eta;
      for (int j = 1; j <= n; ++j) {
        const MorId k = ny.morphism(n, s, n - j);
        const MorId nu = nx.morphism(n, t, j - 1);
        const MorId h = f.on_morphism(nu);
        auto tm = tw.find(g, h, k);
        if (!tm) throw ConsistencyFault("diagonal edge is not a twisted arrow");
        auto sm = pb.morphism_of(*tm, nu);
        if (!sm) throw ConsistencyFault("diagonal edge is not a morphism of S(f)");
        buf.push_back(*sm);
        g = y.compose(h, y.compose(g, k));
      }
      const SimplexId image = iso.nerve_s.find(*start, buf);
      if (hit[image]) throw ConsistencyFault("dD(f) -> N(S(f)) is not injective at level " + std::to_string(n));
      hit[image] = true;
      level.push_back(image);
    }
    iso.forward.levels.push_back(std::move(level));
  }
  auto report = check_simplicial_map(iso.forward, 1);
  if (!report.ok()) throw ConsistencyFault("dD(f) -> N(S(f)): " + report.violations.front());
  return iso;
}

ProjectionBeta projection_beta(const BisimplicialD& d) {
  const int N = d.sset->truncation;
  const Nerve& ny = d.ny;
  std::size_t largest = 0;
  for (auto sz : ny.sset->sizes) largest = std::max(largest, sz);
  ProjectionBeta beta;
  beta.ny_op = nerve(share(opposite(*ny.category)), N, largest);
  auto target = std::make_shared<const BiSimplicialSet>(constant_in_q(*beta.ny_op.sset));

  std::vector<std::vector<SimplexId>> reversed(N + 1);
  std::vector<MorId> buf;
  for (int p = 0; p <= N; ++p) {
    reversed[p].resize(ny.sset->sizes[p]);
    for (std::size_t s = 0; s < reversed[p].size(); ++s) {
      const auto ss = static_cast<SimplexId>(s);
      auto str = ny.string(p, ss);
      buf.assign(str.rbegin(), str.rend());
      reversed[p][s] = beta.ny_op.find(ny.last_vertex(p, ss), buf);
    }
  }
  beta.map = BiSimplicialMap{d.sset, target, {}};
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      Level cell;
      for (const auto& e : d.elements(p, q)) cell.push_back(reversed[p][e.y_string]);
      beta.map.cells.push_back(std::move(cell));
    }
  return beta;
}

// ---------------------------------------------------------------------------

SimplexId interval_simplex(const Nerve& interval, int n, int zeros) {
  if (zeros < 0 || zeros > n + 1) throw InvalidArgument("interval_simplex: bad vertex split");
  // interval: id0 = 0, id1 = 1, u = 2.
  std::vector<MorId> str;
  for (int j = 0; j < n; ++j) {
    const bool a = j < zeros, b = j + 1 < zeros;
    str.push_back(a && b ? 0 : (!a && !b ? 1 : 2));
  }
  return interval.find(zeros > 0 ? 0 : 1, str);
}

SimplicialMap restrict_to_end(const SimplicialHomotopy& h, int vertex) {
  const int N = h.cylinder->truncation;
  SimplicialMap m{h.source.sset, h.map.target, {}};
  for (int n = 0; n <= N; ++n) {
    const SimplexId e = interval_simplex(h.interval, n, vertex == 0 ? n + 1 : 0);
    const std::size_t width = h.interval.sset->sizes[n];
    Level level(h.source.sset->sizes[n]);
    for (std::size_t x = 0; x < level.size(); ++x) level[x] = h.map.levels[n][x * width + e];
    m.levels.push_back(std::move(level));
  }
  return m;
}

SimplicialHomotopy nat_trans_to_homotopy(const NatTrans& alpha, int N, std::size_t budget) {
  const CatFunctor cyl = nat_trans_as_functor(alpha);
  SimplicialHomotopy h;
  h.source = nerve(alpha.source.dom(), N, budget);
  h.target = nerve(alpha.source.cod(), N, budget);
  h.interval = nerve(share(interval_category()), N, budget);
  h.cylinder = share_sset(product(*h.source.sset, *h.interval.sset, budget));
  h.map = SimplicialMap{h.cylinder, h.target.sset, {}};

  std::vector<MorId> buf;
  for (int n = 0; n <= N; ++n) {
    const std::size_t width = h.interval.sset->sizes[n];
    Level level(h.cylinder->sizes[n]);
    for (std::size_t k = 0; k < level.size(); ++k) {
      const auto x = static_cast<SimplexId>(k / width);
      const auto e = static_cast<SimplexId>(k % width);
      buf.clear();
      for (int j = 0; j < n; ++j) buf.push_back(cyl.on_morphism(h.source.morphism(n, x, j) * 3 + h.interval.morphism(n, e, j)));
      const ObjId start = cyl.on_object(h.source.first_vertex(n, x) * 2 + h.interval.first_vertex(n, e));
      level[k] = h.target.find(start, buf);
    }
    h.map.levels.push_back(std::move(level));
  }
  h.start = restrict_to_end(h, 0);
  h.end = restrict_to_end(h, 1);
  if (h.start.levels != nerve_map(alpha.source, h.source, h.target).levels) {
    throw ConsistencyFault("homotopy does not start at the nerve of the source functor");
  }
  if (h.end.levels != nerve_map(alpha.target, h.source, h.target).levels) {
    throw ConsistencyFault("homotopy does not end at the nerve of the target functor");
  }
  return h;
}

}  // namespace thma
