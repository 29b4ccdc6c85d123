#include "oda/coverage.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "combinatorics.hpp"

namespace oda {

std::size_t max_cells() {
  const char* e = std::getenv("ODA_MAX_CELLS");
  if (e && *e) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

namespace {

struct Engine {
  const RationalPolytope& target;
  const std::vector<RationalPolytope>& pieces;
  bool collect_all;
  std::vector<RationalPolytope> leftover;
  std::vector<bool> used;
  std::size_t explored = 0;

  bool relevant(const RationalPolytope& piece) const {
    if (piece.ambient() != target.ambient()) throw DimensionError("cover: dimension mismatch");
    if (piece.dim() < target.dim()) return false;
    for (const auto& e : piece.equations())
      for (const auto& v : target.vertices())
        if (sgn(e.eval(v)) != 0) return false;
    return true;
  }

  // every vertex <= 0 on some facet and one of them strictly
  static bool separated(const RationalPolytope& cell, const RationalPolytope& piece) {
    for (const auto& f : piece.facets()) {
      bool strict = false, ok = true;
      for (const auto& v : cell.vertices()) {
        int s = sgn(f.eval(v));
        if (s > 0) {
          ok = false;
          break;
        }
        if (s < 0) strict = true;
      }
      if (ok && strict) return true;
    }
    return false;
  }

  void run() {
    const int k = target.dim();
    const std::size_t limit = max_cells();
    used.assign(pieces.size(), false);
    std::vector<bool> rel(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) rel[i] = relevant(pieces[i]);
    std::vector<std::pair<RationalPolytope, std::size_t>> stack;
    stack.emplace_back(target, 0);
    while (!stack.empty()) {
      auto [cell, i] = std::move(stack.back());
      stack.pop_back();
      if (++explored > limit)
        throw CellLimitError("splitting engine exceeded " + std::to_string(limit) + " cells");
      while (i < pieces.size() && (!rel[i] || separated(cell, pieces[i]))) ++i;
      if (i == pieces.size()) {
        leftover.push_back(std::move(cell));
        if (!collect_all) return;
        continue;
      }
      const RationalPolytope& piece = pieces[i];
      used[i] = true;
      if (piece.contains(cell)) continue;
      std::optional<RationalPolytope> cur = cell;
      for (const auto& f : piece.facets()) {
        bool neg = false, pos = false;
        for (const auto& v : cur->vertices()) {
          int s = sgn(f.eval(v));
          if (s < 0) neg = true;
          if (s > 0) pos = true;
        }
        if (!neg) continue;
        if (!pos) {
          // cell lies outside this facet
          stack.emplace_back(std::move(*cur), i + 1);
          cur.reset();
          break;
        }
        auto out = clip(*cur, Halfspace{-f.normal, -f.offset});
        if (out && out->dim() == k) stack.emplace_back(std::move(*out), i + 1);
        cur = clip(*cur, f);
        if (!cur || cur->dim() < k) {
          cur.reset();
          break;
        }
      }
    }
  }
};

CoverReport finish(Engine& e) {
  CoverReport r;
  r.cells_explored = e.explored;
  r.pieces_used = static_cast<std::size_t>(std::count(e.used.begin(), e.used.end(), true));
  if (e.leftover.empty()) {
    r.covered = true;
    return r;
  }
  // barycenter first; lower-dimensional pieces may pass through it, so walk toward vertices
  const RationalPolytope& cell = e.leftover.front();
  RatVector b = cell.barycenter();
  auto free = [&](const RatVector& w) {
    if (!e.target.contains(w)) return false;
    for (const auto& p : e.pieces)
      if (p.contains(w)) return false;
    return true;
  };
  std::optional<RatVector> w;
  if (free(b)) w = b;
  for (long m = 2; !w && m < 64; ++m)
    for (const auto& v : cell.vertices()) {
      RatVector c = b + (v - b) * Rat(Int(1), Int(m));
      if (free(c)) {
        w = c;
        break;
      }
    }
  if (!w) throw std::logic_error("no verified witness in a residual cell");
  r.covered = false;
  r.witness = *w;
  return r;
}

}  // namespace

CoverReport covers(const RationalPolytope& target, const std::vector<RationalPolytope>& pieces) {
  Engine e{target, pieces, false, {}, {}, 0};
  if (pieces.empty()) {
    CoverReport r;
    r.witness = target.vertices().front();
    return r;
  }
  e.run();
  return finish(e);
}

std::vector<RationalPolytope> residual_cells(const RationalPolytope& target,
                                             const std::vector<RationalPolytope>& pieces) {
  Engine e{target, pieces, true, {}, {}, 0};
  e.run();
  return std::move(e.leftover);
}

std::vector<RationalPolytope> vertex_fit_pieces(const RationalPolytope& p, const Rat& c) {
  if (sgn(c) <= 0 || c > 1) throw Error("vertex_fit_cover needs 0 < c <= 1, got " + to_string(c));
  std::vector<RationalPolytope> out;
  for (const auto& v : p.vertices()) out.push_back(homothety(p, c, v));
  return out;
}

CoverReport vertex_fit_cover(const RationalPolytope& p, const Rat& c) {
  return covers(p, vertex_fit_pieces(p, c));
}

Rat max_min_supnorm(const RationalPolytope& cell, const std::vector<RatVector>& verts) {
  const int d = cell.ambient();
  auto supdist = [&](const RatVector& x, const RatVector& v) {
    Rat m = 0;
    for (int i = 0; i < d; ++i) {
      Rat t = abs(x[i] - v[i]);
      if (t > m) m = t;
    }
    return m;
  };
  auto value = [&](const RatVector& x) {
    Rat best = supdist(x, verts[0]);
    for (std::size_t j = 1; j < verts.size(); ++j) {
      Rat t = supdist(x, verts[j]);
      if (t < best) best = t;
    }
    return best;
  };
  // prune vertices that can never be nearest inside the cell
  std::vector<Rat> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = hi[i] = cell.vertices()[0][i];
    for (const auto& x : cell.vertices()) {
      if (x[i] < lo[i]) lo[i] = x[i];
      if (x[i] > hi[i]) hi[i] = x[i];
    }
  }
  std::vector<Rat> lb, ub;
  for (const auto& v : verts) {
    Rat l = 0;
    for (int i = 0; i < d; ++i) {
      Rat t = v[i] < lo[i] ? Rat(lo[i] - v[i]) : (v[i] > hi[i] ? Rat(v[i] - hi[i]) : Rat(0));
      if (t > l) l = t;
    }
    Rat u = 0;
    for (const auto& x : cell.vertices()) {
      Rat t = supdist(x, v);
      if (t > u) u = t;
    }
    lb.push_back(l);
    ub.push_back(u);
  }
  Rat cap = *std::min_element(ub.begin(), ub.end());
  std::vector<RatVector> near;
  for (std::size_t j = 0; j < verts.size(); ++j)
    if (lb[j] <= cap) near.push_back(verts[j]);

  // equalities in (x, r): cell constraints and r = s (x_i - v_i)
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  for (const auto& h : cell.halfspaces()) {
    std::vector<Rat> a;
    for (int i = 0; i < d; ++i) a.emplace_back(h.normal[i]);
    a.emplace_back(0);
    rows.push_back(a);
    rhs.push_back(-h.offset);
  }
  for (const auto& v : near)
    for (int i = 0; i < d; ++i)
      for (int s : {1, -1}) {
        std::vector<Rat> a(d + 1, Rat(0));
        a[i] = s;
        a[d] = -1;
        rows.push_back(a);
        rhs.push_back(Rat(s) * v[i]);
      }
  Rat best = 0;
  for (const auto& x : cell.vertices()) best = std::max(best, value(x));
  const int n = static_cast<int>(rows.size());
  std::vector<RatVector> cand;
  // solve in d+1 unknowns; RatVector caps at 3 so do elimination by hand
  detail::for_each_subset(n, d + 1, [&](const std::vector<int>& s) {
    const int m = d + 1;
    std::vector<std::vector<Rat>> a;
    for (int r : s) {
      auto row = rows[r];
      row.push_back(rhs[r]);
      a.push_back(std::move(row));
    }
    for (int c = 0; c < m; ++c) {
      int p = -1;
      for (int r = c; r < m; ++r)
        if (sgn(a[r][c]) != 0) {
          p = r;
          break;
        }
      if (p < 0) return true;
      std::swap(a[c], a[p]);
      for (int r = 0; r < m; ++r) {
        if (r == c || sgn(a[r][c]) == 0) continue;
        Rat f = a[r][c] / a[c][c];
        for (int j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
      }
    }
    std::vector<Rat> x;
    for (int i = 0; i < d; ++i) x.push_back(a[i][m] / a[i][i]);
    RatVector xv(x);
    if (cell.contains(xv)) {
      Rat t = value(xv);
      if (t > best) best = t;
    }
    return true;
  });
  return best;
}

QuasiCoverReport quasi_cover_report(const RationalPolytope& target,
                                    const std::vector<RationalPolytope>& pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (!target.contains(pieces[i])) throw Error("piece " + std::to_string(i) + " is not inside the target");
  auto cells = residual_cells(target, pieces);
  QuasiCoverReport rep;
  rep.max_vertex_distance = 0;
  const int k = target.dim();
  std::vector<int> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      auto x = intersect(cells[a], cells[b]);
      if (x && x->dim() == k - 1) parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
    }
  std::vector<std::vector<int>> groups(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  for (const auto& g : groups) {
    if (g.empty()) continue;
    ResidualComponent c{{}, hull(std::vector<RatVector>{target.vertices()[0]}), false};
    std::vector<RatVector> pts;
    for (int i : g) {
      c.cells.push_back(cells[i]);
      for (const auto& v : cells[i].vertices()) pts.push_back(v);
    }
    c.hull = hull(pts);
    c.convex = covers(c.hull, c.cells).covered;
    rep.leftover_components.push_back(std::move(c));
  }
  for (const auto& cell : cells) {
    Rat t = max_min_supnorm(cell, target.vertices());
    if (t > rep.max_vertex_distance) rep.max_vertex_distance = t;
  }
  return rep;
}

CoverReport minkowski_weyl_check(const Polyhedron& q) {
  const auto& gens = q.recession().generators;
  auto faces = finite_boundary(q);
  if (gens.empty()) return covers(q.finite_part(), faces);
  IntVector s = interior_dual_vector(q.recession());
  Rat h = dot(s, q.finite_part().vertices()[0]);
  for (const auto& v : q.finite_part().vertices()) h = std::max(h, dot(s, v));
  Int gmax = dot(s, gens[0]);
  for (const auto& g : gens) gmax = std::max(gmax, dot(s, g));
  h += gmax;
  auto t = q.truncate(s, h);
  if (!t) throw std::logic_error("empty truncation of a nonempty polyhedron");
  std::vector<RationalPolytope> pieces;
  for (const auto& f : faces) {
    auto pt = polyhedron_sum(f, q.recession()).truncate(s, h);
    if (pt) pieces.push_back(*pt);
  }
  for (const auto& p : pieces)
    for (const auto& v : p.vertices())
      if (!t->contains(v)) {
        CoverReport r;
        r.witness = v;
        return r;
      }
  return covers(*t, pieces);
}

}  // namespace oda
