#include "oda/toric.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <set>

#include "combinatorics.hpp"

namespace oda {

namespace {

std::string cone_name(const Fan& f, int ci) {
  std::string s = "cone " + std::to_string(ci) + " [";
  for (std::size_t i = 0; i < f.max_cones[ci].size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.max_cones[ci][i]);
  }
  return s + "]";
}

std::vector<RatVector> ray_rows(const Fan& f, const std::vector<int>& idx) {
  std::vector<RatVector> r;
  for (int i : idx) r.push_back(to_rat(f.rays[i]));
  return r;
}

void same_fan_or_throw(const ToricLineBundle& a, const ToricLineBundle& b) {
  if (a.fan != b.fan && !same_fan(*a.fan, *b.fan)) throw Error("line bundles live on different fans");
  if (a.coeffs.size() != b.coeffs.size()) throw Error("coefficient count mismatch");
}

void check_bundle(const ToricLineBundle& l) {
  if (!l.fan) throw Error("line bundle without a fan");
  if (l.coeffs.size() != l.fan->rays.size())
    throw Error("expected " + std::to_string(l.fan->rays.size()) + " coefficients, got " +
                std::to_string(l.coeffs.size()));
}

bool nonneg(const std::vector<Int>& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) >= 0; });
}

std::vector<Int> sub(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector as_vec(const std::vector<Int>& x) { return IntVector(x); }

// {x : lo <= A x <= hi} over Picard coordinates
std::vector<std::vector<Int>> box_points(const PicardFrame& fr, const Int& lo, const Int& hi) {
  std::vector<Halfspace> hs;
  for (const auto& row : fr.matrix) {
    IntVector a(row);
    hs.push_back({a, Rat(-lo)});
    hs.push_back({-a, Rat(hi)});
  }
  auto p = from_halfspaces(fr.rank(), hs);
  std::vector<std::vector<Int>> out;
  if (!p) return out;
  for (const auto& x : lattice_points(*p)) out.push_back(x.coords());
  return out;
}

// sigma meets tau in the face spanned by their common rays
bool meet_in_face(const Fan& f, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  std::set<IntVector> shared;
  for (int r : common) shared.insert(f.rays[r]);
  auto gens = [&](const std::vector<int>& c) {
    std::vector<IntVector> g;
    for (int r : c) g.push_back(f.rays[r]);
    return g;
  };
  auto da = dual_cone_generators(gens(a), f.dim), db = dual_cone_generators(gens(b), f.dim);
  std::vector<IntVector> both(da);
  both.insert(both.end(), db.begin(), db.end());
  for (const auto& g : dual_cone_generators(both, f.dim))
    if (!shared.count(primitive(g))) return false;
  // the common rays must span a face of each cone, not just a subcone
  for (const auto* c : {&a, &b}) {
    const auto& dual = c == &a ? da : db;
    IntVector n(static_cast<std::size_t>(f.dim));
    for (const auto& m : dual) {
      bool zero = true;
      for (int r : common) zero = zero && sgn(dot(m, f.rays[r])) == 0;
      if (zero) n += m;
    }
    for (int r : *c)
      if (sgn(dot(n, f.rays[r])) == 0 && !shared.count(f.rays[r])) return false;
  }
  return true;
}

}  // namespace

Fan make_fan(std::vector<IntVector> rays, std::vector<std::vector<int>> cones) {
  if (rays.empty()) throw Error("fan has no rays");
  const int d = rays[0].dim();
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].dim() != d) throw DimensionError("ray " + std::to_string(i) + " has the wrong dimension");
    if (rays[i].is_zero() || !is_primitive(rays[i]))
      throw Error("ray " + std::to_string(i) + " " + to_string(rays[i]) + " is not primitive");
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) throw Error("ray " + std::to_string(j) + " repeats ray " + std::to_string(i));
  Fan f;
  f.rays = std::move(rays);
  f.dim = d;
  if (cones.empty()) throw Error("fan has no maximal cones");
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  f.max_cones = std::move(cones);
  for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    const auto& c = f.max_cones[ci];
    for (int r : c)
      if (r < 0 || r >= static_cast<int>(f.rays.size()))
        throw Error(cone_name(f, ci) + " refers to a missing ray");
    if (rank(ray_rows(f, c)) != d) throw Error(cone_name(f, ci) + " is not full-dimensional");
    Cone k{{}, d};
    for (int r : c) k.generators.push_back(f.rays[r]);
    if (!is_pointed(k)) throw Error(cone_name(f, ci) + " is not strongly convex");
    for (std::size_t cj = 0; cj < ci; ++cj) {
      if (f.max_cones[cj] == c) throw Error(cone_name(f, ci) + " is listed twice");
      if (!meet_in_face(f, f.max_cones[cj], c))
        throw Error(cone_name(f, cj) + " and " + cone_name(f, ci) + " do not meet in a common face");
    }
  }
  return f;
}

Fan fan_p1() { return make_fan({ivec({1}), ivec({-1})}, {{0}, {1}}); }

Fan fan_p2() { return make_fan({ivec({1, 0}), ivec({0, 1}), ivec({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}}); }

Fan fan_p1xp1() {
  return make_fan({ivec({1, 0}), ivec({0, 1}), ivec({-1, 0}), ivec({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan fan_hirzebruch(long a) {
  return make_fan({ivec({1, 0}), ivec({0, 1}), ivec({-1, a}), ivec({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan fan_p3() {
  std::vector<std::vector<int>> cones;
  detail::for_each_subset(4, 3, [&](const std::vector<int>& s) {
    cones.push_back(s);
    return true;
  });
  return make_fan({ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1}), ivec({-1, -1, -1})}, cones);
}

Fan fan_p1xp2() {
  std::vector<std::vector<int>> cones;
  for (int a : {0, 1})
    detail::for_each_subset(3, 2, [&](const std::vector<int>& s) {
      cones.push_back({a, s[0] + 2, s[1] + 2});
      return true;
    });
  return make_fan({ivec({1, 0, 0}), ivec({-1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1}), ivec({0, -1, -1})}, cones);
}

std::vector<std::vector<int>> cone_facets(const Fan& f, int ci) {
  const auto& c = f.max_cones.at(ci);
  const int d = f.dim;
  if (d == 1) return {{}};
  std::set<std::vector<int>> out;
  detail::for_each_subset(static_cast<int>(c.size()), d - 1, [&](const std::vector<int>& s) {
    std::vector<RatVector> rows;
    for (int i : s) rows.push_back(to_rat(f.rays[c[i]]));
    if (rank(rows) != d - 1) return true;
    IntVector n = orthogonal_complement(rows, d)[0];
    std::vector<int> on;
    int pos = 0, neg = 0;
    for (int r : c) {
      int sg = sgn(dot(n, f.rays[r]));
      if (sg == 0) on.push_back(r);
      else if (sg > 0) ++pos;
      else ++neg;
    }
    if (pos == 0 || neg == 0) out.insert(on);
    return true;
  });
  return {out.begin(), out.end()};
}

namespace {

// facet ray set -> cones containing it
std::map<std::vector<int>, std::vector<int>> facet_table(const Fan& f) {
  std::map<std::vector<int>, std::vector<int>> t;
  for (int ci = 0; ci < static_cast<int>(f.max_cones.size()); ++ci)
    for (auto& s : cone_facets(f, ci)) t[s].push_back(ci);
  return t;
}

IntVector facet_normal(const Fan& f, const std::vector<int>& wall) {
  if (f.dim == 1) return ivec({1});
  return orthogonal_complement(ray_rows(f, wall), f.dim)[0];
}

// sign of the cone's off-wall rays against the wall normal
int side(const Fan& f, const IntVector& n, int ci) {
  for (int r : f.max_cones[ci]) {
    int s = sgn(dot(n, f.rays[r]));
    if (s) return s;
  }
  return 0;
}

}  // namespace

bool is_complete(const Fan& f) {
  for (const auto& [s, cs] : facet_table(f)) {
    if (cs.size() != 2) return false;
    IntVector n = facet_normal(f, s);
    if (side(f, n, cs[0]) == side(f, n, cs[1])) return false;
  }
  return true;
}

bool is_smooth(const Fan& f) {
  for (const auto& c : f.max_cones) {
    std::vector<IntVector> rs;
    for (int r : c) rs.push_back(f.rays[r]);
    if (!is_unimodular(rs)) return false;
  }
  return true;
}

std::vector<Wall> walls(const Fan& f) {
  std::vector<Wall> out;
  for (const auto& [s, cs] : facet_table(f)) {
    if (cs.size() != 2) throw Error("fan is not complete: a facet of " + cone_name(f, cs[0]) + " is unmatched");
    IntVector n = facet_normal(f, s);
    if (side(f, n, cs[0]) == side(f, n, cs[1]))
      throw Error(cone_name(f, cs[0]) + " and " + cone_name(f, cs[1]) + " overlap");
    out.push_back({s, cs[0], cs[1]});
  }
  return out;
}

IntVector wall_normal(const Fan& f, const Wall& w) {
  IntVector n = facet_normal(f, w.rays);
  return side(f, n, w.cone_b) > 0 ? n : -n;
}

Fan stellar_subdivision(const Fan& f, int ci) {
  if (ci < 0 || ci >= static_cast<int>(f.max_cones.size())) throw Error("no maximal cone " + std::to_string(ci));
  const auto& c = f.max_cones[ci];
  std::vector<IntVector> rs;
  for (int r : c) rs.push_back(f.rays[r]);
  if (static_cast<int>(c.size()) != f.dim || !is_unimodular(rs)) throw Error(cone_name(f, ci) + " is not smooth");
  IntVector sum(static_cast<std::size_t>(f.dim));
  for (const auto& r : rs) sum += r;
  auto rays = f.rays;
  const int nr = static_cast<int>(rays.size());
  rays.push_back(primitive(sum));
  std::vector<std::vector<int>> cones;
  for (int cj = 0; cj < static_cast<int>(f.max_cones.size()); ++cj) {
    if (cj != ci) {
      cones.push_back(f.max_cones[cj]);
      continue;
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
      auto nc = c;
      nc[k] = nr;
      cones.push_back(nc);
    }
  }
  return make_fan(rays, cones);
}

Fan blowup(const Fan& f, int ci) {
  if (f.dim != 2) throw DimensionError("blowup expects a 2D fan");
  return stellar_subdivision(f, ci);
}

Fan canonical(const Fan& f) {
  std::vector<int> perm(f.rays.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return f.rays[a] < f.rays[b]; });
  std::vector<int> inv(perm.size());
  Fan g;
  g.dim = f.dim;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    inv[perm[i]] = static_cast<int>(i);
    g.rays.push_back(f.rays[perm[i]]);
  }
  for (const auto& c : f.max_cones) {
    std::vector<int> nc;
    for (int r : c) nc.push_back(inv[r]);
    std::sort(nc.begin(), nc.end());
    g.max_cones.push_back(nc);
  }
  std::sort(g.max_cones.begin(), g.max_cones.end());
  return g;
}

bool same_fan(const Fan& a, const Fan& b) {
  if (a.dim != b.dim) return false;
  Fan x = canonical(a), y = canonical(b);
  return x.rays == y.rays && x.max_cones == y.max_cones;
}

ToricLineBundle bundle(std::shared_ptr<const Fan> f, std::vector<long> coeffs) {
  ToricLineBundle l{std::move(f), {}};
  for (long c : coeffs) l.coeffs.emplace_back(c);
  check_bundle(l);
  return l;
}

std::optional<RationalPolytope> polytope_of(const ToricLineBundle& l) {
  check_bundle(l);
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < l.coeffs.size(); ++i) hs.push_back({l.fan->rays[i], Rat(l.coeffs[i])});
  return from_halfspaces(l.fan->dim, hs);
}

Fan normal_fan(const RationalPolytope& p) {
  if (!p.full_dimensional()) throw Error("normal fan needs a full-dimensional polytope");
  std::vector<IntVector> rays;
  for (const auto& h : p.facets()) rays.push_back(h.normal);
  std::vector<std::vector<int>> cones;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) cones.push_back(p.incidence(i));
  return make_fan(rays, cones);
}

std::optional<RatVector> cone_vertex(const ToricLineBundle& l, int ci) {
  check_bundle(l);
  const Fan& f = *l.fan;
  const auto& c = f.max_cones.at(ci);
  std::vector<RatVector> rows;
  std::vector<Rat> rhs;
  for (int r : c) {
    std::vector<RatVector> trial(rows);
    trial.push_back(to_rat(f.rays[r]));
    if (rank(trial) == static_cast<int>(trial.size())) {
      rows = trial;
      rhs.push_back(Rat(-l.coeffs[r]));
    }
    if (static_cast<int>(rows.size()) == f.dim) break;
  }
  RatVector m(static_cast<std::size_t>(f.dim));
  if (!solve(rows, rhs, m)) return std::nullopt;
  for (int r : c)
    if (dot(f.rays[r], m) != Rat(-l.coeffs[r])) return std::nullopt;
  return m;
}

bool is_nef(const ToricLineBundle& l) {
  auto p = polytope_of(l);
  if (!p) return false;
  for (int ci = 0; ci < static_cast<int>(l.fan->max_cones.size()); ++ci) {
    auto m = cone_vertex(l, ci);
    if (!m || !p->contains(*m)) return false;
  }
  return true;
}

bool is_ample(const ToricLineBundle& l) {
  if (!is_nef(l)) return false;
  auto p = polytope_of(l);
  return p->full_dimensional() && same_fan(normal_fan(*p), *l.fan);
}

Int intersection_number(const ToricLineBundle& l, const Wall& w) {
  const Fan& f = *l.fan;
  auto ma = cone_vertex(l, w.cone_a), mb = cone_vertex(l, w.cone_b);
  if (!ma || !mb) throw Error("line bundle is not Cartier on the cones of this wall");
  IntVector u = wall_normal(f, w);
  for (int r : f.max_cones[w.cone_b]) {
    Int s = dot(u, f.rays[r]);
    if (sgn(s) == 0) continue;
    Rat t = dot(f.rays[r], *ma - *mb) / Rat(s);
    if (t.get_den() != 1) throw Error("non-integral intersection number " + to_string(t));
    return t.get_num();
  }
  throw Error("degenerate wall");
}

std::vector<Int> intersection_numbers(const ToricLineBundle& l) {
  check_bundle(l);
  std::vector<Int> out;
  for (const auto& w : walls(*l.fan)) out.push_back(intersection_number(l, w));
  return out;
}

ToricLineBundle retighten(const ToricLineBundle& l) {
  auto p = polytope_of(l);
  if (!p) throw Error("cannot retighten a bundle with empty polytope");
  ToricLineBundle r{l.fan, {}};
  for (const auto& ray : l.fan->rays) r.coeffs.push_back(ceil_of(Rat(-support_min(*p, ray))));
  return r;
}

ToricLineBundle tensor(const ToricLineBundle& a, const ToricLineBundle& b) {
  same_fan_or_throw(a, b);
  ToricLineBundle s{a.fan, {}};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) s.coeffs.push_back(a.coeffs[i] + b.coeffs[i]);
  return retighten(s);
}

ToricLineBundle difference(const ToricLineBundle& a, const ToricLineBundle& b) {
  same_fan_or_throw(a, b);
  return {a.fan, sub(a.coeffs, b.coeffs)};
}

bool is_general(const Fan& f) {
  std::set<IntVector> dirs;
  for (const auto& w : walls(f)) {
    IntVector u = wall_normal(f, w);
    if (u < -u) u = -u;
    if (!dirs.insert(u).second) return false;
  }
  return true;
}

PicardFrame picard_frame(std::shared_ptr<const Fan> f) {
  PicardFrame fr;
  fr.fan = f;
  for (int ci = 0; ci < static_cast<int>(f->max_cones.size()); ++ci) {
    std::vector<IntVector> rs;
    for (int r : f->max_cones[ci]) rs.push_back(f->rays[r]);
    if (static_cast<int>(rs.size()) == f->dim && is_unimodular(rs)) {
      fr.base_cone = ci;
      break;
    }
  }
  if (fr.base_cone < 0) throw Error("Picard coordinates need a smooth maximal cone");
  const auto& base = f->max_cones[fr.base_cone];
  for (int r = 0; r < static_cast<int>(f->rays.size()); ++r)
    if (!std::binary_search(base.begin(), base.end(), r)) fr.free_rays.push_back(r);
  fr.walls = walls(*f);
  fr.matrix.assign(fr.walls.size(), std::vector<Int>(fr.free_rays.size()));
  for (std::size_t j = 0; j < fr.free_rays.size(); ++j) {
    ToricLineBundle e{f, std::vector<Int>(f->rays.size())};
    e.coeffs[fr.free_rays[j]] = 1;
    for (std::size_t t = 0; t < fr.walls.size(); ++t) fr.matrix[t][j] = intersection_number(e, fr.walls[t]);
  }
  return fr;
}

std::vector<Int> pic_coords(const PicardFrame& fr, const ToricLineBundle& l) {
  check_bundle(l);
  auto m = cone_vertex(l, fr.base_cone);
  std::vector<Int> x;
  for (int r : fr.free_rays) {
    Rat v = Rat(l.coeffs[r]) + dot(fr.fan->rays[r], *m);
    x.push_back(v.get_num());
  }
  return x;
}

ToricLineBundle from_pic(const PicardFrame& fr, const std::vector<Int>& x) {
  ToricLineBundle l{fr.fan, std::vector<Int>(fr.fan->rays.size())};
  for (std::size_t j = 0; j < fr.free_rays.size(); ++j) l.coeffs[fr.free_rays[j]] = x.at(j);
  return l;
}

std::vector<Int> wall_degrees(const PicardFrame& fr, const std::vector<Int>& x) {
  std::vector<Int> y;
  for (const auto& row : fr.matrix) {
    Int s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    y.push_back(s);
  }
  return y;
}

std::vector<std::vector<Int>> hilbert_basis_coords(const PicardFrame& fr) {
  const int r = fr.rank();
  if (r > 3) throw Error("desk-scale restriction: Picard rank " + std::to_string(r) + " exceeds 3");
  if (r < 1) throw Error("Picard rank must be positive");
  std::vector<IntVector> rows;
  for (const auto& row : fr.matrix) rows.emplace_back(row);
  auto ext = dual_cone_generators(rows, r);
  for (const auto& g : ext)
    if (!nonneg(wall_degrees(fr, g.coords()))) throw Error("nef cone is not strongly convex");
  RationalPolytope z = hull({IntVector(static_cast<std::size_t>(r))});
  for (const auto& g : ext) z = minkowski_sum(z, hull({IntVector(static_cast<std::size_t>(r)), g}));

  auto reducible = [&](const std::vector<Int>& x) {
    std::vector<Halfspace> hs;
    for (const auto& row : rows) {
      hs.push_back({row, Rat(0)});
      hs.push_back({-row, Rat(dot(row, as_vec(x)))});
    }
    auto q = from_halfspaces(r, hs);
    if (!q) return false;
    for (const auto& y : lattice_points(*q))
      if (!y.is_zero() && y.coords() != x) return true;
    return false;
  };
  std::vector<std::vector<Int>> basis;
  for (const auto& p : lattice_points(z)) {
    if (p.is_zero() || !nonneg(wall_degrees(fr, p.coords()))) continue;
    if (!reducible(p.coords())) basis.push_back(p.coords());
  }

  // every nef class with intersection numbers <= 5 must decompose
  auto pts = box_points(fr, 0, 5);
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    auto sa = wall_degrees(fr, a), sb = wall_degrees(fr, b);
    return std::accumulate(sa.begin(), sa.end(), Int(0)) < std::accumulate(sb.begin(), sb.end(), Int(0));
  });
  std::set<std::vector<Int>> ok;
  for (const auto& x : pts) {
    bool dec = std::all_of(x.begin(), x.end(), [](const Int& v) { return sgn(v) == 0; });
    for (std::size_t j = 0; j < basis.size() && !dec; ++j) dec = ok.count(sub(x, basis[j])) > 0;
    if (!dec) throw Error("Hilbert basis does not generate " + to_string(as_vec(x)));
    ok.insert(x);
  }
  return basis;
}

std::vector<ToricLineBundle> hilbert_basis(std::shared_ptr<const Fan> f) {
  auto fr = picard_frame(f);
  std::vector<ToricLineBundle> out;
  for (const auto& x : hilbert_basis_coords(fr)) out.push_back(from_pic(fr, x));
  return out;
}

std::vector<Int> sufficiently_ample_threshold(const Fan& f, const std::vector<ToricLineBundle>& basis) {
  std::vector<Int> n(walls(f).size(), Int(0));
  for (const auto& b : basis) {
    auto c = intersection_numbers(b);
    for (std::size_t t = 0; t < n.size(); ++t) n[t] = std::max(n[t], c[t]);
  }
  return n;
}

bool in_D(const ToricLineBundle& l, const std::vector<Int>& thresholds) {
  auto c = intersection_numbers(l);
  if (c.size() != thresholds.size()) throw Error("threshold count does not match the walls");
  for (std::size_t t = 0; t < c.size(); ++t)
    if (c[t] <= l.fan->dim * thresholds[t]) return false;
  return true;
}

std::vector<std::vector<Int>> minimal_ample_coords(const PicardFrame& fr, const Int& box, const Int& verify_box) {
  auto nef_diff = [&](const std::vector<Int>& x, const std::vector<Int>& y) { return nonneg(wall_degrees(fr, sub(x, y))); };
  auto amp = box_points(fr, 1, box);
  std::vector<std::vector<Int>> mins;
  for (const auto& x : amp) {
    bool minimal = true;
    for (const auto& y : amp)
      if (y != x && nef_diff(x, y)) {
        minimal = false;
        break;
      }
    if (minimal) mins.push_back(x);
  }
  for (const auto& x : box_points(fr, 1, verify_box)) {
    bool dominated = std::any_of(mins.begin(), mins.end(), [&](const auto& m) { return nef_diff(x, m); });
    if (!dominated) throw Error("ample class " + to_string(as_vec(x)) + " lies above no minimal element");
  }
  return mins;
}

Int r_rho(const Fan& f, const IntVector& rho) {
  std::optional<Int> best;
  for (const auto& w : walls(f)) {
    Int v = abs(dot(wall_normal(f, w), rho));
    if (sgn(v) != 0 && (!best || v < *best)) best = v;
  }
  if (!best) throw Error("ray " + to_string(rho) + " pairs to zero with every wall");
  return *best;
}

Int w_rho(const ToricLineBundle& l2, const IntVector& rho) {
  auto p = polytope_of(l2);
  if (!p) throw Error("empty polytope");
  auto pts = lattice_points(*p);
  if (pts.empty()) throw Error("polytope has no lattice points");
  Int lo = dot(pts[0], rho), hi = lo;
  for (const auto& x : pts) {
    Int v = dot(x, rho);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return hi - lo;
}

BoundReport section5_bounds(std::shared_ptr<const Fan> f, const std::optional<ToricLineBundle>& l2,
                            const std::optional<IntVector>& rho) {
  auto fr = picard_frame(f);
  auto basis = hilbert_basis_coords(fr);
  const std::size_t nw = fr.walls.size();
  BoundReport rep;
  rep.dim = f->dim;
  rep.num_walls = nw;
  rep.c = 0;
  for (const auto& b : basis)
    for (const auto& v : wall_degrees(fr, b)) rep.c = std::max(rep.c, v);
  rep.subcones_covered.push_back("nef cone");
  // faces of the nef cone are saturated, so their bases are subsets of the full basis
  std::vector<IntVector> rows;
  for (const auto& row : fr.matrix) rows.emplace_back(row);
  auto ext = dual_cone_generators(rows, fr.rank());
  std::set<std::vector<int>> seen;
  for (std::size_t t = 0; t < nw; ++t) {
    std::vector<RatVector> on;
    for (const auto& g : ext)
      if (sgn(dot(rows[t], g)) == 0) on.push_back(to_rat(g));
    if (on.empty() || rank(on) != fr.rank() - 1) continue;
    std::vector<int> J;
    for (std::size_t s = 0; s < nw; ++s) {
      bool zero = true;
      for (const auto& g : on) zero = zero && sgn(dot(rows[s], g)) == 0;
      if (zero) J.push_back(static_cast<int>(s));
    }
    if (!seen.insert(J).second) continue;
    std::string name = "facet J={";
    for (std::size_t i = 0; i < J.size(); ++i) name += (i ? "," : "") + std::to_string(J[i]);
    rep.subcones_covered.push_back(name + "}");
  }
  rep.loqr_bound = Int(static_cast<long>(nw)) * f->dim * rep.c * rep.c;

  Int box = Int(fr.rank()) * rep.c + 1;
  for (int attempt = 0;; ++attempt) {
    try {
      rep.ample_generators = minimal_ample_coords(fr, box, 2 * box);
      break;
    } catch (const Error&) {
      if (attempt == 4) throw;
      box *= 2;
    }
  }
  rep.c_tau.assign(nw, Int(0));
  for (const auto& m : rep.ample_generators) {
    auto v = wall_degrees(fr, m);
    for (std::size_t t = 0; t < nw; ++t) rep.c_tau[t] = std::max(rep.c_tau[t], v[t]);
  }

  if (l2 || rho) {
    if (!l2 || !rho) throw Error("the second bound needs both L2 and rho");
    if (std::find(f->rays.begin(), f->rays.end(), *rho) == f->rays.end())
      throw Error(to_string(*rho) + " is not a ray of the fan");
    if (!is_nef(*l2)) throw Error("L2 is not nef");
    LoprReport lo;
    lo.rho = *rho;
    lo.l2_coeffs = l2->coeffs;
    lo.r_rho = r_rho(*f, *rho);
    lo.w_rho = w_rho(*l2, *rho);
    Rat extra = Rat(4 * Int(static_cast<long>(nw)) * rep.c * rep.c * lo.w_rho) / Rat(lo.r_rho);
    for (std::size_t t = 0; t < nw; ++t) lo.per_wall.push_back(Rat(rep.c_tau[t]) + extra);
    rep.lopr = lo;
  }
  return rep;
}

std::vector<int> vertex_partition(const ToricLineBundle& fine, const ToricLineBundle& coarse) {
  same_fan_or_throw(fine, coarse);
  if (!is_nef(fine) || !is_nef(coarse)) throw Error("vertex partition needs nef bundles");
  auto pf = polytope_of(fine);
  auto pc = polytope_of(coarse);
  if (!pf->full_dimensional()) throw Error("fine polytope is not full-dimensional");
  std::vector<int> out;
  for (std::size_t i = 0; i < pf->vertices().size(); ++i) {
    int hit = -1;
    for (std::size_t j = 0; j < pc->vertices().size(); ++j) {
      bool inside = true;
      for (int k : pf->incidence(i)) {
        const auto& n = pf->facets()[k].normal;
        if (dot(n, pc->vertices()[j]) != support_min(*pc, n)) {
          inside = false;
          break;
        }
      }
      if (inside) {
        if (hit >= 0) throw Error("fine cone lies in two coarse cones");
        hit = static_cast<int>(j);
      }
    }
    if (hit < 0) throw Error("fine fan does not refine the coarse fan");
    out.push_back(hit);
  }
  return out;
}

bool linear_subset_member(const ToricLineBundle& l, const LinearSubsetIndex& s) {
  auto c = intersection_numbers(l);
  if (s.b.size() != c.size()) throw Error("b needs one entry per wall");
  std::vector<bool> inJ(c.size(), false);
  for (int t : s.J) {
    if (t < 0 || t >= static_cast<int>(c.size())) throw Error("wall index out of range");
    inJ[t] = true;
  }
  for (std::size_t t = 0; t < c.size(); ++t) {
    if (inJ[t] ? c[t] != s.b[t] : c[t] < s.b[t]) return false;
  }
  return true;
}

}  // namespace oda
