#include "oda/polytope.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "combinatorics.hpp"

namespace oda {

using detail::for_each_subset;

namespace {

void sort_unique(std::vector<RatVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<RatVector> diffs_from_first(const std::vector<RatVector>& pts) {
  std::vector<RatVector> d;
  for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(pts[i] - pts[0]);
  return d;
}

IntVector unit(int d, int i, long s = 1) {
  IntVector e(static_cast<std::size_t>(d));
  e[i] = s;
  return e;
}

Rat cross2(const RatVector& o, const RatVector& a, const RatVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain on 2D points; returns indices in ccw order, collinear points dropped.
std::vector<int> chain(const std::vector<RatVector>& p) {
  std::vector<int> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return p[a] < p[b]; });
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  int k = 0;
  for (int i : idx) {
    while (k >= 2 && sgn(cross2(p[h[k - 2]], p[h[k - 1]], p[i])) <= 0) --k;
    h[k++] = i;
  }
  for (int j = static_cast<int>(idx.size()) - 2, t = k + 1; j >= 0; --j) {
    int i = idx[j];
    while (k >= t && sgn(cross2(p[h[k - 2]], p[h[k - 1]], p[i])) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

Int to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  unsigned long hi = static_cast<unsigned long>(u >> 64), lo = static_cast<unsigned long>(u);
  Int r = hi;
  r <<= 64;
  r += lo;
  return neg ? Int(-r) : r;
}

long long gcd_abs(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }
Int gcd_abs(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brute-force 3D facet search over triples. T holds coordinates and normals, W holds dot products.
template <class T, class W>
std::vector<std::pair<std::array<T, 3>, W>> hull3(const std::vector<std::array<T, 3>>& p) {
  const int n = static_cast<int>(p.size());
  std::set<std::pair<std::array<T, 3>, W>> out;
  auto dotw = [](const std::array<T, 3>& a, const std::array<T, 3>& b) -> W {
    return W(a[0]) * W(b[0]) + W(a[1]) * W(b[1]) + W(a[2]) * W(b[2]);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::array<T, 3> u{T(p[j][0] - p[i][0]), T(p[j][1] - p[i][1]), T(p[j][2] - p[i][2])};
      for (int k = j + 1; k < n; ++k) {
        std::array<T, 3> v{T(p[k][0] - p[i][0]), T(p[k][1] - p[i][1]), T(p[k][2] - p[i][2])};
        std::array<T, 3> nn{T(u[1] * v[2] - u[2] * v[1]), T(u[2] * v[0] - u[0] * v[2]),
                            T(u[0] * v[1] - u[1] * v[0])};
        if (nn[0] == 0 && nn[1] == 0 && nn[2] == 0) continue;
        T g = gcd_abs(gcd_abs(nn[0], nn[1]), nn[2]);
        for (auto& x : nn) x /= g;
        W base = dotw(p[i], nn);
        bool pos = false, neg = false;
        for (int m = 0; m < n && !(pos && neg); ++m) {
          W s = dotw(p[m], nn) - base;
          if (s > 0) pos = true;
          else if (s < 0) neg = true;
        }
        if (pos && neg) continue;
        if (neg) {
          for (auto& x : nn) x = -x;
          base = -base;
        }
        out.insert({nn, base});
      }
    }
  return {out.begin(), out.end()};
}

// Facets of a full-dimensional 3D point set, as halfspaces in the original coordinates.
std::vector<Halfspace> facets3(const std::vector<RatVector>& pts) {
  Int L = 1;
  for (const auto& p : pts)
    for (const auto& x : p) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<std::array<Int, 3>> ip;
  bool small = true;
  const Int lim = Int(1) << 20;
  for (const auto& p : pts) {
    std::array<Int, 3> a;
    for (int i = 0; i < 3; ++i) {
      a[i] = p[i].get_num() * (L / p[i].get_den());
      if (abs(a[i]) >= lim) small = false;
    }
    ip.push_back(a);
  }
  std::vector<Halfspace> out;
  if (small) {
    std::vector<std::array<long long, 3>> q;
    for (auto& a : ip) q.push_back({a[0].get_si(), a[1].get_si(), a[2].get_si()});
    for (auto& [n, v] : hull3<long long, __int128>(q))
      out.push_back({IntVector({Int(static_cast<long>(n[0])), Int(static_cast<long>(n[1])),
                                Int(static_cast<long>(n[2]))}),
                     Rat(-to_mpz(v), L)});
  } else {
    for (auto& [n, v] : hull3<Int, Int>(ip)) out.push_back({IntVector({n[0], n[1], n[2]}), Rat(-v, L)});
  }
  for (auto& h : out) h.offset.canonicalize();
  return out;
}

std::vector<int> choose_coords(const std::vector<RatVector>& diffs, int d, int k) {
  std::vector<int> res;
  for_each_subset(d, k, [&](const std::vector<int>& c) {
    std::vector<RatVector> pr;
    for (const auto& v : diffs) {
      std::vector<Rat> x;
      for (int i : c) x.push_back(v[i]);
      pr.emplace_back(std::move(x));
    }
    if (rank(pr) == k) {
      res = c;
      return false;
    }
    return true;
  });
  return res;
}

}  // namespace

std::vector<Halfspace> RationalPolytope::halfspaces() const {
  std::vector<Halfspace> h = facets_;
  for (const auto& e : equations_) {
    h.push_back(e);
    h.push_back({-e.normal, -e.offset});
  }
  return h;
}

bool RationalPolytope::contains(const RatVector& x) const {
  for (const auto& e : equations_)
    if (sgn(e.eval(x)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(f.eval(x)) < 0) return false;
  return true;
}

bool RationalPolytope::contains(const RationalPolytope& q) const {
  for (const auto& v : q.vertices())
    if (!contains(v)) return false;
  return true;
}

bool RationalPolytope::relint_contains(const RatVector& x) const {
  for (const auto& e : equations_)
    if (sgn(e.eval(x)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(f.eval(x)) <= 0) return false;
  return true;
}

bool RationalPolytope::is_lattice() const {
  for (const auto& v : vertices_)
    if (!is_integral(v)) return false;
  return true;
}

RatVector RationalPolytope::barycenter() const {
  RatVector s(static_cast<std::size_t>(ambient_));
  for (const auto& v : vertices_) s += v;
  return s * Rat(Int(1), Int(static_cast<unsigned long>(vertices_.size())));
}

RationalPolytope RationalPolytope::assemble(int ambient, int dim, std::vector<RatVector> vertices,
                                            std::vector<Halfspace> facets,
                                            std::vector<Halfspace> equations) {
  RationalPolytope p;
  p.ambient_ = ambient;
  p.dim_ = dim;
  sort_unique(vertices);
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  std::sort(equations.begin(), equations.end());
  p.vertices_ = std::move(vertices);
  p.facets_ = std::move(facets);
  p.equations_ = std::move(equations);
  p.incidence_.resize(p.vertices_.size());
  for (std::size_t i = 0; i < p.vertices_.size(); ++i) {
    const auto& v = p.vertices_[i];
    for (const auto& e : p.equations_)
      if (sgn(e.eval(v)) != 0) throw std::logic_error("vertex off an equation of its polytope");
    for (std::size_t j = 0; j < p.facets_.size(); ++j) {
      int s = sgn(p.facets_[j].eval(v));
      if (s < 0) throw std::logic_error("vertex violates a facet of its polytope");
      if (s == 0) p.incidence_[i].push_back(static_cast<int>(j));
    }
  }
  return p;
}

LatticePolytope::LatticePolytope(RationalPolytope p) : p_(std::move(p)) {
  if (!p_.is_lattice()) throw Error("polytope has a non-integral vertex");
}

RationalPolytope hull(const std::vector<RatVector>& in) {
  if (in.empty()) throw Error("hull of an empty point set");
  const int d = in[0].dim();
  for (const auto& p : in)
    if (p.dim() != d) throw DimensionError("hull: points of different dimensions");
  std::vector<RatVector> pts(in);
  sort_unique(pts);
  const RatVector& p0 = pts[0];
  std::vector<RatVector> diffs = diffs_from_first(pts);
  const int k = rank(diffs);
  std::vector<Halfspace> eqs;
  for (auto& n : orthogonal_complement(diffs, d)) eqs.push_back({n, -dot(n, p0)});
  if (k == 0) return RationalPolytope::assemble(d, 0, {p0}, {}, eqs);

  std::vector<Halfspace> fs;
  std::vector<RatVector> verts;
  if (k == 3) {
    fs = facets3(pts);
    for (const auto& p : pts) {
      std::vector<IntVector> act;
      for (const auto& f : fs)
        if (sgn(f.eval(p)) == 0) act.push_back(f.normal);
      if (rank(act) == 3) verts.push_back(p);
    }
  } else {
    std::vector<int> c = choose_coords(diffs, d, k);
    std::vector<RatVector> pr;
    for (const auto& p : pts) {
      std::vector<Rat> x;
      for (int i : c) x.push_back(p[i]);
      pr.emplace_back(std::move(x));
    }
    if (k == 1) {
      std::size_t lo = 0, hi = 0;
      for (std::size_t i = 1; i < pr.size(); ++i) {
        if (pr[i][0] < pr[lo][0]) lo = i;
        if (pr[i][0] > pr[hi][0]) hi = i;
      }
      verts = {pts[lo], pts[hi]};
      fs.push_back({unit(d, c[0]), -pr[lo][0]});
      fs.push_back({unit(d, c[0], -1), pr[hi][0]});
    } else {
      std::vector<int> h = chain(pr);
      for (std::size_t i = 0; i < h.size(); ++i) {
        const RatVector& a = pr[h[i]];
        const RatVector& b = pr[h[(i + 1) % h.size()]];
        IntVector n2 = primitive(RatVector({Rat(a[1] - b[1]), Rat(b[0] - a[0])}));
        IntVector n(static_cast<std::size_t>(d));
        n[c[0]] = n2[0];
        n[c[1]] = n2[1];
        fs.push_back({n, -dot(n2, a)});
        verts.push_back(pts[h[i]]);
      }
    }
  }
  return RationalPolytope::assemble(d, k, std::move(verts), std::move(fs), std::move(eqs));
}

RationalPolytope hull(const std::vector<IntVector>& points) {
  std::vector<RatVector> r;
  for (const auto& p : points) r.push_back(to_rat(p));
  return hull(r);
}

std::vector<IntVector> dual_cone_generators(const std::vector<IntVector>& gens_in, int d) {
  std::vector<IntVector> gens;
  for (const auto& g : gens_in) {
    if (g.dim() != d) throw DimensionError("cone generator dimension mismatch");
    if (!g.is_zero()) gens.push_back(g);
  }
  std::set<IntVector> out;
  std::vector<RatVector> rg;
  for (const auto& g : gens) rg.push_back(to_rat(g));
  std::vector<IntVector> lin = orthogonal_complement(rg, d);
  const int k = rank(rg);
  for (const auto& l : lin) {
    out.insert(l);
    out.insert(-l);
  }
  if (k > 0) {
    for_each_subset(static_cast<int>(gens.size()), k - 1, [&](const std::vector<int>& s) {
      std::vector<RatVector> rows;
      for (int i : s) rows.push_back(rg[i]);
      for (const auto& l : lin) rows.push_back(to_rat(l));
      auto comp = orthogonal_complement(rows, d);
      if (comp.size() != 1) return true;
      for (const IntVector& n : {comp[0], IntVector(-comp[0])}) {
        bool ok = true;
        for (const auto& g : gens)
          if (sgn(dot(g, n)) < 0) {
            ok = false;
            break;
          }
        if (ok) out.insert(n);
      }
      return true;
    });
  }
  return {out.begin(), out.end()};
}

bool is_pointed(const Cone& c) {
  std::vector<IntVector> gens;
  for (const auto& g : c.generators)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) return true;
  IntVector s(static_cast<std::size_t>(c.ambient));
  for (const auto& n : dual_cone_generators(gens, c.ambient)) s += n;
  for (const auto& g : gens)
    if (sgn(dot(g, s)) <= 0) return false;
  return true;
}

IntVector interior_dual_vector(const Cone& c) {
  if (!is_pointed(c)) throw Error("recession cone is not strongly convex");
  std::vector<IntVector> gens;
  for (const auto& g : c.generators)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) return unit(c.ambient, 0);
  IntVector s(static_cast<std::size_t>(c.ambient));
  for (const auto& n : dual_cone_generators(gens, c.ambient)) s += n;
  return primitive(s);
}

std::optional<RationalPolytope> from_halfspaces(int d, const std::vector<Halfspace>& hs_in) {
  std::vector<Halfspace> hs(hs_in);
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  std::vector<IntVector> normals;
  for (const auto& h : hs) {
    if (h.normal.dim() != d) throw DimensionError("halfspace dimension mismatch");
    if (h.normal.is_zero()) {
      if (sgn(h.offset) < 0) return std::nullopt;
      continue;
    }
    normals.push_back(h.normal);
  }
  if (rank(normals) < d) throw Error("unbounded halfspace system");
  std::vector<RatVector> rows;
  for (const auto& h : hs) rows.push_back(to_rat(h.normal));
  std::vector<RatVector> verts;
  for_each_subset(static_cast<int>(hs.size()), d, [&](const std::vector<int>& s) {
    std::vector<RatVector> a;
    std::vector<Rat> b;
    for (int i : s) {
      a.push_back(rows[i]);
      b.push_back(-hs[i].offset);
    }
    RatVector x;
    if (!solve(a, b, x)) return true;
    for (const auto& h : hs)
      if (sgn(h.eval(x)) < 0) return true;
    verts.push_back(x);
    return true;
  });
  if (verts.empty()) return std::nullopt;
  if (!dual_cone_generators(normals, d).empty()) throw Error("unbounded halfspace system");
  return hull(verts);
}

std::optional<RationalPolytope> intersect(const RationalPolytope& p, const RationalPolytope& q) {
  if (p.ambient() != q.ambient()) throw DimensionError("intersect: dimension mismatch");
  std::vector<Halfspace> hs = p.halfspaces();
  for (auto& h : q.halfspaces()) hs.push_back(h);
  return from_halfspaces(p.ambient(), hs);
}

std::optional<RationalPolytope> clip(const RationalPolytope& p, const Halfspace& h) {
  const auto& vs = p.vertices();
  std::vector<Rat> s;
  bool any_neg = false, any_nonneg = false;
  for (const auto& v : vs) {
    s.push_back(h.eval(v));
    if (sgn(s.back()) < 0) any_neg = true;
    else any_nonneg = true;
  }
  if (!any_neg) return p;
  if (!any_nonneg) return std::nullopt;
  std::vector<RatVector> keep;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (sgn(s[i]) >= 0) keep.push_back(vs[i]);
  std::map<RatVector, std::size_t> index;
  for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  for (const auto& e : edges(p)) {
    std::size_t i = index[e.a], j = index[e.b];
    if ((sgn(s[i]) > 0 && sgn(s[j]) < 0) || (sgn(s[i]) < 0 && sgn(s[j]) > 0)) {
      Rat t = s[i] / (s[i] - s[j]);
      keep.push_back(e.a + (e.b - e.a) * t);
    }
  }
  return hull(keep);
}

RationalPolytope translate(const RationalPolytope& p, const RatVector& v) {
  std::vector<RatVector> vs;
  for (const auto& x : p.vertices()) vs.push_back(x + v);
  std::vector<Halfspace> fs, es;
  for (const auto& f : p.facets()) fs.push_back({f.normal, f.offset - dot(f.normal, v)});
  for (const auto& e : p.equations()) es.push_back({e.normal, e.offset - dot(e.normal, v)});
  return RationalPolytope::assemble(p.ambient(), p.dim(), std::move(vs), std::move(fs), std::move(es));
}

RationalPolytope scale(const RationalPolytope& p, const Rat& c) {
  if (sgn(c) <= 0) throw Error("scale factor must be positive");
  std::vector<RatVector> vs;
  for (const auto& x : p.vertices()) vs.push_back(x * c);
  std::vector<Halfspace> fs, es;
  for (const auto& f : p.facets()) fs.push_back({f.normal, f.offset * c});
  for (const auto& e : p.equations()) es.push_back({e.normal, e.offset * c});
  return RationalPolytope::assemble(p.ambient(), p.dim(), std::move(vs), std::move(fs), std::move(es));
}

RationalPolytope homothety(const RationalPolytope& p, const Rat& c, const RatVector& center) {
  return translate(scale(p, c), center - center * c);
}

std::vector<RatVector> face_vertices(const RationalPolytope& p, const IntVector& n) {
  Rat m = support_min(p, n);
  std::vector<RatVector> out;
  for (const auto& v : p.vertices())
    if (dot(n, v) == m) out.push_back(v);
  return out;
}

Rat support_min(const RationalPolytope& p, const IntVector& n) {
  const auto& vs = p.vertices();
  Rat m = dot(n, vs[0]);
  for (std::size_t i = 1; i < vs.size(); ++i) {
    Rat x = dot(n, vs[i]);
    if (x < m) m = x;
  }
  return m;
}

int affine_dim(const std::vector<RatVector>& pts) {
  if (pts.empty()) return -1;
  return rank(diffs_from_first(pts));
}

RationalPolytope minkowski_sum(const RationalPolytope& p, const RationalPolytope& q) {
  if (p.ambient() != q.ambient()) throw DimensionError("minkowski_sum: dimension mismatch");
  const int d = p.ambient();
  std::vector<RatVector> dirs = diffs_from_first(p.vertices());
  for (auto& v : diffs_from_first(q.vertices())) dirs.push_back(v);
  const int k = rank(dirs);
  if (d < 3 || k < 3) {
    std::vector<RatVector> s;
    for (const auto& a : p.vertices())
      for (const auto& b : q.vertices()) s.push_back(a + b);
    return hull(s);
  }
  std::set<IntVector> cand;
  auto add = [&](const IntVector& n) {
    if (n.is_zero()) return;
    IntVector m = primitive(n);
    cand.insert(m);
    cand.insert(-m);
  };
  for (const auto* x : {&p, &q}) {
    for (const auto& f : x->facets()) add(f.normal);
    for (const auto& e : x->equations()) add(e.normal);
  }
  auto ep = edges(p), eq = edges(q);
  for (const auto& a : ep)
    for (const auto& b : eq) add(cross(a.direction, b.direction));
  std::vector<Halfspace> fs;
  std::vector<RatVector> verts;
  for (const auto& n : cand) {
    auto fp = face_vertices(p, n), fq = face_vertices(q, n);
    std::vector<RatVector> s;
    for (const auto& a : fp)
      for (const auto& b : fq) s.push_back(a + b);
    if (affine_dim(s) != 2) continue;
    fs.push_back({n, -(dot(n, fp[0]) + dot(n, fq[0]))});
    RationalPolytope fh = hull(s);
    for (const auto& v : fh.vertices()) verts.push_back(v);
  }
  return RationalPolytope::assemble(3, 3, std::move(verts), std::move(fs), {});
}

std::optional<RationalPolytope> minkowski_difference(const RationalPolytope& p,
                                                     const RationalPolytope& q) {
  if (p.ambient() != q.ambient()) throw DimensionError("minkowski_difference: dimension mismatch");
  std::vector<Halfspace> hs;
  for (const auto& h : p.halfspaces()) hs.push_back({h.normal, h.offset + support_min(q, h.normal)});
  return from_halfspaces(p.ambient(), hs);
}

std::vector<IntVector> lattice_points(const RationalPolytope& p) {
  const int d = p.ambient();
  std::vector<Int> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    Rat mn = p.vertices()[0][i], mx = mn;
    for (const auto& v : p.vertices()) {
      if (v[i] < mn) mn = v[i];
      if (v[i] > mx) mx = v[i];
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
    if (lo[i] > hi[i]) return {};
  }
  const std::vector<Halfspace> hs = p.halfspaces();
  std::vector<IntVector> out;
  std::vector<Int> x(d);
  // partial[j] = offset + sum over fixed coordinates
  std::vector<Rat> partial(hs.size());
  auto rec = [&](auto&& self, int i) -> void {
    if (i == d - 1) {
      Int a = lo[i], b = hi[i];
      for (std::size_t j = 0; j < hs.size(); ++j) {
        const Int& c = hs[j].normal[i];
        const Rat& r = partial[j];
        if (sgn(c) > 0) {
          Int t = ceil_of(-r / c);
          if (t > a) a = t;
        } else if (sgn(c) < 0) {
          Int t = floor_of(r / Rat(-c));
          if (t < b) b = t;
        } else if (sgn(r) < 0) {
          return;
        }
      }
      for (Int t = a; t <= b; ++t) {
        x[i] = t;
        out.emplace_back(x);
      }
      return;
    }
    std::vector<Rat> saved = partial;
    for (Int t = lo[i]; t <= hi[i]; ++t) {
      x[i] = t;
      for (std::size_t j = 0; j < hs.size(); ++j) partial[j] = saved[j] + hs[j].normal[i] * t;
      self(self, i + 1);
    }
    partial = saved;
  };
  for (std::size_t j = 0; j < hs.size(); ++j) partial[j] = hs[j].offset;
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_lattice_points(const RationalPolytope& p) { return lattice_points(p).size(); }

std::vector<EdgeDescriptor> edges(const RationalPolytope& p) {
  std::vector<EdgeDescriptor> out;
  if (p.dim() < 1) return out;
  const int d = p.ambient();
  const auto& vs = p.vertices();
  std::vector<IntVector> eqn;
  for (const auto& e : p.equations()) eqn.push_back(e.normal);
  const int need = d - 1 - static_cast<int>(eqn.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      std::vector<int> shared;
      std::set_intersection(p.incidence(i).begin(), p.incidence(i).end(), p.incidence(j).begin(),
                            p.incidence(j).end(), std::back_inserter(shared));
      if (static_cast<int>(shared.size()) < need) continue;
      std::vector<IntVector> act = eqn;
      for (int f : shared) act.push_back(p.facets()[f].normal);
      if (rank(act) < d - 1) continue;
      RatVector diff = vs[j] - vs[i];
      IntVector dir = primitive(diff);
      Rat len;
      for (int c = 0; c < d; ++c)
        if (sgn(dir[c]) != 0) {
          len = diff[c] / dir[c];
          break;
        }
      out.push_back({vs[i], vs[j], dir, len});
    }
  return out;
}

std::vector<FacetDescriptor> facets(const RationalPolytope& p) {
  std::vector<FacetDescriptor> out;
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    FacetDescriptor fd{p.facets()[f], {}};
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
      const auto& inc = p.incidence(i);
      if (std::binary_search(inc.begin(), inc.end(), static_cast<int>(f))) fd.vertices.push_back(p.vertices()[i]);
    }
    out.push_back(std::move(fd));
  }
  return out;
}

Rat lattice_length_min(const LatticePolytope& lp) {
  auto es = edges(lp.poly());
  if (es.empty()) throw Error("lattice length needs a polytope of dimension at least 1");
  Rat m = es[0].length;
  for (const auto& e : es)
    if (e.length < m) m = e.length;
  return m;
}

namespace {

std::vector<IntVector> signature(const RationalPolytope& p, std::size_t i) {
  std::vector<IntVector> s;
  for (int f : p.incidence(i)) s.push_back(p.facets()[f].normal);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

bool same_normal_fan(const RationalPolytope& p, const RationalPolytope& q) {
  if (p.ambient() != q.ambient()) return false;
  if (!p.full_dimensional() || !q.full_dimensional()) throw Error("normal fan comparison needs full-dimensional polytopes");
  if (p.vertices().size() != q.vertices().size() || p.facets().size() != q.facets().size()) return false;
  std::set<std::vector<IntVector>> a, b;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) a.insert(signature(p, i));
  for (std::size_t i = 0; i < q.vertices().size(); ++i) b.insert(signature(q, i));
  return a == b;
}

Rat edge_ratio_min(const RationalPolytope& p1, const RationalPolytope& p2) {
  if (!same_normal_fan(p1, p2)) throw Error("edge_ratio_min: polytopes have different normal fans");
  std::map<std::vector<IntVector>, RatVector> where;
  for (std::size_t i = 0; i < p2.vertices().size(); ++i) where[signature(p2, i)] = p2.vertices()[i];
  std::map<RatVector, std::size_t> idx1;
  for (std::size_t i = 0; i < p1.vertices().size(); ++i) idx1[p1.vertices()[i]] = i;
  std::optional<Rat> best;
  for (const auto& e : edges(p1)) {
    RatVector a2 = where.at(signature(p1, idx1[e.a]));
    RatVector b2 = where.at(signature(p1, idx1[e.b]));
    RatVector diff = b2 - a2;
    Rat len2;
    for (int c = 0; c < p1.ambient(); ++c)
      if (sgn(e.direction[c]) != 0) {
        len2 = diff[c] / e.direction[c];
        break;
      }
    Rat r = e.length / len2;
    if (!best || r < *best) best = r;
  }
  if (!best) throw Error("edge_ratio_min: no edges");
  return *best;
}

std::vector<RatVector> ccw_vertices(const RationalPolytope& p) {
  if (p.ambient() != 2) throw DimensionError("ccw_vertices needs a planar polytope");
  std::vector<int> h = chain(p.vertices());
  std::vector<RatVector> out;
  for (int i : h) out.push_back(p.vertices()[i]);
  return out;
}

Rat twice_area(const RationalPolytope& p) {
  if (p.ambient() != 2) throw DimensionError("twice_area needs a planar polytope");
  if (p.dim() < 2) return 0;
  auto v = ccw_vertices(p);
  Rat s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s;
}

bool pick_holds(const LatticePolytope& lp) {
  const auto& p = lp.poly();
  if (p.ambient() != 2 || p.dim() != 2) throw Error("pick_holds needs a full-dimensional lattice polygon");
  Rat b = 0;
  for (const auto& e : edges(p)) b += e.length;
  Rat total = static_cast<unsigned long>(count_lattice_points(p));
  Rat interior = total - b;
  return twice_area(p) == 2 * interior + b - 2;
}

bool Polyhedron::contains(const RatVector& x) const {
  for (const auto& e : equations_)
    if (sgn(e.eval(x)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(f.eval(x)) < 0) return false;
  return true;
}

std::optional<RationalPolytope> Polyhedron::truncate(const IntVector& s, const Rat& h) const {
  std::vector<Halfspace> hs = facets_;
  for (const auto& e : equations_) {
    hs.push_back(e);
    hs.push_back({-e.normal, -e.offset});
  }
  hs.push_back({-s, h});
  return from_halfspaces(ambient(), hs);
}

Polyhedron polyhedron_sum(const RationalPolytope& p, const Cone& c) {
  const int d = p.ambient();
  if (c.ambient != d) throw DimensionError("polyhedron_sum: dimension mismatch");
  std::vector<IntVector> gens;
  for (const auto& g : c.generators) {
    if (g.dim() != d) throw DimensionError("polyhedron_sum: generator dimension mismatch");
    if (!g.is_zero()) gens.push_back(primitive(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (!is_pointed({gens, d})) throw Error("recession cone is not strongly convex");

  Polyhedron q;
  q.cone_ = {gens, d};
  std::vector<RatVector> span = diffs_from_first(p.vertices());
  for (const auto& g : gens) span.push_back(to_rat(g));
  const int k = rank(span);
  q.dim_ = k;
  const RatVector& v0 = p.vertices()[0];
  std::vector<RatVector> eqrows;
  for (const auto& n : orthogonal_complement(span, d)) {
    q.equations_.push_back({n, -dot(n, v0)});
    eqrows.push_back(to_rat(n));
  }
  std::vector<RatVector> dirs;
  for (const auto& e : edges(p)) dirs.push_back(to_rat(e.direction));
  for (const auto& g : gens) dirs.push_back(to_rat(g));
  std::set<Halfspace> fs;
  if (k > 0) {
    for_each_subset(static_cast<int>(dirs.size()), k - 1, [&](const std::vector<int>& s) {
      std::vector<RatVector> rows = eqrows;
      for (int i : s) rows.push_back(dirs[i]);
      auto comp = orthogonal_complement(rows, d);
      if (comp.size() != 1) return true;
      for (const IntVector& n : {comp[0], IntVector(-comp[0])}) {
        bool ok = true;
        for (const auto& g : gens)
          if (sgn(dot(g, n)) < 0) ok = false;
        if (!ok) continue;
        auto fp = face_vertices(p, n);
        std::vector<RatVector> fd = diffs_from_first(fp);
        for (const auto& g : gens)
          if (sgn(dot(g, n)) == 0) fd.push_back(to_rat(g));
        if (rank(fd) != k - 1) continue;
        fs.insert({n, -dot(n, fp[0])});
      }
      return true;
    });
  }
  q.facets_.assign(fs.begin(), fs.end());
  std::vector<RatVector> verts;
  for (const auto& v : p.vertices()) {
    std::vector<RatVector> act = eqrows;
    for (const auto& f : q.facets_)
      if (sgn(f.eval(v)) == 0) act.push_back(to_rat(f.normal));
    if (rank(act) == d) verts.push_back(v);
  }
  if (verts.empty()) throw std::logic_error("pointed polyhedron without a vertex");
  q.finite_ = hull(verts);
  return q;
}

std::vector<RationalPolytope> finite_boundary(const Polyhedron& q) {
  const auto& vs = q.finite_part().vertices();
  const auto& fs = q.facets();
  const auto& gens = q.recession().generators;
  std::vector<std::vector<int>> tight(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (sgn(fs[j].eval(vs[i])) == 0) tight[j].push_back(static_cast<int>(i));
  std::set<std::vector<int>> faces;
  std::vector<int> all(vs.size());
  std::iota(all.begin(), all.end(), 0);
  faces.insert(all);
  for (const auto& t : tight)
    if (!t.empty()) faces.insert(t);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(faces.begin(), faces.end());
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        std::vector<int> x;
        std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(), cur[b].end(),
                              std::back_inserter(x));
        if (!x.empty() && faces.insert(x).second) grew = true;
      }
  }
  std::vector<std::vector<int>> bounded;
  for (const auto& s : faces) {
    std::vector<const Halfspace*> act;
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (std::includes(tight[j].begin(), tight[j].end(), s.begin(), s.end())) act.push_back(&fs[j]);
    bool ok = true;
    for (const auto& g : gens) {
      bool hit = false;
      for (const auto* h : act)
        if (sgn(dot(g, h->normal)) != 0) hit = true;
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok) bounded.push_back(s);
  }
  std::vector<RationalPolytope> out;
  for (const auto& s : bounded) {
    bool maximal = true;
    for (const auto& t : bounded)
      if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) maximal = false;
    if (!maximal) continue;
    std::vector<RatVector> pts;
    for (int i : s) pts.push_back(vs[i]);
    out.push_back(hull(pts));
  }
  std::sort(out.begin(), out.end(),
            [](const RationalPolytope& a, const RationalPolytope& b) { return a.vertices() < b.vertices(); });
  return out;
}

std::vector<IntVector> polyhedron_lattice_points_truncated(const Polyhedron& q, const IntVector& s,
                                                           const Rat& h) {
  auto t = q.truncate(s, h);
  if (!t) return {};
  return lattice_points(*t);
}

}  // namespace oda
