#include "oda/surface.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oda {

namespace {

Rat cross2(const RatVector& a, const RatVector& b) { return a[0] * b[1] - a[1] * b[0]; }
Int cross2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

void need_polygon(const RationalPolytope& p, const char* what) {
  if (p.ambient() != 2) throw DimensionError(std::string(what) + " needs a planar polygon");
  if (!p.full_dimensional()) throw Error(std::string(what) + " needs a full-dimensional polygon");
}

void need_nonzero(const IntVector& u, const char* what) {
  if (u.dim() != 2) throw DimensionError(std::string(what) + " needs a planar direction");
  if (u.is_zero()) throw Error(std::string(what) + ": direction is zero");
}

int vertex_index(const std::vector<RatVector>& ring, const RatVector& x) {
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == x) return static_cast<int>(i);
  throw Error("point " + to_string(x) + " is not a vertex");
}

// ring rotated so that it starts at x0
std::vector<RatVector> ring_from(const RationalPolytope& p, const RatVector& x0) {
  auto ring = ccw_vertices(p);
  int k = vertex_index(ring, x0);
  std::rotate(ring.begin(), ring.begin() + k, ring.end());
  return ring;
}

RationalPolytope negated(const RationalPolytope& p) {
  std::vector<RatVector> v;
  for (const auto& x : p.vertices()) v.push_back(-x);
  return hull(v);
}

bool on_boundary(const RationalPolytope& p, const RatVector& x) {
  if (!p.contains(x)) return false;
  for (const auto& f : p.facets())
    if (sgn(f.eval(x)) == 0) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------- chord functions

Rat ChordFunction::t_of(const RatVector& x) const { return x[1] * Rat(u[0]) - x[0] * Rat(u[1]); }

Rat ChordFunction::s_of(const RatVector& x) const {
  Rat uu(u[0] * u[0] + u[1] * u[1]);
  return (x[0] * Rat(u[0]) + x[1] * Rat(u[1])) / uu;
}

RatVector ChordFunction::point(const Rat& s, const Rat& t) const {
  Rat uu(u[0] * u[0] + u[1] * u[1]);
  Rat k = t / uu;
  // w = (-u1, u0)
  return RatVector{s * Rat(u[0]) - k * Rat(u[1]), s * Rat(u[1]) + k * Rat(u[0])};
}

namespace {

Rat interpolate(const std::vector<ChordFunction::Break>& b, const Rat& t, bool hi_side) {
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (t < b[i].t || t > b[i + 1].t) continue;
    const Rat& y0 = hi_side ? b[i].hi : b[i].lo;
    const Rat& y1 = hi_side ? b[i + 1].hi : b[i + 1].lo;
    return y0 + (y1 - y0) * (t - b[i].t) / (b[i + 1].t - b[i].t);
  }
  throw Error("chord parameter " + to_string(t) + " outside the polygon");
}

}  // namespace

Rat ChordFunction::lo(const Rat& t) const { return interpolate(breaks, t, false); }
Rat ChordFunction::hi(const Rat& t) const { return interpolate(breaks, t, true); }

Rat ChordFunction::value(const Rat& t) const {
  if (t < t_min() || t > t_max()) return 0;
  return hi(t) - lo(t);
}

Rat ChordFunction::max() const {
  Rat m = 0;
  for (const auto& b : breaks) m = std::max(m, Rat(b.hi - b.lo));
  return m;
}

std::pair<Rat, Rat> ChordFunction::argmax() const {
  Rat m = max();
  std::optional<Rat> a, b;
  for (const auto& br : breaks)
    if (br.hi - br.lo == m) {
      if (!a) a = br.t;
      b = br.t;
    }
  return {*a, *b};
}

Rat ChordFunction::max_on(const Rat& a0, const Rat& b0) const {
  Rat a = std::min(a0, b0), b = std::max(a0, b0);
  Rat m = std::max(value(a), value(b));
  for (const auto& br : breaks)
    if (br.t > a && br.t < b) m = std::max(m, Rat(br.hi - br.lo));
  return m;
}

bool ChordFunction::concave() const {
  std::optional<Rat> prev;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rat slope = ((breaks[i + 1].hi - breaks[i + 1].lo) - (breaks[i].hi - breaks[i].lo)) /
                (breaks[i + 1].t - breaks[i].t);
    if (prev && slope > *prev) return false;
    prev = slope;
  }
  return true;
}

ChordFunction chord_function(const RationalPolytope& p, const IntVector& u) {
  need_polygon(p, "chord_function");
  need_nonzero(u, "chord_function");
  ChordFunction f;
  f.u = u;
  auto ring = ccw_vertices(p);
  std::set<Rat> levels;
  for (const auto& v : ring) levels.insert(f.t_of(v));
  for (const Rat& t : levels) {
    std::optional<Rat> lo, hi;
    auto take = [&](const RatVector& x) {
      Rat s = f.s_of(x);
      if (!lo || s < *lo) lo = s;
      if (!hi || s > *hi) hi = s;
    };
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const RatVector& a = ring[i];
      const RatVector& b = ring[(i + 1) % ring.size()];
      Rat ta = f.t_of(a), tb = f.t_of(b);
      if (ta == t) take(a);
      if (sgn(ta - t) * sgn(tb - t) < 0) take(a + (b - a) * ((t - ta) / (tb - ta)));
    }
    f.breaks.push_back({t, *lo, *hi});
  }
  return f;
}

// ---------------------------------------------------------------- contact points

ContactPointSet contact_points(const RationalPolytope& p, const IntVector& u) {
  auto f = chord_function(p, u);
  if (f.max() < 1) throw Error("no contact points: chord never reaches ||u||");
  const auto& b = f.breaks;
  auto len = [&](std::size_t i) -> Rat { return b[i].hi - b[i].lo; };
  auto cross_one = [&](std::size_t i, std::size_t j) -> Rat {
    // level between breaks i and j where the chord equals 1
    return b[i].t + (Rat(1) - len(i)) * (b[j].t - b[i].t) / (len(j) - len(i));
  };
  std::size_t first = 0, last = b.size() - 1;
  while (len(first) < 1) ++first;
  while (len(last) < 1) --last;
  ContactPointSet r;
  r.direction = u;
  r.c = first == 0 ? b[0].t : cross_one(first - 1, first);
  r.d = last == b.size() - 1 ? b.back().t : cross_one(last + 1, last);
  r.points.push_back(f.point(f.lo(r.c) + 1, r.c));
  if (r.d != r.c) r.points.push_back(f.point(f.lo(r.d) + 1, r.d));
  return r;
}

bool is_contact_point(const RationalPolytope& p, const IntVector& u, const RatVector& x) {
  auto f = chord_function(p, u);
  if (f.max() < 1) return false;
  RatVector y = x - to_rat(u);
  if (!on_boundary(p, x) || !on_boundary(p, y)) return false;
  auto cp = contact_points(p, u);
  Rat t = f.t_of(x);
  if (t != cp.c && t != cp.d) return false;
  // x - eps u leaves u + P iff a facet tight at x - u increases along u
  for (const auto& h : p.facets())
    if (sgn(h.eval(y)) == 0 && sgn(dot(h.normal, to_rat(u))) > 0) return true;
  return false;
}

bool contact_strip_holds(const RationalPolytope& p, const IntVector& u) {
  auto cp = contact_points(p, u);
  auto f = chord_function(p, u);
  auto q = intersect(p, translate(p, to_rat(u)));
  if (!q) return true;
  for (const auto& v : q->vertices()) {
    Rat t = f.t_of(v);
    if (t < cp.c || t > cp.d) return false;
  }
  return true;
}

// ---------------------------------------------------------------- translation vector types

TranslationVectorType classify_translation_vector(const RationalPolytope& p1, const IntVector& v,
                                                  const RatVector& a0, const RatVector& a0p) {
  need_nonzero(v, "classify_translation_vector");
  need_polygon(p1, "classify_translation_vector");
  auto f = chord_function(p1, v);
  TranslationVectorType r;
  Rat ta = f.t_of(a0), tb = f.t_of(a0p);
  r.at_a0 = f.value(ta);
  r.at_a0p = f.value(tb);
  r.on_edge = f.max_on(ta, tb);
  if (f.max() < 1) {
    r.tag = 'h';
    return r;
  }
  auto cp = contact_points(p1, v);
  if (cp.points.size() == 1) {
    r.tag = 'g';
    return r;
  }
  const Rat one(1);
  const Rat &la = r.at_a0, &lb = r.at_a0p, &ls = r.on_edge;
  bool cases[6] = {
      ls < one && la > lb,                  // a
      la >= one && one > lb,                // b
      ls >= one && la >= one && lb >= one,  // c
      lb >= one && one > la,                // d
      ls < one && lb > la,                  // e
      ls >= one && la < one && lb < one,    // f
  };
  int hits = 0;
  for (int i = 0; i < 6; ++i)
    if (cases[i]) {
      ++hits;
      r.tag = static_cast<char>('a' + i);
    }
  if (hits != 1)
    throw Error("translation vector " + to_string(v) + " matches " + std::to_string(hits) + " of the cases a)-f)");
  RatVector e = a0p - a0;
  Rat den = cross2(e, to_rat(v));
  if (sgn(den) != 0) {
    for (const auto& x : cp.points) r.contact_positions.push_back(cross2(x - a0, to_rat(v)) / den);
    std::sort(r.contact_positions.begin(), r.contact_positions.end());
  }
  return r;
}

// ---------------------------------------------------------------- parallelograms and chord order

RationalPolytope unimodular_parallelogram(const RationalPolytope& p, const RatVector& vertex) {
  need_polygon(p, "unimodular_parallelogram");
  if (count_lattice_points(p) < 4) throw Error("unimodular_parallelogram needs at least four lattice points");
  auto ring = ring_from(p, vertex);
  IntVector e1 = primitive(RatVector(ring[1] - vertex));
  IntVector e2 = primitive(RatVector(ring.back() - vertex));
  if (abs(cross2(e1, e2)) != 1) throw Error("polygon is not smooth at " + to_string(vertex));
  RatVector a = to_rat(e1), b = to_rat(e2);
  return hull(std::vector<RatVector>{vertex, vertex + a, vertex + b, vertex + a + b});
}

namespace {

// boundary position counted counter-clockwise from ring[0]: (edge index, fraction along it)
std::pair<int, Rat> ring_position(const std::vector<RatVector>& ring, const RatVector& x) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const RatVector& a = ring[i];
    const RatVector& b = ring[(i + 1) % ring.size()];
    RatVector d = b - a, y = x - a;
    if (sgn(cross2(d, y)) != 0) continue;
    Rat s = sgn(d[0]) != 0 ? y[0] / d[0] : y[1] / d[1];
    if (s >= 0 && s < 1) return {static_cast<int>(i), s};
  }
  throw Error("point " + to_string(x) + " is not on the boundary");
}

struct Chord {
  RatVector a, b;
};

// the chord of length l in direction u closest to x0, which is an extreme level of the chord function
Chord lower_chord(const ChordFunction& f, const RatVector& x0, const Rat& l) {
  Rat t0 = f.t_of(x0);
  std::vector<ChordFunction::Break> b = f.breaks;
  if (t0 == f.t_max()) std::reverse(b.begin(), b.end());
  else if (t0 != f.t_min()) throw Error("x0 is not at an extreme level");
  for (std::size_t i = 1; i < b.size(); ++i) {
    Rat li = b[i].hi - b[i].lo;
    if (li < l) continue;
    Rat lp = b[i - 1].hi - b[i - 1].lo;
    Rat t = b[i - 1].t + (l - lp) * (b[i].t - b[i - 1].t) / (li - lp);
    return {f.point(f.lo(t), t), f.point(f.hi(t), t)};
  }
  throw Error("no chord of the requested length");
}

// chord of the cone x0 + R+ r1 + R+ r2 with direction u and length l: (lambda on r1, mu on r2)
std::optional<std::pair<Rat, Rat>> cone_chord(const RatVector& r1, const RatVector& r2, const IntVector& u,
                                              const Rat& l) {
  for (int sign : {1, -1}) {
    RatVector w = to_rat(u) * Rat(l * sign);
    // mu r2 - lambda r1 = w
    Rat dd = cross2(r2, RatVector(-r1));
    if (sgn(dd) == 0) return std::nullopt;
    Rat mu = cross2(w, RatVector(-r1)) / dd;
    Rat lambda = cross2(r2, w) / dd;
    if (sgn(mu) >= 0 && sgn(lambda) >= 0) return std::make_pair(lambda, mu);
  }
  return std::nullopt;
}

}  // namespace

bool chord_order_check(const RationalPolytope& p, const RatVector& x0, const IntVector& u, const IntVector& v,
                       const Rat& lu, const Rat& lv) {
  need_polygon(p, "chord_order_check");
  need_nonzero(u, "chord_order_check");
  need_nonzero(v, "chord_order_check");
  if (sgn(lu) <= 0 || sgn(lv) <= 0) throw Error("chord lengths must be positive");
  auto ring = ring_from(p, x0);
  auto fu = chord_function(p, u), fv = chord_function(p, v);
  if (sgn(fu.value(fu.t_of(x0))) != 0 || sgn(fv.value(fv.t_of(x0))) != 0)
    throw Error("hypothesis 2 fails: a chord through x0 has positive length");
  if (fu.max() < lu || fv.max() < lv) throw Error("hypothesis 3 fails: the polygon has no chord that long");
  RatVector r1 = ring[1] - x0, r2 = ring.back() - x0;
  auto cu = cone_chord(r1, r2, u, lu), cv = cone_chord(r1, r2, v, lv);
  if (!cu || !cv) throw Error("hypothesis 1 fails: a chord does not fit the corner at x0");
  if (cu->first < cv->first || cu->second < cv->second)
    throw Error("hypothesis 1 fails: the u-chord is not on the far side in the corner at x0");
  auto pos = [&](const Chord& c) {
    auto a = ring_position(ring, c.a), b = ring_position(ring, c.b);
    if (b < a) std::swap(a, b);
    return std::make_pair(a, b);  // (right chain, left chain)
  };
  auto [ur, ul] = pos(lower_chord(fu, x0, lu));
  auto [vr, vl] = pos(lower_chord(fv, x0, lv));
  return !(ur < vr) && !(vl < ul);
}

// ---------------------------------------------------------------- four-vector cover

std::pair<IntVector, IntVector> hv_basis(const IntVector& alpha, const IntVector& beta) {
  Int d = cross2(alpha, beta);
  if (abs(d) != 1) throw Error("cone <" + to_string(alpha) + ", " + to_string(beta) + "> is not smooth");
  IntVector uh{Int(-d * beta[1]), Int(d * beta[0])};
  IntVector uv{Int(d * alpha[1]), Int(-d * alpha[0])};
  return {uh, uv};
}

FourVectorReport sfhn_four_vector_cover(const RationalPolytope& p1, const IntVector& chi, const RationalPolytope& p2,
                                        const IntVector& alpha0, const IntVector& beta0) {
  need_polygon(p1, "sfhn_four_vector_cover");
  FourVectorReport r;
  std::set<IntVector> rays;
  for (const auto& h : p1.facets()) rays.insert(h.normal);
  bool na = rays.count(-alpha0) > 0, nb = rays.count(-beta0) > 0;
  IntVector alpha = alpha0, beta = beta0;
  if (nb && !na) std::swap(alpha, beta);
  auto [uh, uv] = hv_basis(alpha, beta);
  std::vector<IntVector> cand{-uh, -uv};
  RationalPolytope moved = translate(p1, to_rat(chi));
  if (na && nb) {
    r.two_vectors = true;
  } else {
    // lowest vertex: maximal <x, beta>
    auto ring = ccw_vertices(moved);
    std::size_t ci = 0;
    for (std::size_t i = 1; i < ring.size(); ++i)
      if (dot(beta, ring[i]) > dot(beta, ring[ci])) ci = i;
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (i != ci && dot(beta, ring[i]) == dot(beta, ring[ci])) throw Error("no unique lowest vertex");
    const RatVector& c = ring[ci];
    IntVector e1 = primitive(RatVector(ring[(ci + 1) % ring.size()] - c));
    IntVector e2 = primitive(RatVector(ring[(ci + ring.size() - 1) % ring.size()] - c));
    auto hv = [&](const IntVector& x) -> IntVector { return IntVector{Int(-dot(x, alpha)), Int(-dot(x, beta))}; };
    IntVector um = e1, up = e2;  // u_{-1}, u_1 counter-clockwise in the (h, v) frame
    if (sgn(cross2(hv(um), hv(up))) < 0) std::swap(um, up);
    Int a = hv(um)[0], d = hv(up)[1];
    r.c_point = c;
    r.d_point = c - to_rat(up) * Rat(a) - to_rat(um) * Rat(d);
    cand.push_back(-um);
    cand.push_back(-up);
  }
  std::vector<RationalPolytope> pieces;
  for (const auto& w : cand) {
    IntVector t = chi + w;
    RationalPolytope q = translate(p1, to_rat(t));
    if (p2.contains(q)) {
      r.translates.push_back(t);
      pieces.push_back(q);
    } else {
      r.rejected.push_back(t);
    }
  }
  auto target = intersect(moved, p2);
  if (!target) {
    r.cover.covered = true;
    return r;
  }
  r.cover = covers(*target, pieces);
  return r;
}

std::optional<Rat> max_translation(const RationalPolytope& diff, const IntVector& p, const IntVector& u) {
  RatVector x = to_rat(p);
  if (!diff.contains(x)) return std::nullopt;
  std::optional<Rat> best;
  for (const auto& h : diff.halfspaces()) {
    Int s = dot(h.normal, u);
    if (sgn(s) >= 0) continue;
    Rat lam = h.eval(x) / Rat(-s);
    if (!best || lam < *best) best = lam;
  }
  if (!best) throw Error("translation is unbounded");
  return best;
}

// ---------------------------------------------------------------- fans of smooth surfaces

std::vector<int> ccw_ray_order(const Fan& f) {
  if (f.dim != 2) throw DimensionError("ccw_ray_order expects a 2D fan");
  std::vector<int> idx(f.rays.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  const IntVector& r0 = f.rays[0];
  // half 0: angle in [0, pi) measured from r0
  auto half = [&](const IntVector& x) {
    Int c = cross2(r0, x);
    if (sgn(c) > 0) return 0;
    if (sgn(c) < 0) return 1;
    return sgn(dot(r0, x)) > 0 ? 0 : 1;
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    int ha = half(f.rays[a]), hb = half(f.rays[b]);
    if (ha != hb) return ha < hb;
    return sgn(cross2(f.rays[a], f.rays[b])) > 0;
  });
  return idx;
}

std::vector<int> exceptional_rays(const Fan& f) {
  auto ord = ccw_ray_order(f);
  const std::size_t n = ord.size();
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector& prev = f.rays[ord[(i + n - 1) % n]];
    const IntVector& next = f.rays[ord[(i + 1) % n]];
    if (prev + next == f.rays[ord[i]]) out.push_back(ord[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::pair<int, int> neighbours(const Fan& f, int ray) {
  auto ord = ccw_ray_order(f);
  const std::size_t n = ord.size();
  for (std::size_t i = 0; i < n; ++i)
    if (ord[i] == ray) return {ord[(i + n - 1) % n], ord[(i + 1) % n]};
  throw Error("ray index out of range");
}

// L.D_ray on a smooth complete 2D fan: a_prev + a_next - b a_ray with prev + next = b ray
Int ray_degree(const Fan& f, const std::vector<Int>& a, int ray) {
  auto [p, q] = neighbours(f, ray);
  IntVector s = f.rays[p] + f.rays[q];
  const IntVector& r = f.rays[ray];
  Int b = sgn(r[0]) != 0 ? Int(s[0] / r[0]) : Int(s[1] / r[1]);
  return a[p] + a[q] - b * a[ray];
}

std::vector<Int> bump(std::vector<Int> a, int ray) {
  a[ray] += 1;
  return a;
}

RationalPolytope poly(const ToricLineBundle& l) {
  auto p = polytope_of(l);
  if (!p) throw Error("line bundle has an empty polytope");
  return *p;
}

}  // namespace

Fan blow_down(const Fan& f, int ray) {
  auto ex = exceptional_rays(f);
  if (std::find(ex.begin(), ex.end(), ray) == ex.end()) throw Error("ray " + std::to_string(ray) + " is not exceptional");
  auto [p, q] = neighbours(f, ray);
  std::vector<IntVector> rays;
  std::vector<int> re(f.rays.size(), -1);
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (static_cast<int>(i) != ray) {
      re[i] = static_cast<int>(rays.size());
      rays.push_back(f.rays[i]);
    }
  std::vector<std::vector<int>> cones;
  for (const auto& c : f.max_cones) {
    if (std::find(c.begin(), c.end(), ray) != c.end()) continue;
    std::vector<int> nc;
    for (int i : c) nc.push_back(re[i]);
    cones.push_back(nc);
  }
  std::vector<int> merged{re[p], re[q]};
  std::sort(merged.begin(), merged.end());
  cones.push_back(merged);
  return make_fan(rays, cones);
}

// ---------------------------------------------------------------- verification

bool is_unimodular_triangle(const RationalPolytope& p) {
  return p.ambient() == 2 && p.dim() == 2 && p.vertices().size() == 3 && p.is_lattice() && twice_area(p) == 1;
}

namespace {

// (chi + P1') cap P2 covered by translates p + P1 with p - chi in P1 - P1
bool triangle_patch(const RationalPolytope& p1, const RationalPolytope& p1big, const RationalPolytope& p2,
                 const std::vector<IntVector>& t, std::size_t& patches) {
  RationalPolytope dd = minkowski_sum(p1, negated(p1));
  for (const auto& chi : t) {
    auto target = intersect(translate(p1big, to_rat(chi)), p2);
    if (!target) continue;
    if (translate(p1, to_rat(chi)).contains(*target)) continue;
    std::vector<RationalPolytope> pieces;
    for (const auto& p : t)
      if (dd.contains(to_rat(p - chi))) pieces.push_back(translate(p1, to_rat(p)));
    ++patches;
    if (!covers(*target, pieces).covered) return false;
  }
  return true;
}

bool four_vector_patch(const RationalPolytope& p1, const RationalPolytope& p2, const std::vector<IntVector>& tbig,
                 const IntVector& alpha, const IntVector& beta, std::size_t& patches) {
  for (const auto& chi : tbig) {
    if (p2.contains(translate(p1, to_rat(chi)))) continue;
    ++patches;
    if (!sfhn_four_vector_cover(p1, chi, p2, alpha, beta).cover.covered) return false;
  }
  return true;
}

bool certify(const ToricLineBundle& l1, const ToricLineBundle& l2, std::vector<CertificateStep>& steps) {
  const Fan& f = *l1.fan;
  const int picard = static_cast<int>(f.rays.size()) - 2;
  std::size_t me = steps.size();
  steps.push_back({});
  steps[me].picard = picard;
  auto p1 = poly(l1), p2 = poly(l2);
  if (picard <= 2) {
    steps[me].kind = "base";
    steps[me].ok = psi_check(p1, p2).inner.covered;
    return steps[me].ok;
  }
  int e = exceptional_rays(f).front();
  Int s1 = ray_degree(f, l1.coeffs, e), s2 = ray_degree(f, l2.coeffs, e);
  steps[me].s1 = s1;
  steps[me].s2 = s2;
  if (s1 < 1) throw Error("L1 is not ample on the exceptional curve");
  if (s2 < s1) throw Error("L2 - L1 is not nef on the exceptional curve");
  auto t = lattice_points(poly(difference(l2, l1)));
  bool sub = false, patch = false;
  std::size_t patches = 0;
  ToricLineBundle l1d{l1.fan, bump(l1.coeffs, e)};
  if (s1 >= 2) {
    steps[me].kind = "shrink";
    sub = certify(l1d, ToricLineBundle{l1.fan, bump(l2.coeffs, e)}, steps);
    patch = triangle_patch(p1, poly(l1d), p2, t, patches);
  } else if (s2 == 1) {
    steps[me].kind = "blowdown";
    auto y = std::make_shared<const Fan>(blow_down(f, e));
    auto drop = [&](std::vector<Int> a) {
      a.erase(a.begin() + e);
      return a;
    };
    sub = certify(ToricLineBundle{y, drop(l1.coeffs)}, ToricLineBundle{y, drop(l2.coeffs)}, steps);
    patch = triangle_patch(p1, poly(l1d), p2, t, patches);
  } else {
    steps[me].kind = "stretch";
    ToricLineBundle l2d{l1.fan, bump(l2.coeffs, e)};
    sub = certify(l1, l2d, steps);
    auto [pa, pb] = neighbours(f, e);
    auto tbig = lattice_points(poly(difference(l2d, l1)));
    patch = four_vector_patch(p1, p2, tbig, f.rays[pa], f.rays[pb], patches);
  }
  steps[me].patches = patches;
  steps[me].ok = sub && patch;
  return steps[me].ok;
}

}  // namespace

bool sfhn_certificate(const ToricLineBundle& l1, const ToricLineBundle& l2, std::vector<CertificateStep>& steps) {
  if (l1.fan->dim != 2 || !is_smooth(*l1.fan) || !is_complete(*l1.fan))
    throw Error("certificate needs a smooth complete 2D fan");
  if (!is_ample(l1)) throw Error("certificate needs an ample L1");
  if (!is_nef(difference(l2, l1))) throw Error("certificate needs L2 - L1 nef");
  return certify(l1, l2, steps);
}

SfhnReport sfhn_verify(const RationalPolytope& p1, const RationalPolytope& p2, bool with_certificate) {
  need_polygon(p1, "sfhn_verify");
  if (p2.ambient() != 2) throw DimensionError("sfhn_verify needs a planar P2");
  if (!p1.is_lattice() || !p2.is_lattice()) throw Error("sfhn_verify needs lattice polygons");
  if (is_unimodular_triangle(p1))
    throw Error("P1 is a unimodular triangle: the O(1) case on P^2 is excluded, "
                "psi(Delta, 2 Delta) is not covered");
  auto fan = std::make_shared<const Fan>(normal_fan(p1));
  if (!is_smooth(*fan)) throw Error("normal fan of P1 is not smooth");
  auto diff = minkowski_difference(p2, p1);
  if (!diff || lattice_points(*diff).empty()) throw Error("no lattice translate of P1 fits inside P2");
  SfhnReport r;
  r.direct = psi_check(p1, p2);
  if (!with_certificate) return r;
  auto coeffs = [&](const RationalPolytope& p) {
    std::vector<Int> a;
    for (const auto& rho : fan->rays) a.push_back(ceil_of(Rat(-support_min(p, rho))));
    return a;
  };
  ToricLineBundle l1{fan, coeffs(p1)}, l2{fan, coeffs(p2)};
  if (poly(l2) != p2) throw Error("P2 has an edge normal that is not a ray of the normal fan of P1");
  r.certificate = sfhn_certificate(l1, l2, r.steps);
  r.agree = *r.certificate == r.direct.inner.covered;
  return r;
}

// ---------------------------------------------------------------- itnv probe

std::vector<ItnvConfig> itnv_configs(const ToricLineBundle& l1, const ToricLineBundle& l2, int e, bool require_dgn) {
  const Fan& f = *l1.fan;
  auto ex = exceptional_rays(f);
  if (std::find(ex.begin(), ex.end(), e) == ex.end()) throw Error("ray is not exceptional");
  auto [ia, ib] = neighbours(f, e);  // alpha precedes alpha + beta counter-clockwise
  const IntVector& alpha = f.rays[ia];
  const IntVector& beta = f.rays[ib];
  auto [uh, uv] = hv_basis(alpha, beta);
  auto p1 = poly(l1);
  auto p1d = poly(ToricLineBundle{l1.fan, bump(l1.coeffs, e)});
  auto d = poly(difference(l2, l1));
  const IntVector& rho = f.rays[e];
  auto s = clip(p1d, Halfspace{-rho, Rat(-l1.coeffs[e])});
  if (!s) return {};

  // u_{alpha_i}, u_{beta_j} from the coordinates of the other rays in the basis (alpha, beta)
  Int det = cross2(alpha, beta);
  std::vector<IntVector> ua{uv}, ub{uh};
  for (std::size_t k = 0; k < f.rays.size(); ++k) {
    if (static_cast<int>(k) == e || static_cast<int>(k) == ia || static_cast<int>(k) == ib) continue;
    const IntVector& r = f.rays[k];
    Int p = cross2(r, beta) * det, q = cross2(alpha, r) * det;  // r = p alpha + q beta
    if (sgn(p) >= 0 && sgn(q) < 0) ua.push_back(primitive(IntVector(uh * Int(-q) + uv * p)));
    else if (sgn(p) < 0 && sgn(q) >= 0) ub.push_back(primitive(IntVector(uh * q + uv * Int(-p))));
  }
  RationalPolytope dd = minkowski_sum(p1, negated(p1));
  auto p2 = poly(l2);
  std::vector<ItnvConfig> out;
  if (!d.full_dimensional()) return out;
  for (const auto& p0 : lattice_points(d)) {
    if (!d.relint_contains(to_rat(p0))) continue;
    auto fits = [&](const IntVector& u) {
      auto lam = max_translation(d, p0, u);
      return lam && *lam >= 1;
    };
    // S matters only where it reaches into P2 outside p0 + P1
    auto reach = intersect(translate(*s, to_rat(p0)), p2);
    if (!reach || translate(p1, to_rat(p0)).contains(*reach)) continue;
    // no admissible single translate u_{alpha_i} or u_{beta_j} covers S
    bool single = false;
    for (const auto* us : {&ua, &ub})
      for (const auto& u : *us)
        if (fits(u) && translate(p1, to_rat(u)).contains(*s)) single = true;
    if (single && require_dgn) continue;
    auto usable = [&](const IntVector& u) { return fits(u) && dd.relint_contains(to_rat(u)); };
    for (std::size_t i = 1; i < ua.size(); ++i) {
      if (!usable(ua[i])) continue;
      for (std::size_t j = 1; j < ub.size(); ++j)
        if (ub[j] != ua[i] && usable(ub[j])) out.push_back({l1, l2, e, p0, p0 + ua[i], p0 + ub[j], !single});
    }
  }
  return out;
}

ItnvResult itnv_probe(const ItnvConfig& c) {
  const Fan& f = *c.l1.fan;
  auto [ia, ib] = neighbours(f, c.ray);
  const IntVector& beta = f.rays[ib];
  auto p1 = poly(c.l1);
  auto ends = face_vertices(p1, f.rays[c.ray]);
  if (ends.size() != 2) throw Error("exceptional edge of P1 is degenerate");
  // A0 is the upper-left end: larger v = -<x, beta>
  RatVector a0 = ends[0], a0p = ends[1];
  if (dot(beta, a0) > dot(beta, a0p)) std::swap(a0, a0p);
  (void)ia;

  ItnvResult r;
  auto tri = hull(std::vector<IntVector>{c.p0, c.q, c.qp});
  std::set<IntVector> seen;
  for (const auto& p : lattice_points(tri)) {
    IntVector w = p - c.p0;
    if (w.is_zero() || gcd_of(w) != 1) continue;
    if (seen.insert(w).second) r.vectors.push_back(w);
  }
  std::sort(r.vectors.begin(), r.vectors.end(),
            [](const IntVector& a, const IntVector& b) { return sgn(cross2(a, b)) > 0; });
  for (const auto& w : r.vectors) r.tags += classify_translation_vector(p1, w, a0, a0p).tag;
  auto ab = [](char t) { return t == 'a' || t == 'b'; };
  auto de = [](char t) { return t == 'd' || t == 'e'; };
  for (std::size_t i = 0; i + 1 < r.tags.size(); ++i)
    if ((ab(r.tags[i]) && de(r.tags[i + 1])) || (de(r.tags[i]) && ab(r.tags[i + 1]))) r.forbidden = true;
  return r;
}

}  // namespace oda
