#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oda/polytope.hpp"

using namespace oda;

namespace {

RationalPolytope simplex2(long k) { return hull({ivec({0, 0}), ivec({k, 0}), ivec({0, k})}); }

RationalPolytope box(std::vector<long> lo, std::vector<long> hi) {
  std::vector<IntVector> pts;
  const std::size_t d = lo.size();
  for (unsigned m = 0; m < (1u << d); ++m) {
    std::vector<Int> c;
    for (std::size_t i = 0; i < d; ++i) c.emplace_back((m >> i) & 1 ? hi[i] : lo[i]);
    pts.emplace_back(c);
  }
  return hull(pts);
}

std::vector<IntVector> random_points(std::mt19937_64& rng, int d, int n, long hi) {
  std::uniform_int_distribution<long> c(0, hi);
  std::vector<IntVector> pts;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> x;
    for (int j = 0; j < d; ++j) x.emplace_back(c(rng));
    pts.emplace_back(x);
  }
  return pts;
}

// independent count: every box point tested against the halfspaces
std::size_t brute_count(const RationalPolytope& p) {
  const int d = p.ambient();
  std::vector<long> lo(d, 1000), hi(d, -1000);
  for (const auto& v : p.vertices())
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], floor_of(v[i]).get_si());
      hi[i] = std::max(hi[i], ceil_of(v[i]).get_si());
    }
  std::size_t n = 0;
  std::vector<long> x(lo);
  while (true) {
    std::vector<Rat> c;
    for (long t : x) c.emplace_back(t);
    if (p.contains(RatVector(c))) ++n;
    int i = 0;
    while (i < d && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == d) break;
    ++x[i];
  }
  return n;
}

}  // namespace

TEST_CASE("hull drops interior points") {
  auto t = hull({rvec({0, 0}), rvec({1, 0}), rvec({0, 1}), RatVector({rat(1, 2), rat(1, 2)})});
  CHECK(t.vertices().size() == 3);
  CHECK(t.facets().size() == 3);
  CHECK(t.dim() == 2);
  auto pt = hull({rvec({0, 0})});
  CHECK(pt.dim() == 0);
  CHECK(pt.vertices().size() == 1);
  auto cube = box({0, 0, 0}, {1, 1, 1});
  CHECK(cube.facets().size() == 6);
  CHECK(cube.vertices().size() == 8);
  CHECK(hull(cube.vertices()) == cube);
  CHECK_THROWS_AS(hull({rvec({0, 0}), rvec({1, 2, 3})}), DimensionError);
}

TEST_CASE("lower-dimensional hulls carry equations") {
  auto seg = hull({ivec({0, 0, 0}), ivec({2, 4, 6}), ivec({1, 2, 3})});
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(seg.equations().size() == 2);
  auto tri = hull({ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1})});
  CHECK(tri.dim() == 2);
  CHECK(tri.equations().size() == 1);
  CHECK(tri.facets().size() == 3);
  CHECK(edges(tri).size() == 3);
  CHECK(tri.contains(RatVector({rat(1, 3), rat(1, 3), rat(1, 3)})));
  CHECK_FALSE(tri.contains(RatVector({rat(1, 3), rat(1, 3), rat(1, 2)})));
}

TEST_CASE("minkowski sum examples") {
  CHECK(minkowski_sum(simplex2(1), simplex2(1)) == simplex2(2));
  auto sq = box({0, 0}, {1, 1});
  CHECK(minkowski_sum(sq, hull({ivec({0, 0}), ivec({1, 0})})) == box({0, 0}, {2, 1}));
  auto pent = minkowski_sum(simplex2(1), sq);
  CHECK(pent.vertices().size() == 5);
  CHECK(minkowski_sum(sq, hull({ivec({0, 0})})) == sq);
}

TEST_CASE("3D minkowski sum matches the pairwise-sum hull") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 30; ++it) {
    auto p = hull(random_points(rng, 3, 6, 6));
    auto q = hull(random_points(rng, 3, 5, 6));
    std::vector<RatVector> s;
    for (auto& a : p.vertices())
      for (auto& b : q.vertices()) s.push_back(a + b);
    auto want = hull(s);
    auto got = minkowski_sum(p, q);
    CHECK(got == want);
    CHECK(got.facets() == want.facets());
    CHECK(minkowski_sum(q, p) == got);
  }
}

TEST_CASE("minkowski difference") {
  auto d = minkowski_difference(simplex2(2), simplex2(1));
  REQUIRE(d);
  CHECK(*d == simplex2(1));
  auto e = minkowski_difference(box({0, 0}, {2, 2}), box({0, 0}, {1, 1}));
  REQUIRE(e);
  CHECK(*e == box({0, 0}, {1, 1}));
  CHECK_FALSE(minkowski_difference(simplex2(1), simplex2(2)));
}

TEST_CASE("difference of a sum contains the summand") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    int d = 2 + it % 2;
    auto p = hull(random_points(rng, d, 5, 5));
    auto q = hull(random_points(rng, d, 4, 5));
    auto r = minkowski_difference(minkowski_sum(p, q), q);
    REQUIRE(r);
    CHECK(r->contains(p));
  }
  auto a = simplex2(3), b = simplex2(2);
  CHECK(*minkowski_difference(minkowski_sum(a, b), b) == a);
}

TEST_CASE("lattice points") {
  auto pts = lattice_points(simplex2(2));
  CHECK(pts.size() == 6);
  CHECK(pts == std::vector<IntVector>{ivec({0, 0}), ivec({0, 1}), ivec({0, 2}), ivec({1, 0}),
                                      ivec({1, 1}), ivec({2, 0})});
  CHECK(lattice_points(box({0, 0, 0}, {1, 1, 1})).size() == 8);
  auto half = scale(simplex2(1), rat(1, 2));
  CHECK(lattice_points(half) == std::vector<IntVector>{ivec({0, 0})});
  std::mt19937_64 rng(29);
  for (int it = 0; it < 60; ++it) {
    int d = 1 + it % 3;
    auto p = hull(random_points(rng, d, 2 + it % 5, 9));
    CHECK(count_lattice_points(p) == brute_count(p));
  }
}

TEST_CASE("edges and lattice lengths") {
  for (long k = 1; k <= 4; ++k) {
    auto es = edges(simplex2(k));
    REQUIRE(es.size() == 3);
    for (auto& e : es) CHECK(e.length == k);
    CHECK(lattice_length_min(LatticePolytope(simplex2(k))) == k);
  }
  auto ce = edges(box({0, 0, 0}, {1, 1, 1}));
  CHECK(ce.size() == 12);
  for (auto& e : ce) CHECK(e.length == 1);
  auto s = edges(hull({ivec({0, 0}), ivec({2, 4})}));
  REQUIRE(s.size() == 1);
  CHECK(s[0].direction == ivec({1, 2}));
  CHECK(s[0].length == 2);
  CHECK(lattice_length_min(LatticePolytope(box({0, 0}, {1, 5}))) == 1);
}

TEST_CASE("edge ratio") {
  CHECK(edge_ratio_min(simplex2(2), simplex2(3)) == rat(2, 3));
  CHECK(edge_ratio_min(simplex2(2), simplex2(2)) == 1);
  CHECK(edge_ratio_min(box({0, 0}, {2, 3}), box({0, 0}, {1, 1})) == 2);
  CHECK_THROWS(edge_ratio_min(simplex2(1), box({0, 0}, {1, 1})));
}

TEST_CASE("Pick on random lattice polygons") {
  std::mt19937_64 rng(31);
  int n = 0;
  for (int it = 0; it < 80; ++it) {
    auto p = hull(random_points(rng, 2, 3 + it % 6, 12));
    if (p.dim() < 2) continue;
    CHECK(pick_holds(LatticePolytope(p)));
    ++n;
  }
  CHECK(n > 60);
}

TEST_CASE("from_halfspaces round trip") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 40; ++it) {
    int d = 2 + it % 2;
    auto p = hull(random_points(rng, d, 6, 7));
    if (p.dim() < d) continue;
    auto q = from_halfspaces(d, p.halfspaces());
    REQUIRE(q);
    CHECK(*q == p);
  }
  std::vector<Halfspace> open{{ivec({1, 0}), 0}, {ivec({0, 1}), 0}};
  CHECK_THROWS(from_halfspaces(2, open));
  std::vector<Halfspace> empty{{ivec({1, 0}), 0}, {ivec({-1, 0}), -1}, {ivec({0, 1}), 0},
                               {ivec({0, -1}), 1}};
  CHECK_FALSE(from_halfspaces(2, empty));
}

TEST_CASE("clip agrees with intersection") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> c(-3, 3);
  for (int it = 0; it < 40; ++it) {
    int d = 2 + it % 2;
    auto p = hull(random_points(rng, d, 6, 6));
    std::vector<Int> n;
    for (int i = 0; i < d; ++i) n.emplace_back(c(rng));
    IntVector nv(n);
    if (nv.is_zero()) continue;
    Halfspace h{nv, Rat(-dot(nv, p.barycenter()))};
    auto a = clip(p, h);
    auto hs = p.halfspaces();
    hs.push_back(h);
    auto b = from_halfspaces(d, hs);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
  }
}

TEST_CASE("polyhedron sum and finite boundary") {
  Cone quad{{ivec({1, 0}), ivec({0, 1})}, 2};
  auto q = polyhedron_sum(hull({ivec({0, 0})}), quad);
  auto fb = finite_boundary(q);
  REQUIRE(fb.size() == 1);
  CHECK(fb[0] == hull({ivec({0, 0})}));

  Cone up{{ivec({0, 1})}, 2};
  auto strip = polyhedron_sum(hull({ivec({0, 0}), ivec({1, 0})}), up);
  CHECK(strip.facets().size() == 3);
  auto sb = finite_boundary(strip);
  REQUIRE(sb.size() == 1);
  CHECK(sb[0] == hull({ivec({0, 0}), ivec({1, 0})}));
  CHECK(strip.contains(rvec({1, 100})));
  CHECK_FALSE(strip.contains(rvec({2, 100})));

  Cone c2{{ivec({1, 0}), ivec({1, 1})}, 2};
  auto t = polyhedron_sum(simplex2(1), c2);
  CHECK(t.contains(rvec({5, 1})));
  CHECK_FALSE(t.contains(rvec({0, 2})));
  auto tb = finite_boundary(t);
  REQUIRE(tb.size() == 1);
  CHECK(tb[0] == hull({ivec({0, 0}), ivec({0, 1})}));

  Cone bad{{ivec({1, 0}), ivec({-1, 0})}, 2};
  CHECK_FALSE(is_pointed(bad));
  CHECK_THROWS(polyhedron_sum(simplex2(1), bad));
}
