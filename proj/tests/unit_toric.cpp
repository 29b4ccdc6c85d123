#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oda/toric.hpp"

using namespace oda;

namespace {

std::shared_ptr<const Fan> share(Fan f) { return std::make_shared<const Fan>(std::move(f)); }

RationalPolytope simplex2(long k) { return hull({ivec({0, 0}), ivec({k, 0}), ivec({0, k})}); }

// lattice length of the face of P_L dual to the wall (0 if it collapses to a point)
Rat edge_length_oracle(const ToricLineBundle& l, const Wall& w) {
  auto p = polytope_of(l);
  IntVector s(static_cast<std::size_t>(l.fan->dim));
  for (int r : w.rays) s += l.fan->rays[r];
  if (w.rays.empty()) s = ivec({0});
  std::vector<RatVector> face = s.is_zero() ? p->vertices() : face_vertices(*p, s);
  if (face.size() == 1) return 0;
  REQUIRE(face.size() == 2);
  RatVector diff = face[1] - face[0];
  IntVector dir = primitive(diff);
  for (int i = 0; i < dir.dim(); ++i)
    if (sgn(dir[i]) != 0) return diff[i] / Rat(dir[i]);
  return 0;
}

// random nef bundle: nonnegative basis combination shifted by a random character
ToricLineBundle random_nef(std::mt19937_64& rng, const PicardFrame& fr, const std::vector<std::vector<Int>>& basis) {
  std::uniform_int_distribution<long> k(0, 3), sh(-2, 2);
  std::vector<Int> x(fr.rank(), Int(0));
  for (const auto& b : basis) {
    long n = k(rng);
    for (int j = 0; j < fr.rank(); ++j) x[j] += n * b[j];
  }
  auto l = from_pic(fr, x);
  std::vector<Int> m;
  for (int i = 0; i < fr.fan->dim; ++i) m.emplace_back(sh(rng));
  IntVector mv(m);
  for (std::size_t r = 0; r < l.coeffs.size(); ++r) l.coeffs[r] += dot(mv, fr.fan->rays[r]);
  return l;
}

Fan blowup_p3_point() { return stellar_subdivision(fan_p3(), 0); }

}  // namespace

TEST_CASE("smoothness and completeness") {
  auto p2 = fan_p2();
  CHECK(is_smooth(p2));
  CHECK(is_complete(p2));
  auto partial = make_fan({ivec({1, 0}), ivec({0, 1}), ivec({-1, -1})}, {{0, 1}, {1, 2}});
  CHECK_FALSE(is_complete(partial));
  CHECK_THROWS(walls(partial));
  auto sing = make_fan({ivec({1, 0}), ivec({1, 2}), ivec({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(is_complete(sing));
  CHECK_FALSE(is_smooth(sing));
  for (auto f : {fan_p1(), fan_p1xp1(), fan_hirzebruch(2), fan_p3(), fan_p1xp2(), blowup_p3_point()}) {
    CHECK(is_complete(f));
    CHECK(is_smooth(f));
  }
  CHECK(walls(fan_p3()).size() == 6);
  CHECK(walls(fan_p1xp2()).size() == 9);
  CHECK(walls(fan_p1()).size() == 1);
  CHECK_THROWS_WITH(make_fan({ivec({2, 0}), ivec({0, 1})}, {{0, 1}}), "ray 0 (2,0) is not primitive");
  CHECK_THROWS_WITH(make_fan({ivec({1, 0}), ivec({-1, 0}), ivec({0, 1})}, {{0, 1}, {1, 2}}),
                    "cone 0 [0,1] is not full-dimensional");
  CHECK_THROWS_WITH(make_fan({ivec({1, 0}), ivec({-1, 0}), ivec({0, 1}), ivec({0, -1})}, {{0, 1, 2, 3}}),
                    "cone 0 [0,1,2,3] is not strongly convex");
}

TEST_CASE("blowups") {
  auto f1 = blowup(fan_p2(), 0);
  CHECK(f1.rays.size() == 4);
  CHECK(f1.rays[3] == ivec({1, 1}));
  CHECK(is_smooth(f1));
  CHECK(is_complete(f1));
  auto dp = blowup(blowup(blowup(fan_p2(), 0), 1), 2);
  CHECK(dp.rays.size() == 6);
  CHECK(is_smooth(dp));
  CHECK(is_complete(dp));
  CHECK_THROWS(blowup(make_fan({ivec({1, 0}), ivec({1, 2}), ivec({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}}), 0));
  CHECK_THROWS(blowup(fan_p3(), 0));

  std::mt19937_64 rng(7);
  for (int it = 0; it < 30; ++it) {
    Fan f = it % 2 ? fan_p2() : fan_hirzebruch(it % 4);
    for (int s = 0; s < 3; ++s) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(f.max_cones.size()) - 1);
      Fan g = blowup(f, pick(rng));
      CHECK(g.rays.size() == f.rays.size() + 1);
      CHECK(is_smooth(g));
      CHECK(is_complete(g));
      CHECK(picard_frame(share(g)).rank() == picard_frame(share(f)).rank() + 1);
      f = g;
    }
  }
}

TEST_CASE("polytopes and normal fans") {
  auto p2 = share(fan_p2());
  for (long k = 0; k <= 4; ++k) CHECK(*polytope_of(bundle(p2, {0, 0, k})) == simplex2(k));
  for (long k = 1; k <= 3; ++k) CHECK(same_fan(normal_fan(simplex2(k)), *p2));
  auto sq = hull({ivec({0, 0}), ivec({1, 0}), ivec({0, 1}), ivec({1, 1})});
  CHECK(same_fan(normal_fan(sq), fan_p1xp1()));
  CHECK_FALSE(polytope_of(bundle(p2, {0, 0, -1})));
}

TEST_CASE("nef and ample") {
  auto p2 = share(fan_p2());
  CHECK(is_ample(bundle(p2, {0, 0, 1})));
  CHECK(is_nef(bundle(p2, {0, 0, 0})));
  CHECK_FALSE(is_ample(bundle(p2, {0, 0, 0})));
  CHECK_FALSE(is_nef(bundle(p2, {0, 0, -1})));
  // on F_1 the class of the exceptional curve alone has tight coefficients but is not nef
  auto f1 = share(fan_hirzebruch(1));
  CHECK_FALSE(is_nef(bundle(f1, {0, 1, 0, 0})));
  CHECK(is_nef(bundle(f1, {0, 0, 0, 1})));
  CHECK(is_nef(bundle(f1, {0, 0, 1, 0})));
  CHECK(is_ample(bundle(f1, {0, 0, 1, 1})));
}

TEST_CASE("intersection numbers") {
  auto p2 = share(fan_p2());
  for (long k = 0; k <= 4; ++k)
    CHECK(intersection_numbers(bundle(p2, {0, 0, k})) == std::vector<Int>(3, Int(k)));
  auto bl = share(blowup(fan_p2(), 0));
  auto pull = bundle(bl, {0, 0, 1, 0});
  CHECK(is_nef(pull));
  auto ws = walls(*bl);
  for (std::size_t t = 0; t < ws.size(); ++t)
    if (ws[t].rays == std::vector<int>{3}) CHECK(intersection_number(pull, ws[t]) == 0);
  CHECK(intersection_numbers(bundle(share(fan_p1()), {0, 3})) == std::vector<Int>{3});
}

TEST_CASE("intersection numbers equal dual edge lengths and add under tensor") {
  std::mt19937_64 rng(11);
  std::vector<Fan> fans{fan_p2(), fan_p1xp1(), fan_hirzebruch(1), fan_hirzebruch(3), fan_p3(), fan_p1xp2(),
                        blowup_p3_point(), blowup(blowup(fan_p2(), 0), 1)};
  for (const auto& f : fans) {
    auto sf = share(f);
    auto fr = picard_frame(sf);
    auto basis = hilbert_basis_coords(fr);
    for (int it = 0; it < 6; ++it) {
      auto a = random_nef(rng, fr, basis), b = random_nef(rng, fr, basis);
      REQUIRE(is_nef(a));
      REQUIRE(is_nef(b));
      auto ca = intersection_numbers(a), cb = intersection_numbers(b);
      for (std::size_t t = 0; t < fr.walls.size(); ++t) {
        CHECK(Rat(ca[t]) == edge_length_oracle(a, fr.walls[t]));
        CHECK(sgn(ca[t]) >= 0);
      }
      auto ab = tensor(a, b);
      CHECK(is_nef(ab));
      auto cab = intersection_numbers(ab);
      for (std::size_t t = 0; t < cab.size(); ++t) CHECK(cab[t] == ca[t] + cb[t]);
      CHECK(wall_degrees(fr, pic_coords(fr, a)) == ca);
    }
  }
}

TEST_CASE("general fans") {
  CHECK(is_general(fan_p2()));
  CHECK_FALSE(is_general(fan_p1xp1()));
  CHECK_FALSE(is_general(fan_hirzebruch(1)));
  CHECK(is_general(fan_p3()));
  CHECK_FALSE(is_general(fan_p1xp2()));
}

TEST_CASE("nontrivial nef bundles on general fans have full-dimensional polytopes") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> c(0, 7);
  int general = 0;
  for (int it = 0; it < 60 && general < 12; ++it) {
    std::vector<IntVector> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(ivec({c(rng), c(rng)}));
    auto p = hull(pts);
    if (!p.full_dimensional()) continue;
    auto f = share(normal_fan(p));
    if (!is_general(*f)) continue;
    ++general;
    const std::size_t n = f->rays.size();
    std::vector<long> a(n, -1);
    while (true) {
      auto l = bundle(f, a);
      if (is_nef(l)) {
        auto q = polytope_of(l);
        if (q->dim() > 0) CHECK(q->full_dimensional());
      }
      std::size_t i = 0;
      while (i < n && a[i] == 2) a[i] = -1, ++i;
      if (i == n) break;
      ++a[i];
    }
  }
  CHECK(general > 3);
  auto p3 = share(fan_p3());
  for (long k = 1; k <= 3; ++k) CHECK(polytope_of(bundle(p3, {0, 0, 0, k}))->full_dimensional());
}

TEST_CASE("ample round trip") {
  std::vector<Fan> fans{fan_p2(), fan_p1xp1(), fan_hirzebruch(2), fan_p1xp2(), blowup_p3_point(),
                        blowup(blowup(fan_p2(), 1), 0)};
  for (const auto& f : fans) {
    auto sf = share(f);
    auto fr = picard_frame(sf);
    std::vector<Int> x(fr.rank(), Int(0));
    for (const auto& b : hilbert_basis_coords(fr))
      for (int j = 0; j < fr.rank(); ++j) x[j] += b[j];
    auto l = from_pic(fr, x);
    CHECK(is_ample(l));
    CHECK(same_fan(normal_fan(*polytope_of(l)), f));
  }
}

TEST_CASE("Hilbert bases") {
  auto p2 = share(fan_p2());
  auto hb = hilbert_basis(p2);
  REQUIRE(hb.size() == 1);
  CHECK(intersection_numbers(hb[0]) == std::vector<Int>(3, Int(1)));

  auto pp = share(fan_p1xp1());
  auto hq = hilbert_basis(pp);
  REQUIRE(hq.size() == 2);
  for (const auto& b : hq) {
    auto c = intersection_numbers(b);
    CHECK(std::count(c.begin(), c.end(), Int(1)) == 2);
    CHECK(std::count(c.begin(), c.end(), Int(0)) == 2);
  }
  for (long a = 1; a <= 3; ++a) CHECK(hilbert_basis(share(fan_hirzebruch(a))).size() == 2);
  CHECK(hilbert_basis(share(blowup(fan_p2(), 0))).size() == 2);

  // irreducibility on rank 3 fans
  for (auto f : {blowup(blowup(fan_p2(), 0), 1), blowup(fan_hirzebruch(2), 2), blowup_p3_point()}) {
    auto fr = picard_frame(share(f));
    auto basis = hilbert_basis_coords(fr);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t k = 0; k < basis.size(); ++k) {
          if (k == i || k == j) continue;
          std::vector<Int> s(fr.rank());
          for (int t = 0; t < fr.rank(); ++t) s[t] = basis[i][t] + basis[j][t];
          CHECK(s != basis[k]);
        }
  }
  auto dp = share(blowup(blowup(blowup(fan_p2(), 0), 1), 2));
  CHECK_THROWS_WITH(hilbert_basis(dp), "desk-scale restriction: Picard rank 4 exceeds 3");
}

TEST_CASE("sufficiently ample thresholds") {
  auto p2 = share(fan_p2());
  auto th = sufficiently_ample_threshold(*p2, hilbert_basis(p2));
  CHECK(th == std::vector<Int>(3, Int(1)));
  for (long k = 0; k <= 5; ++k) CHECK(in_D(bundle(p2, {0, 0, k}), th) == (k >= 3));

  auto pp = share(fan_p1xp1());
  auto tq = sufficiently_ample_threshold(*pp, hilbert_basis(pp));
  CHECK(tq == std::vector<Int>(4, Int(1)));
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 4; ++b) CHECK(in_D(bundle(pp, {0, 0, a, b}), tq) == (a >= 3 && b >= 3));
}

TEST_CASE("explicit bounds") {
  auto p2 = share(fan_p2());
  auto r = section5_bounds(p2, std::nullopt, std::nullopt);
  CHECK(r.c == 1);
  CHECK(r.num_walls == 3);
  CHECK(r.dim == 2);
  CHECK(r.loqr_bound == 6);
  CHECK(r.c_tau == std::vector<Int>(3, Int(1)));
  CHECK_FALSE(r.lopr);
  CHECK(r_rho(*p2, ivec({1, 0})) == 1);
  for (long k = 1; k <= 4; ++k) {
    CHECK(w_rho(bundle(p2, {0, 0, k}), ivec({1, 0})) == k);
    auto b = section5_bounds(p2, bundle(p2, {0, 0, k}), ivec({1, 0}));
    REQUIRE(b.lopr);
    for (const auto& t : b.lopr->per_wall) CHECK(t == Rat(1 + 12 * k));
  }
  CHECK_THROWS(section5_bounds(p2, bundle(p2, {0, 0, 1}), ivec({1, 1})));

  auto pp = section5_bounds(share(fan_p1xp1()), std::nullopt, std::nullopt);
  CHECK(pp.c == 1);
  CHECK(pp.num_walls == 4);
  CHECK(pp.loqr_bound == 8);
  CHECK(pp.ample_generators.size() == 1);
  CHECK(pp.subcones_covered.size() == 3);

  for (long a = 1; a <= 3; ++a) {
    auto h = section5_bounds(share(fan_hirzebruch(a)), std::nullopt, std::nullopt);
    CHECK(h.loqr_bound == Int(static_cast<long>(h.num_walls)) * 2 * h.c * h.c);
    CHECK(h.c >= 1);
  }
  auto p3 = section5_bounds(share(fan_p3()), std::nullopt, std::nullopt);
  CHECK(p3.loqr_bound == 6 * 3);
}

TEST_CASE("vertex partition") {
  auto p2 = share(fan_p2());
  auto id = vertex_partition(bundle(p2, {0, 0, 2}), bundle(p2, {0, 0, 1}));
  CHECK(id == std::vector<int>{0, 1, 2});

  auto bl = share(blowup(fan_p2(), 0));
  auto fine = bundle(bl, {0, 0, 2, -1});
  auto coarse = bundle(bl, {0, 0, 1, 0});
  REQUIRE(is_ample(fine));
  auto m = vertex_partition(fine, coarse);
  // trapezoid (0,1),(0,2),(1,0),(2,0) over the triangle (0,0),(0,1),(1,0)
  CHECK(m == std::vector<int>{0, 1, 0, 2});

  auto two = share(blowup(blowup(fan_p2(), 0), 0));
  auto fr = picard_frame(two);
  std::vector<Int> x(fr.rank(), Int(0));
  for (const auto& b : hilbert_basis_coords(fr))
    for (int j = 0; j < fr.rank(); ++j) x[j] += b[j];
  auto amp = from_pic(fr, x);
  REQUIRE(is_ample(amp));
  auto pulled = bundle(two, {0, 0, 1, 0, 0});
  REQUIRE(is_nef(pulled));
  auto part = vertex_partition(amp, pulled);
  CHECK(part.size() == two->max_cones.size());
  std::set<int> hit(part.begin(), part.end());
  CHECK(hit.size() == polytope_of(pulled)->vertices().size());
  CHECK_THROWS(vertex_partition(pulled, amp));
}

TEST_CASE("linear subset membership") {
  auto p2 = share(fan_p2());
  std::vector<Int> ones(3, Int(1)), threes(3, Int(3));
  CHECK(linear_subset_member(bundle(p2, {0, 0, 2}), {{}, ones}));
  CHECK_FALSE(linear_subset_member(bundle(p2, {0, 0, 2}), {{0}, threes}));
  CHECK(linear_subset_member(bundle(p2, {0, 0, 3}), {{0, 1, 2}, threes}));
}
