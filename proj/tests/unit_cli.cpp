#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <regex>

#include "generators.hpp"
#include "oda/io.hpp"
#include "oda/scan.hpp"
#include "oda/svg.hpp"

using namespace oda;
using io::json;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
  return n;
}

json reparse(const json& j) { return io::parse_text(j.dump(), "test"); }

json strip_timing(json j) {
  j.erase("micros");
  return j;
}

}  // namespace

TEST_CASE("numbers and vectors round-trip") {
  CHECK(io::to_json(Int(7)) == json(7));
  Int big("123456789012345678901234567890");
  CHECK(io::to_json(big) == json("123456789012345678901234567890"));
  CHECK(io::int_from(io::to_json(big), "") == big);
  CHECK(io::to_json(rat(-3, 6)) == json("-1/2"));
  CHECK(io::rat_from(json("4/6"), "") == rat(2, 3));
  CHECK(io::rat_from(json(-5), "") == Rat(-5));
  CHECK_THROWS_WITH(io::int_from(json("1/2"), "/x"), doctest::Contains("/x"));
  CHECK_THROWS_WITH(io::rat_from(json("1/0"), "/y/1"), doctest::Contains("/y/1"));
  RatVector v{rat(1, 3), Rat(2), rat(-7, 2)};
  CHECK(io::rat_vector_from(reparse(io::to_json(v)), "") == v);
}

TEST_CASE("polytopes, fans and bundles round-trip") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto p = gen::random_polytope(rng, 2 + it % 2, -4, 4, 5);
    auto q = homothety(p, rat(1, 3), p.vertices()[0]);
    for (const auto& x : {p, q}) {
      auto j = io::to_json(x);
      CHECK(reparse(j) == j);
      CHECK(io::polytope_from(reparse(j)) == x);
    }
  }
  for (const auto& f : smooth_surface_family(3)) {
    auto j = io::to_json(f);
    CHECK(same_fan(io::fan_from(reparse(j)), f));
  }
  auto l = bundle(gen::share(fan_hirzebruch(2)), {0, 0, 1, 3});
  auto back = io::bundle_from(reparse(io::to_json(l)));
  CHECK(back.coeffs == l.coeffs);
  CHECK(*polytope_of(back) == *polytope_of(l));
  CHECK(io::polytope_from(io::to_json(l)) == *polytope_of(l));
  CHECK(same_fan(io::fan_from(json{{"preset", "f3"}}), fan_hirzebruch(3)));
}

TEST_CASE("reports re-parse to identical values") {
  auto d1 = hull({ivec({0, 0}), ivec({1, 0}), ivec({0, 1})});
  auto d2 = hull({ivec({0, 0}), ivec({2, 0}), ivec({0, 2})});
  std::vector<json> js{io::to_json(phi_cokernel(d1, d1)), io::to_json(psi_check(d1, d2)),
                       io::to_json(section5_bounds(gen::share(fan_p2()), std::nullopt, std::nullopt)),
                       io::to_json(contact_points(d2, ivec({1, -1}))),
                       io::to_json(sfhn_verify(d2, scale(d2, Rat(2)), true))};
  for (const auto& j : js) CHECK(reparse(j) == j);
  CHECK(js[0]["dim_coker"] == 0);
  CHECK(js[1]["covered"] == false);
  CHECK(js[2]["loqr_bound"] == 6);
}

TEST_CASE("input errors name their location") {
  CHECK_THROWS_WITH(io::parse_text("{\"vertices\": [[0, 0],", "in.json"), doctest::Contains("in.json: parse error at byte"));
  CHECK_THROWS_WITH(io::polytope_from(json::parse(R"({"vertices": [[0, 0], [1, "x"]]})")),
                    doctest::Contains("/vertices/1/1"));
  CHECK_THROWS_WITH(io::polytope_from(json::parse(R"({"points": []})")), doctest::Contains("vertices"));
  auto bad = json::parse(R"({"rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [1, 2], [0, 3]]})");
  CHECK_THROWS_WITH(io::fan_from(bad), doctest::Contains("cone 2"));
  auto overlap = json::parse(R"({"rays": [[1, 0], [0, 1], [-1, -1], [1, 1]], "cones": [[0, 1], [1, 2], [0, 2], [0, 3]]})");
  CHECK_THROWS(io::fan_from(overlap));
  CHECK_THROWS_WITH(io::bundle_from(json::parse(R"({"fan": {"preset": "p2"}, "coeffs": [0, 1]})")),
                    doctest::Contains("/coeffs"));
}

TEST_CASE("svg scenes") {
  auto tri = hull({ivec({0, 0}), ivec({1, 0}), ivec({0, 1})});
  SvgScene one;
  one.polygons.push_back({tri, SvgScene::Role::target});
  auto s = render_svg(one);
  CHECK(count(s, "<path") == 1);
  CHECK(count(s, "<svg") == 1);
  CHECK(s.find("version=\"1.1\"") != std::string::npos);

  auto d2 = scale(tri, Rat(2));
  auto r = psi_check(tri, d2);
  SvgScene cov;
  for (const auto& m : r.translates) cov.polygons.push_back({translate(tri, to_rat(m)), SvgScene::Role::piece});
  cov.polygons.push_back({d2, SvgScene::Role::target});
  std::vector<RationalPolytope> pieces;
  for (const auto& m : r.translates) pieces.push_back(translate(tri, to_rat(m)));
  auto res = residual_cells(d2, pieces);
  REQUIRE(!res.empty());
  for (const auto& c : res) cov.polygons.push_back({c, SvgScene::Role::residual});
  cov.points.push_back({*r.inner.witness, ""});
  auto t = render_svg(cov);
  CHECK(count(t, "fill-opacity=\"0.3\"") == 3);
  CHECK(count(t, "fill=\"red\"") == res.size());
  CHECK(count(t, "<circle") == 1);
  CHECK(t.find("<title>" + to_string(*r.inner.witness) + "</title>") != std::string::npos);
  CHECK(t.find("-0.000") == std::string::npos);

  SvgScene solid;
  solid.polygons.push_back({hull({ivec({0, 0, 0}), ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({0, 0, 1})}),
                            SvgScene::Role::target});
  CHECK_THROWS_AS(render_svg(solid), DimensionError);
}

TEST_CASE("scans are deterministic and replayable") {
  JobSpec job;
  job.max_picard = 2;
  job.max_coeff = 1;
  job.sorted = true;
  std::vector<json> a, b;
  auto sa = run(job, [&](const json& r) { a.push_back(strip_timing(r)); });
  job.jobs = 3;
  auto sb = run(job, [&](const json& r) { b.push_back(strip_timing(r)); });
  CHECK(sa.instances == a.size());
  CHECK(sa.errors == 0);
  CHECK(sa.findings == sb.findings);
  CHECK(a == b);
  for (std::size_t i = 0; i < a.size(); i += 7) {
    CHECK(replay(a[i]) == a[i]);
    CHECK(reparse(a[i]) == a[i]);
  }
  // unsorted output holds the same records
  job.sorted = false;
  std::vector<json> c;
  run(job, [&](const json& r) { c.push_back(strip_timing(r)); });
  auto key = [](const json& x, const json& y) { return x.dump() < y.dump(); };
  std::sort(b.begin(), b.end(), key);
  std::sort(c.begin(), c.end(), key);
  CHECK(b == c);

  JobSpec sample;
  sample.samples = 10;
  CHECK_THROWS(run(sample, [](const json&) {}));
  sample.seed = 5;
  std::vector<json> x, y;
  run(sample, [&](const json& r) { x.push_back(strip_timing(r)); });
  sample.sorted = true;
  sample.jobs = 2;
  run(sample, [&](const json& r) { y.push_back(strip_timing(r)); });
  CHECK(x.size() == 10);
  CHECK(x == y);
}

TEST_CASE("scan records errors and findings without failing") {
  auto p2 = gen::share(fan_p2());
  auto rec = run_instance("psi", bundle(p2, {0, 0, 1}), bundle(p2, {0, 0, 2}));
  CHECK(rec["report"]["covered"] == false);
  auto bad = run_instance("nope", bundle(p2, {0, 0, 1}), bundle(p2, {0, 0, 2}));
  CHECK(bad.contains("error"));
  CHECK_FALSE(bad.contains("report"));
  CHECK(std::regex_match(rec["instance"]["fan_hash"].get<std::string>(), std::regex("[0-9a-f]{16}")));
  CHECK(fan_hash(fan_p2()) == fan_hash(canonical(fan_p2())));
  CHECK(fan_hash(fan_p2()) != fan_hash(fan_p1xp1()));
}
