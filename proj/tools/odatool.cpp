// odatool: JSON front end to the oda library. Reports go to stdout, one JSON document per
// command (JSON lines for scans). Exit code 1 on errors only.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "oda/io.hpp"
#include "oda/scan.hpp"
#include "oda/svg.hpp"

using namespace oda;
using io::json;

namespace {

struct Options {
  std::vector<std::string> files;
  std::string svg;
  std::string c = "3/4";
  std::string u, v, a0, a0p, rho, l2;
  int cone = 0;
  long depth = 4;
  long max_coeff = 2;
  int picard = 2;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool sorted = false;
  bool certificate = false;
  std::string command = "phi";
};

RatVector parse_point(const std::string& s, const std::string& flag) {
  std::vector<Rat> xs;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      xs.push_back(parse_rational(part));
    } catch (const Error& e) {
      throw Error(flag + ": " + e.what());
    }
  }
  if (xs.empty()) throw Error(flag + ": expected comma-separated coordinates");
  return RatVector(xs);
}

IntVector parse_ivec(const std::string& s, const std::string& flag) {
  auto r = parse_point(s, flag);
  if (!is_integral(r)) throw Error(flag + ": expected integer coordinates");
  return to_int(r);
}

RationalPolytope poly_arg(const Options& o, std::size_t i) {
  if (o.files.size() <= i) throw Error("missing input file " + std::to_string(i + 1));
  return io::polytope_from(io::read_file(o.files[i]));
}

ToricLineBundle bundle_arg(const Options& o, std::size_t i) {
  if (o.files.size() <= i) throw Error("missing input file " + std::to_string(i + 1));
  return io::bundle_from(io::read_file(o.files[i]));
}

Fan fan_arg(const Options& o) {
  if (o.files.empty()) throw Error("missing fan file");
  return io::fan_from(io::read_file(o.files[0]));
}

std::vector<RationalPolytope> pieces_arg(const Options& o) {
  std::vector<RationalPolytope> ps;
  for (std::size_t i = 1; i < o.files.size(); ++i) {
    auto j = io::read_file(o.files[i]);
    if (j.is_object() && j.contains("pieces")) {
      for (std::size_t k = 0; k < j["pieces"].size(); ++k)
        ps.push_back(io::polytope_from(j["pieces"][k], "/pieces/" + std::to_string(k)));
    } else {
      ps.push_back(io::polytope_from(j));
    }
  }
  return ps;
}

void write_svg(const Options& o, const SvgScene& scene) {
  if (o.svg.empty()) return;
  std::ofstream out(o.svg);
  if (!out) throw Error(o.svg + ": cannot write");
  out << render_svg(scene);
}

SvgScene cover_scene(const RationalPolytope& target, const std::vector<RationalPolytope>& pieces,
                     const CoverReport& r) {
  SvgScene s;
  if (target.ambient() != 2) return s;
  for (const auto& p : pieces) s.polygons.push_back({p, SvgScene::Role::piece});
  s.polygons.push_back({target, SvgScene::Role::target});
  if (!r.covered)
    for (const auto& c : residual_cells(target, pieces)) s.polygons.push_back({c, SvgScene::Role::residual});
  if (r.witness) s.points.push_back({*r.witness, ""});
  return s;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json fan_check(const Fan& f) {
  json j;
  j["complete"] = is_complete(f);
  j["smooth"] = is_smooth(f);
  j["general"] = is_general(f);
  j["rays"] = f.rays.size();
  j["max_cones"] = f.max_cones.size();
  if (is_complete(f)) j["walls"] = walls(f).size();
  return j;
}

int run_scan(const Options& o) {
  JobSpec job;
  job.command = o.command;
  job.max_picard = o.picard;
  job.max_coeff = o.max_coeff;
  job.samples = o.samples;
  job.seed = o.seed;
  job.jobs = o.jobs;
  job.sorted = o.sorted;
  auto sum = run(job, [](const json& rec) { std::cout << rec.dump() << "\n"; });
  std::cerr << sum.instances << " instances, " << sum.findings << " findings, " << sum.errors << " errors\n";
  return sum.errors ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice polytopes, toric line bundles and multiplication maps"};
  app.require_subcommand(1);
  Options o;
  auto files = [&](CLI::App* c, const std::string& what) { c->add_option("files", o.files, what)->required(); };

  auto* fan = app.add_subcommand("fan", "fan utilities")->require_subcommand(1);
  auto* fan_check_cmd = fan->add_subcommand("check", "validate a fan");
  files(fan_check_cmd, "fan file");
  auto* fan_blowup = fan->add_subcommand("blowup", "blow up the fixed point of a maximal cone");
  files(fan_blowup, "fan file");
  fan_blowup->add_option("--cone", o.cone, "maximal cone index");
  auto* fan_bounds = fan->add_subcommand("bounds", "bounds for sufficiently ample bundles");
  files(fan_bounds, "fan file");
  fan_bounds->add_option("--l2", o.l2, "bundle file for the per-ray bound");
  fan_bounds->add_option("--rho", o.rho, "ray, e.g. 1,0");
  auto* fan_hilbert = fan->add_subcommand("hilbert", "Hilbert basis of the nef monoid");
  files(fan_hilbert, "fan file");

  auto* poly = app.add_subcommand("poly", "polytope operations")->require_subcommand(1);
  auto* poly_sum = poly->add_subcommand("sum", "Minkowski sum");
  files(poly_sum, "two polytope files");
  auto* poly_diff = poly->add_subcommand("diff", "Minkowski difference P - Q");
  files(poly_diff, "two polytope files");
  auto* poly_points = poly->add_subcommand("points", "lattice points");
  files(poly_points, "polytope file");
  auto* poly_edges = poly->add_subcommand("edges", "edges with lattice lengths");
  files(poly_edges, "polytope file");

  auto* cover = app.add_subcommand("cover", "covering decisions")->require_subcommand(1);
  auto* cover_run = cover->add_subcommand("run", "does the union of the pieces cover the target");
  files(cover_run, "target file, then piece files");
  auto* cover_vf = cover->add_subcommand("vertexfit", "cover by c P - c v + v over the vertices");
  files(cover_vf, "polytope file");
  cover_vf->add_option("--c", o.c, "scale factor p/q");
  auto* cover_quasi = cover->add_subcommand("quasi", "leftover components of a partial cover");
  files(cover_quasi, "target file, then piece files");
  auto* cover_mw = cover->add_subcommand("mw", "Minkowski-Weyl check of P + cone");
  files(cover_mw, "polytope file, cone file");

  auto* oda = app.add_subcommand("oda", "multiplication maps")->require_subcommand(1);
  auto* oda_phi = oda->add_subcommand("phi", "cokernel of the lattice-point sum map");
  files(oda_phi, "two polytope or bundle files");
  auto* oda_psi = oda->add_subcommand("psi", "cover P2 by lattice translates of P1 inside P2");
  files(oda_psi, "two polytope or bundle files");
  auto* oda_local = oda->add_subcommand("local", "sum map near a vertex cone");
  files(oda_local, "two polytope files, dual cone file");
  auto* oda_norm = oda->add_subcommand("normality", "sum maps L x L^j for j up to --depth");
  files(oda_norm, "bundle file");
  auto* oda_scan = oda->add_subcommand("scan", "scan the smooth-surface family, JSON lines");
  oda_scan->add_option("--command", o.command, "phi, psi or order")->check(CLI::IsMember({"phi", "psi", "order"}));
  oda_scan->add_option("--picard", o.picard, "maximal Picard rank");
  oda_scan->add_option("--samples", o.samples, "sample this many pairs (needs --seed)");
  auto* oda_order = oda->add_subcommand("order", "the three orders between two bundles");
  files(oda_order, "two bundle files");
  for (auto* c : {oda_local, oda_norm}) c->add_option("--depth", o.depth, "slab depth or maximal power");
  for (auto* c : {oda_scan}) {
    c->add_option("--max-coeff", o.max_coeff, "Picard coordinates in 0..n");
    c->add_option("--jobs", o.jobs, "worker threads");
    c->add_option("--seed", o.seed, "random seed");
    c->add_flag("--sorted", o.sorted, "emit records in instance order");
  }

  auto* surface = app.add_subcommand("surface", "smooth polygons")->require_subcommand(1);
  auto* s_sfhn = surface->add_subcommand("sfhn", "covering of P2 by translates of P1 for smooth polygons");
  files(s_sfhn, "two polytope or bundle files");
  s_sfhn->add_flag("--certificate", o.certificate, "also run the blow-down certificate");
  auto* s_contacts = surface->add_subcommand("contacts", "contact points in a direction");
  files(s_contacts, "polygon file");
  s_contacts->add_option("--u", o.u, "direction, e.g. 1,-1")->required();
  auto* s_classify = surface->add_subcommand("classify", "type of a translation vector");
  files(s_classify, "polygon file");
  s_classify->add_option("--v", o.v, "translation vector")->required();
  s_classify->add_option("--a0", o.a0, "first end of the exceptional edge")->required();
  s_classify->add_option("--a0p", o.a0p, "second end of the exceptional edge")->required();

  for (auto* c : {cover_run, cover_vf, oda_psi, s_contacts}) c->add_option("--svg", o.svg, "write an SVG figure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fan_check_cmd->parsed()) {
      print(fan_check(fan_arg(o)));
    } else if (fan_blowup->parsed()) {
      print(io::to_json(blowup(fan_arg(o), o.cone)));
    } else if (fan_bounds->parsed()) {
      auto f = std::make_shared<const Fan>(fan_arg(o));
      std::optional<ToricLineBundle> l2;
      if (!o.l2.empty()) {
        l2 = io::bundle_from(io::read_file(o.l2));
        if (!same_fan(*l2->fan, *f)) throw Error("--l2 lives on a different fan");
        l2->fan = f;
      }
      std::optional<IntVector> rho;
      if (!o.rho.empty()) rho = parse_ivec(o.rho, "--rho");
      print(io::to_json(section5_bounds(f, l2, rho)));
    } else if (fan_hilbert->parsed()) {
      auto f = std::make_shared<const Fan>(fan_arg(o));
      auto fr = picard_frame(f);
      json j;
      json cs = json::array(), bs = json::array();
      for (const auto& x : hilbert_basis_coords(fr)) {
        json c = json::array();
        for (const auto& y : x) c.push_back(io::to_json(y));
        cs.push_back(c);
      }
      for (const auto& b : hilbert_basis(f)) bs.push_back(io::to_json(b)["coeffs"]);
      j["picard_coords"] = cs;
      j["coeffs"] = bs;
      print(j);
    } else if (poly_sum->parsed()) {
      print(io::to_json(minkowski_sum(poly_arg(o, 0), poly_arg(o, 1))));
    } else if (poly_diff->parsed()) {
      auto d = minkowski_difference(poly_arg(o, 0), poly_arg(o, 1));
      print(d ? io::to_json(*d) : json(nullptr));
    } else if (poly_points->parsed()) {
      auto pts = lattice_points(poly_arg(o, 0));
      json a = json::array();
      for (const auto& p : pts) a.push_back(io::to_json(p));
      print({{"count", pts.size()}, {"points", a}});
    } else if (poly_edges->parsed()) {
      json a = json::array();
      for (const auto& e : edges(poly_arg(o, 0)))
        a.push_back({{"a", io::to_json(e.a)},
                     {"b", io::to_json(e.b)},
                     {"direction", io::to_json(e.direction)},
                     {"length", io::to_json(e.length)}});
      print(a);
    } else if (cover_run->parsed()) {
      auto t = poly_arg(o, 0);
      auto ps = pieces_arg(o);
      auto r = covers(t, ps);
      write_svg(o, cover_scene(t, ps, r));
      print(io::to_json(r));
    } else if (cover_vf->parsed()) {
      auto p = poly_arg(o, 0);
      Rat c = parse_rational(o.c);
      auto r = vertex_fit_cover(p, c);
      write_svg(o, cover_scene(p, vertex_fit_pieces(p, c), r));
      print(io::to_json(r));
    } else if (cover_quasi->parsed()) {
      print(io::to_json(quasi_cover_report(poly_arg(o, 0), pieces_arg(o))));
    } else if (cover_mw->parsed()) {
      if (o.files.size() < 2) throw Error("missing cone file");
      auto c = io::cone_from(io::read_file(o.files[1]));
      print(io::to_json(minkowski_weyl_check(polyhedron_sum(poly_arg(o, 0), c))));
    } else if (oda_phi->parsed()) {
      print(io::to_json(phi_cokernel(poly_arg(o, 0), poly_arg(o, 1))));
    } else if (oda_psi->parsed()) {
      auto p1 = poly_arg(o, 0), p2 = poly_arg(o, 1);
      auto r = psi_check(p1, p2);
      std::vector<RationalPolytope> ps;
      for (const auto& m : r.translates) ps.push_back(translate(p1, to_rat(m)));
      write_svg(o, cover_scene(p2, ps, r.inner));
      print(io::to_json(r));
    } else if (oda_local->parsed()) {
      if (o.files.size() < 3) throw Error("missing cone file");
      auto c = io::cone_from(io::read_file(o.files[2]));
      print(io::to_json(local_oda_check(poly_arg(o, 0), poly_arg(o, 1), c, o.depth)));
    } else if (oda_norm->parsed()) {
      json a = json::array();
      for (const auto& r : projective_normality_probe(bundle_arg(o, 0), static_cast<int>(o.depth)))
        a.push_back(io::to_json(r, false));
      print(a);
    } else if (oda_scan->parsed()) {
      return run_scan(o);
    } else if (oda_order->parsed()) {
      auto l1 = bundle_arg(o, 0), l2 = bundle_arg(o, 1);
      if (!same_fan(*l1.fan, *l2.fan)) throw Error("bundles live on different fans");
      l2.fan = l1.fan;
      print(io::to_json(order_report(l1, l2)));
    } else if (s_sfhn->parsed()) {
      print(io::to_json(sfhn_verify(poly_arg(o, 0), poly_arg(o, 1), o.certificate)));
    } else if (s_contacts->parsed()) {
      auto p = poly_arg(o, 0);
      auto c = contact_points(p, parse_ivec(o.u, "--u"));
      SvgScene scene;
      scene.polygons.push_back({p, SvgScene::Role::target});
      scene.polygons.push_back({translate(p, to_rat(c.direction)), SvgScene::Role::outline});
      for (const auto& x : c.points) scene.points.push_back({x, ""});
      write_svg(o, scene);
      print(io::to_json(c));
    } else if (s_classify->parsed()) {
      print(io::to_json(classify_translation_vector(poly_arg(o, 0), parse_ivec(o.v, "--v"),
                                                    parse_point(o.a0, "--a0"), parse_point(o.a0p, "--a0p"))));
    }
  } catch (const std::exception& e) {
    print({{"error", e.what()}});
    std::cerr << "odatool: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
