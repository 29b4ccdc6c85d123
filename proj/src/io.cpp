#include "oda/io.hpp"

#include <fstream>
#include <sstream>

namespace oda::io {

namespace {

std::string at(const std::string& path, const std::string& what) {
  return (path.empty() ? std::string("/") : path) + ": " + what;
}

template <class T>
json vectors(const std::vector<T>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json ints(const std::vector<Int>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw Error(at(path, "missing field \"" + key + "\""));
  return j.at(key);
}

}  // namespace

json to_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<long long>(x.get_si()));
  return json(x.get_str());
}

json to_json(const Rat& x) {
  if (x.get_den() == 1) return to_json(Int(x.get_num()));
  return json(to_string(x));
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

json to_json(const RatVector& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

json to_json(const RationalPolytope& p) {
  json j;
  j["dim"] = p.dim();
  j["vertices"] = vectors(p.vertices());
  json hs = json::array();
  for (const auto& h : p.facets()) hs.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  j["facets"] = hs;
  return j;
}

json to_json(const Fan& f) {
  json j;
  j["rays"] = vectors(f.rays);
  j["cones"] = f.max_cones;
  return j;
}

json to_json(const ToricLineBundle& l) {
  json j;
  j["fan"] = to_json(*l.fan);
  j["coeffs"] = ints(l.coeffs);
  return j;
}

json to_json(const Cone& c) { return {{"generators", vectors(c.generators)}}; }

json to_json(const CokernelReport& r, bool with_hits) {
  json j;
  j["dim_coker"] = r.dim_coker;
  j["missed"] = vectors(r.missed);
  if (with_hits) {
    json h = json::array();
    for (const auto& d : r.hit) h.push_back({{"point", to_json(d.point)}, {"p1", to_json(d.p1)}, {"p2", to_json(d.p2)}});
    j["hit"] = h;
  } else {
    j["hit_count"] = r.hit.size();
  }
  j["truncated"] = r.truncated;
  if (r.rho) j["rho"] = to_json(*r.rho);
  if (r.slab_bound) j["slab_bound"] = to_json(*r.slab_bound);
  return j;
}

json to_json(const CoverReport& r) {
  json j;
  j["covered"] = r.covered;
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  j["pieces_used"] = r.pieces_used;
  j["cells_explored"] = r.cells_explored;
  return j;
}

json to_json(const PsiReport& r) {
  json j = to_json(r.inner);
  j["translates"] = vectors(r.translates);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const QuasiCoverReport& r) {
  json j;
  json cs = json::array();
  for (const auto& c : r.leftover_components)
    cs.push_back({{"cells", c.cells.size()}, {"convex", c.convex}, {"hull", vectors(c.hull.vertices())}});
  j["leftover_components"] = cs;
  j["max_vertex_distance"] = to_json(r.max_vertex_distance);
  return j;
}

json to_json(const BoundReport& r) {
  json j;
  j["c"] = to_json(r.c);
  j["c_tau"] = ints(r.c_tau);
  j["num_walls"] = r.num_walls;
  j["dim"] = r.dim;
  j["loqr_bound"] = to_json(r.loqr_bound);
  j["subcones_covered"] = r.subcones_covered;
  json g = json::array();
  for (const auto& x : r.ample_generators) g.push_back(ints(x));
  j["ample_generators"] = g;
  if (r.lopr) {
    const auto& l = *r.lopr;
    json pw = json::array();
    for (const auto& x : l.per_wall) pw.push_back(to_json(x));
    j["lopr"] = {{"rho", to_json(l.rho)},
                 {"l2_coeffs", ints(l.l2_coeffs)},
                 {"r_rho", to_json(l.r_rho)},
                 {"w_rho", to_json(l.w_rho)},
                 {"per_wall", pw}};
  }
  return j;
}

json to_json(const OrderReport& r) {
  return {{"prec", r.prec}, {"prec_c", r.prec_c}, {"prec_o", r.prec_o}, {"chain_holds", r.chain_holds}};
}

json to_json(const ContactPointSet& c) {
  return {{"direction", to_json(c.direction)}, {"points", vectors(c.points)}, {"c", to_json(c.c)}, {"d", to_json(c.d)}};
}

json to_json(const TranslationVectorType& t) {
  json pos = json::array();
  for (const auto& x : t.contact_positions) pos.push_back(to_json(x));
  return {{"tag", std::string(1, t.tag)},
          {"contact_positions", pos},
          {"at_a0", to_json(t.at_a0)},
          {"at_a0p", to_json(t.at_a0p)},
          {"on_edge", to_json(t.on_edge)}};
}

json to_json(const SfhnReport& r) {
  json j;
  j["direct"] = to_json(r.direct);
  j["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
  json st = json::array();
  for (const auto& s : r.steps)
    st.push_back({{"kind", s.kind},
                  {"picard", s.picard},
                  {"s1", to_json(s.s1)},
                  {"s2", to_json(s.s2)},
                  {"ok", s.ok},
                  {"patches", s.patches}});
  j["steps"] = st;
  j["agree"] = r.agree;
  return j;
}

Int int_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Rat r;
    try {
      r = parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(at(path, e.what()));
    }
    if (r.get_den() != 1) throw Error(at(path, "expected an integer, got " + to_string(r)));
    return r.get_num();
  }
  throw Error(at(path, "expected an integer"));
}

Rat rat_from(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(at(path, e.what()));
    }
  }
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from(j, path));
  throw Error(at(path, "expected a rational number or \"p/q\" string"));
}

IntVector int_vector_from(const json& j, const std::string& path) {
  if (!j.is_array()) throw Error(at(path, "expected an array"));
  std::vector<Int> xs;
  for (std::size_t i = 0; i < j.size(); ++i) xs.push_back(int_from(j[i], path + "/" + std::to_string(i)));
  try {
    return IntVector(xs);
  } catch (const Error& e) {
    throw Error(at(path, e.what()));
  }
}

RatVector rat_vector_from(const json& j, const std::string& path) {
  if (!j.is_array()) throw Error(at(path, "expected an array"));
  std::vector<Rat> xs;
  for (std::size_t i = 0; i < j.size(); ++i) xs.push_back(rat_from(j[i], path + "/" + std::to_string(i)));
  try {
    return RatVector(xs);
  } catch (const Error& e) {
    throw Error(at(path, e.what()));
  }
}

RationalPolytope polytope_from(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("coeffs")) {
    auto p = polytope_of(bundle_from(j, path));
    if (!p) throw Error(at(path, "line bundle has an empty polytope"));
    return *p;
  }
  const json& vs = field(j, "vertices", path);
  if (!vs.is_array() || vs.empty()) throw Error(at(path + "/vertices", "expected a non-empty array"));
  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < vs.size(); ++i)
    pts.push_back(rat_vector_from(vs[i], path + "/vertices/" + std::to_string(i)));
  try {
    return hull(pts);
  } catch (const Error& e) {
    throw Error(at(path + "/vertices", e.what()));
  }
}

Fan fan_from(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("preset")) {
    const json& p = j.at("preset");
    if (!p.is_string()) throw Error(at(path + "/preset", "expected a string"));
    auto name = p.get<std::string>();
    if (name == "p1") return fan_p1();
    if (name == "p2") return fan_p2();
    if (name == "p1xp1") return fan_p1xp1();
    if (name == "p3") return fan_p3();
    if (name == "p1xp2") return fan_p1xp2();
    if (name.size() > 1 && name[0] == 'f') return fan_hirzebruch(int_from(json(name.substr(1)), path + "/preset").get_si());
    throw Error(at(path + "/preset", "unknown preset \"" + name + "\""));
  }
  const json& rs = field(j, "rays", path);
  const json& cs = field(j, "cones", path);
  if (!rs.is_array() || !cs.is_array()) throw Error(at(path, "rays and cones must be arrays"));
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < rs.size(); ++i) rays.push_back(int_vector_from(rs[i], path + "/rays/" + std::to_string(i)));
  std::vector<std::vector<int>> cones;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cs[i].is_array()) throw Error(at(path + "/cones/" + std::to_string(i), "expected an array"));
    std::vector<int> c;
    for (std::size_t k = 0; k < cs[i].size(); ++k)
      c.push_back(static_cast<int>(int_from(cs[i][k], path + "/cones/" + std::to_string(i) + "/" + std::to_string(k)).get_si()));
    cones.push_back(c);
  }
  try {
    return make_fan(rays, cones);
  } catch (const Error& e) {
    throw Error(at(path, e.what()));
  }
}

ToricLineBundle bundle_from(const json& j, const std::string& path) {
  auto f = std::make_shared<const Fan>(fan_from(field(j, "fan", path), path + "/fan"));
  const json& cs = field(j, "coeffs", path);
  if (!cs.is_array() || cs.size() != f->rays.size())
    throw Error(at(path + "/coeffs", "expected " + std::to_string(f->rays.size()) + " coefficients"));
  std::vector<Int> a;
  for (std::size_t i = 0; i < cs.size(); ++i) a.push_back(int_from(cs[i], path + "/coeffs/" + std::to_string(i)));
  return ToricLineBundle{f, a};
}

Cone cone_from(const json& j, const std::string& path) {
  const json& gs = field(j, "generators", path);
  if (!gs.is_array() || gs.empty()) throw Error(at(path + "/generators", "expected a non-empty array"));
  Cone c;
  for (std::size_t i = 0; i < gs.size(); ++i)
    c.generators.push_back(primitive(int_vector_from(gs[i], path + "/generators/" + std::to_string(i))));
  c.ambient = c.generators.front().dim();
  return c;
}

json parse_text(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(name + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(file + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), file);
}

}  // namespace oda::io
