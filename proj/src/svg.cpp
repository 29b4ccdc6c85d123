#include "oda/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace oda {

namespace {

constexpr double kUnit = 40.0;
constexpr double kMargin = 20.0;

std::string fixed(double x, int precision) {
  if (std::abs(x) < 0.5 * std::pow(10.0, -precision)) x = 0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

const char* style(SvgScene::Role r) {
  switch (r) {
    case SvgScene::Role::target: return "fill=\"none\" stroke=\"black\" stroke-width=\"2\"";
    case SvgScene::Role::piece: return "fill=\"steelblue\" fill-opacity=\"0.3\" stroke=\"steelblue\"";
    case SvgScene::Role::residual: return "fill=\"red\" fill-opacity=\"0.8\" stroke=\"darkred\"";
    case SvgScene::Role::outline: break;
  }
  return "fill=\"none\" stroke=\"gray\"";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const SvgScene& scene, int precision) {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  auto grow = [&](const RatVector& v) {
    if (v.dim() != 2) throw DimensionError("SVG scenes are planar");
    double x = v[0].get_d(), y = v[1].get_d();
    if (first) x0 = x1 = x, y0 = y1 = y, first = false;
    x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  };
  for (const auto& p : scene.polygons)
    for (const auto& v : p.poly.vertices()) grow(v);
  for (const auto& p : scene.points) grow(p.at);
  const double w = (x1 - x0) * kUnit + 2 * kMargin, h = (y1 - y0) * kUnit + 2 * kMargin;
  auto px = [&](const Rat& x) { return fixed((x.get_d() - x0) * kUnit + kMargin, precision); };
  auto py = [&](const Rat& y) { return fixed((y1 - y.get_d()) * kUnit + kMargin, precision); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(w, precision) << "\" height=\""
      << fixed(h, precision) << "\" viewBox=\"0 0 " << fixed(w, precision) << " " << fixed(h, precision) << "\">\n";
  for (const auto& p : scene.polygons) {
    auto vs = p.poly.dim() == 2 ? ccw_vertices(p.poly) : p.poly.vertices();
    out << "  <path d=\"";
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " L " : "M ") << px(vs[i][0]) << " " << py(vs[i][1]);
    out << " Z\" " << style(p.role) << "/>\n";
  }
  for (const auto& p : scene.points) {
    std::string label = p.label.empty() ? to_string(p.at) : p.label;
    out << "  <circle cx=\"" << px(p.at[0]) << "\" cy=\"" << py(p.at[1])
        << "\" r=\"4\" fill=\"orange\" stroke=\"black\"><title>" << escape(label) << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace oda
