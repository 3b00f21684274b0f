#include "rhomb/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace rhomb {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Frame {
  double x0, y1, unit, margin;
  double px(Vec2 p) const { return margin + (p.x - x0) * unit; }
  double py(Vec2 p) const { return margin + (y1 - p.y) * unit; }
  std::string pt(Vec2 p) const { return num(px(p)) + "," + num(py(p)); }
};

Vec2 mid(Vec2 a, Vec2 b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }

}  // namespace

std::string label_fill(int label) {
  static const std::array<const char*, 8> palette = {
      "#e8c170", "#7fb3d5", "#c39bd3", "#82e0aa", "#f1948a", "#f8c471", "#85c1e9", "#d7bde2"};
  return palette[static_cast<std::size_t>(label / 2 - 1) % palette.size()];
}

std::string render_svg(const Patch& p, const SvgStyle& style) {
  const Ring& ring = p.ring();
  double x0 = std::numeric_limits<double>::max(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  std::vector<std::array<Vec2, 4>> polys;
  for (const auto& t : p.tiles()) {
    polys.push_back(tile_polygon(ring, t));
    for (Vec2 v : polys.back()) {
      x0 = std::min(x0, v.x);
      y0 = std::min(y0, v.y);
      x1 = std::max(x1, v.x);
      y1 = std::max(y1, v.y);
    }
  }
  if (polys.empty()) x0 = y0 = x1 = y1 = 0;
  const Frame f{x0, y1, style.unit, style.margin};
  const double w = 2 * style.margin + (x1 - x0) * style.unit;
  const double h = 2 * style.margin + (y1 - y0) * style.unit;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  if (style.arrows)
    out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" "
           "markerWidth=\"5\" markerHeight=\"5\" orient=\"auto\">"
           "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker></defs>\n";

  out << "<g class=\"tiles\" stroke=\"#222\" stroke-width=\"" << num(style.stroke)
      << "\" stroke-linejoin=\"round\">\n";
  for (std::size_t k = 0; k < polys.size(); ++k) {
    out << "<polygon class=\"tile\" data-label=\"" << p.tiles()[k].label << "\" fill=\""
        << label_fill(p.tiles()[k].label) << "\" points=\"";
    for (int v = 0; v < 4; ++v) out << (v ? " " : "") << f.pt(polys[k][v]);
    out << "\"/>\n";
  }
  out << "</g>\n";

  if (style.pseudolines && !p.empty()) {
    try {
      const PatchArrangement arr = pseudolines_of_patch(p);
      out << "<g class=\"pseudolines\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\""
          << num(style.stroke * 1.5) << "\">\n";
      for (const auto& line : arr.lines) {
        auto edge_mid = [&](const EdgeKey& e) {
          return mid(ring.to_cartesian(e.start), ring.to_cartesian(e.start + ring.direction(e.dir)));
        };
        out << "<polyline class=\"pseudoline\" data-class=\"" << line.direction_class
            << "\" points=\"" << f.pt(edge_mid(line.ends[0]));
        for (std::size_t t : line.tiles) {
          const auto& q = polys[t];
          out << ' ' << f.pt(mid(q[0], q[2]));
        }
        out << ' ' << f.pt(edge_mid(line.ends[1])) << "\"/>\n";
      }
      out << "</g>\n";
    } catch (const std::invalid_argument&) {
      // patch with a hole: no overlay
    }
  }

  if (style.arrows) {
    std::set<EdgeKey> edges;
    for (const auto& t : p.tiles())
      for (const auto& [key, side] : tile_edges(ring, t)) edges.insert(key);
    out << "<g class=\"arrows\" stroke=\"#333\" stroke-width=\"" << num(style.stroke)
        << "\" marker-end=\"url(#arrow)\">\n";
    for (const auto& e : edges) {
      const Vec2 a = ring.to_cartesian(e.start);
      const Vec2 b = ring.to_cartesian(e.start + ring.direction(e.dir));
      const Vec2 m = mid(a, b);
      const Vec2 s{m.x - (b.x - a.x) * 0.15, m.y - (b.y - a.y) * 0.15};
      const Vec2 t{m.x + (b.x - a.x) * 0.15, m.y + (b.y - a.y) * 0.15};
      out << "<line x1=\"" << num(f.px(s)) << "\" y1=\"" << num(f.py(s)) << "\" x2=\""
          << num(f.px(t)) << "\" y2=\"" << num(f.py(t)) << "\"/>\n";
    }
    out << "</g>\n";
  }

  if (!style.markers.empty()) {
    out << "<g class=\"markers\" fill=\"none\" stroke=\"#000\" stroke-width=\""
        << num(style.stroke * 2) << "\">\n";
    for (const auto& c : style.markers) {
      const Vec2 v = ring.to_cartesian(c);
      out << "<circle cx=\"" << num(f.px(v)) << "\" cy=\"" << num(f.py(v)) << "\" r=\""
          << num(style.unit * 0.3) << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rhomb
