#include "rhomb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rhomb::geom {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x, ey = a.y + t * dy - p.y;
  return std::hypot(ex, ey);
}

}  // namespace

double segment_distance(Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
  const double d1 = cross(p, q, r), d2 = cross(p, q, s);
  const double d3 = cross(r, s, p), d4 = cross(r, s, q);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return 0.0;
  return std::min({point_segment_distance(p, r, s), point_segment_distance(q, r, s),
                   point_segment_distance(r, p, q), point_segment_distance(s, p, q)});
}

bool segment_hits_interior(Vec2 p, Vec2 q, std::span<const Vec2> poly,
                           double eps) {
  // Cyrus-Beck clipping against the half-planes left of each edge
  double t0 = 0.0, t1 = 1.0;
  const double dx = q.x - p.x, dy = q.y - p.y;
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    Vec2 a = poly[k], b = poly[(k + 1) % m];
    const double ex = b.x - a.x, ey = b.y - a.y;
    const double len = std::hypot(ex, ey);
    // signed distance of p from the edge line, positive inside
    const double f0 = (ex * (p.y - a.y) - ey * (p.x - a.x)) / len - eps;
    const double df = (ex * dy - ey * dx) / len;
    if (std::abs(df) < 1e-15) {
      if (f0 <= 0) return false;
      continue;
    }
    const double t = -f0 / df;
    if (df > 0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 >= t1) return false;
  }
  return t1 - t0 > 1e-12;
}

bool convex_interiors_overlap(std::span<const Vec2> a, std::span<const Vec2> b,
                              double eps) {
  auto separated_by_edges_of = [&](std::span<const Vec2> p,
                                   std::span<const Vec2> other) {
    const std::size_t m = p.size();
    for (std::size_t k = 0; k < m; ++k) {
      Vec2 u = p[k], v = p[(k + 1) % m];
      const double ex = v.x - u.x, ey = v.y - u.y;
      const double len = std::hypot(ex, ey);
      double max_inside = -std::numeric_limits<double>::infinity();
      for (Vec2 w : other)
        max_inside = std::max(max_inside,
                              (ex * (w.y - u.y) - ey * (w.x - u.x)) / len);
      if (max_inside <= eps) return true;
    }
    return false;
  };
  return !separated_by_edges_of(a, b) && !separated_by_edges_of(b, a);
}

}  // namespace rhomb::geom
