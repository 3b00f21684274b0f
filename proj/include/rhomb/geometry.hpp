#pragma once

// Floating-point helpers for rendering and for geometric predicates whose
// inputs are exact lattice points (used with small absolute tolerances).

#include <array>
#include <span>

#include "rhomb/cyclo.hpp"

namespace rhomb::geom {

inline double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Euclidean distance between closed segments pq and rs.
double segment_distance(Vec2 p, Vec2 q, Vec2 r, Vec2 s);

/// True if segment pq meets the interior of the convex counterclockwise
/// polygon `poly`, shrunk by eps.
bool segment_hits_interior(Vec2 p, Vec2 q, std::span<const Vec2> poly,
                           double eps);

/// True if the interiors of two convex counterclockwise polygons overlap by
/// more than eps (separating-axis test).
bool convex_interiors_overlap(std::span<const Vec2> a, std::span<const Vec2> b,
                              double eps);

}  // namespace rhomb::geom
