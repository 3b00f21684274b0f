#include "rhomb/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace rhomb {

Patch make_star(const Ring& ring, const CycloInt& center, int phase) {
  std::vector<PlacedTile> tiles;
  for (int k = 0; k < ring.n(); ++k)
    tiles.push_back(tile_from_corner(ring, center, 2 * k + phase, 2 * k + 2 + phase));
  return Patch(ring, std::move(tiles));
}

Patch star_tiles(const Patch& p, const CycloInt& center) {
  std::vector<PlacedTile> out;
  for (const auto& t : p.tiles()) {
    if (t.label != 2) continue;
    auto v = tile_vertices(p.ring(), t);
    if (v[0] == center || v[2] == center) out.push_back(t);
  }
  return Patch(p.ring(), std::move(out));
}

bool is_rotation_invariant(const Patch& p, const CycloInt& center) {
  const Ring& ring = p.ring();
  for (const auto& t : p.tiles())
    if (!p.contains(rotate_tile(ring, t, center, 2))) return false;
  return true;
}

std::vector<CycloInt> find_stars(const Patch& p) {
  const Ring& ring = p.ring();
  std::unordered_map<CycloInt, std::vector<PlacedTile>> small_corners;
  std::unordered_map<CycloInt, int> degree;
  for (const auto& t : p.tiles()) {
    auto v = tile_vertices(ring, t);
    for (int k = 0; k < 4; ++k) {
      ++degree[v[k]];
      if (t.label == 2 && k % 2 == 0) small_corners[v[k]].push_back(t);
    }
  }
  std::vector<CycloInt> out;
  for (const auto& [v, tiles] : small_corners) {
    if (static_cast<int>(tiles.size()) != ring.n() || degree[v] != ring.n()) continue;
    if (is_rotation_invariant(Patch(ring, tiles), v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_centrally_invariant(const Patch& p, int order) {
  const Ring& ring = p.ring();
  const int n = ring.n();
  if (order < 1 || n % order != 0 || order % 2 == 0) return false;
  if (p.empty() || order == 1) return true;
  // work with vertices scaled by their count so the centroid is exact
  std::set<CycloInt> verts;
  for (const auto& t : p.tiles())
    for (const auto& v : tile_vertices(ring, t)) verts.insert(v);
  const std::int64_t count = static_cast<std::int64_t>(verts.size());
  CycloInt sum;
  for (const auto& v : verts) sum += v;
  const int k = 2 * n / order;
  std::set<std::array<CycloInt, 2>> tiles;  // scaled anchor and opposite vertex
  for (const auto& t : p.tiles()) {
    auto v = tile_vertices(ring, t);
    tiles.insert({v[0] * count, v[2] * count});
  }
  auto rot = [&](const CycloInt& x) { return sum + ring.rotate(x - sum, k); };
  for (const auto& t : p.tiles()) {
    auto v = tile_vertices(ring, t);
    const CycloInt a = rot(v[0] * count), c = rot(v[2] * count);
    // a rhomb is fixed by either diagonal ordering
    if (!tiles.count({a, c}) && !tiles.count({c, a})) return false;
  }
  return true;
}

CornerFlags corner_flags(const Substitution& sub, int label) {
  const Ring& ring = *sub.ring;
  const Boundary b = build_boundary(ring, sub.seq, label);
  CornerFlags f;
  f.label = label;
  for (const auto& t : sub.image(label).tiles()) {
    if (t.label != 2) continue;
    auto v = tile_vertices(ring, t);
    for (int c = 0; c < 4; ++c) {
      if (v[0] == b.corners()[c] || v[2] == b.corners()[c]) f.corners[c] = true;
      if (std::find(v.begin(), v.end(), b.corners()[c]) != v.end()) f.touching[c] = true;
    }
  }
  return f;
}

namespace {
void add_invariant_centers(const Patch& p, int label, SymmetryReport& r) {
  const int n = p.n();
  int best = 1;
  for (int d = 3; d <= n; d += 2)
    if (n % d == 0 && is_centrally_invariant(p, d)) best = d;
  if (best == 1) return;
  const Ring& ring = p.ring();
  std::set<CycloInt> verts;
  for (const auto& t : p.tiles())
    for (const auto& v : tile_vertices(ring, t)) verts.insert(v);
  Vec2 c{0, 0};
  for (const auto& v : verts) {
    Vec2 x = ring.to_cartesian(v);
    c.x += x.x;
    c.y += x.y;
  }
  c.x /= static_cast<double>(verts.size());
  c.y /= static_cast<double>(verts.size());
  r.invariant_centers.push_back({label, c, best});
}
}  // namespace

SymmetryReport corner_report(const Substitution& sub, int depth) {
  SymmetryReport r;
  r.n = sub.n();
  for (int label : prototile_labels(sub.n())) {
    const Patch& img = sub.image(label);
    for (const auto& c : find_stars(img)) r.stars.push_back({label, c});
    r.corner_flags.push_back(corner_flags(sub, label));
    add_invariant_centers(img, label, r);
    if (depth >= 2) {
      Patch second = substitute_patch(sub, img, false);
      for (const auto& c : find_stars(second)) r.second_stars.push_back({label, c});
    }
  }
  return r;
}

std::optional<FixedPoint> grow_fixed_point(const Substitution& sub, const Patch& seed,
                                           const CycloInt& center, int max_depth) {
  const Ring& ring = *sub.ring;
  if (seed.empty() || !is_rotation_invariant(seed, center))
    throw std::invalid_argument("seed is not rotation invariant about the center");
  Patch cur = seed;
  CycloInt image = center;
  const PlacedTile& ref = seed.tiles().front();
  for (int k = 1; k <= max_depth; ++k) {
    cur = substitute_patch(sub, cur, false);
    image = ring.mul(sub.scale, image);
    auto fits = [&](const CycloInt& v) {
      for (const auto& t : seed.tiles())
        if (!cur.contains(translate_tile(t, v))) return false;
      return true;
    };
    const CycloInt preferred = image - center;
    if (fits(preferred)) return FixedPoint{k, preferred, true};
    for (const auto& t : cur.tiles()) {
      if (t.label != ref.label || t.rot != ref.rot) continue;
      const CycloInt v = t.trans - ref.trans;
      if (fits(v)) return FixedPoint{k, v, false};
    }
  }
  return std::nullopt;
}

}  // namespace rhomb
