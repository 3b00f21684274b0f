#include "rhomb/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "rhomb/geometry.hpp"
#include "rhomb/ksk.hpp"

namespace rhomb {

// ---------------------------------------------------------------------------
// Placed tiles

PlacedTile make_tile(const Ring& ring, int label, int rot, CycloInt trans) {
  const int n = ring.n();
  if (label < 2 || label >= n || label % 2 != 0)
    throw std::invalid_argument("bad prototile label " + std::to_string(label));
  rot = ring.wrap(rot);
  if (rot % 2 != 0) {
    // half turn about the tile centre
    trans += ring.direction(rot) + ring.direction(rot - label);
    rot = ring.wrap(rot + n);
  }
  return {label, rot, trans};
}

PlacedTile tile_from_corner(const Ring& ring, const CycloInt& corner, int d1,
                            int d2) {
  const int n = ring.n();
  d1 = ring.wrap(d1);
  d2 = ring.wrap(d2);
  if (d1 % n == d2 % n)
    throw std::invalid_argument("tile_from_corner: parallel directions");
  CycloInt anchor = corner;
  if (d1 % 2 != 0) anchor += ring.direction(d1);
  if (d2 % 2 != 0) anchor += ring.direction(d2);
  const int r1 = canonical_orientation(n, d1);
  const int r2 = canonical_orientation(n, d2);
  const int delta = ring.wrap(r1 - r2);
  if (delta < n) return {delta, r1, anchor};
  return {2 * n - delta, r2, anchor};
}

std::array<CycloInt, 4> tile_vertices(const Ring& ring, const PlacedTile& t) {
  const CycloInt& a = ring.direction(t.rot - t.label);
  const CycloInt& b = ring.direction(t.rot);
  return {t.trans, t.trans + a, t.trans + a + b, t.trans + b};
}

std::array<Vec2, 4> tile_polygon(const Ring& ring, const PlacedTile& t) {
  auto v = tile_vertices(ring, t);
  return {ring.to_cartesian(v[0]), ring.to_cartesian(v[1]),
          ring.to_cartesian(v[2]), ring.to_cartesian(v[3])};
}

PlacedTile rotate_tile(const Ring& ring, const PlacedTile& t,
                       const CycloInt& center, int k) {
  if (k % 2 != 0)
    throw std::invalid_argument("rotate_tile: rotation must be even");
  return {t.label, ring.wrap(t.rot + k), ring.rotate_about(t.trans, center, k)};
}

PlacedTile translate_tile(const PlacedTile& t, const CycloInt& v) {
  return {t.label, t.rot, t.trans + v};
}

EdgeKey edge_key(const Ring& ring, const CycloInt& start, int dir) {
  dir = ring.wrap(dir);
  if (dir % 2 == 0) return {start, dir};
  return {start + ring.direction(dir), ring.wrap(dir + ring.n())};
}

std::array<std::pair<EdgeKey, bool>, 4> tile_edges(const Ring& ring,
                                                   const PlacedTile& t) {
  const int a = ring.wrap(t.rot - t.label);
  const int b = t.rot;
  const CycloInt& ea = ring.direction(a);
  const CycloInt& eb = ring.direction(b);
  return {{{EdgeKey{t.trans, a}, true},
           {EdgeKey{t.trans + ea, b}, true},
           {EdgeKey{t.trans + eb, a}, false},
           {EdgeKey{t.trans, b}, false}}};
}

// ---------------------------------------------------------------------------
// Patch

Patch::Patch(const Ring& ring, std::vector<PlacedTile> tiles)
    : ring_(&ring), tiles_(std::move(tiles)) {
  std::sort(tiles_.begin(), tiles_.end());
  tiles_.erase(std::unique(tiles_.begin(), tiles_.end()), tiles_.end());
}

bool Patch::contains(const PlacedTile& t) const {
  return std::binary_search(tiles_.begin(), tiles_.end(), t);
}

std::optional<std::size_t> Patch::index_of(const PlacedTile& t) const {
  auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t);
  if (it == tiles_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - tiles_.begin());
}

void Patch::insert(const PlacedTile& t) {
  auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t);
  if (it == tiles_.end() || *it != t) tiles_.insert(it, t);
}

bool Patch::erase(const PlacedTile& t) {
  auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t);
  if (it == tiles_.end() || *it != t) return false;
  tiles_.erase(it);
  return true;
}

std::map<EdgeKey, int> Patch::edge_usage() const {
  std::map<EdgeKey, int> usage;
  for (const auto& t : tiles_)
    for (const auto& [key, side] : tile_edges(*ring_, t)) ++usage[key];
  return usage;
}

std::vector<EdgeKey> Patch::boundary_edges() const {
  std::vector<EdgeKey> out;
  for (const auto& [key, count] : edge_usage())
    if (count == 1) out.push_back(key);
  return out;
}

std::map<int, std::size_t> Patch::label_counts() const {
  std::map<int, std::size_t> counts;
  for (const auto& t : tiles_) ++counts[t.label];
  return counts;
}

double Patch::area() const {
  double a = 0.0;
  for (const auto& t : tiles_)
    a += std::sin(std::numbers::pi * t.label / ring_->n());
  return a;
}

namespace {

constexpr double kGeomEps = 1e-9;

bool collinear_partial_overlap(Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
  const double dx = q.x - p.x, dy = q.y - p.y;
  if (std::abs(geom::cross(p, q, r)) > kGeomEps ||
      std::abs(geom::cross(p, q, s)) > kGeomEps)
    return false;
  // parameters of r and s along pq (unit length)
  double tr = (r.x - p.x) * dx + (r.y - p.y) * dy;
  double ts = (s.x - p.x) * dx + (s.y - p.y) * dy;
  if (tr > ts) std::swap(tr, ts);
  const double overlap = std::min(1.0, ts) - std::max(0.0, tr);
  const bool identical = std::abs(tr) < kGeomEps && std::abs(ts - 1.0) < kGeomEps;
  return overlap > kGeomEps && !identical;
}

struct CellHash {
  std::size_t operator()(const std::pair<long, long>& c) const noexcept {
    return static_cast<std::size_t>(c.first * 73856093L ^ c.second * 19349663L);
  }
};

}  // namespace

void Patch::validate() const {
  std::unordered_map<EdgeKey, std::pair<int, bool>, EdgeKeyHash> usage;
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    for (const auto& [key, side] : tile_edges(*ring_, tiles_[i])) {
      auto [it, fresh] = usage.emplace(key, std::make_pair(1, side));
      if (fresh) continue;
      if (++it->second.first > 2)
        throw OverlapError("edge shared by more than two tiles at " +
                           ring_->to_string(key.start));
      if (it->second.second == side)
        throw OverlapError("two tiles on the same side of edge at " +
                           ring_->to_string(key.start));
    }
  }

  std::vector<std::array<Vec2, 4>> polys;
  polys.reserve(tiles_.size());
  std::unordered_map<std::pair<long, long>, std::vector<std::size_t>, CellHash> grid;
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    polys.push_back(tile_polygon(*ring_, tiles_[i]));
    double x0 = polys[i][0].x, x1 = x0, y0 = polys[i][0].y, y1 = y0;
    for (const auto& v : polys[i]) {
      x0 = std::min(x0, v.x), x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
    }
    for (long cx = std::lround(std::floor(x0)); cx <= std::lround(std::floor(x1)); ++cx)
      for (long cy = std::lround(std::floor(y0)); cy <= std::lround(std::floor(y1)); ++cy)
        grid[{cx, cy}].push_back(i);
  }

  std::unordered_set<std::uint64_t> seen;
  for (const auto& [cell, members] : grid) {
    for (std::size_t u = 0; u < members.size(); ++u)
      for (std::size_t w = u + 1; w < members.size(); ++w) {
        std::size_t i = members[u], j = members[w];
        if (i > j) std::swap(i, j);
        if (!seen.insert((static_cast<std::uint64_t>(i) << 32) | j).second) continue;
        if (geom::convex_interiors_overlap(polys[i], polys[j], kGeomEps))
          throw OverlapError("tiles " + std::to_string(i) + " and " +
                             std::to_string(j) + " overlap");
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            if (collinear_partial_overlap(polys[i][a], polys[i][(a + 1) % 4],
                                          polys[j][b], polys[j][(b + 1) % 4]))
              throw OverlapError("tiles " + std::to_string(i) + " and " +
                                 std::to_string(j) +
                                 " meet along part of an edge");
      }
  }
}

std::string support_mismatch(const Patch& patch, const ClosedWalk& walk) {
  const Ring& ring = walk.ring();
  std::map<EdgeKey, int> walk_count;
  for (std::size_t k = 0; k < walk.size(); ++k)
    ++walk_count[edge_key(ring, walk.point(k), walk.dir(k))];
  const auto usage = patch.edge_usage();

  for (std::size_t k = 0; k < walk.size(); ++k) {
    const EdgeKey key = edge_key(ring, walk.point(k), walk.dir(k));
    const int c = walk_count[key];
    auto it = usage.find(key);
    const int u = it == usage.end() ? 0 : it->second;
    if ((c == 1 && u != 1) || (c == 2 && u % 2 != 0))
      return "boundary segment " + std::to_string(k) + " at " +
             ring.to_string(walk.point(k)) + " direction " +
             std::to_string(walk.dir(k)) + " is used by " + std::to_string(u) +
             " tile(s)";
  }
  for (const auto& [key, u] : usage) {
    if (u != 1) continue;
    if (walk_count.find(key) == walk_count.end())
      return "tile edge at " + ring.to_string(key.start) + " direction " +
             std::to_string(key.dir) + " is exposed but not on the boundary";
  }
  const double want = std::abs(walk.signed_area());
  const double got = patch.area();
  if (std::abs(want - got) > 1e-9 * std::max(1.0, want))
    return "patch area " + std::to_string(got) + " differs from enclosed area " +
           std::to_string(want);
  return {};
}

// ---------------------------------------------------------------------------
// Construction from the pseudoline pairing

namespace {

// Realizes the pairing as chords of a circle: chord endpoints sit at
// perturbed equally spaced angles, so interleaving chords cross exactly once
// and generically no three are concurrent. Each crossing is a rhomb whose
// corner position is the sum of e_d over the lines separating it from the
// face at walk vertex 0.
std::vector<PlacedTile> realize_pairing(const PseudolinePairing& pairing,
                                        unsigned attempt) {
  using Real = long double;
  const Ring& ring = pairing.ccw.ring();
  const std::size_t len = pairing.ccw.size();
  std::vector<Real> theta(len);
  std::uint64_t state = 0x9E3779B97F4A7C15ULL * (attempt + 1);
  for (std::size_t k = 0; k < len; ++k) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const Real jitter = (static_cast<Real>(state >> 11) / 9007199254740992.0L - 0.5L) * 0.5L;
    theta[k] = 2 * std::numbers::pi_v<Real> * (k + 0.5L + jitter) / len;
  }
  struct P {
    Real x, y;
  };
  auto at = [&](Real a) { return P{std::cos(a), std::sin(a)}; };
  auto orient = [](P o, P a, P b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };

  const auto& lines = pairing.lines;
  std::vector<P> pa(lines.size()), pb(lines.size());
  std::vector<bool> arc_sign(lines.size());
  for (std::size_t l = 0; l < lines.size(); ++l) {
    pa[l] = at(theta[lines[l].a]);
    pb[l] = at(theta[lines[l].b]);
    P mid = at((theta[lines[l].a] + theta[lines[l].b]) / 2);
    arc_sign[l] = orient(pa[l], pb[l], mid) > 0;
  }

  std::vector<PlacedTile> tiles;
  const CycloInt& origin = pairing.ccw.point(0);
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (!lines_cross(lines[i], lines[j])) continue;
      // intersection of chords i and j
      const Real d = orient(pa[i], pb[i], pa[j]) - orient(pa[i], pb[i], pb[j]);
      const Real t = orient(pa[i], pb[i], pa[j]) / d;
      const P x{pa[j].x + t * (pb[j].x - pa[j].x), pa[j].y + t * (pb[j].y - pa[j].y)};
      CycloInt corner = origin;
      for (std::size_t l = 0; l < lines.size(); ++l) {
        if (l == i || l == j) continue;
        if ((orient(pa[l], pb[l], x) > 0) == arc_sign[l])
          corner += ring.direction(pairing.labels[lines[l].a]);
      }
      tiles.push_back(tile_from_corner(ring, corner, pairing.labels[lines[i].a],
                                       pairing.labels[lines[j].a]));
    }
  return tiles;
}

}  // namespace

Patch construct_tiling(const ClosedWalk& walk) {
  const PseudolinePairing pairing = pair_segments(walk);
  if (!ksk_check(pairing))
    throw UntilableError("region fails the KSK criterion");
  std::string last_error;
  for (unsigned attempt = 0; attempt < 8; ++attempt) {
    Patch patch(walk.ring(), realize_pairing(pairing, attempt));
    try {
      patch.validate();
    } catch (const OverlapError& e) {
      last_error = e.what();
      continue;
    }
    last_error = support_mismatch(patch, walk);
    if (last_error.empty()) return patch;
  }
  throw std::logic_error("pseudoline realization failed: " + last_error);
}

Patch construct_tiling(const Boundary& b) {
  if (!is_good_curve(b))
    throw UntilableError("boundary is not a good curve");
  return construct_tiling(b.walk());
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

namespace {

double winding_number(const ClosedWalk& w, Vec2 q) {
  const Ring& ring = w.ring();
  double total_angle = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    Vec2 a = ring.to_cartesian(w.point(k));
    Vec2 b = ring.to_cartesian(w.point(k + 1));
    const double ax = a.x - q.x, ay = a.y - q.y, bx = b.x - q.x, by = b.y - q.y;
    total_angle += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return total_angle / (2 * std::numbers::pi);
}

// Directed unit edge with uncovered region on its left.
struct Arrow {
  CycloInt start;
  int dir;
  Vec2 xy;
};

class Enumerator {
 public:
  Enumerator(const ClosedWalk& ccw, std::size_t cap, Enumeration& out)
      : ring_(ccw.ring()), n_(ring_.n()), ccw_(ccw), cap_(cap), out_(out) {
    for (std::size_t k = 0; k < ccw.size(); ++k)
      walk_xy_.push_back(ring_.to_cartesian(ccw.point(k)));
  }

  void run(std::vector<Arrow> frontier) {
    if (done_) return;
    if (frontier.empty()) {
      out_.tilings.emplace_back(ring_, placed_);
      if (out_.tilings.size() >= cap_) {
        out_.truncated = true;
        done_ = true;
      }
      return;
    }
    // leftmost, then lowest start; ties by direction
    std::size_t k = 0;
    for (std::size_t j = 1; j < frontier.size(); ++j) {
      const Vec2 a = frontier[j].xy, b = frontier[k].xy;
      if (a.x < b.x - kGeomEps ||
          (std::abs(a.x - b.x) <= kGeomEps &&
           (a.y < b.y - kGeomEps ||
            (std::abs(a.y - b.y) <= kGeomEps && frontier[j].dir < frontier[k].dir))))
        k = j;
    }
    const Arrow base = frontier[k];
    for (int a = 1; a < n_ && !done_; ++a) {
      const int d2 = ring_.wrap(base.dir + a);
      const PlacedTile tile = tile_from_corner(ring_, base.start, base.dir, d2);
      std::array<Vec2, 4> poly;
      std::array<Arrow, 4> sides;
      {
        CycloInt p = base.start;
        const int dirs[4] = {base.dir, d2, ring_.wrap(base.dir + n_), ring_.wrap(d2 + n_)};
        for (int s = 0; s < 4; ++s) {
          sides[s] = {p, dirs[s], ring_.to_cartesian(p)};
          poly[s] = sides[s].xy;
          p += ring_.direction(dirs[s]);
        }
      }
      if (!fits(poly)) continue;
      std::vector<Arrow> next = frontier;
      bool clash = false;
      for (const Arrow& s : sides) {
        auto same = std::find_if(next.begin(), next.end(), [&](const Arrow& f) {
          return f.dir == s.dir && f.start == s.start;
        });
        if (same != next.end()) {
          next.erase(same);
          continue;
        }
        const CycloInt end = s.start + ring_.direction(s.dir);
        const int back = ring_.wrap(s.dir + n_);
        if (std::any_of(next.begin(), next.end(), [&](const Arrow& f) {
              return f.dir == back && f.start == end;
            })) {
          clash = true;
          break;
        }
        next.push_back({end, back, ring_.to_cartesian(end)});
      }
      if (clash) continue;
      placed_.push_back(tile);
      polys_.push_back(poly);
      run(std::move(next));
      polys_.pop_back();
      placed_.pop_back();
    }
  }

 private:
  bool fits(const std::array<Vec2, 4>& poly) const {
    const Vec2 c{(poly[0].x + poly[2].x) / 2, (poly[0].y + poly[2].y) / 2};
    if (std::lround(winding_number(ccw_, c)) != 1) return false;
    const std::size_t len = walk_xy_.size();
    for (std::size_t j = 0; j < len; ++j) {
      const Vec2 p = walk_xy_[j], q = walk_xy_[(j + 1) % len];
      if (geom::segment_hits_interior(p, q, poly, kGeomEps)) return false;
      for (int s = 0; s < 4; ++s)
        if (collinear_partial_overlap(poly[s], poly[(s + 1) % 4], p, q)) return false;
    }
    for (const auto& other : polys_) {
      if (std::abs(other[0].x - poly[0].x) > 4 || std::abs(other[0].y - poly[0].y) > 4)
        continue;
      if (geom::convex_interiors_overlap(poly, other, kGeomEps)) return false;
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          if (collinear_partial_overlap(poly[s], poly[(s + 1) % 4], other[t],
                                        other[(t + 1) % 4]))
            return false;
    }
    return true;
  }

  const Ring& ring_;
  int n_;
  const ClosedWalk& ccw_;
  std::size_t cap_;
  Enumeration& out_;
  std::vector<Vec2> walk_xy_;
  std::vector<PlacedTile> placed_;
  std::vector<std::array<Vec2, 4>> polys_;
  bool done_ = false;
};

}  // namespace

Enumeration enumerate_tilings(const ClosedWalk& walk, std::size_t cap,
                              std::size_t max_tiles) {
  const Ring& ring = walk.ring();
  const int n = ring.n();
  const ClosedWalk ccw = walk.signed_area() < 0 ? walk.reversed() : walk;
  const double area = ccw.signed_area();
  const double smallest = std::sin(std::numbers::pi / n);
  if (area / smallest > static_cast<double>(max_tiles) + 1e-9)
    throw std::invalid_argument("region too large for exhaustive enumeration");

  // every traversed side with the region on its left; a doubled segment
  // contributes both sides if it is a slit into the region, neither if it
  // is a spike out of it
  std::map<EdgeKey, int> count;
  for (std::size_t k = 0; k < ccw.size(); ++k)
    ++count[edge_key(ring, ccw.point(k), ccw.dir(k))];
  std::vector<Arrow> frontier;
  for (std::size_t k = 0; k < ccw.size(); ++k) {
    const CycloInt& p = ccw.point(k);
    const Vec2 a = ring.to_cartesian(p);
    if (count[edge_key(ring, p, ccw.dir(k))] > 1) {
      const Vec2 b = ring.to_cartesian(ccw.point(k + 1));
      const Vec2 left{(a.x + b.x) / 2 - (b.y - a.y) * 1e-4,
                      (a.y + b.y) / 2 + (b.x - a.x) * 1e-4};
      if (std::lround(winding_number(ccw, left)) != 1) continue;
    }
    frontier.push_back({p, ccw.dir(k), a});
  }

  Enumeration out;
  if (cap == 0) {
    out.truncated = true;
    return out;
  }
  Enumerator e(ccw, cap, out);
  e.run(std::move(frontier));
  return out;
}

// ---------------------------------------------------------------------------
// Pseudolines of a patch

PatchArrangement pseudolines_of_patch(const Patch& patch) {
  const Ring& ring = patch.ring();
  const int n = ring.n();
  const auto& tiles = patch.tiles();

  // (tile, slot) nodes; slot 0 is the class of e_{rot-label}, slot 1 of e_rot
  std::unordered_map<EdgeKey, std::vector<std::size_t>, EdgeKeyHash> users;
  std::unordered_set<CycloInt> vertices;
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    for (const auto& [key, side] : tile_edges(ring, tiles[t])) users[key].push_back(t);
    for (const auto& v : tile_vertices(ring, tiles[t])) vertices.insert(v);
  }
  const long euler = static_cast<long>(vertices.size()) -
                     static_cast<long>(users.size()) +
                     static_cast<long>(tiles.size());
  if (!tiles.empty() && euler != 1)
    throw std::invalid_argument("patch is not simply connected");

  auto slot_class = [&](std::size_t t, int slot) {
    return (slot == 0 ? ring.wrap(tiles[t].rot - tiles[t].label) : tiles[t].rot) % n;
  };
  // the two edges of tile t parallel to slot's class
  auto slot_edges = [&](std::size_t t, int slot) {
    auto e = tile_edges(ring, tiles[t]);
    // edges 0 and 2 carry rot-label; edges 1 and 3 carry rot
    return slot == 0 ? std::array<EdgeKey, 2>{e[0].first, e[2].first}
                     : std::array<EdgeKey, 2>{e[1].first, e[3].first};
  };

  PatchArrangement arr;
  arr.lines_of_tile.assign(tiles.size(), {0, 0});
  std::vector<std::array<bool, 2>> visited(tiles.size(), {false, false});

  for (std::size_t t0 = 0; t0 < tiles.size(); ++t0)
    for (int s0 = 0; s0 < 2; ++s0) {
      if (visited[t0][s0]) continue;
      const int cls = slot_class(t0, s0);
      auto slot_for = [&](std::size_t t) { return slot_class(t, 0) == cls ? 0 : 1; };
      auto other_tile = [&](const EdgeKey& key, std::size_t t) -> std::optional<std::size_t> {
        const auto& u = users.at(key);
        for (std::size_t x : u)
          if (x != t) return x;
        return std::nullopt;
      };
      // walk to one end
      std::size_t t = t0;
      EdgeKey from = slot_edges(t0, s0)[0];
      std::size_t steps = 0;
      while (true) {
        auto nb = other_tile(from, t);
        if (!nb) break;
        const std::size_t u = *nb;
        auto es = slot_edges(u, slot_for(u));
        from = es[0] == from ? es[1] : es[0];
        t = u;
        if (++steps > tiles.size())
          throw std::invalid_argument("closed pseudoline: patch has a hole");
      }
      // now walk from this end to the other, recording tiles
      PatchPseudoline line;
      line.direction_class = cls;
      line.ends[0] = from;
      EdgeKey exit = from;
      while (true) {
        const int slot = slot_for(t);
        visited[t][slot] = true;
        line.tiles.push_back(t);
        arr.lines_of_tile[t][slot] = arr.lines.size();
        auto es = slot_edges(t, slot);
        exit = es[0] == exit ? es[1] : es[0];
        auto nb = other_tile(exit, t);
        if (!nb) break;
        t = *nb;
      }
      line.ends[1] = exit;
      arr.lines.push_back(std::move(line));
    }
  return arr;
}

}  // namespace rhomb
