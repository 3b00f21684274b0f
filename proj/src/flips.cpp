#include "rhomb/flips.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace rhomb {

namespace {

FlipSite make_site(const Ring& ring, const CycloInt& center, std::array<int, 3> dirs) {
  FlipSite s;
  s.center = center;
  s.dirs = dirs;
  for (int k = 0; k < 3; ++k)
    s.tiles[k] = tile_from_corner(ring, center, dirs[k], dirs[(k + 1) % 3]);
  for (int k = 0; k < 3; ++k) {
    const CycloInt& a = ring.direction(dirs[k]);
    const CycloInt& b = ring.direction(dirs[(k + 1) % 3]);
    s.hexagon[2 * k] = center + a;
    s.hexagon[2 * k + 1] = center + a + b;
  }
  return s;
}

}  // namespace

CycloInt FlipSite::doubled_mid() const {
  // opposite hexagon vertices are symmetric about the middle
  return hexagon[0] + hexagon[3];
}

std::vector<FlipSite> find_flips(const Patch& p) {
  const Ring& ring = p.ring();
  const int n = ring.n();
  struct Corner {
    std::size_t tile;
    int angle;
    int out1, out2;  // directions of the two edges at the vertex
  };
  std::unordered_map<CycloInt, std::vector<Corner>> at;
  for (std::size_t t = 0; t < p.size(); ++t) {
    const auto& tile = p.tiles()[t];
    auto v = tile_vertices(ring, tile);
    const int a = ring.wrap(tile.rot - tile.label), b = tile.rot;
    // outgoing edge directions at each vertex in counterclockwise vertex order
    const std::array<std::pair<int, int>, 4> outs = {
        {{a, b}, {b, ring.wrap(a + n)}, {ring.wrap(a + n), ring.wrap(b + n)},
         {ring.wrap(b + n), a}}};
    for (int k = 0; k < 4; ++k)
      at[v[k]].push_back({t, tile_corner_angle(n, tile, k), outs[k].first, outs[k].second});
  }
  std::vector<FlipSite> sites;
  for (const auto& [v, corners] : at) {
    if (corners.size() != 3) continue;
    if (corners[0].angle + corners[1].angle + corners[2].angle != 2 * n) continue;
    // each tile's first edge is the previous tile's second edge
    std::array<int, 3> dirs{};
    std::array<std::size_t, 3> order{};
    order[0] = 0;
    bool ok = true;
    for (int k = 1; k < 3 && ok; ++k) {
      ok = false;
      for (std::size_t j = 0; j < 3; ++j)
        if (corners[j].out1 == corners[order[k - 1]].out2) {
          order[k] = j;
          ok = true;
        }
    }
    if (!ok || corners[order[2]].out2 != corners[order[0]].out1) continue;
    for (int k = 0; k < 3; ++k) dirs[k] = corners[order[k]].out1;
    FlipSite s = make_site(ring, v, dirs);
    for (int k = 0; k < 3; ++k)
      if (s.tiles[k] != p.tiles()[corners[order[k]].tile])
        throw std::logic_error("flip site tiles disagree with the patch");
    sites.push_back(s);
  }
  std::sort(sites.begin(), sites.end(), [&](const FlipSite& a, const FlipSite& b) {
    const Vec2 pa = ring.to_cartesian(a.doubled_mid());
    const Vec2 pb = ring.to_cartesian(b.doubled_mid());
    if (std::abs(pa.x - pb.x) > 1e-9) return pa.x < pb.x;
    if (std::abs(pa.y - pb.y) > 1e-9) return pa.y < pb.y;
    return a.center < b.center;
  });
  return sites;
}

FlipSite inverse_site(const Ring& ring, const FlipSite& site) {
  CycloInt c = site.center;
  for (int d : site.dirs) c += ring.direction(d);
  return make_site(ring, c,
                   {ring.wrap(site.dirs[0] + ring.n()), ring.wrap(site.dirs[1] + ring.n()),
                    ring.wrap(site.dirs[2] + ring.n())});
}

Patch apply_flip(const Patch& p, const FlipSite& site) {
  const Ring& ring = p.ring();
  for (const auto& t : site.tiles)
    if (!p.contains(t)) throw StaleSiteError("flip site no longer matches the patch");
  Patch out = p;
  for (const auto& t : site.tiles) out.erase(t);
  for (const auto& t : inverse_site(ring, site).tiles) out.insert(t);
  return out;
}

bool FlipGraph::connected() const {
  if (tilings.empty()) return true;
  std::vector<std::size_t> parent(tilings.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < tilings.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

FlipGraph flip_graph(const ClosedWalk& walk, std::size_t cap) {
  FlipGraph g;
  Enumeration e = enumerate_tilings(walk, cap);
  g.truncated = e.truncated;
  g.tilings = std::move(e.tilings);
  std::map<std::vector<PlacedTile>, std::size_t> index;
  for (std::size_t i = 0; i < g.tilings.size(); ++i) index[g.tilings[i].tiles()] = i;
  for (std::size_t i = 0; i < g.tilings.size(); ++i)
    for (const auto& site : find_flips(g.tilings[i])) {
      auto it = index.find(apply_flip(g.tilings[i], site).tiles());
      if (it == index.end()) {
        if (!g.truncated) throw std::logic_error("flip left the set of tilings");
        continue;
      }
      if (i < it->second) g.edges.emplace_back(i, it->second);
    }
  return g;
}

}  // namespace rhomb
