#pragma once

// Hex flips: three rhombs meeting at an interior vertex of degree three are
// replaced by the translated triple covering the same hexagon.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rhomb/tiling.hpp"

namespace rhomb {

class StaleSiteError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlipSite {
  /// The triple, in counterclockwise order around the center.
  std::array<PlacedTile, 3> tiles;
  /// The shared vertex.
  CycloInt center;
  /// Edge directions out of the center, counterclockwise; tiles[k] spans
  /// dirs[k] and dirs[k+1].
  std::array<int, 3> dirs{};
  /// Boundary of the hexagon, counterclockwise.
  std::array<CycloInt, 6> hexagon;
  /// Center of the hexagon doubled (keeps it in the ring).
  CycloInt doubled_mid() const;
};

/// All flippable triples, ordered by hexagon center (x, then y).
std::vector<FlipSite> find_flips(const Patch& p);

/// The triple after the flip. Throws StaleSiteError if a tile of the site is
/// no longer in p.
Patch apply_flip(const Patch& p, const FlipSite& site);

/// The site that undoes a flip of `site`.
FlipSite inverse_site(const Ring& ring, const FlipSite& site);

struct FlipGraph {
  std::vector<Patch> tilings;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool truncated = false;  // the enumeration hit its cap
  bool connected() const;
};

/// Tilings of the region inside `walk` joined by single flips.
FlipGraph flip_graph(const ClosedWalk& walk, std::size_t cap);
inline FlipGraph flip_graph(const Boundary& b, std::size_t cap) {
  return flip_graph(b.walk(), cap);
}

}  // namespace rhomb
