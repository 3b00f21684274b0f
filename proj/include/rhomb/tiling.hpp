#pragma once

// Placed rhombs, patches, and construction/enumeration of rhomb tilings of
// regions bounded by closed unit-segment walks.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhomb/boundary.hpp"
#include "rhomb/cyclo.hpp"

namespace rhomb {

class OverlapError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UntilableError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Prototile R_label rotated by rot*pi/n and translated by trans. The
/// prototile has vertices 0, e_0, e_0 + e_{-label}, e_{-label}; rot is always
/// even, which is the orientation-preserving placement compatible with the
/// edge orientation rule (every edge carries its even direction index).
struct PlacedTile {
  int label = 2;
  int rot = 0;
  CycloInt trans;

  friend bool operator==(const PlacedTile&, const PlacedTile&) = default;
  friend auto operator<=>(const PlacedTile&, const PlacedTile&) = default;
};

/// Canonical placed tile. An odd rotation is replaced by the half-turn
/// equivalent (same point set, even rotation).
PlacedTile make_tile(const Ring& ring, int label, int rot, CycloInt trans);

/// The tile whose support is the parallelogram at `corner` spanned by e_d1
/// and e_d2 (d1, d2 in different direction classes).
PlacedTile tile_from_corner(const Ring& ring, const CycloInt& corner, int d1,
                            int d2);

/// Vertices in counterclockwise order, starting at the anchor trans.
std::array<CycloInt, 4> tile_vertices(const Ring& ring, const PlacedTile& t);
/// Interior angle (in units of pi/n) at tile_vertices()[k].
inline int tile_corner_angle(int n, const PlacedTile& t, int k) {
  return k % 2 == 0 ? t.label : n - t.label;
}
std::array<Vec2, 4> tile_polygon(const Ring& ring, const PlacedTile& t);

/// Rotation by zeta^k (k even) about center.
PlacedTile rotate_tile(const Ring& ring, const PlacedTile& t,
                       const CycloInt& center, int k);
PlacedTile translate_tile(const PlacedTile& t, const CycloInt& v);

/// Undirected unit edge, stored with its even direction index.
struct EdgeKey {
  CycloInt start;
  int dir = 0;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};
EdgeKey edge_key(const Ring& ring, const CycloInt& start, int dir);

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    return e.start.hash() * 31 + static_cast<std::size_t>(e.dir);
  }
};

/// The four edges of a tile, each with the side (true = left of the even
/// direction) on which the tile lies.
std::array<std::pair<EdgeKey, bool>, 4> tile_edges(const Ring& ring,
                                                   const PlacedTile& t);

/// A finite set of placed tiles, kept sorted. Construction does not check
/// disjointness; call validate() for that.
class Patch {
 public:
  explicit Patch(const Ring& ring) : ring_(&ring) {}
  Patch(const Ring& ring, std::vector<PlacedTile> tiles);

  const Ring& ring() const { return *ring_; }
  int n() const { return ring_->n(); }
  const std::vector<PlacedTile>& tiles() const { return tiles_; }
  std::size_t size() const { return tiles_.size(); }
  bool empty() const { return tiles_.empty(); }
  bool contains(const PlacedTile& t) const;
  /// Index of t in tiles(), if present.
  std::optional<std::size_t> index_of(const PlacedTile& t) const;

  void insert(const PlacedTile& t);
  bool erase(const PlacedTile& t);

  /// Throws OverlapError if two tiles have overlapping interiors, an edge is
  /// shared by more than two tiles or by two tiles on the same side, or two
  /// tiles meet along part of an edge.
  void validate() const;

  /// Edges used by exactly one tile.
  std::vector<EdgeKey> boundary_edges() const;
  /// Number of tiles using each edge.
  std::map<EdgeKey, int> edge_usage() const;
  std::map<int, std::size_t> label_counts() const;
  /// Sum of tile areas.
  double area() const;

  friend bool operator==(const Patch& a, const Patch& b) {
    return a.ring_->n() == b.ring_->n() && a.tiles_ == b.tiles_;
  }

 private:
  const Ring* ring_;
  std::vector<PlacedTile> tiles_;
};

/// Checks that the support of `patch` is the region enclosed by `walk`:
/// segments traversed once are exactly the patch's once-used edges, doubled
/// segments are used an even number of times, and the areas agree. Returns
/// an empty string on success, otherwise a description of the first
/// mismatch.
std::string support_mismatch(const Patch& patch, const ClosedWalk& walk);

/// Builds one tiling of the region inside a boundary that passes the KSK
/// check. Throws UntilableError otherwise.
Patch construct_tiling(const Boundary& b);
Patch construct_tiling(const ClosedWalk& walk);

struct Enumeration {
  std::vector<Patch> tilings;
  bool truncated = false;  // stopped at the cap
};

/// Exhaustive backtracking over edge-to-edge tilings of the region inside
/// `walk` (a good curve of either orientation). Stops after `cap` tilings.
/// Throws std::invalid_argument if the region needs more than max_tiles
/// tiles.
Enumeration enumerate_tilings(const ClosedWalk& walk, std::size_t cap,
                              std::size_t max_tiles = 400);
inline Enumeration enumerate_tilings(const Boundary& b, std::size_t cap,
                                     std::size_t max_tiles = 400) {
  return enumerate_tilings(b.walk(), cap, max_tiles);
}

/// A family of tiles linked through shared edges of one direction class.
struct PatchPseudoline {
  int direction_class = 0;       // in [0, n)
  std::vector<std::size_t> tiles;  // indices into Patch::tiles(), in order
  std::array<EdgeKey, 2> ends;   // the boundary edges where it exits
};

struct PatchArrangement {
  std::vector<PatchPseudoline> lines;
  /// For every tile, the two lines through it.
  std::vector<std::array<std::size_t, 2>> lines_of_tile;
  std::size_t crossing_count() const { return lines_of_tile.size(); }
};

/// Pseudolines of a simply connected patch. Throws std::invalid_argument
/// for patches with holes.
PatchArrangement pseudolines_of_patch(const Patch& patch);

}  // namespace rhomb
