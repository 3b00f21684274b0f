#pragma once

// n-fold symmetry: stars of R_2 tiles, rotation invariance, corner R_2
// placement in substitution images, and fixed-point seeds.

#include <array>
#include <optional>
#include <vector>

#include "rhomb/substitution.hpp"
#include "rhomb/tiling.hpp"

namespace rhomb {

/// The n copies of R_2 with their small angle at center, spanned by
/// e_{2k+phase} and e_{2k+2+phase}. The two phases give the two stars at a
/// point.
Patch make_star(const Ring& ring, const CycloInt& center, int phase = 0);

/// The R_2 tiles of p with their small angle at center.
Patch star_tiles(const Patch& p, const CycloInt& center);

/// Vertices where exactly n R_2 tiles meet and the n tiles are invariant
/// under rotation by 2pi/n about the vertex. Sorted.
std::vector<CycloInt> find_stars(const Patch& p);

/// Rotation by 2pi/n about center maps the tile set onto itself.
bool is_rotation_invariant(const Patch& p, const CycloInt& center);

/// Rotation of order `order` (an odd divisor of n) about the centroid of
/// the patch's vertices. The centre need not be a lattice point.
bool is_centrally_invariant(const Patch& p, int order);

struct CornerFlags {
  int label = 0;
  /// Corners 0, T(s), T(s)+T(s(-i)), T(s(-i)) of the image: an R_2 has its
  /// small angle there.
  std::array<bool, 4> corners{};
  /// An R_2 has a vertex there, at either angle.
  std::array<bool, 4> touching{};
};

struct InvariantCenter {
  int label = 0;
  Vec2 center;
  int order = 1;  // largest odd divisor d of n with d-fold symmetry
};

struct StarHit {
  int label = 0;
  CycloInt center;
};

struct SymmetryReport {
  int n = 0;
  std::vector<StarHit> stars;             // stars in sigma(R_i)
  std::vector<CornerFlags> corner_flags;  // per label
  std::vector<InvariantCenter> invariant_centers;
  std::vector<StarHit> second_stars;      // stars in sigma^2(R_i), depth 2 only
};

/// Whether the image of `label` has an R_2 with its small angle at each
/// corner of the s-boundary.
CornerFlags corner_flags(const Substitution& sub, int label);

SymmetryReport corner_report(const Substitution& sub, int depth = 1);

struct FixedPoint {
  int k = 0;
  CycloInt translation;       // seed + translation lies inside sigma^k(seed)
  bool fixes_center = false;  // center + translation = T(s)^k center
};

/// Smallest k <= max_depth with a translate of seed inside sigma^k(seed),
/// preferring the translate that sends center to its image. Throws
/// std::invalid_argument unless seed is rotation invariant about center.
std::optional<FixedPoint> grow_fixed_point(const Substitution& sub, const Patch& seed,
                                           const CycloInt& center, int max_depth);

}  // namespace rhomb
