#pragma once

// Tilability of the region inside a closed walk via pseudoline pairing and
// the angle test on crossing pairs.
//
// Labeling convention: the walk is read counterclockwise and each segment is
// labeled by the direction index it is traversed in. A pseudoline joins two
// segments of one direction class traversed in opposite senses (labels j
// and j+n). For crossing lines with endpoints interleaved a, b, a', b' in
// the counterclockwise order, the rhomb at their crossing has angle
// (label(b) - label(a)) mod 2n at one corner; the region is tilable iff every
// such angle lies strictly between 0 and n.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rhomb/boundary.hpp"

namespace rhomb {

class PairingError : public std::logic_error {
  using std::logic_error::logic_error;
};

struct Pseudoline {
  std::size_t a = 0;  // positions in the counterclockwise labeling, a < b
  std::size_t b = 0;
  int direction_class = 0;
};

struct PseudolinePairing {
  explicit PseudolinePairing(ClosedWalk w) : ccw(std::move(w)) {}

  ClosedWalk ccw;             // the walk, counterclockwise
  std::vector<int> labels;    // label of each position
  std::vector<Pseudoline> lines;
  std::vector<std::size_t> line_at;  // line index of each position
  /// Position in `ccw` of step k of the walk the pairing was built from.
  std::vector<std::size_t> position_of_step;
};

struct Crossing {
  std::size_t first = 0;   // line indices, first < second
  std::size_t second = 0;
  int angle = 0;           // in (0, 2n), units of pi/n
};

/// Non-crossing matching within each direction class. Throws PairingError if
/// a class has unequal counts of the two senses or the senses are not in two
/// contiguous runs around the walk.
PseudolinePairing pair_segments(const ClosedWalk& walk);
inline PseudolinePairing pair_segments(const Boundary& b) {
  return pair_segments(b.walk());
}

/// Whether two lines' endpoints interleave.
bool lines_cross(const Pseudoline& p, const Pseudoline& q);
/// Rhomb angle at the crossing of two interleaving lines.
int crossing_angle(const PseudolinePairing& p, std::size_t first,
                   std::size_t second, int n);

std::vector<Crossing> crossings(const PseudolinePairing& p);

/// True iff every crossing angle lies strictly inside (0, n).
bool ksk_check(const PseudolinePairing& p);
bool ksk_check(const ClosedWalk& walk);
inline bool ksk_check(const Boundary& b) { return ksk_check(b.walk()); }

}  // namespace rhomb
