#pragma once

#include <vector>

#include "rhomb/boundary.hpp"

namespace testutil {

// Unit zonogon over the given directions (counterclockwise order).
inline rhomb::ClosedWalk zonogon(const rhomb::Ring& ring, std::vector<int> dirs) {
  std::vector<int> walk = dirs;
  for (int d : dirs) walk.push_back(d + ring.n());
  return rhomb::ClosedWalk(ring, rhomb::CycloInt{}, walk);
}

// 35-term sequence with a tilable elevenfold substitution, lambda ~ 27.2004.
inline const std::vector<int> kElevenfold = {
    -1, 1, -3, 3, 0, 2, -2, -1, 1, 0, -5, 5, -3, 3, -1, 1, 4, -4,
    2, -2, 0, -1, 1, 2, -2, -3, 3, 0, 4, -4, -1, 1, 2, -2, 0};

}  // namespace testutil
