#pragma once

// Best-first search over single flips, for scripting edits in tests.

#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "rhomb/flips.hpp"

namespace testutil {

// Sites to flip, in order, turning `start` into a patch satisfying `goal`.
// States with a higher score are expanded first.
inline std::optional<std::vector<rhomb::FlipSite>> flip_path(
    const rhomb::Patch& start, const std::function<bool(const rhomb::Patch&)>& goal,
    const std::function<int(const rhomb::Patch&)>& score, std::size_t cap) {
  using rhomb::Patch;
  struct Node {
    Patch patch;
    long parent;
    std::optional<rhomb::FlipSite> via;
  };
  std::vector<Node> nodes{{start, -1, std::nullopt}};
  std::map<std::vector<rhomb::PlacedTile>, bool> seen{{start.tiles(), true}};
  std::priority_queue<std::pair<int, long>> open;
  open.push({score(start), 0});
  for (std::size_t expanded = 0; !open.empty() && expanded < cap; ++expanded) {
    const long at = open.top().second;
    open.pop();
    if (goal(nodes[at].patch)) {
      std::vector<rhomb::FlipSite> path;
      for (long k = at; nodes[k].parent >= 0; k = nodes[k].parent) path.push_back(*nodes[k].via);
      return std::vector<rhomb::FlipSite>(path.rbegin(), path.rend());
    }
    for (const auto& site : rhomb::find_flips(nodes[at].patch)) {
      Patch next = rhomb::apply_flip(nodes[at].patch, site);
      if (!seen.emplace(next.tiles(), true).second) continue;
      const int s = score(next);
      nodes.push_back({std::move(next), at, site});
      open.push({s, static_cast<long>(nodes.size() - 1)});
    }
  }
  return std::nullopt;
}

}  // namespace testutil
