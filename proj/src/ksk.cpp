#include "rhomb/ksk.hpp"

#include <string>

namespace rhomb {

PseudolinePairing pair_segments(const ClosedWalk& walk) {
  const bool flip = walk.signed_area() < 0;
  PseudolinePairing p(flip ? walk.reversed() : walk);
  const Ring& ring = walk.ring();
  const int n = ring.n();
  const std::size_t len = p.ccw.size();

  p.labels.assign(p.ccw.directions().begin(), p.ccw.directions().end());
  p.position_of_step.resize(len);
  for (std::size_t k = 0; k < len; ++k)
    p.position_of_step[k] = flip ? len - 1 - k : k;
  p.line_at.assign(len, 0);

  std::vector<std::vector<std::size_t>> by_class(n);
  for (std::size_t k = 0; k < len; ++k) by_class[p.labels[k] % n].push_back(k);

  for (int cls = 0; cls < n; ++cls) {
    const auto& pos = by_class[cls];
    if (pos.empty()) continue;
    const std::size_t m = pos.size();
    // sense: true for label == cls, false for cls + n
    auto sense = [&](std::size_t idx) { return p.labels[pos[idx]] == cls; };
    std::size_t forward = 0;
    for (std::size_t i = 0; i < m; ++i) forward += sense(i) ? 1 : 0;
    if (2 * forward != m)
      throw PairingError("direction class " + std::to_string(cls) +
                         " has unbalanced senses");
    // start of the forward run: a forward entry preceded by a backward one
    std::size_t start = m;
    std::size_t runs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (sense(i) && !sense((i + m - 1) % m)) {
        start = i;
        ++runs;
      }
    }
    if (runs != 1)
      throw PairingError("direction class " + std::to_string(cls) +
                         " has interleaved senses");
    // forward run occupies start .. start+h-1, backward run the rest; pair
    // them nested from the junction outwards
    const std::size_t h = m / 2;
    for (std::size_t t = 0; t < h; ++t) {
      std::size_t u = pos[(start + h - 1 - t) % m];
      std::size_t v = pos[(start + h + t) % m];
      if (u > v) std::swap(u, v);
      p.line_at[u] = p.line_at[v] = p.lines.size();
      p.lines.push_back({u, v, cls});
    }
  }
  return p;
}

bool lines_cross(const Pseudoline& p, const Pseudoline& q) {
  const bool a_in = p.a < q.a && q.a < p.b;
  const bool b_in = p.a < q.b && q.b < p.b;
  return a_in != b_in;
}

int crossing_angle(const PseudolinePairing& p, std::size_t first,
                   std::size_t second, int n) {
  const Pseudoline& l1 = p.lines[first];
  const Pseudoline& l2 = p.lines[second];
  // the endpoint of l2 that follows l1.a counterclockwise
  const std::size_t next = (l1.a < l2.a && l2.a < l1.b) ? l2.a : l2.b;
  int angle = (p.labels[next] - p.labels[l1.a]) % (2 * n);
  return angle < 0 ? angle + 2 * n : angle;
}

std::vector<Crossing> crossings(const PseudolinePairing& p) {
  const int n = p.ccw.ring().n();
  std::vector<Crossing> out;
  for (std::size_t i = 0; i < p.lines.size(); ++i)
    for (std::size_t j = i + 1; j < p.lines.size(); ++j)
      if (lines_cross(p.lines[i], p.lines[j]))
        out.push_back({i, j, crossing_angle(p, i, j, n)});
  return out;
}

bool ksk_check(const PseudolinePairing& p) {
  const int n = p.ccw.ring().n();
  for (std::size_t i = 0; i < p.lines.size(); ++i)
    for (std::size_t j = i + 1; j < p.lines.size(); ++j) {
      if (!lines_cross(p.lines[i], p.lines[j])) continue;
      const int angle = crossing_angle(p, i, j, n);
      if (angle <= 0 || angle >= n) return false;
    }
  return true;
}

bool ksk_check(const ClosedWalk& walk) { return ksk_check(pair_segments(walk)); }

}  // namespace rhomb
