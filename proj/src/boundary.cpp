#include "rhomb/boundary.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

#include "rhomb/geometry.hpp"

namespace rhomb {

bool is_standard(const EdgeSequence& seq, int n) {
  long sum = 0;
  for (int k : seq.terms) {
    if (2 * std::abs(k) >= n) return false;
    sum += k;
  }
  return sum == 0;
}

EdgeSequence rotate_sequence(const EdgeSequence& seq, int j) {
  EdgeSequence r = seq;
  for (int& k : r.terms) k += j;
  return r;
}

CycloInt total(const Ring& ring, const EdgeSequence& seq) {
  CycloInt t;
  for (int k : seq.terms) t += ring.direction(k);
  return t;
}

std::string format_sequence(const EdgeSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.terms.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seq.terms[i]);
  }
  return out;
}

EdgeSequence parse_sequence(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  // strip optional surrounding parentheses
  if (!compact.empty() && compact.front() == '(' && compact.back() == ')')
    compact = compact.substr(1, compact.size() - 2);
  EdgeSequence seq;
  if (compact.empty()) throw std::invalid_argument("empty edge sequence");
  std::size_t pos = 0;
  while (pos <= compact.size()) {
    std::size_t comma = compact.find(',', pos);
    if (comma == std::string::npos) comma = compact.size();
    std::string_view tok(compact.data() + pos, comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad edge sequence term '" +
                                  std::string(tok) + "'");
    seq.terms.push_back(v);
    pos = comma + 1;
  }
  return seq;
}

int canonical_orientation(int n, int direction) {
  int cls = ((direction % n) + n) % n;
  return cls % 2 == 0 ? cls : cls + n;
}

ClosedWalk::ClosedWalk(const Ring& ring, CycloInt start,
                       std::vector<int> directions)
    : ring_(&ring), dirs_(std::move(directions)) {
  points_.reserve(dirs_.size() + 1);
  points_.push_back(start);
  for (int& d : dirs_) {
    d = ring.wrap(d);
    points_.push_back(points_.back() + ring.direction(d));
  }
  if (points_.back() != points_.front())
    throw std::invalid_argument("walk does not close");
}

ClosedWalk ClosedWalk::reversed() const {
  std::vector<int> rev;
  rev.reserve(dirs_.size());
  for (std::size_t k = dirs_.size(); k-- > 0;)
    rev.push_back(dirs_[k] + ring_->n());
  return ClosedWalk(*ring_, points_.front(), std::move(rev));
}

double ClosedWalk::signed_area() const {
  double a = 0.0;
  for (std::size_t k = 0; k < dirs_.size(); ++k) {
    Vec2 p = ring_->to_cartesian(points_[k]);
    Vec2 q = ring_->to_cartesian(points_[k + 1]);
    a += p.x * q.y - q.x * p.y;
  }
  return a / 2.0;
}

Boundary::Boundary(const Ring& ring, EdgeSequence seq, int label,
                   std::array<std::vector<Segment>, 4> chains,
                   std::array<CycloInt, 4> corners, ClosedWalk walk)
    : ring_(&ring),
      seq_(std::move(seq)),
      label_(label),
      chains_(std::move(chains)),
      corners_(corners),
      walk_(std::move(walk)) {}

namespace {

std::vector<Segment> make_chain(const Ring& ring, CycloInt start,
                                const std::vector<int>& dirs) {
  std::vector<Segment> chain;
  chain.reserve(dirs.size());
  for (int d : dirs) {
    chain.push_back({start, ring.wrap(d)});
    start += ring.direction(d);
  }
  return chain;
}

}  // namespace

Boundary build_boundary(const Ring& ring, const EdgeSequence& seq, int label) {
  const int n = ring.n();
  if (!is_standard(seq, n))
    throw std::invalid_argument("edge sequence (" + format_sequence(seq) +
                                ") is not standard for n=" + std::to_string(n));
  if (label < 2 || label >= n || label % 2 != 0)
    throw std::invalid_argument("prototile label must be even in [2, n-1], got " +
                                std::to_string(label));

  const EdgeSequence turned = rotate_sequence(seq, -label);
  const CycloInt t = total(ring, seq);
  const CycloInt t_turned = total(ring, turned);

  std::array<std::vector<Segment>, 4> chains;
  chains[Boundary::kBottom] = make_chain(ring, CycloInt{}, seq.terms);
  chains[Boundary::kRight] = make_chain(ring, t, turned.terms);
  chains[Boundary::kTop] = make_chain(ring, t_turned, seq.terms);
  chains[Boundary::kLeft] = make_chain(ring, CycloInt{}, turned.terms);

  std::vector<int> dirs;
  dirs.reserve(4 * seq.size());
  for (int k : seq.terms) dirs.push_back(k);
  for (int k : turned.terms) dirs.push_back(k);
  for (auto it = seq.terms.rbegin(); it != seq.terms.rend(); ++it)
    dirs.push_back(*it + n);
  for (auto it = turned.terms.rbegin(); it != turned.terms.rend(); ++it)
    dirs.push_back(*it + n);

  std::array<CycloInt, 4> corners = {CycloInt{}, t, t + t_turned, t_turned};
  return Boundary(ring, seq, label, std::move(chains), corners,
                  ClosedWalk(ring, CycloInt{}, std::move(dirs)));
}

std::vector<int> prototile_labels(int n) {
  std::vector<int> labels;
  for (int i = 2; i < n; i += 2) labels.push_back(i);
  return labels;
}

// ---------------------------------------------------------------------------
// Good-curve test

namespace {

constexpr double kTouchEps = 1e-9;

struct HalfEdge {
  int dir;         // direction leaving the vertex
  bool out;        // walk leaves the vertex along this edge
  std::size_t step;
  int pair = -1;   // doubled-pair variable, or -1
  bool first_at_var_zero = false;  // position within the slot when var = 0
};

struct VertexInfo {
  std::vector<HalfEdge> edges;
  std::vector<int> vars;
};

// Alternation and non-crossing of passes around one vertex, for a given
// assignment of the doubled-pair variables.
bool vertex_ok(const VertexInfo& v, const std::vector<int>& assign,
               std::size_t walk_len) {
  if (v.edges.size() <= 2) return true;
  std::vector<const HalfEdge*> order;
  order.reserve(v.edges.size());
  for (const auto& e : v.edges) order.push_back(&e);
  auto first_in_slot = [&](const HalfEdge* e) {
    return e->first_at_var_zero == (assign[e->pair] == 0);
  };
  std::sort(order.begin(), order.end(),
            [&](const HalfEdge* a, const HalfEdge* b) {
              if (a->dir != b->dir) return a->dir < b->dir;
              // same direction only happens for the two copies of a doubled
              // segment
              return first_in_slot(a) && !first_in_slot(b);
            });
  const std::size_t m = order.size();
  for (std::size_t k = 0; k < m; ++k)
    if (order[k]->out == order[(k + 1) % m]->out) return false;

  // pass id: arriving step k pairs with leaving step k+1
  auto pass_of = [&](const HalfEdge* e) {
    return e->out ? e->step : (e->step + 1) % walk_len;
  };
  std::vector<std::pair<std::size_t, std::size_t>> chords;
  std::unordered_map<std::size_t, std::size_t> first_pos;
  for (std::size_t k = 0; k < m; ++k) {
    auto id = pass_of(order[k]);
    auto it = first_pos.find(id);
    if (it == first_pos.end())
      first_pos.emplace(id, k);
    else
      chords.emplace_back(it->second, k);
  }
  for (std::size_t a = 0; a < chords.size(); ++a)
    for (std::size_t b = a + 1; b < chords.size(); ++b) {
      auto [a0, a1] = chords[a];
      auto [b0, b1] = chords[b];
      bool b0_in = a0 < b0 && b0 < a1;
      bool b1_in = a0 < b1 && b1 < a1;
      if (b0_in != b1_in) return false;
    }
  return true;
}

}  // namespace

GoodCurveResult check_good_curve(const ClosedWalk& walk) {
  using F = GoodCurveResult::Failure;
  const Ring& ring = walk.ring();
  const std::size_t len = walk.size();
  const int n = ring.n();

  std::unordered_map<CycloInt, int> ids;
  std::vector<Vec2> coords;
  std::vector<int> vid(len + 1);
  for (std::size_t k = 0; k < len; ++k) {
    auto [it, fresh] = ids.emplace(walk.point(k), static_cast<int>(coords.size()));
    if (fresh) coords.push_back(ring.to_cartesian(walk.point(k)));
    vid[k] = it->second;
  }
  vid[len] = vid[0];

  // condition (1)
  std::vector<int> partner(len, -1);
  std::vector<std::pair<std::size_t, std::size_t>> doubled;
  for (std::size_t a = 0; a < len; ++a) {
    for (std::size_t b = a + 1; b < len; ++b) {
      const int a0 = vid[a], a1 = vid[a + 1], b0 = vid[b], b1 = vid[b + 1];
      if (a0 == b0 && a1 == b1) return {F::kSameOrientationOverlap, a, b};
      if (a0 == b1 && a1 == b0) {
        if (partner[a] != -1 || partner[b] != -1) return {F::kTripleOverlap, a, b};
        partner[a] = static_cast<int>(b);
        partner[b] = static_cast<int>(a);
        doubled.emplace_back(a, b);
        continue;
      }
      if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) continue;
      if (geom::segment_distance(coords[a0], coords[a1], coords[b0],
                                 coords[b1]) < kTouchEps)
        return {F::kCrossing, a, b};
    }
  }

  // condition (2): build the rotation system around each vertex
  std::vector<VertexInfo> verts(coords.size());
  std::vector<int> var_of_step(len, -1);
  for (std::size_t v = 0; v < doubled.size(); ++v) {
    var_of_step[doubled[v].first] = static_cast<int>(v);
    var_of_step[doubled[v].second] = static_cast<int>(v);
  }
  for (std::size_t k = 0; k < len; ++k) {
    const int var = var_of_step[k];
    // With var = 0 the lower-indexed copy is pushed to its right-hand side,
    // which puts the leaving copy first (clockwise-most) at both ends.
    HalfEdge out{walk.dir(k), true, k, var, true};
    HalfEdge in{ring.wrap(walk.dir(k) + n), false, k, var, false};
    verts[vid[k]].edges.push_back(out);
    verts[vid[k + 1]].edges.push_back(in);
    if (var >= 0) {
      verts[vid[k]].vars.push_back(var);
      verts[vid[k + 1]].vars.push_back(var);
    }
  }
  for (auto& v : verts) {
    std::sort(v.vars.begin(), v.vars.end());
    v.vars.erase(std::unique(v.vars.begin(), v.vars.end()), v.vars.end());
  }

  std::vector<int> assign(doubled.size(), 0);
  // vertices without doubled edges are independent of the assignment
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (verts[v].vars.empty() && !vertex_ok(verts[v], assign, len))
      return {F::kVertexOrder, static_cast<std::size_t>(v), 0};

  // vertices to check once variable `var` (their largest) is assigned
  std::vector<std::vector<int>> ready(doubled.size());
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (!verts[v].vars.empty()) ready[verts[v].vars.back()].push_back(static_cast<int>(v));

  // depth-first search over the side choices
  std::size_t depth = 0;
  std::vector<int> next(doubled.size(), 0);
  while (true) {
    if (depth == doubled.size()) return {};
    if (next[depth] > 1) {
      next[depth] = 0;
      if (depth == 0) return {F::kVertexOrder, 0, 0};
      --depth;
      continue;
    }
    assign[depth] = next[depth]++;
    bool ok = true;
    for (int v : ready[depth])
      if (!vertex_ok(verts[v], assign, len)) {
        ok = false;
        break;
      }
    if (ok) ++depth;
  }
}

}  // namespace rhomb
