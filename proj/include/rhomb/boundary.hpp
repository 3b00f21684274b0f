#pragma once

// Edge sequences, closed unit-segment walks, and s-boundaries of the
// prototiles.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rhomb/cyclo.hpp"

namespace rhomb {

struct EdgeSequence {
  std::vector<int> terms;

  std::size_t size() const { return terms.size(); }
  friend bool operator==(const EdgeSequence&, const EdgeSequence&) = default;
  friend auto operator<=>(const EdgeSequence&, const EdgeSequence&) = default;
};

/// Sum zero and every |k| < n/2.
bool is_standard(const EdgeSequence& seq, int n);
/// (k_i + j).
EdgeSequence rotate_sequence(const EdgeSequence& seq, int j);
/// Sum of e_k over the terms.
CycloInt total(const Ring& ring, const EdgeSequence& seq);

/// Comma separated integers, e.g. "1,-1,0".
std::string format_sequence(const EdgeSequence& seq);
/// Inverse of format_sequence; whitespace is ignored. Throws
/// std::invalid_argument on malformed input.
EdgeSequence parse_sequence(std::string_view text);

/// The orientation every segment of the given direction class carries: the
/// even index among {k, k+n} (mod 2n).
int canonical_orientation(int n, int direction);

/// Unit segment from start to start + e_dir.
struct Segment {
  CycloInt start;
  int dir = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// A closed path of directed unit segments. Segment k ends where segment
/// k+1 starts, and the last ends at the first start.
class ClosedWalk {
 public:
  ClosedWalk(const Ring& ring, CycloInt start, std::vector<int> directions);

  const Ring& ring() const { return *ring_; }
  std::size_t size() const { return dirs_.size(); }
  bool empty() const { return dirs_.empty(); }
  int dir(std::size_t k) const { return dirs_[k]; }
  const std::vector<int>& directions() const { return dirs_; }
  /// Start of segment k (k in [0, size]); point(size) == point(0).
  const CycloInt& point(std::size_t k) const { return points_[k]; }
  Segment segment(std::size_t k) const { return {points_[k], dirs_[k]}; }

  /// The same curve traversed backwards.
  ClosedWalk reversed() const;
  /// Shoelace area, positive for counterclockwise traversal.
  double signed_area() const;

 private:
  const Ring* ring_;
  std::vector<int> dirs_;
  std::vector<CycloInt> points_;
};

/// The s-boundary of prototile R_label. Chains are stored in their positive
/// sense; the closed traversal runs bottom and right forwards, then top and
/// left backwards, which is clockwise.
class Boundary {
 public:
  enum Side { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

  const Ring& ring() const { return *ring_; }
  int n() const { return ring_->n(); }
  int label() const { return label_; }
  const EdgeSequence& sequence() const { return seq_; }
  const std::vector<Segment>& chain(Side side) const { return chains_[side]; }
  /// 0, T(s), T(s) + T(s(-i)), T(s(-i)) in traversal order.
  const std::array<CycloInt, 4>& corners() const { return corners_; }

  /// The closed traversal (clockwise).
  const ClosedWalk& walk() const { return walk_; }
  /// Which side each traversal step belongs to.
  Side side_of_step(std::size_t k) const {
    return static_cast<Side>(k / seq_.size());
  }
  /// Area of the enclosed region (positive).
  double enclosed_area() const { return -walk_.signed_area(); }

 private:
  friend Boundary build_boundary(const Ring&, const EdgeSequence&, int);
  Boundary(const Ring& ring, EdgeSequence seq, int label,
           std::array<std::vector<Segment>, 4> chains,
           std::array<CycloInt, 4> corners, ClosedWalk walk);

  const Ring* ring_;
  EdgeSequence seq_;
  int label_;
  std::array<std::vector<Segment>, 4> chains_;
  std::array<CycloInt, 4> corners_;
  ClosedWalk walk_;
};

/// Requires a standard sequence and an even label in [2, n-1]; throws
/// std::invalid_argument otherwise.
Boundary build_boundary(const Ring& ring, const EdgeSequence& seq, int label);

/// The even labels 2, 4, ..., n-1.
std::vector<int> prototile_labels(int n);

/// Outcome of the good-curve test, with the reason if it failed.
struct GoodCurveResult {
  enum class Failure { kNone, kSameOrientationOverlap, kTripleOverlap,
                       kCrossing, kVertexOrder };
  Failure failure = Failure::kNone;
  std::size_t first = 0;   // offending step indices, where meaningful
  std::size_t second = 0;

  explicit operator bool() const { return failure == Failure::kNone; }
};

/// Checks that overlaps are exactly doubled, oppositely traversed segments
/// and that the doubled segments can be pulled apart so that every vertex
/// sees alternating in/out edges with no crossing passes.
GoodCurveResult check_good_curve(const ClosedWalk& walk);
inline bool is_good_curve(const ClosedWalk& walk) {
  return static_cast<bool>(check_good_curve(walk));
}
inline bool is_good_curve(const Boundary& b) { return is_good_curve(b.walk()); }

}  // namespace rhomb
