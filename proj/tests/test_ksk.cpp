#include "doctest.h"
#include "helpers.hpp"
#include "rhomb/ksk.hpp"

using namespace rhomb;

namespace {
EdgeSequence seq(std::vector<int> t) { return EdgeSequence{std::move(t)}; }
const std::vector<int> kFig3 = {0, 3, 1, 2, -1, -2, -3, 0};
}  // namespace

TEST_CASE("pairing sizes") {
  const Ring& r7 = Ring::of(7);
  CHECK(pair_segments(build_boundary(r7, seq({0}), 2)).lines.size() == 2);
  CHECK(pair_segments(build_boundary(r7, seq({1, -1, 0}), 2)).lines.size() == 6);
  CHECK(pair_segments(build_boundary(r7, seq(kFig3), 4)).lines.size() == 16);
}

TEST_CASE("pairing invariants") {
  for (int n : {5, 7, 11}) {
    const Ring& ring = Ring::of(n);
    for (const auto& s : {seq({0}), seq({1, -1, 0}), seq({2, -1, 1, -2}),
                          seq({-1, 1, 2, -2, 0})}) {
      for (int label : prototile_labels(n)) {
        Boundary b = build_boundary(ring, s, label);
        if (!is_good_curve(b)) continue;
        auto p = pair_segments(b);
        CHECK(p.lines.size() == 2 * s.size());
        for (const auto& l : p.lines) {
          CHECK(l.a < l.b);
          CHECK(ring.wrap(p.labels[l.a] - p.labels[l.b]) == n);
          CHECK(p.labels[l.a] % n == l.direction_class);
        }
        // same-class lines never cross
        for (std::size_t i = 0; i < p.lines.size(); ++i)
          for (std::size_t j = 0; j < p.lines.size(); ++j)
            if (i != j && p.lines[i].direction_class == p.lines[j].direction_class)
              CHECK_FALSE(lines_cross(p.lines[i], p.lines[j]));
        // crossing is symmetric
        for (std::size_t i = 0; i < p.lines.size(); ++i)
          for (std::size_t j = 0; j < p.lines.size(); ++j)
            CHECK(lines_cross(p.lines[i], p.lines[j]) == lines_cross(p.lines[j], p.lines[i]));
      }
    }
  }
}

TEST_CASE("crossings") {
  const Ring& r7 = Ring::of(7);
  auto single = crossings(pair_segments(build_boundary(r7, seq({0}), 2)));
  REQUIRE(single.size() == 1);
  CHECK((single[0].angle == 2 || single[0].angle == 5));
  for (int label : {4, 6}) {
    auto c = crossings(pair_segments(build_boundary(r7, seq({0}), label)));
    REQUIRE(c.size() == 1);
    CHECK((c[0].angle == label || c[0].angle == 7 - label));
  }
  CHECK(crossings(pair_segments(build_boundary(r7, seq({1, -1, 0}), 2))).size() == 8);
}

TEST_CASE("pass and fail anchors") {
  const Ring& r7 = Ring::of(7);
  for (int label : {2, 4, 6}) {
    CHECK(ksk_check(build_boundary(r7, seq({1, -1, 0}), label)));
    CHECK(ksk_check(build_boundary(r7, seq({0}), label)));
  }
  CHECK_FALSE(ksk_check(build_boundary(r7, seq(kFig3), 4)));
}

TEST_CASE("ksk on the elevenfold sequence") {
  const Ring& r11 = Ring::of(11);
  for (int label : prototile_labels(11)) {
    Boundary b = build_boundary(r11, EdgeSequence{testutil::kElevenfold}, label);
    CHECK(is_good_curve(b));
    CHECK(ksk_check(b));
  }
}

TEST_CASE("ksk on zonogons") {
  const Ring& r7 = Ring::of(7);
  CHECK(ksk_check(testutil::zonogon(r7, {0, 2, 4})));
  CHECK(ksk_check(testutil::zonogon(r7, {0, 2, 4, 6}).reversed()));
  CHECK(crossings(pair_segments(testutil::zonogon(r7, {0, 2, 4, 6}))).size() == 6);
}

TEST_CASE("unbalanced walk is a pairing error") {
  const Ring& r7 = Ring::of(7);
  // triangle-free closed walk whose class 0 senses interleave
  ClosedWalk w(r7, CycloInt{}, {0, 2, 7, 9, 0, 2, 7, 9});
  CHECK_THROWS_AS(pair_segments(w), PairingError);
}
