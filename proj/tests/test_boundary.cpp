#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "rhomb/boundary.hpp"

using namespace rhomb;

namespace {

EdgeSequence seq(std::vector<int> t) { return EdgeSequence{std::move(t)}; }

double winding(const ClosedWalk& w, Vec2 q) {
  const Ring& ring = w.ring();
  double a = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    Vec2 p = ring.to_cartesian(w.point(k)), r = ring.to_cartesian(w.point(k + 1));
    double ax = p.x - q.x, ay = p.y - q.y, bx = r.x - q.x, by = r.y - q.y;
    a += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return a / (2 * std::numbers::pi);
}

}  // namespace

TEST_CASE("standard sequences") {
  CHECK(is_standard(seq({1, -1, 0}), 7));
  CHECK(is_standard(seq({0, 3, 1, 2, -1, -2, -3, 0}), 7));
  CHECK_FALSE(is_standard(seq({4, -4}), 7));
  CHECK_FALSE(is_standard(seq({1, 0}), 7));
  CHECK(is_standard(seq(testutil::kElevenfold), 11));
}

TEST_CASE("rotate_sequence") {
  CHECK(rotate_sequence(seq({1, -1, 0}), -2) == seq({-1, -3, -2}));
  CHECK(rotate_sequence(seq({1, -1, 0}), 0) == seq({1, -1, 0}));
  CHECK(rotate_sequence(seq({0}), 5) == seq({5}));
}

TEST_CASE("total") {
  const Ring& r7 = Ring::of(7);
  CHECK(total(r7, seq({0})) == r7.direction(0));
  Vec2 t = r7.to_cartesian(total(r7, seq({1, -1, 0})));
  CHECK(t.x == doctest::Approx(1 + 2 * std::cos(std::numbers::pi / 7)));
  CHECK(std::abs(t.y) < 1e-12);
  const Ring& r11 = Ring::of(11);
  Vec2 big = r11.to_cartesian(total(r11, seq(testutil::kElevenfold)));
  CHECK(std::hypot(big.x, big.y) == doctest::Approx(27.2004).epsilon(1e-5));
  CHECK(std::abs(big.y) < 1e-12);
  // exact: T(s) is fixed by conjugation
  CHECK(r11.conj(total(r11, seq(testutil::kElevenfold))) ==
        total(r11, seq(testutil::kElevenfold)));
  for (int j = -5; j <= 5; ++j)
    CHECK(total(r7, rotate_sequence(seq({1, -1, 0}), j)) ==
          r7.rotate(total(r7, seq({1, -1, 0})), j));
}

TEST_CASE("T(s) is real only for symmetric sequences") {
  // sum zero alone does not put T(s) on the x-axis
  const Ring& r7 = Ring::of(7);
  CHECK(is_standard(seq({2, -1, -1}), 7));
  CHECK(std::abs(r7.to_cartesian(total(r7, seq({2, -1, -1}))).y) > 0.05);
  CHECK(r7.conj(total(r7, seq({3, -3, 1, -1, 0}))) == total(r7, seq({3, -3, 1, -1, 0})));
}

TEST_CASE("parse and format") {
  CHECK(parse_sequence("1,-1,0") == seq({1, -1, 0}));
  CHECK(parse_sequence(" ( 1, -1 , 0 ) ") == seq({1, -1, 0}));
  CHECK(format_sequence(seq({0, 3, -2})) == "0,3,-2");
  CHECK_THROWS_AS(parse_sequence("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sequence("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sequence(""), std::invalid_argument);
}

TEST_CASE("canonical orientation") {
  CHECK(canonical_orientation(7, 0) == 0);
  CHECK(canonical_orientation(7, 1) == 8);
  CHECK(canonical_orientation(7, 9) == 2);
  for (int n : {5, 7, 11})
    for (int k = 0; k < 2 * n; ++k) {
      CHECK(canonical_orientation(n, k) == canonical_orientation(n, (k + n) % (2 * n)));
      CHECK(canonical_orientation(n, k) % 2 == 0);
      CHECK(canonical_orientation(n, k) % n == k % n);
    }
}

TEST_CASE("boundary geometry") {
  const Ring& r7 = Ring::of(7);
  Boundary unit = build_boundary(r7, seq({0}), 2);
  CHECK(unit.walk().size() == 4);
  CHECK(build_boundary(r7, seq({1, -1, 0}), 4).walk().size() == 12);
  CHECK(build_boundary(r7, seq({0, 3, 1, 2, -1, -2, -3, 0}), 4).walk().size() == 32);
  CHECK_THROWS_AS(build_boundary(r7, seq({4, -4}), 2), std::invalid_argument);
  CHECK_THROWS_AS(build_boundary(r7, seq({0}), 3), std::invalid_argument);
  CHECK_THROWS_AS(build_boundary(r7, seq({0}), 8), std::invalid_argument);

  std::mt19937 rng(3);
  for (int n : {5, 7, 11}) {
    const Ring& ring = Ring::of(n);
    const int half = n / 2;
    std::uniform_int_distribution<int> term(-half, half);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> t;
      int sum = 0;
      for (int j = 0; j < 5; ++j) {
        t.push_back(term(rng));
        sum += t.back();
      }
      if (std::abs(sum) > half) continue;
      t.push_back(-sum);
      const EdgeSequence s{t};
      REQUIRE(is_standard(s, n));
      const CycloInt T = total(ring, s);
      for (int label : prototile_labels(n)) {
        Boundary b = build_boundary(ring, s, label);
        const CycloInt Ti = total(ring, rotate_sequence(s, -label));
        CHECK(b.corners()[0] == CycloInt{});
        CHECK(b.corners()[1] == T);
        CHECK(b.corners()[2] == T + Ti);
        CHECK(b.corners()[3] == Ti);
        const Vec2 tv = ring.to_cartesian(T);
        const double lambda = std::hypot(tv.x, tv.y);
        CHECK(b.enclosed_area() == doctest::Approx(lambda * lambda *
                                                   std::sin(label * std::numbers::pi / n))
                                       .epsilon(1e-9));
        for (int side = 0; side < 4; ++side) {
          const auto& c = b.chain(static_cast<Boundary::Side>(side));
          for (std::size_t k = 1; k < c.size(); ++k)
            CHECK(c[k].start == c[k - 1].start + ring.direction(c[k - 1].dir));
        }
        const auto& bottom = b.chain(Boundary::kBottom);
        const auto& top = b.chain(Boundary::kTop);
        const auto& left = b.chain(Boundary::kLeft);
        const auto& right = b.chain(Boundary::kRight);
        for (std::size_t k = 0; k < bottom.size(); ++k) {
          CHECK(top[k].start == bottom[k].start + Ti);
          CHECK(top[k].dir == bottom[k].dir);
          CHECK(right[k].start == left[k].start + T);
          CHECK(right[k].dir == left[k].dir);
        }
      }
    }
  }
}

TEST_CASE("prototile labels") {
  CHECK(prototile_labels(7) == std::vector<int>{2, 4, 6});
  CHECK(prototile_labels(11) == std::vector<int>{2, 4, 6, 8, 10});
}

TEST_CASE("good curves with backtracking and repeated segments") {
  const Ring& r7 = Ring::of(7);
  CHECK(is_good_curve(build_boundary(r7, seq({1, -1, 0}), 6)));
  CHECK(is_good_curve(build_boundary(r7, seq({1, -1, 0}), 2)));
  CHECK(is_good_curve(build_boundary(r7, seq({1, -1, 0}), 4)));
  CHECK(is_good_curve(build_boundary(r7, seq({0, 3, 1, 2, -1, -2, -3, 0}), 4)));
  // the label 6 curve doubles back on itself
  const ClosedWalk& w = build_boundary(r7, seq({1, -1, 0}), 6).walk();
  bool doubled = false;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b)
      if (w.point(a) == w.point(b + 1) && w.point(a + 1) == w.point(b)) doubled = true;
  CHECK(doubled);
}

TEST_CASE("bad curves") {
  const Ring& r7 = Ring::of(7);
  // rhomb plus a spike through one of its edges
  ClosedWalk spike(r7, CycloInt{}, {0, 5, 7, 12, 2, 9});
  CHECK_FALSE(is_good_curve(spike));
  // figure eight through a vertex, one lobe each way
  ClosedWalk eight(r7, CycloInt{}, {0, 2, 7, 9, 9, 7, 2, 0});
  auto res = check_good_curve(eight);
  CHECK_FALSE(res);
  CHECK(res.failure == GoodCurveResult::Failure::kVertexOrder);
  // two lobes touching at a vertex, both counterclockwise
  ClosedWalk bowtie(r7, CycloInt{}, {0, 2, 7, 9, 7, 9, 0, 2});
  CHECK(is_good_curve(bowtie));
  // the same segment twice in the same direction
  ClosedWalk twice(r7, CycloInt{}, {0, 2, 7, 9, 0, 2, 7, 9});
  CHECK(check_good_curve(twice).failure ==
        GoodCurveResult::Failure::kSameOrientationOverlap);
  CHECK_THROWS_AS(ClosedWalk(r7, CycloInt{}, {0, 2}), std::invalid_argument);
}

TEST_CASE("good curves have winding numbers 0 or 1") {
  // fuzz comparison of the local test with a global invariant: the region of
  // a good curve is covered once, so no point has winding number beyond 0/1
  std::mt19937 rng(11);
  int good = 0;
  for (int n : {5, 7}) {
    const Ring& ring = Ring::of(n);
    const int half = n / 2;
    std::uniform_int_distribution<int> term(-half, half);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<int> t;
      int sum = 0;
      for (int j = 0; j < 4; ++j) {
        t.push_back(term(rng));
        sum += t.back();
      }
      if (std::abs(sum) > half) continue;
      t.push_back(-sum);
      for (int label : prototile_labels(n)) {
        Boundary b = build_boundary(ring, EdgeSequence{t}, label);
        if (!is_good_curve(b)) continue;
        ++good;
        std::uniform_real_distribution<double> coord(-8, 8);
        for (int q = 0; q < 200; ++q) {
          double wn = winding(b.walk(), {coord(rng), coord(rng)});
          // clockwise traversal: inside has winding -1
          long r = std::lround(wn);
          CHECK((r == 0 || r == -1));
        }
      }
    }
  }
  CHECK(good > 0);
}
