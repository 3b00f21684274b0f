#include <deque>
#include <map>

#include "doctest.h"
#include "rhomb/flips.hpp"
#include "rhomb/symmetry.hpp"

using namespace rhomb;

namespace {
EdgeSequence seq(std::vector<int> t) { return EdgeSequence{std::move(t)}; }

// corner query done directly from the tile list
bool r2_small_corner_at(const Patch& p, const CycloInt& c) {
  for (const auto& t : p.tiles()) {
    if (t.label != 2) continue;
    const auto v = tile_vertices(p.ring(), t);
    for (int k = 0; k < 4; ++k)
      if (v[k] == c && tile_corner_angle(p.n(), t, k) == 2) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("stars") {
  const Ring& r11 = Ring::of(11);
  Patch star = make_star(r11, CycloInt{});
  CHECK(star.size() == 11);
  CHECK_NOTHROW(star.validate());
  CHECK(find_stars(star) == std::vector<CycloInt>{CycloInt{}});
  CHECK(is_rotation_invariant(star, CycloInt{}));
  for (int k = 0; k < 22; ++k) CHECK_FALSE(is_rotation_invariant(star, r11.direction(k)));
  CHECK(find_stars(Patch(r11, {prototile(2)})).empty());

  // replacing one tile by an R_4 breaks it
  std::vector<PlacedTile> tiles = star.tiles();
  tiles[3] = tile_from_corner(r11, CycloInt{}, 0, 4);
  CHECK(find_stars(Patch(r11, tiles)).empty());

  // a star away from the origin, inside a larger patch
  const CycloInt c = r11.direction(3) * 2 + r11.direction(8);
  Patch moved = make_star(r11, c);
  CHECK(find_stars(moved) == std::vector<CycloInt>{c});
  for (const auto& t : moved.tiles()) CHECK(moved.contains(rotate_tile(r11, t, c, 2)));
  CHECK(is_centrally_invariant(moved, 11));
  CHECK(is_centrally_invariant(star, 11));
  CHECK_FALSE(is_centrally_invariant(Patch(r11, {prototile(2), prototile(4)}), 11));
  // a single rhomb has no odd-order symmetry but the trivial one
  CHECK(is_centrally_invariant(Patch(r11, {prototile(2)}), 1));
  CHECK_FALSE(is_centrally_invariant(Patch(r11, {prototile(2)}), 11));
}

TEST_CASE("identity substitution corners and fixed point") {
  const Ring& r7 = Ring::of(7);
  Substitution id = construct_substitution(r7, seq({0}));
  CornerFlags f = corner_flags(id, 2);
  // the prototile touches every corner, with its small angle at two of them
  CHECK(f.touching == std::array<bool, 4>{true, true, true, true});
  CHECK(f.corners == std::array<bool, 4>{true, false, true, false});
  Patch star = make_star(r7, CycloInt{});
  auto fp = grow_fixed_point(id, star, CycloInt{}, 3);
  REQUIRE(fp.has_value());
  CHECK(fp->k == 1);
  CHECK(fp->translation == CycloInt{});
  CHECK(fp->fixes_center);
  CHECK_THROWS_AS(grow_fixed_point(id, Patch(r7, {prototile(2)}), CycloInt{}, 2),
                  std::invalid_argument);
}

TEST_CASE("corner report matches a direct tile query") {
  const Ring& r7 = Ring::of(7);
  Substitution sub = construct_substitution(r7, seq({1, -1, 0}));
  SymmetryReport rep = corner_report(sub, 2);
  CHECK(rep.n == 7);
  REQUIRE(rep.corner_flags.size() == 3);
  for (const auto& f : rep.corner_flags) {
    Boundary b = build_boundary(r7, sub.seq, f.label);
    for (int c = 0; c < 4; ++c)
      CHECK(f.corners[c] == r2_small_corner_at(sub.image(f.label), b.corners()[c]));
  }
}

TEST_CASE("scripted flips place corner R_2 tiles and seed a star") {
  const Ring& r7 = Ring::of(7);
  Substitution sub = construct_substitution(r7, seq({1, -1, 0}));
  // breadth-first flips from the constructed draft until three corners carry R_2
  auto count = [&](const Patch& p) {
    Boundary b = build_boundary(r7, sub.seq, 2);
    int c = 0;
    for (const auto& corner : b.corners()) c += r2_small_corner_at(p, corner) ? 1 : 0;
    return c;
  };
  std::map<std::vector<PlacedTile>, int> seen;
  std::deque<std::pair<Patch, std::vector<std::size_t>>> queue;
  queue.push_back({sub.image(2), {}});
  seen[sub.image(2).tiles()] = 0;
  std::vector<std::size_t> script;
  bool found = false;
  while (!queue.empty() && !found) {
    auto [p, path] = queue.front();
    queue.pop_front();
    if (count(p) >= 3) {
      script = path;
      found = true;
      break;
    }
    auto sites = find_flips(p);
    for (std::size_t s = 0; s < sites.size(); ++s) {
      Patch q = apply_flip(p, sites[s]);
      if (seen.emplace(q.tiles(), 0).second) {
        auto next = path;
        next.push_back(s);
        queue.push_back({q, next});
      }
    }
  }
  REQUIRE(found);
  // replay the script through site indices
  Patch draft = sub.image(2);
  for (std::size_t s : script) draft = apply_flip(draft, find_flips(draft).at(s));
  CHECK(count(draft) >= 3);
  auto images = sub.images;
  images.insert_or_assign(2, draft);
  Substitution edited = make_substitution(r7, sub.seq, images);
  CornerFlags f = corner_flags(edited, 2);
  CHECK(f.corners[0]);

  // an R_2 in corner 0 of sigma(R_2) puts a star at the origin of the
  // image of any star there; that star is a fixed-point seed
  Patch image = substitute_patch(edited, make_star(r7, CycloInt{}));
  CHECK(find_stars(image) == std::vector<CycloInt>{CycloInt{}});
  Patch star = star_tiles(image, CycloInt{});
  CHECK(star.size() == 7);
  CHECK((star == make_star(r7, CycloInt{}, 0) || star == make_star(r7, CycloInt{}, 1)));
  image = substitute_patch(edited, star);
  auto fp = grow_fixed_point(edited, star, CycloInt{}, 2);
  REQUIRE(fp.has_value());
  CHECK(fp->k == 1);
  CHECK(fp->fixes_center);
  for (const auto& t : star.tiles()) CHECK(image.contains(translate_tile(t, fp->translation)));
  // the other phase maps onto this one and never back
  Patch other = make_star(r7, CycloInt{}, star == make_star(r7, CycloInt{}, 0) ? 1 : 0);
  CHECK_FALSE(grow_fixed_point(edited, other, CycloInt{}, 3).has_value());
  // the whole image is sevenfold symmetric about the star
  CHECK(is_rotation_invariant(image, CycloInt{}));
  SymmetryReport rep = corner_report(edited, 1);
  CHECK(rep.corner_flags[0].corners[0]);
}

TEST_CASE("corner R_2 tiles make stars in the image of a star") {
  // the even star meets its centre with prototile corner 0, the odd star
  // with corner 2, so sigma(star) has a star there iff that corner of
  // sigma(R_2) holds a small R_2 angle
  const Ring& r7 = Ring::of(7);
  Substitution sub = construct_substitution(r7, seq({1, -1, 0}));
  auto tilings = enumerate_tilings(build_boundary(r7, sub.seq, 2), 50).tilings;
  REQUIRE(tilings.size() == 3);
  int with_star = 0;
  for (const auto& t : tilings) {
    auto images = sub.images;
    images.insert_or_assign(2, t);
    Substitution s = make_substitution(r7, sub.seq, images);
    const CornerFlags f = corner_flags(s, 2);
    for (int phase : {0, 1}) {
      const auto stars = find_stars(substitute_patch(s, make_star(r7, CycloInt{}, phase)));
      const bool at_origin = std::find(stars.begin(), stars.end(), CycloInt{}) != stars.end();
      CHECK(at_origin == f.corners[2 * phase]);
      with_star += at_origin;
    }
  }
  CHECK(with_star > 0);
}
