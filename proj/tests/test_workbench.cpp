#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <httplib.h>

#include "doctest.h"
#include "flip_search.hpp"
#include "helpers.hpp"
#include "rhomb/document.hpp"
#include "rhomb/service.hpp"
#include "rhomb/session.hpp"
#include "rhomb/svg.hpp"

using namespace rhomb;
using nlohmann::json;

namespace {

EdgeSequence seq(std::vector<int> t) { return EdgeSequence{std::move(t)}; }

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t k = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++k;
  return k;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rhomb_" + name)).string();
}

DocumentError::Kind parse_kind(const std::string& text) {
  try {
    parse_document(text);
  } catch (const DocumentError& e) {
    return e.kind();
  }
  FAIL("document parsed");
  return DocumentError::Kind::kSyntax;
}

Reply call(EditSession& s, const std::string& method, const std::string& path,
           const json& body = json::object()) {
  return handle_request(s, method, path, body.empty() ? "" : body.dump());
}

// most R_2 small angles at one vertex
int star_score(const Patch& p) {
  std::unordered_map<CycloInt, int> count;
  int best = 0;
  for (const auto& t : p.tiles())
    if (t.label == 2) {
      const auto v = tile_vertices(p.ring(), t);
      best = std::max({best, ++count[v[0]], ++count[v[2]]});
    }
  return best;
}

}  // namespace

TEST_CASE("identity document") {
  const Ring& r7 = Ring::of(7);
  Substitution id = construct_substitution(r7, seq({0}));
  const std::string text = serialize(id);
  CHECK(text.find("\"sequence\": [0]") != std::string::npos);
  CHECK(count_of(text, "{\"label\"") == 3);
  CHECK(text == serialize(id));
  SubstitutionDocument back = parse_document(text);
  CHECK(same_substitution(back.sub, id));
  CHECK(serialize(back.sub) == text);
  CHECK_FALSE(back.metadata.author.has_value());
  // field order is fixed
  CHECK(text.find("format_version") < text.find("\"n\""));
  CHECK(text.find("\"n\"") < text.find("sequence"));
  CHECK(text.find("sequence") < text.find("images"));
}

TEST_CASE("constructed document round trip with metadata") {
  const Ring& r7 = Ring::of(7);
  Substitution sub = construct_substitution(r7, seq({1, -1, 0}));
  DocumentMetadata meta{"a \"quoted\" author", "line one\nline two"};
  const std::string text = serialize(sub, meta);
  SubstitutionDocument back = parse_document(text);
  CHECK(same_substitution(back.sub, sub));
  CHECK(back.metadata == meta);
  CHECK(serialize(back.sub, back.metadata) == text);
  CHECK(back.sub.scale == sub.scale);

  const std::string path = temp_path("doc.json");
  save_document(path, sub, meta);
  CHECK(read_file(path) == text);
  CHECK(same_substitution(load_document(path).sub, sub));
  std::filesystem::remove(path);

  // n = 11 tiles keep their ten coefficients
  const Ring& r11 = Ring::of(11);
  Substitution s11 = construct_substitution(r11, seq(testutil::kElevenfold));
  CHECK(same_substitution(parse_document(serialize(s11)).sub, s11));
}

TEST_CASE("document errors") {
  const Ring& r7 = Ring::of(7);
  Substitution id = construct_substitution(r7, seq({0}));

  SUBCASE("off-support tile names the label") {
    Substitution bad = id;
    const PlacedTile t = bad.image(4).tiles().front();
    bad.images.insert_or_assign(4, Patch(r7, {translate_tile(t, r7.direction(0))}));
    try {
      parse_document(serialize(bad));
      FAIL("accepted");
    } catch (const DocumentError& e) {
      CHECK(e.kind() == DocumentError::Kind::kInvariant);
      CHECK(e.label() == 4);
      CHECK(e.where() == "images.4");
    }
  }
  SUBCASE("overlap names the label") {
    Substitution bad = id;
    const PlacedTile t = bad.image(6).tiles().front();
    bad.images.insert_or_assign(6, Patch(r7, {t, make_tile(r7, 6, 2, CycloInt{})}));
    try {
      parse_document(serialize(bad));
      FAIL("accepted");
    } catch (const DocumentError& e) {
      CHECK(e.kind() == DocumentError::Kind::kInvariant);
      CHECK(e.label() == 6);
    }
  }
  SUBCASE("syntax error reports its line") {
    std::string text = serialize(id);
    const auto at = text.find("\"rot\"");
    text.insert(at, "!");
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + at, '\n'));
    try {
      parse_document(text);
      FAIL("accepted");
    } catch (const DocumentError& e) {
      CHECK(e.kind() == DocumentError::Kind::kSyntax);
      CHECK(e.line() == line);
    }
    CHECK(parse_kind(text.substr(0, 40)) == DocumentError::Kind::kSyntax);
  }
  SUBCASE("field errors name the field") {
    json j = json::parse(serialize(id));
    auto where = [](const json& doc) {
      try {
        parse_document(doc.dump());
      } catch (const DocumentError& e) {
        CHECK(e.kind() == DocumentError::Kind::kField);
        return e.where();
      }
      return std::string("parsed");
    };
    json a = j;
    a.erase("n");
    CHECK(where(a) == "n");
    json b = j;
    b["images"]["2"][0]["rot"] = 3;
    CHECK(where(b) == "images.2[0].rot");
    json c = j;
    c["images"]["4"][0]["trans"].push_back(0);
    CHECK(where(c) == "images.4[0].trans");
    json d = j;
    d["format_version"] = 2;
    CHECK(where(d) == "format_version");
    json e = j;
    e["sequence"][0] = "x";
    CHECK(where(e) == "sequence[0]");
    json f = j;
    f["images"]["3"] = json::array();
    CHECK(where(f) == "images.3");
    json g = j;
    g["extra"] = 1;
    CHECK(where(g) == "extra");
    json h = j;
    h["n"] = 8;
    CHECK(where(h) == "n");
  }
  SUBCASE("sequence problems are invariant failures") {
    json j = json::parse(serialize(id));
    j["sequence"] = {4, -4};
    CHECK(parse_kind(j.dump()) == DocumentError::Kind::kInvariant);
  }
}

TEST_CASE("svg") {
  const Ring& r7 = Ring::of(7);
  const std::string one = render_svg(Patch(r7, {prototile(2)}));
  CHECK(count_of(one, "<polygon") == 1);
  std::smatch m;
  REQUIRE(std::regex_search(one, m, std::regex("points=\"([^\"]*)\"")));
  CHECK(count_of(m[1].str(), ",") == 4);
  CHECK(one.rfind("<svg", 0) == 0);
  CHECK(one.find("</svg>") != std::string::npos);

  Substitution sub = construct_substitution(r7, seq({1, -1, 0}));
  const Patch& img = sub.image(2);
  SvgStyle style;
  style.pseudolines = true;
  style.arrows = true;
  const std::string doc = render_svg(img, style);
  CHECK(count_of(doc, "<polygon") == img.size());
  CHECK(count_of(doc, "<polyline") == 6);
  CHECK(count_of(doc, "<line ") == img.edge_usage().size());
  CHECK(render_svg(img) == render_svg(img));
  CHECK(count_of(render_svg(img), "<polyline") == 0);

  const std::string empty = render_svg(Patch(r7));
  CHECK(empty.rfind("<svg", 0) == 0);
  CHECK(count_of(empty, "<polygon") == 0);
  CHECK(empty.find("</svg>") != std::string::npos);
  CHECK(empty.find("nan") == std::string::npos);

  style.markers = {CycloInt{}};
  CHECK(count_of(render_svg(img, style), "<circle") == 1);
}

TEST_CASE("session flips, undo, conflicts") {
  const Ring& r7 = Ring::of(7);
  Substitution sub = construct_substitution(r7, seq({1, 0, 0, -1, 0}));
  const std::string original = serialize(sub);
  EditSession s(parse_document(original), "");
  CHECK(s.id().size() == 16);
  CHECK_FALSE(s.dirty());

  // a label with two flippable sites that share a tile
  int label = 0;
  std::vector<FlipSite> sites;
  for (const auto& [l, p] : sub.images) {
    auto f = find_flips(p);
    if (f.size() >= 2) {
      label = l;
      sites = f;
      break;
    }
  }
  REQUIRE(label != 0);
  const json before = s.patch(label);
  CHECK(before["sites"].size() == sites.size());
  CHECK(before["tiles"].size() == sub.image(label).size());

  // sites sharing a tile: flipping one removes the other
  std::size_t a = 0, b = 0;
  bool found = false;
  for (std::size_t i = 0; i < sites.size() && !found; ++i)
    for (std::size_t j = i + 1; j < sites.size() && !found; ++j)
      for (const auto& t : sites[i].tiles)
        if (std::find(sites[j].tiles.begin(), sites[j].tiles.end(), t) != sites[j].tiles.end()) {
          a = i;
          b = j;
          found = true;
        }
  REQUIRE(found);
  const std::string id_a = site_id(r7, sites[a]);
  const std::string id_b = site_id(r7, sites[b]);

  json r = s.flip(label, id_a, 0);
  CHECK(r["revision"] == 1);
  CHECK(r["removed"].size() == 3);
  CHECK(r["added"].size() == 3);
  CHECK(s.dirty());
  CHECK(s.draft().image(label) == apply_flip(sub.image(label), sites[a]));

  // stale revision, then a stale site at the current revision
  const Substitution after = s.draft();
  CHECK_THROWS_AS(s.flip(label, id_b, 0), SessionError);
  try {
    s.flip(label, id_b, 1);
    FAIL("stale site accepted");
  } catch (const SessionError& e) {
    CHECK(e.kind() == SessionError::Kind::kConflict);
  }
  try {
    s.flip(label, "0000000000000000", 1);
    FAIL("unknown site accepted");
  } catch (const SessionError& e) {
    CHECK(e.kind() == SessionError::Kind::kNotFound);
  }
  try {
    s.patch(3);
    FAIL("unknown label accepted");
  } catch (const SessionError& e) {
    CHECK(e.kind() == SessionError::Kind::kNotFound);
  }
  CHECK(same_substitution(s.draft(), after));
  CHECK(s.revision() == 1);

  s.undo();
  CHECK(same_substitution(s.draft(), sub));
  CHECK_FALSE(s.dirty());
  CHECK(s.revision() == 2);
  s.redo();
  CHECK(same_substitution(s.draft(), after));
  CHECK_THROWS_AS(s.redo(), SessionError);
  CHECK_THROWS_AS(s.undo(0), SessionError);

  // a walk of flips over every label; replay always matches
  for (int step = 0; step < 12; ++step) {
    const int l = 2 + 2 * (step % 3);
    const json pj = s.patch(l);
    if (pj["sites"].empty()) continue;
    const std::string sid = pj["sites"][step % pj["sites"].size()]["id"];
    s.flip(l, sid, s.revision());
    CHECK(same_substitution(s.replay(), s.draft()));
    CHECK_NOTHROW(make_substitution(r7, sub.seq, s.draft().images));
  }
  while (true) {
    try {
      s.undo();
    } catch (const SessionError&) {
      break;
    }
    CHECK(same_substitution(s.replay(), s.draft()));
  }
  CHECK(same_substitution(s.draft(), sub));

  const std::string path = temp_path("session.json");
  json saved = s.save(path);
  CHECK(saved["path"] == path);
  CHECK(read_file(path) == original);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(s.save(), SessionError);  // no default path
}

TEST_CASE("service requests") {
  const Ring& r7 = Ring::of(7);
  Substitution sub = construct_substitution(r7, seq({1, -1, 0}));
  const std::string path = temp_path("service.json");
  save_document(path, sub);
  const std::string original = read_file(path);
  EditSession s(load_document(path), path);

  Reply st = call(s, "GET", "/session");
  CHECK(st.status == 200);
  json sj = json::parse(st.body);
  CHECK(sj["n"] == 7);
  CHECK(sj["sequence"] == json::array({1, -1, 0}));
  CHECK(sj["labels"] == json::array({2, 4, 6}));
  CHECK(sj["dirty"] == false);

  CHECK(call(s, "GET", "/patch/5").status == 404);
  CHECK(call(s, "GET", "/patch/x").status == 404);
  CHECK(call(s, "GET", "/nowhere").status == 404);
  CHECK(handle_request(s, "POST", "/flip", "{").status == 400);
  CHECK(call(s, "POST", "/flip", {{"label", 2}, {"site", "abc"}}).status == 400);
  CHECK(call(s, "POST", "/undo").status == 409);

  int label = 0;
  json patch;
  for (int l : {2, 4, 6}) {
    Reply p = call(s, "GET", "/patch/" + std::to_string(l));
    CHECK(p.status == 200);
    json pj = json::parse(p.body);
    if (!pj["sites"].empty()) {
      label = l;
      patch = pj;
      break;
    }
  }
  REQUIRE(label != 0);
  const std::string site = patch["sites"][0]["id"];
  Reply f = call(s, "POST", "/flip", {{"label", label}, {"site", site}, {"revision", 0}});
  CHECK(f.status == 200);
  CHECK(json::parse(f.body)["revision"] == 1);
  Reply again = call(s, "POST", "/flip", {{"label", label}, {"site", site}, {"revision", 0}});
  CHECK(again.status == 409);
  CHECK(json::parse(again.body)["error"] == "conflict");
  CHECK(json::parse(call(s, "GET", "/session").body)["dirty"] == true);
  CHECK(call(s, "POST", "/undo", {{"revision", 1}}).status == 200);

  Reply sym = call(s, "GET", "/symmetry");
  CHECK(sym.status == 200);
  json symj = json::parse(sym.body);
  CHECK(symj["corner_flags"].size() == 3);
  CHECK(symj["stars"].empty());

  CHECK(call(s, "POST", "/save").status == 200);
  CHECK(read_file(path) == original);
  CHECK(call(s, "POST", "/save", {{"path", 3}}).status == 400);

  // over a socket
  httplib::Server server;
  install_routes(server, s);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/session");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["revision"] == 2);
  auto nf = client.Get("/patch/9");
  REQUIRE(nf);
  CHECK(nf->status == 404);
  server.stop();
  th.join();
  std::filesystem::remove(path);
}

TEST_CASE("symmetry endpoint lists a star built by scripted flips") {
  const Ring& r5 = Ring::of(5);
  Substitution sub = construct_substitution(r5, seq({0, 0, 1, -1, 1, -1}));
  REQUIRE(find_stars(sub.image(2)).empty());
  auto path = testutil::flip_path(
      sub.image(2), [](const Patch& p) { return !find_stars(p).empty(); }, star_score, 5000);
  REQUIRE(path.has_value());

  EditSession s(SubstitutionDocument{sub, {}}, "");
  CHECK(json::parse(call(s, "GET", "/symmetry").body)["stars"].empty());
  for (const auto& site : *path) {
    Reply r = call(s, "POST", "/flip",
                   {{"label", 2}, {"site", site_id(r5, site)}, {"revision", s.revision()}});
    REQUIRE(r.status == 200);
  }
  json symj = json::parse(call(s, "GET", "/symmetry").body);
  REQUIRE(symj["stars"].size() == 1);
  CHECK(symj["stars"][0]["label"] == 2);
  const CycloInt center = r5.from_vector(symj["stars"][0]["center"].get<std::vector<std::int64_t>>());
  CHECK(is_rotation_invariant(star_tiles(s.draft().image(2), center), center));
  CHECK(star_tiles(s.draft().image(2), center).size() == 5);
}
