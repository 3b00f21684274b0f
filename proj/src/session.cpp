#include "rhomb/session.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace rhomb {

using nlohmann::ordered_json;

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void add(std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

ordered_json xy(Vec2 v) { return ordered_json::array({v.x, v.y}); }

ordered_json flags_json(const std::array<bool, 4>& f) {
  ordered_json a = ordered_json::array();
  for (bool b : f) a.push_back(b);
  return a;
}

std::string random_id() {
  std::random_device rd;
  std::mt19937_64 gen((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(gen()));
  return buf;
}

SessionError conflict(const std::string& what) {
  return SessionError(SessionError::Kind::kConflict, what);
}

}  // namespace

std::string tile_id(const Ring& ring, const PlacedTile& t) {
  Fnv f;
  f.add(t.label);
  f.add(t.rot);
  for (int i = 0; i < ring.degree(); ++i) f.add(t.trans[static_cast<std::size_t>(i)]);
  return f.hex();
}

std::string site_id(const Ring& ring, const FlipSite& s) {
  std::array<PlacedTile, 3> tiles = s.tiles;
  std::sort(tiles.begin(), tiles.end());
  Fnv f;
  for (const auto& t : tiles) {
    f.add(t.label);
    f.add(t.rot);
    for (int i = 0; i < ring.degree(); ++i) f.add(t.trans[static_cast<std::size_t>(i)]);
  }
  for (const auto& v : s.hexagon)
    for (int i = 0; i < ring.degree(); ++i) f.add(v[static_cast<std::size_t>(i)]);
  return f.hex();
}

ordered_json tile_json(const Ring& ring, const PlacedTile& t) {
  ordered_json j;
  j["id"] = tile_id(ring, t);
  j["label"] = t.label;
  j["rot"] = t.rot;
  j["trans"] = ring.to_vector(t.trans);
  ordered_json pts = ordered_json::array();
  for (Vec2 v : tile_polygon(ring, t)) pts.push_back(xy(v));
  j["points"] = pts;
  return j;
}

ordered_json site_json(const Ring& ring, const FlipSite& s) {
  ordered_json j;
  j["id"] = site_id(ring, s);
  const Vec2 m = ring.to_cartesian(s.doubled_mid());
  j["center"] = xy({m.x / 2, m.y / 2});
  ordered_json hex = ordered_json::array();
  for (const auto& v : s.hexagon) hex.push_back(xy(ring.to_cartesian(v)));
  j["hexagon"] = hex;
  ordered_json ids = ordered_json::array();
  for (const auto& t : s.tiles) ids.push_back(tile_id(ring, t));
  j["tiles"] = ids;
  return j;
}

ordered_json report_json(const Ring& ring, const SymmetryReport& r) {
  auto hits = [&](const std::vector<StarHit>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& h : v)
      a.push_back({{"label", h.label},
                   {"center", ring.to_vector(h.center)},
                   {"xy", xy(ring.to_cartesian(h.center))}});
    return a;
  };
  ordered_json j;
  j["n"] = r.n;
  j["stars"] = hits(r.stars);
  ordered_json flags = ordered_json::array();
  for (const auto& f : r.corner_flags)
    flags.push_back({{"label", f.label},
                     {"small_angle", flags_json(f.corners)},
                     {"touching", flags_json(f.touching)}});
  j["corner_flags"] = flags;
  ordered_json centers = ordered_json::array();
  for (const auto& c : r.invariant_centers)
    centers.push_back({{"label", c.label}, {"center", xy(c.center)}, {"order", c.order}});
  j["invariant_centers"] = centers;
  j["second_stars"] = hits(r.second_stars);
  return j;
}

EditSession::EditSession(SubstitutionDocument doc, std::string path)
    : id_(random_id()),
      path_(std::move(path)),
      meta_(std::move(doc.metadata)),
      loaded_(doc.sub),
      saved_(doc.sub),
      draft_(std::move(doc.sub)) {}

const Patch& EditSession::image_or_throw(int label) const {
  auto it = draft_.images.find(label);
  if (it == draft_.images.end())
    throw SessionError(SessionError::Kind::kNotFound, "no label " + std::to_string(label));
  return it->second;
}

void EditSession::set_image(int label, Patch p) {
  draft_.images.insert_or_assign(label, std::move(p));
}

ordered_json EditSession::state() const {
  std::lock_guard lock(mu_);
  ordered_json j;
  j["id"] = id_;
  j["revision"] = revision_;
  j["n"] = draft_.n();
  j["sequence"] = draft_.seq.terms;
  ordered_json labels = ordered_json::array();
  for (const auto& [label, p] : draft_.images) labels.push_back(label);
  j["labels"] = labels;
  j["dirty"] = !same_substitution(draft_, saved_);
  j["undo"] = undo_.size();
  j["redo"] = redo_.size();
  j["path"] = path_;
  return j;
}

ordered_json EditSession::patch(int label) const {
  std::lock_guard lock(mu_);
  const Patch& p = image_or_throw(label);
  const Ring& ring = p.ring();
  ordered_json j;
  j["label"] = label;
  j["revision"] = revision_;
  ordered_json tiles = ordered_json::array();
  for (const auto& t : p.tiles()) tiles.push_back(tile_json(ring, t));
  j["tiles"] = tiles;
  ordered_json sites = ordered_json::array();
  for (const auto& s : find_flips(p)) {
    sites.push_back(site_json(ring, s));
    seen_sites_.insert(sites.back()["id"].get<std::string>());
  }
  j["sites"] = sites;
  return j;
}

ordered_json EditSession::flip(int label, const std::string& site, std::uint64_t revision) {
  std::lock_guard lock(mu_);
  const Patch& p = image_or_throw(label);
  if (revision != revision_)
    throw conflict("revision " + std::to_string(revision) + " is stale, current is " +
                   std::to_string(revision_));
  const Ring& ring = p.ring();
  const auto sites = find_flips(p);
  const FlipSite* chosen = nullptr;
  for (const auto& s : sites) {
    const std::string sid = site_id(ring, s);
    seen_sites_.insert(sid);
    if (sid == site) chosen = &s;
  }
  if (!chosen) {
    if (seen_sites_.count(site)) throw conflict("site " + site + " is no longer flippable");
    throw SessionError(SessionError::Kind::kNotFound, "no site " + site);
  }
  const FlipSite applied = *chosen;
  Patch next = apply_flip(p, applied);
  const FlipSite back = inverse_site(ring, applied);

  set_image(label, std::move(next));
  undo_.push_back({label, applied});
  redo_.clear();
  ++revision_;

  ordered_json j;
  j["revision"] = revision_;
  j["label"] = label;
  ordered_json removed = ordered_json::array(), added = ordered_json::array();
  for (const auto& t : applied.tiles) removed.push_back(tile_id(ring, t));
  for (const auto& t : back.tiles) added.push_back(tile_json(ring, t));
  j["removed"] = removed;
  j["added"] = added;
  return j;
}

ordered_json EditSession::undo(std::optional<std::uint64_t> revision) {
  std::lock_guard lock(mu_);
  if (revision && *revision != revision_) throw conflict("stale revision");
  if (undo_.empty()) throw conflict("nothing to undo");
  const FlipAction a = undo_.back();
  const Ring& ring = *draft_.ring;
  const FlipSite back = inverse_site(ring, a.site);
  Patch prev = apply_flip(image_or_throw(a.label), back);
  set_image(a.label, std::move(prev));
  undo_.pop_back();
  redo_.push_back(a);
  ++revision_;
  return {{"revision", revision_}, {"label", a.label}};
}

ordered_json EditSession::redo(std::optional<std::uint64_t> revision) {
  std::lock_guard lock(mu_);
  if (revision && *revision != revision_) throw conflict("stale revision");
  if (redo_.empty()) throw conflict("nothing to redo");
  const FlipAction a = redo_.back();
  Patch next = apply_flip(image_or_throw(a.label), a.site);
  set_image(a.label, std::move(next));
  redo_.pop_back();
  undo_.push_back(a);
  ++revision_;
  return {{"revision", revision_}, {"label", a.label}};
}

ordered_json EditSession::symmetry() const {
  std::unique_lock lock(mu_);
  const Substitution snapshot = draft_;
  const std::uint64_t rev = revision_;
  lock.unlock();
  ordered_json j = report_json(*snapshot.ring, corner_report(snapshot, 1));
  j["revision"] = rev;
  return j;
}

ordered_json EditSession::save(const std::string& path) {
  std::lock_guard lock(mu_);
  const std::string target = path.empty() ? path_ : path;
  if (target.empty())
    throw SessionError(SessionError::Kind::kBadRequest, "no document path");
  try {
    make_substitution(*draft_.ring, draft_.seq, draft_.images);
  } catch (const std::exception& e) {
    throw SessionError(SessionError::Kind::kValidation, e.what());
  }
  const std::string text = serialize(draft_, meta_);
  try {
    save_document(target, draft_, meta_);
  } catch (const std::runtime_error& e) {
    throw SessionError(SessionError::Kind::kBadRequest, e.what());
  }
  saved_ = draft_;
  return {{"path", target}, {"bytes", text.size()}, {"revision", revision_}};
}

Substitution EditSession::draft() const {
  std::lock_guard lock(mu_);
  return draft_;
}

Substitution EditSession::replay() const {
  std::lock_guard lock(mu_);
  Substitution s = loaded_;
  for (const auto& a : undo_) {
    Patch next = apply_flip(s.images.at(a.label), a.site);
    s.images.insert_or_assign(a.label, std::move(next));
  }
  return s;
}

std::uint64_t EditSession::revision() const {
  std::lock_guard lock(mu_);
  return revision_;
}

bool EditSession::dirty() const {
  std::lock_guard lock(mu_);
  return !same_substitution(draft_, saved_);
}

}  // namespace rhomb
