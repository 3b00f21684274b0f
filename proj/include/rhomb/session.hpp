#pragma once

// Editing session over a substitution draft: hex flips with undo/redo,
// revision checks, symmetry reports and saving. Every method is safe to
// call from several threads; mutations are serialized.

#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rhomb/document.hpp"
#include "rhomb/flips.hpp"
#include "rhomb/symmetry.hpp"

namespace rhomb {

class SessionError : public std::runtime_error {
 public:
  enum class Kind { kBadRequest, kNotFound, kConflict, kValidation };
  SessionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Stable content ids (16 hex digits).
std::string tile_id(const Ring& ring, const PlacedTile& t);
std::string site_id(const Ring& ring, const FlipSite& s);

nlohmann::ordered_json tile_json(const Ring& ring, const PlacedTile& t);
nlohmann::ordered_json site_json(const Ring& ring, const FlipSite& s);
nlohmann::ordered_json report_json(const Ring& ring, const SymmetryReport& r);

struct FlipAction {
  int label = 0;
  FlipSite site;  // as it was when applied
};

class EditSession {
 public:
  /// path is where save() writes by default; may be empty.
  EditSession(SubstitutionDocument doc, std::string path);

  const std::string& id() const { return id_; }

  nlohmann::ordered_json state() const;
  /// Throws SessionError(kNotFound) for an unknown label.
  nlohmann::ordered_json patch(int label) const;
  /// Applies the site with the given id. Throws kConflict if revision is not
  /// the current one or the site existed earlier but is gone, kNotFound if
  /// the label or site is unknown.
  nlohmann::ordered_json flip(int label, const std::string& site, std::uint64_t revision);
  /// Throws kConflict when there is nothing to undo/redo or the revision
  /// does not match.
  nlohmann::ordered_json undo(std::optional<std::uint64_t> revision = std::nullopt);
  nlohmann::ordered_json redo(std::optional<std::uint64_t> revision = std::nullopt);
  nlohmann::ordered_json symmetry() const;
  /// Validates the draft and writes it. Throws kValidation or kBadRequest.
  nlohmann::ordered_json save(const std::string& path = "");

  Substitution draft() const;
  /// The loaded document with the undo stack applied in order.
  Substitution replay() const;
  std::uint64_t revision() const;
  bool dirty() const;

 private:
  const Patch& image_or_throw(int label) const;
  void set_image(int label, Patch p);

  mutable std::mutex mu_;
  std::string id_;
  std::string path_;
  DocumentMetadata meta_;
  Substitution loaded_;
  Substitution saved_;
  Substitution draft_;
  std::vector<FlipAction> undo_;
  std::vector<FlipAction> redo_;
  std::uint64_t revision_ = 0;
  mutable std::set<std::string> seen_sites_;
};

}  // namespace rhomb
