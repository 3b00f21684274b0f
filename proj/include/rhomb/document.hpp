#pragma once

// Text form of a substitution rule: JSON with a fixed field order and one
// tile per line, integers only for geometry.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rhomb/substitution.hpp"

namespace rhomb {

inline constexpr int kFormatVersion = 1;

struct DocumentMetadata {
  std::optional<std::string> author;
  std::optional<std::string> notes;

  friend bool operator==(const DocumentMetadata&, const DocumentMetadata&) = default;
};

struct SubstitutionDocument {
  Substitution sub;
  DocumentMetadata metadata;
};

class DocumentError : public std::runtime_error {
 public:
  enum class Kind {
    kSyntax,     // not JSON
    kField,      // JSON, but a field is missing or has the wrong shape
    kInvariant,  // well formed, but the tiles do not form a substitution
  };

  DocumentError(Kind kind, std::string where, const std::string& what, int line = 0,
                int label = 0);

  Kind kind() const { return kind_; }
  /// Field path such as "images.4[2].trans", empty for syntax errors.
  const std::string& where() const { return where_; }
  /// 1-based line for syntax errors, otherwise 0.
  int line() const { return line_; }
  /// Offending label for invariant failures, otherwise 0.
  int label() const { return label_; }

 private:
  Kind kind_;
  std::string where_;
  int line_;
  int label_;
};

std::string serialize(const Substitution& sub, const DocumentMetadata& meta = {});

/// Parses and validates. Throws DocumentError.
SubstitutionDocument parse_document(std::string_view text);

/// Reads/writes a file; writing goes through a temporary and a rename.
SubstitutionDocument load_document(const std::string& path);
void save_document(const std::string& path, const Substitution& sub,
                   const DocumentMetadata& meta = {});

/// Same sequence and same tiles for every label.
bool same_substitution(const Substitution& a, const Substitution& b);

}  // namespace rhomb
