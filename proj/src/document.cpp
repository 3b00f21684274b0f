#include "rhomb/document.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rhomb {

using nlohmann::json;

DocumentError::DocumentError(Kind kind, std::string where, const std::string& what,
                             int line, int label)
    : std::runtime_error(where.empty() ? what : where + ": " + what),
      kind_(kind),
      where_(std::move(where)),
      line_(line),
      label_(label) {}

namespace {

void write_int_list(std::ostringstream& out, const std::vector<std::int64_t>& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ']';
}

DocumentError field_error(const std::string& where, const std::string& what) {
  return DocumentError(DocumentError::Kind::kField, where, what);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw field_error(where, "expected an integer");
  return v.get<std::int64_t>();
}

int as_small_int(const json& v, const std::string& where) {
  std::int64_t x = as_int(v, where);
  if (x < -1000000 || x > 1000000) throw field_error(where, "out of range");
  return static_cast<int>(x);
}

std::optional<std::string> optional_string(const json& obj, const std::string& key,
                                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_string()) throw field_error(where + "." + key, "expected a string");
  return it->get<std::string>();
}

int line_of(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string serialize(const Substitution& sub, const DocumentMetadata& meta) {
  const Ring& ring = *sub.ring;
  std::ostringstream out;
  out << "{\n";
  out << "  \"format_version\": " << kFormatVersion << ",\n";
  out << "  \"n\": " << ring.n() << ",\n";
  out << "  \"sequence\": [";
  for (std::size_t i = 0; i < sub.seq.size(); ++i) out << (i ? ", " : "") << sub.seq.terms[i];
  out << "],\n";
  out << "  \"images\": {";
  bool first_label = true;
  for (const auto& [label, patch] : sub.images) {
    out << (first_label ? "\n" : ",\n") << "    \"" << label << "\": [";
    first_label = false;
    const auto& tiles = patch.tiles();
    for (std::size_t k = 0; k < tiles.size(); ++k) {
      const PlacedTile& t = tiles[k];
      out << (k ? ",\n" : "\n") << "      {\"label\": " << t.label << ", \"rot\": " << t.rot
          << ", \"trans\": ";
      write_int_list(out, ring.to_vector(t.trans));
      out << '}';
    }
    out << (tiles.empty() ? "]" : "\n    ]");
  }
  out << (sub.images.empty() ? "}" : "\n  }");
  if (meta.author || meta.notes) {
    out << ",\n  \"metadata\": {";
    if (meta.author) out << "\"author\": " << json(*meta.author).dump();
    if (meta.notes) out << (meta.author ? ", " : "") << "\"notes\": " << json(*meta.notes).dump();
    out << '}';
  }
  out << "\n}\n";
  return out.str();
}

SubstitutionDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError(DocumentError::Kind::kSyntax, "", e.what(),
                        line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw field_error("", "top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "format_version" && key != "n" && key != "sequence" && key != "images" &&
        key != "metadata")
      throw field_error(key, "unknown field");
  }

  if (as_int(require(doc, "format_version", ""), "format_version") != kFormatVersion)
    throw field_error("format_version", "unsupported version");

  const int n = as_small_int(require(doc, "n", ""), "n");
  const Ring* ring = nullptr;
  try {
    ring = &Ring::of(n);
  } catch (const std::invalid_argument& e) {
    throw field_error("n", e.what());
  }

  const json& jseq = require(doc, "sequence", "");
  if (!jseq.is_array()) throw field_error("sequence", "expected an array");
  EdgeSequence seq;
  for (std::size_t i = 0; i < jseq.size(); ++i)
    seq.terms.push_back(as_small_int(jseq[i], "sequence[" + std::to_string(i) + "]"));

  const json& jimages = require(doc, "images", "");
  if (!jimages.is_object()) throw field_error("images", "expected an object");
  std::map<int, Patch> images;
  for (const auto& [key, jtiles] : jimages.items()) {
    const std::string where = "images." + key;
    int label = 0;
    try {
      std::size_t used = 0;
      label = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw field_error(where, "label key must be an integer");
    }
    if (label < 2 || label >= n || label % 2 != 0)
      throw field_error(where, "not a prototile label");
    if (!jtiles.is_array()) throw field_error(where, "expected an array");
    std::vector<PlacedTile> tiles;
    for (std::size_t k = 0; k < jtiles.size(); ++k) {
      const std::string tw = where + "[" + std::to_string(k) + "]";
      const json& jt = jtiles[k];
      if (!jt.is_object() || jt.size() != 3) throw field_error(tw, "expected {label, rot, trans}");
      PlacedTile t;
      t.label = as_small_int(require(jt, "label", tw), tw + ".label");
      if (t.label < 2 || t.label >= n || t.label % 2 != 0)
        throw field_error(tw + ".label", "not a prototile label");
      t.rot = as_small_int(require(jt, "rot", tw), tw + ".rot");
      if (t.rot < 0 || t.rot >= 2 * n || t.rot % 2 != 0)
        throw field_error(tw + ".rot", "must be even and in [0, 2n)");
      const json& jtrans = require(jt, "trans", tw);
      if (!jtrans.is_array() || static_cast<int>(jtrans.size()) != ring->degree())
        throw field_error(tw + ".trans",
                          "expected " + std::to_string(ring->degree()) + " integers");
      std::vector<std::int64_t> coeffs;
      for (std::size_t c = 0; c < jtrans.size(); ++c)
        coeffs.push_back(as_int(jtrans[c], tw + ".trans[" + std::to_string(c) + "]"));
      t.trans = ring->from_vector(coeffs);
      tiles.push_back(t);
    }
    images.emplace(label, Patch(*ring, std::move(tiles)));
  }

  DocumentMetadata meta;
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw field_error("metadata", "expected an object");
    for (const auto& [key, value] : it->items()) {
      (void)value;
      if (key != "author" && key != "notes") throw field_error("metadata." + key, "unknown field");
    }
    meta.author = optional_string(*it, "author", "metadata");
    meta.notes = optional_string(*it, "notes", "metadata");
  }

  using Kind = DocumentError::Kind;
  try {
    return {make_substitution(*ring, seq, std::move(images)), meta};
  } catch (const BoundaryMismatch& e) {
    throw DocumentError(Kind::kInvariant, "images." + std::to_string(e.label()), e.what(), 0,
                        e.label());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(Kind::kInvariant, "sequence", e.what());
  }
}

SubstitutionDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void save_document(const std::string& path, const Substitution& sub,
                   const DocumentMetadata& meta) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << serialize(sub, meta);
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

bool same_substitution(const Substitution& a, const Substitution& b) {
  if (a.n() != b.n() || a.seq != b.seq || a.images.size() != b.images.size()) return false;
  for (const auto& [label, p] : a.images) {
    auto it = b.images.find(label);
    if (it == b.images.end() || !(it->second == p)) return false;
  }
  return true;
}

}  // namespace rhomb
