#include "rhomb/substitution.hpp"

#include <algorithm>
#include <cmath>

namespace rhomb {

const Patch& Substitution::image(int label) const {
  auto it = images.find(label);
  if (it == images.end())
    throw std::out_of_range("no image for label " + std::to_string(label));
  return it->second;
}

double inflation_factor(const Ring& ring, const EdgeSequence& seq) {
  const Vec2 t = ring.to_cartesian(total(ring, seq));
  return std::hypot(t.x, t.y);
}

Substitution make_substitution(const Ring& ring, const EdgeSequence& seq,
                               std::map<int, Patch> images) {
  if (!is_standard(seq, ring.n()))
    throw std::invalid_argument("sequence " + format_sequence(seq) +
                                " is not standard");
  const auto labels = prototile_labels(ring.n());
  for (const auto& [label, patch] : images)
    if (std::find(labels.begin(), labels.end(), label) == labels.end())
      throw std::invalid_argument("unexpected label " + std::to_string(label));
  for (int label : labels) {
    auto it = images.find(label);
    if (it == images.end()) throw BoundaryMismatch(label, "missing image");
    if (it->second.n() != ring.n()) throw BoundaryMismatch(label, "wrong ring");
    Boundary b = build_boundary(ring, seq, label);
    if (!is_good_curve(b))
      throw std::invalid_argument("boundary of label " + std::to_string(label) +
                                  " is not a good curve");
    try {
      it->second.validate();
    } catch (const OverlapError& e) {
      throw BoundaryMismatch(label, e.what());
    }
    std::string why = support_mismatch(it->second, b.walk());
    if (!why.empty()) throw BoundaryMismatch(label, why);
  }
  Substitution sub;
  sub.ring = &ring;
  sub.seq = seq;
  sub.images = std::move(images);
  sub.scale = total(ring, seq);
  sub.infl = inflation_factor(ring, seq);
  return sub;
}

Substitution construct_substitution(const Ring& ring, const EdgeSequence& seq) {
  std::map<int, Patch> images;
  for (int label : prototile_labels(ring.n()))
    images.emplace(label, construct_tiling(build_boundary(ring, seq, label)));
  return make_substitution(ring, seq, std::move(images));
}

Patch substitute_tile(const Substitution& sub, const PlacedTile& t) {
  const Ring& ring = *sub.ring;
  const Patch& img = sub.image(t.label);
  const CycloInt shift = ring.mul(sub.scale, t.trans);
  std::vector<PlacedTile> out;
  out.reserve(img.size());
  for (const auto& tau : img.tiles())
    out.push_back(translate_tile(rotate_tile(ring, tau, CycloInt{}, t.rot), shift));
  return Patch(ring, std::move(out));
}

Patch substitute_patch(const Substitution& sub, const Patch& p, bool validate) {
  const Ring& ring = *sub.ring;
  std::vector<PlacedTile> out;
  std::size_t expected = 0;
  for (const auto& t : p.tiles()) {
    const Patch& img = sub.image(t.label);
    expected += img.size();
    const CycloInt shift = ring.mul(sub.scale, t.trans);
    for (const auto& tau : img.tiles())
      out.push_back(translate_tile(rotate_tile(ring, tau, CycloInt{}, t.rot), shift));
  }
  Patch result(ring, std::move(out));
  if (validate) {
    if (result.size() != expected)
      throw OverlapError("substituted tiles coincide");
    result.validate();
  }
  return result;
}

Patch iterate(const Substitution& sub, const Patch& p, int k, bool validate) {
  Patch cur = p;
  for (int j = 0; j < k; ++j) cur = substitute_patch(sub, cur, validate);
  return cur;
}

std::vector<std::vector<long long>> substitution_matrix(const Substitution& sub) {
  const auto labels = prototile_labels(sub.n());
  std::vector<std::vector<long long>> m(labels.size(),
                                        std::vector<long long>(labels.size(), 0));
  for (std::size_t b = 0; b < labels.size(); ++b) {
    const auto counts = sub.image(labels[b]).label_counts();
    for (std::size_t a = 0; a < labels.size(); ++a) {
      auto it = counts.find(labels[a]);
      if (it != counts.end()) m[a][b] = static_cast<long long>(it->second);
    }
  }
  return m;
}

}  // namespace rhomb
