#pragma once

// Substitution rules: one patch per prototile filling its s-boundary,
// extended to placed tiles and patches.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhomb/boundary.hpp"
#include "rhomb/tiling.hpp"

namespace rhomb {

class BoundaryMismatch : public std::runtime_error {
 public:
  BoundaryMismatch(int label, const std::string& what)
      : std::runtime_error("label " + std::to_string(label) + ": " + what),
        label_(label) {}
  int label() const { return label_; }

 private:
  int label_;
};

struct Substitution {
  const Ring* ring = nullptr;
  EdgeSequence seq;
  std::map<int, Patch> images;  // keyed by prototile label
  CycloInt scale;               // T(s); translations are multiplied by it
  double infl = 1.0;            // |T(s)|

  int n() const { return ring->n(); }
  const Patch& image(int label) const;
};

/// |T(s)|.
double inflation_factor(const Ring& ring, const EdgeSequence& seq);

/// Validates the images: every label present, no overlaps, support equal to
/// the region inside the s-boundary. Throws BoundaryMismatch naming the
/// first bad label; std::invalid_argument for a non-standard sequence or a
/// boundary that is not a good curve.
Substitution make_substitution(const Ring& ring, const EdgeSequence& seq,
                               std::map<int, Patch> images);

/// Images built with construct_tiling. Throws UntilableError if some
/// boundary fails.
Substitution construct_substitution(const Ring& ring, const EdgeSequence& seq);

/// sigma applied to one placed tile.
Patch substitute_tile(const Substitution& sub, const PlacedTile& t);
/// Union of the tile images. With validate set, the result is checked for
/// overlaps (a failure means the substitution is inconsistent).
Patch substitute_patch(const Substitution& sub, const Patch& p, bool validate = true);
/// sigma^k(p).
Patch iterate(const Substitution& sub, const Patch& p, int k, bool validate = true);

/// M[a][b] = number of tiles with label labels[a] in sigma(R_{labels[b]}),
/// with labels = prototile_labels(n).
std::vector<std::vector<long long>> substitution_matrix(const Substitution& sub);

/// The prototile R_label at the origin.
inline PlacedTile prototile(int label) { return PlacedTile{label, 0, CycloInt{}}; }

}  // namespace rhomb
