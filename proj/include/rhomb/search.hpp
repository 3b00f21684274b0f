#pragma once

// Constant-memory iteration over multiset permutations (cool-lex order) and
// the KSK sweep over edge sequences built from them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhomb/boundary.hpp"

namespace rhomb {

/// Multiset of integer chunks; a plain multiset of values uses chunks of
/// length one.
struct MultisetSpec {
  struct Item {
    std::vector<int> chunk;
    std::size_t multiplicity = 1;
  };
  std::vector<Item> items;

  std::size_t size() const;  // sum of multiplicities
  /// From plain values, e.g. {1, -1, 0, 0}.
  static MultisetSpec of_values(const std::vector<int>& values);
};

/// "chunk x mult" entries separated by ';', chunk terms by ','. Example:
/// "0x5;-1,1x5;2,-2x4". A missing multiplicity means 1. Throws
/// std::invalid_argument.
MultisetSpec parse_chunks(std::string_view text);
std::string format_chunks(const MultisetSpec& spec);

/// Number of distinct permutations. Throws std::overflow_error past 2^64.
std::uint64_t multinomial(const MultisetSpec& spec);

/// Distinct permutations of a multiset of small integers in cool-lex order,
/// holding one permutation in a linked list that is read back to front. The
/// first permutation is the non-decreasing one; {0, 0, 1} gives 001, 010,
/// 100. A fixed prefix may be prepended to every output.
class PermIterator {
 public:
  explicit PermIterator(std::vector<int> values, std::vector<int> prefix = {});

  /// The current permutation (prefix included).
  std::vector<int> current() const;
  /// Advances; false once every permutation has been visited.
  bool next();
  bool done() const { return done_; }

  /// Text that restores the iterator at the current permutation.
  std::string token() const;
  static PermIterator resume(std::string_view token);

  /// Number of integers of state; linear in the permutation length.
  std::size_t state_size() const { return value_.size() + next_.size() + prefix_.size() + 4; }

 private:
  PermIterator() = default;
  std::vector<int> prefix_;
  std::vector<int> value_;
  std::vector<int> next_;  // -1 ends the list
  int head_ = -1, i_ = -1, j_ = -1;
  bool done_ = false;
};

/// Distinct prefixes of the given length over the multiset, in
/// lexicographic order. Iterating the remainder under each prefix covers
/// every permutation exactly once.
std::vector<std::vector<int>> distinct_prefixes(const std::vector<int>& values,
                                                std::size_t length);

/// Iterator over concatenations of chunk permutations.
class ChunkIterator {
 public:
  explicit ChunkIterator(MultisetSpec spec);
  ChunkIterator(MultisetSpec spec, PermIterator perm);
  EdgeSequence current() const;
  bool next() { return perm_.next(); }
  bool done() const { return perm_.done(); }
  const PermIterator& permutation() const { return perm_; }
  const MultisetSpec& spec() const { return spec_; }

 private:
  MultisetSpec spec_;
  PermIterator perm_;
};

/// Expands item indices (as produced by the iterator) into a sequence.
EdgeSequence concatenate(const MultisetSpec& spec, const std::vector<int>& items);
/// Item indices whose concatenation is seq with the spec's multiplicities,
/// if they exist.
std::optional<std::vector<int>> decompose(const MultisetSpec& spec, const EdgeSequence& seq);

/// Outcome of checking every label of one sequence.
struct Verdict {
  enum class Kind { kPass, kNotStandard, kNotGoodCurve, kKskFail };
  Kind kind = Kind::kPass;
  int label = 0;  // first failing label
  bool pass() const { return kind == Kind::kPass; }
};
/// Labels in increasing order, stopping at the first failure.
Verdict check_sequence(const Ring& ring, const EdgeSequence& seq);

struct SweepOptions {
  unsigned threads = 1;
  std::size_t batch = 1024;
  std::uint64_t limit = 0;         // stop after this many sequences (0 = all)
  std::string checkpoint_path;     // rewritten after every batch
  std::function<void(const EdgeSequence&)> on_pass;
};

struct SweepStats {
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::uint64_t not_standard = 0;
  std::uint64_t not_good_curve = 0;
  std::uint64_t ksk_fail = 0;
  bool finished = false;  // iterator exhausted
  std::string token;      // resume token for the next unchecked sequence
};

/// Checks sequences from `it` in batches on worker threads. Passing
/// sequences reach on_pass in iterator order.
SweepStats sweep_ksk(const Ring& ring, ChunkIterator& it, const SweepOptions& opts);

}  // namespace rhomb
