#include "rhomb/search.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "rhomb/ksk.hpp"

namespace rhomb {

std::size_t MultisetSpec::size() const {
  std::size_t s = 0;
  for (const auto& it : items) s += it.multiplicity;
  return s;
}

MultisetSpec MultisetSpec::of_values(const std::vector<int>& values) {
  std::map<int, std::size_t> counts;
  for (int v : values) ++counts[v];
  MultisetSpec spec;
  for (const auto& [v, c] : counts) spec.items.push_back({{v}, c});
  return spec;
}

namespace {

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<int> parse_ints(std::string_view s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = s.find(',', pos);
    std::string_view part = s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos);
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size())
      throw std::invalid_argument("bad integer '" + std::string(part) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

}  // namespace

MultisetSpec parse_chunks(std::string_view text) {
  const std::string flat = trim(text);
  if (flat.empty()) throw std::invalid_argument("empty chunk list");
  MultisetSpec spec;
  std::size_t pos = 0;
  while (pos <= flat.size()) {
    std::size_t semi = flat.find(';', pos);
    std::string entry = flat.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    pos = semi == std::string::npos ? flat.size() + 1 : semi + 1;
    if (entry.empty()) {
      if (semi == std::string::npos) break;
      throw std::invalid_argument("empty chunk entry");
    }
    std::size_t mult = 1;
    std::size_t x = entry.find_first_of("x*");
    std::string body = entry.substr(0, x);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
      body = body.substr(1, body.size() - 2);
    if (x != std::string::npos) {
      std::string m = entry.substr(x + 1);
      auto [p, ec] = std::from_chars(m.data(), m.data() + m.size(), mult);
      if (m.empty() || ec != std::errc() || p != m.data() + m.size() || mult == 0)
        throw std::invalid_argument("bad multiplicity in '" + entry + "'");
    }
    std::vector<int> chunk = parse_ints(body);
    if (chunk.empty()) throw std::invalid_argument("empty chunk in '" + entry + "'");
    spec.items.push_back({chunk, mult});
  }
  if (spec.items.empty()) throw std::invalid_argument("empty chunk list");
  return spec;
}

std::string format_chunks(const MultisetSpec& spec) {
  std::string s;
  for (std::size_t k = 0; k < spec.items.size(); ++k) {
    if (k) s += ';';
    s += join(spec.items[k].chunk) + "x" + std::to_string(spec.items[k].multiplicity);
  }
  return s;
}

std::uint64_t multinomial(const MultisetSpec& spec) {
  // product of binomials C(running total, multiplicity)
  unsigned __int128 result = 1;
  std::uint64_t placed = 0;
  for (const auto& item : spec.items) {
    for (std::uint64_t k = 1; k <= item.multiplicity; ++k) {
      ++placed;
      result = result * placed / k;
      if (result > UINT64_MAX) throw std::overflow_error("multinomial exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

// ---------------------------------------------------------------------------

PermIterator::PermIterator(std::vector<int> values, std::vector<int> prefix)
    : prefix_(std::move(prefix)), value_(std::move(values)) {
  std::sort(value_.begin(), value_.end(), std::greater<int>());
  const int m = static_cast<int>(value_.size());
  next_.resize(m);
  for (int k = 0; k < m; ++k) next_[k] = k + 1 < m ? k + 1 : -1;
  head_ = m > 0 ? 0 : -1;
  if (m >= 2) {
    i_ = m - 2;
    j_ = m - 1;
  }
}

std::vector<int> PermIterator::current() const {
  // the list is read from its tail
  std::vector<int> out = prefix_;
  const std::size_t start = out.size();
  for (int k = head_; k != -1; k = next_[k]) out.push_back(value_[k]);
  std::reverse(out.begin() + static_cast<long>(start), out.end());
  return out;
}

bool PermIterator::next() {
  if (done_) return false;
  if (value_.size() < 2 || (next_[j_] == -1 && value_[j_] >= value_[head_])) {
    done_ = true;
    return false;
  }
  const int s = (next_[j_] != -1 && value_[i_] >= value_[next_[j_]]) ? j_ : i_;
  const int t = next_[s];
  next_[s] = next_[t];
  next_[t] = head_;
  if (value_[t] < value_[head_]) i_ = t;
  j_ = next_[i_];
  head_ = t;
  return true;
}

std::string PermIterator::token() const {
  if (done_) return "done";
  // order as emitted; pos counts from the far end of the list
  std::vector<int> order;
  int pos = 0;
  for (int x = head_; x != -1; x = next_[x]) {
    if (x == i_) pos = static_cast<int>(order.size());
    order.push_back(value_[x]);
  }
  std::reverse(order.begin(), order.end());
  const int m = static_cast<int>(order.size());
  return join(prefix_) + "|" + join(order) + "|" + std::to_string(m >= 2 ? m - 2 - pos : 0);
}

PermIterator PermIterator::resume(std::string_view token) {
  PermIterator it;
  const std::string t = trim(token);
  if (t == "done") {
    it.done_ = true;
    return it;
  }
  const std::size_t a = t.find('|');
  const std::size_t b = a == std::string::npos ? a : t.find('|', a + 1);
  if (b == std::string::npos) throw std::invalid_argument("malformed resume token");
  it.prefix_ = parse_ints(std::string_view(t).substr(0, a));
  it.value_ = parse_ints(std::string_view(t).substr(a + 1, b - a - 1));
  std::reverse(it.value_.begin(), it.value_.end());
  const std::vector<int> pos = parse_ints(std::string_view(t).substr(b + 1));
  const int m = static_cast<int>(it.value_.size());
  if (pos.size() != 1 || (m >= 2 && (pos[0] < 0 || pos[0] > m - 2)) || m == 0)
    throw std::invalid_argument("malformed resume token");
  it.next_.resize(m);
  for (int k = 0; k < m; ++k) it.next_[k] = k + 1 < m ? k + 1 : -1;
  it.head_ = 0;
  if (m >= 2) {
    it.i_ = m - 2 - pos[0];
    it.j_ = it.next_[it.i_];
  }
  return it;
}

std::vector<std::vector<int>> distinct_prefixes(const std::vector<int>& values,
                                                std::size_t length) {
  std::map<int, std::size_t> counts;
  for (int v : values) ++counts[v];
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    if (cur.size() == length) {
      out.push_back(cur);
      return;
    }
    for (auto& [v, c] : counts) {
      if (c == 0) continue;
      --c;
      cur.push_back(v);
      rec();
      cur.pop_back();
      ++c;
    }
  };
  if (length <= values.size()) rec();
  return out;
}


// ---------------------------------------------------------------------------

namespace {
std::vector<int> item_values(const MultisetSpec& spec) {
  if (spec.items.empty()) throw std::invalid_argument("empty chunk list");
  std::vector<int> v;
  for (std::size_t k = 0; k < spec.items.size(); ++k)
    v.insert(v.end(), spec.items[k].multiplicity, static_cast<int>(k));
  return v;
}
}  // namespace

ChunkIterator::ChunkIterator(MultisetSpec spec)
    : spec_(std::move(spec)), perm_(item_values(spec_)) {}

ChunkIterator::ChunkIterator(MultisetSpec spec, PermIterator perm)
    : spec_(std::move(spec)), perm_(std::move(perm)) {
  if (!perm_.done()) {
    auto cur = perm_.current();
    auto want = item_values(spec_);
    std::sort(cur.begin(), cur.end());
    if (cur != want) throw std::invalid_argument("resume token does not match the chunk list");
  }
}

EdgeSequence concatenate(const MultisetSpec& spec, const std::vector<int>& items) {
  EdgeSequence s;
  for (int k : items) {
    const auto& c = spec.items.at(static_cast<std::size_t>(k)).chunk;
    s.terms.insert(s.terms.end(), c.begin(), c.end());
  }
  return s;
}

EdgeSequence ChunkIterator::current() const { return concatenate(spec_, perm_.current()); }

std::optional<std::vector<int>> decompose(const MultisetSpec& spec, const EdgeSequence& seq) {
  std::vector<std::size_t> left;
  for (const auto& it : spec.items) left.push_back(it.multiplicity);
  std::vector<int> out;
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == seq.size()) {
      return std::all_of(left.begin(), left.end(), [](std::size_t c) { return c == 0; });
    }
    for (std::size_t k = 0; k < spec.items.size(); ++k) {
      if (left[k] == 0) continue;
      const auto& c = spec.items[k].chunk;
      if (pos + c.size() > seq.size() ||
          !std::equal(c.begin(), c.end(), seq.terms.begin() + static_cast<long>(pos)))
        continue;
      --left[k];
      out.push_back(static_cast<int>(k));
      if (rec(pos + c.size())) return true;
      out.pop_back();
      ++left[k];
    }
    return false;
  };
  if (rec(0)) return out;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Verdict check_sequence(const Ring& ring, const EdgeSequence& seq) {
  if (!is_standard(seq, ring.n())) return {Verdict::Kind::kNotStandard, 0};
  for (int label : prototile_labels(ring.n())) {
    Boundary b = build_boundary(ring, seq, label);
    if (!is_good_curve(b)) return {Verdict::Kind::kNotGoodCurve, label};
    bool ok = false;
    try {
      ok = ksk_check(b);
    } catch (const PairingError&) {
      ok = false;
    }
    if (!ok) return {Verdict::Kind::kKskFail, label};
  }
  return {};
}

namespace {
void write_checkpoint(const std::string& path, const std::string& token) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << token << "\n";
  }
  std::filesystem::rename(tmp, path);
}
}  // namespace

SweepStats sweep_ksk(const Ring& ring, ChunkIterator& it, const SweepOptions& opts) {
  SweepStats stats;
  bool have = !it.done();
  const unsigned threads = std::max(1u, opts.threads);
  std::vector<EdgeSequence> batch;
  std::vector<Verdict> verdicts;
  while (have && (opts.limit == 0 || stats.checked < opts.limit)) {
    batch.clear();
    while (have && batch.size() < std::max<std::size_t>(1, opts.batch) &&
           (opts.limit == 0 || stats.checked + batch.size() < opts.limit)) {
      batch.push_back(it.current());
      have = it.next();
    }
    verdicts.assign(batch.size(), Verdict{});
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
      for (std::size_t k; (k = cursor.fetch_add(1)) < batch.size();)
        verdicts[k] = check_sequence(ring, batch[k]);
    };
    if (threads == 1 || batch.size() < 2) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (std::size_t k = 0; k < batch.size(); ++k) {
      ++stats.checked;
      switch (verdicts[k].kind) {
        case Verdict::Kind::kPass:
          ++stats.passed;
          if (opts.on_pass) opts.on_pass(batch[k]);
          break;
        case Verdict::Kind::kNotStandard: ++stats.not_standard; break;
        case Verdict::Kind::kNotGoodCurve: ++stats.not_good_curve; break;
        case Verdict::Kind::kKskFail: ++stats.ksk_fail; break;
      }
    }
    stats.token = have ? it.permutation().token() : "done";
    if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, stats.token);
  }
  stats.finished = !have;
  if (stats.token.empty()) stats.token = have ? it.permutation().token() : "done";
  return stats;
}

}  // namespace rhomb
