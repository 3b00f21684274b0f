#include "rhomb/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rhomb {

bool CycloInt::is_zero() const {
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

CycloInt& CycloInt::operator+=(const CycloInt& o) {
  for (int i = 0; i < kMaxDegree; ++i) c_[i] += o.c_[i];
  return *this;
}

CycloInt& CycloInt::operator-=(const CycloInt& o) {
  for (int i = 0; i < kMaxDegree; ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloInt CycloInt::operator-() const {
  CycloInt r;
  for (int i = 0; i < kMaxDegree; ++i) r.c_[i] = -c_[i];
  return r;
}

CycloInt& CycloInt::operator*=(std::int64_t k) {
  for (auto& v : c_) v *= k;
  return *this;
}

std::size_t CycloInt::hash() const {
  // FNV-1a over the coefficient words
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : c_) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of a by monic b.
Poly divide_monic(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {0};
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t coef = a[i];
    q[i - db] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= coef * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m < 1");
  // x^m - 1 divided by Phi_d for every proper divisor d of m
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  }
  return p;
}

Ring::Ring(int n) : n_(n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("ring order n must be odd and >= 3");
  min_poly_ = cyclotomic_polynomial(2 * n);
  degree_ = static_cast<int>(min_poly_.size()) - 1;
  if (degree_ > kMaxDegree)
    throw std::invalid_argument("ring degree exceeds kMaxDegree");

  powers_.resize(2 * n);
  CycloInt x;
  x[0] = 1;
  for (int k = 0; k < 2 * n; ++k) {
    powers_[k] = x;
    // multiply by zeta: shift up, fold the top term back with the minimal
    // polynomial
    const std::int64_t top = x[degree_ - 1];
    for (int j = degree_ - 1; j > 0; --j) x[j] = x[j - 1];
    x[0] = 0;
    for (int j = 0; j < degree_; ++j) x[j] -= top * min_poly_[j];
  }

  basis_.resize(degree_);
  for (int j = 0; j < degree_; ++j) {
    const double a = std::numbers::pi * j / n;
    basis_[j] = {std::cos(a), std::sin(a)};
  }
}

const Ring& Ring::of(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Ring>> registry;
  std::lock_guard lock(mu);
  auto it = registry.find(n);
  if (it == registry.end())
    it = registry.emplace(n, std::unique_ptr<Ring>(new Ring(n))).first;
  return *it->second;
}

CycloInt Ring::rotate(const CycloInt& x, int k) const {
  k = wrap(k);
  if (k == 0) return x;
  CycloInt r;
  for (int j = 0; j < degree_; ++j) {
    if (x[j] == 0) continue;
    r += powers_[wrap(j + k)] * x[j];
  }
  return r;
}

CycloInt Ring::mul(const CycloInt& a, const CycloInt& b) const {
  std::vector<std::int64_t> prod(2 * degree_, 0);
  for (int i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < degree_; ++j) prod[i + j] += a[i] * b[j];
  }
  CycloInt r;
  for (int k = 0; k < 2 * degree_ - 1; ++k) {
    if (prod[k] == 0) continue;
    r += powers_[k] * prod[k];
  }
  return r;
}

CycloInt Ring::conj(const CycloInt& x) const {
  CycloInt r;
  for (int j = 0; j < degree_; ++j) {
    if (x[j] == 0) continue;
    r += powers_[wrap(-j)] * x[j];
  }
  return r;
}

CycloInt Ring::rotate_about(const CycloInt& p, const CycloInt& center,
                            int k) const {
  return center + rotate(p - center, k);
}

Vec2 Ring::to_cartesian(const CycloInt& x) const {
  Vec2 v;
  for (int j = 0; j < degree_; ++j) {
    v.x += static_cast<double>(x[j]) * basis_[j].x;
    v.y += static_cast<double>(x[j]) * basis_[j].y;
  }
  return v;
}

std::string Ring::to_string(const CycloInt& x) const {
  std::ostringstream os;
  os << '[';
  for (int j = 0; j < degree_; ++j) {
    if (j) os << ',';
    os << x[j];
  }
  os << ']';
  return os.str();
}

std::vector<std::int64_t> Ring::to_vector(const CycloInt& x) const {
  return {x.coeffs().begin(), x.coeffs().begin() + degree_};
}

CycloInt Ring::from_vector(const std::vector<std::int64_t>& v) const {
  if (static_cast<int>(v.size()) != degree_)
    throw std::invalid_argument("coefficient vector has length " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(degree_));
  CycloInt r;
  for (int j = 0; j < degree_; ++j) r[j] = v[j];
  return r;
}

}  // namespace rhomb
