#pragma once

// Exact arithmetic in Z[zeta], zeta = exp(i*pi/n) for odd n.
//
// Elements are stored in the power basis 1, zeta, ..., zeta^(d-1) where d is
// the degree of the minimal polynomial of zeta (the 2n-th cyclotomic
// polynomial). The representation is unique, so equality of points is plain
// coefficient equality.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace rhomb {

inline constexpr int kMaxDegree = 24;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

class CycloInt {
 public:
  using Coeffs = std::array<std::int64_t, kMaxDegree>;

  constexpr CycloInt() : c_{} {}
  explicit CycloInt(const Coeffs& c) : c_(c) {}

  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  const Coeffs& coeffs() const { return c_; }

  bool is_zero() const;

  CycloInt& operator+=(const CycloInt& o);
  CycloInt& operator-=(const CycloInt& o);
  CycloInt operator-() const;
  CycloInt& operator*=(std::int64_t k);

  friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
  friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
  friend CycloInt operator*(CycloInt a, std::int64_t k) { return a *= k; }
  friend CycloInt operator*(std::int64_t k, CycloInt a) { return a *= k; }

  friend bool operator==(const CycloInt& a, const CycloInt& b) = default;
  friend auto operator<=>(const CycloInt& a, const CycloInt& b) = default;

  std::size_t hash() const;

 private:
  Coeffs c_;
};

/// Arithmetic context for one odd n. Obtain instances through Ring::of(n);
/// they live for the whole program and are immutable.
class Ring {
 public:
  static const Ring& of(int n);

  int n() const { return n_; }
  int degree() const { return degree_; }
  /// Number of directions, 2n.
  int directions() const { return 2 * n_; }
  /// Monic minimal polynomial of zeta, lowest coefficient first, length d+1.
  const std::vector<std::int64_t>& min_poly() const { return min_poly_; }

  /// e_k, k taken mod 2n.
  const CycloInt& direction(int k) const { return powers_[wrap(k)]; }
  /// zeta^k * x.
  CycloInt rotate(const CycloInt& x, int k) const;
  CycloInt mul(const CycloInt& a, const CycloInt& b) const;
  /// Complex conjugate (zeta -> zeta^-1).
  CycloInt conj(const CycloInt& x) const;
  /// Rotates p by zeta^k about center.
  CycloInt rotate_about(const CycloInt& p, const CycloInt& center, int k) const;

  Vec2 to_cartesian(const CycloInt& x) const;

  /// Direction index reduced into [0, 2n).
  int wrap(int k) const {
    int m = k % (2 * n_);
    return m < 0 ? m + 2 * n_ : m;
  }

  std::string to_string(const CycloInt& x) const;
  std::vector<std::int64_t> to_vector(const CycloInt& x) const;
  /// Throws std::invalid_argument if v has the wrong length.
  CycloInt from_vector(const std::vector<std::int64_t>& v) const;

 private:
  explicit Ring(int n);

  int n_;
  int degree_;
  std::vector<std::int64_t> min_poly_;
  std::vector<CycloInt> powers_;  // zeta^k reduced, k in [0, 2n)
  std::vector<Vec2> basis_;       // numeric value of zeta^j, j < degree
};

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree
/// first.
std::vector<std::int64_t> cyclotomic_polynomial(int m);

}  // namespace rhomb

template <>
struct std::hash<rhomb::CycloInt> {
  std::size_t operator()(const rhomb::CycloInt& x) const noexcept {
    return x.hash();
  }
};
