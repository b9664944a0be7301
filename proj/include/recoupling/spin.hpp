#pragma once

#include <cstdlib>

#include "recoupling/errors.hpp"

namespace recoupling {

// Exact half-integer, stored as twice its value. All selection rules reduce
// to integer arithmetic on `twice`, so there are no floating-point parity bugs.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

  constexpr double value() const { return 0.5 * static_cast<double>(twice); }
  constexpr bool is_integer() const { return twice % 2 == 0; }

  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
  friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }
};

// Angular momentum J >= 0 (integer or half-integer).
struct Spin {
  int twice = 0;

  constexpr Spin() = default;
  constexpr explicit Spin(int twice_value) : twice(twice_value) {
    if (twice_value < 0) throw DomainError("Spin: twice-value must be >= 0");
  }

  constexpr double value() const { return 0.5 * static_cast<double>(twice); }
  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr HalfInt as_half_int() const { return HalfInt(twice); }
};

// |M| <= J and M = J (mod 1).
constexpr bool magnetic_valid(Spin j, HalfInt m) {
  return std::abs(m.twice) <= j.twice && (j.twice - m.twice) % 2 == 0;
}

inline void require_magnetic(Spin j, HalfInt m, HalfInt mp) {
  if (!magnetic_valid(j, m) || !magnetic_valid(j, mp))
    throw InvalidMagnetic("magnetic numbers violate |M| <= J or parity");
}

// Triangle inequality |j1-j2| <= j3 <= j1+j2 plus integer total.
constexpr bool triangle_valid(Spin j1, Spin j2, Spin j3) {
  if ((j1.twice + j2.twice + j3.twice) % 2 != 0) return false;
  return j3.twice >= std::abs(j1.twice - j2.twice) && j3.twice <= j1.twice + j2.twice;
}

}  // namespace recoupling
