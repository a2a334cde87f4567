#pragma once

#include "isolab/multipoly.hpp"

#include <array>

namespace isolab {

/// Quaternion a + b i + c j + d k with entries in any ring (Rational, double, MultiPoly).
template <typename T>
struct Quaternion {
  std::array<T, 4> c;

  const T& real() const { return c[0]; }

  friend Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    return {{x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]}};
  }
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    return {{x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]}};
  }
  // Hamilton product: ij = k, jk = i, ki = j.
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    const auto& [a1, b1, c1, d1] = x.c;
    const auto& [a2, b2, c2, d2] = y.c;
    return {{a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
             a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
             a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
             a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2}};
  }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

template <typename T>
Quaternion<T> conj(const Quaternion<T>& q) {
  return {{q.c[0], -q.c[1], -q.c[2], -q.c[3]}};
}

/// Quaternion whose four components are polynomials in a common set of real variables.
using QuaternionPoly = Quaternion<MultiPoly>;

/// The quaternion x_{first} + x_{first+1} i + x_{first+2} j + x_{first+3} k.
QuaternionPoly quaternion_coordinates(std::size_t num_vars, std::size_t first);

QuaternionPoly quaternion_scalar(std::size_t num_vars, const Rational& value);

}  // namespace isolab
