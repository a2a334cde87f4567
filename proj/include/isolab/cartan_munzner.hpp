#pragma once

#include "isolab/multipoly.hpp"
#include "isolab/quaternion_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isolab {

/// Data of a Cartan-Munzner family on the round sphere S^n.
struct IsoparametricFamily {
  int n = 0;   ///< sphere dimension
  int l = 1;   ///< degree, one of 1, 2, 3, 4, 6
  int m1 = 0;  ///< multiplicities; equal when l is odd
  int m2 = 0;
  int c = 0;   ///< m2 - m1

  /// Throws UsageError unless (l/2)(m1 + m2) = n - 1, l is admissible and c = m2 - m1.
  void validate() const;

  friend bool operator==(const IsoparametricFamily&, const IsoparametricFamily&) = default;
};

/// Builds and validates the family of degree l with multiplicities (m1, m2).
IsoparametricFamily make_family(int l, int m1, int m2);

struct CatalogEntry {
  std::string name;
  MultiPoly polynomial;
  IsoparametricFamily family;
};

/// x_{n+1} on R^{n+1}.
CatalogEntry catalog_linear(int n);
/// |x|^2 - |y|^2 on R^n x R^k.
CatalogEntry catalog_product_spheres(int n, int k);
/// |z|^4 - 2(|x|^2 - |y|^2)^2 - 8<x,y>^2 on R^{n+1} x R^{n+1}.
CatalogEntry catalog_nomizu(int n);
/// |x|^4 - 2 F_0(x) on H^2 x H^2 = R^16.
CatalogEntry catalog_ozeki_takeuchi();

/// Resolves "linear", "product-spheres", "nomizu", "ozeki-takeuchi" with the given parameters.
CatalogEntry catalog(const std::string& family_id, int n = 0, int k = 0);

/// The quaternionic F_0 with u0, u1, v0, v1 given; works for any coefficient ring.
/// The first term is read as 4 |u0 v0* + u1 v1*|^2 (the conjugate pairing), which is
/// the reading that makes F real-valued.
template <typename T>
Quaternion<T> ozeki_takeuchi_f0(const Quaternion<T>& u0, const Quaternion<T>& u1, const Quaternion<T>& v0,
                                const Quaternion<T>& v1) {
  const Quaternion<T> a = u0 * conj(v0) + u1 * conj(v1);
  const Quaternion<T> a_bar = v0 * conj(u0) + v1 * conj(u1);
  const Quaternion<T> s = a + a_bar;
  const Quaternion<T> bracket = u1 * conj(u1) - v1 * conj(v1) + u0 * conj(v0) + v0 * conj(u0);
  Quaternion<T> four_a_abar = a * a_bar;
  four_a_abar = four_a_abar + four_a_abar;
  four_a_abar = four_a_abar + four_a_abar;
  return four_a_abar - s * s + bracket * bracket;
}

/// Expanded F_0 as a polynomial in 16 variables (u0 = x1..x4, u1 = x5..x8, v0 = x9..x12, v1 = x13..x16).
MultiPoly ozeki_takeuchi_f0_poly();

struct CartanMunznerReport {
  bool ok = false;
  std::optional<Rational> c;
  /// <grad F, grad F> - l^2 r^{2l-2}
  MultiPoly gradient_defect;
  /// Delta F - (1/2) c l^2 r^{l-2}, with c inferred from the coefficient of x_1^{l-2} (or zero
  /// when no consistent c exists).
  MultiPoly laplacian_defect;
};

/// Exact check of both Cartan-Munzner equations. Throws UsageError for non-homogeneous F or wrong
/// degree and InvariantViolation when l is odd but the inferred c is nonzero.
CartanMunznerReport verify_cartan_munzner(const MultiPoly& f, int l);

}  // namespace isolab
