#pragma once

#include "isolab/polynomial.hpp"

#include <vector>

namespace isolab {

/// Sturm chain p, p', -rem(p, p'), ... over Q. Each remainder is divided by the absolute value
/// of its leading coefficient, which keeps signs intact and bounds coefficient growth.
class SturmSequence {
public:
  explicit SturmSequence(const RationalPolynomial& p);

  const std::vector<RationalPolynomial>& chain() const { return chain_; }
  /// Number of sign changes along the chain at t (zeros skipped).
  int variations(const Rational& t) const;
  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;
  /// True when gcd(p, p') is constant, i.e. all roots are simple.
  bool square_free() const { return chain_.back().degree() == 0; }

private:
  std::vector<RationalPolynomial> chain_;
};

/// Half-open interval (lo, hi] with rational endpoints.
struct RootInterval {
  Rational lo;
  Rational hi;
};

/// Disjoint intervals in (-1, 1), each holding exactly one root of p.
/// Throws InvariantViolation if p has a multiple root or a root count different from
/// `expected_roots` (when non-negative).
std::vector<RootInterval> isolate_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi,
                                        int expected_roots = -1);

/// Isolates the roots of an eigenpolynomial p_i in (-1, 1); exactly i intervals are required.
std::vector<RootInterval> root_isolation(const RationalPolynomial& p);

/// True when between any two consecutive roots of `outer` lies exactly one root of `inner`,
/// and `inner` has no other roots in (-1, 1). Requires deg outer = deg inner + 1.
bool roots_interlace(const RationalPolynomial& inner, const RationalPolynomial& outer);

}  // namespace isolab
