#pragma once

#include "isolab/rational.hpp"

#include <vector>

namespace isolab {

/// Round product S^n x S^k with metric g0 + T g0 and the sphere-equation data it induces.
struct ProductSpec {
  int n = 0;
  int k = 0;
  Rational T;

  int m = 0;          ///< n + k
  Rational a_m;       ///< 4(m-1)/(m-2)
  Rational p_m;       ///< 2m/(m-2)
  Rational q;         ///< p_m - 1
  Rational s_bar;     ///< n(n-1) + k(k-1)/T
  Rational lambda;    ///< s_bar / a_m

  /// Vol(S^k, T g0) = T^{k/2} Vol(S^k).
  double fibre_volume() const;
};

ProductSpec product_spec(int n, int k, const Rational& T);

/// Vol(S^n) for the unit round sphere.
double sphere_volume(int n);

/// lambda_j^{l,q} = j l (n + j l - 1) / (q - 1): the j-th bifurcation value of degree l on S^n.
Rational bifurcation_lambda(int n, int l, int j, const Rational& q);

/// The T at which product_spec(n, k, T).lambda hits lambda_i^{1,q}; throws UsageError when that
/// value is not positive.
Rational T_threshold(int n, int k, int i);

/// T_i = 6 / (5 i (i+2) - 6) for S^3 x S^3.
Rational T_thresholds(int i);

/// Ascending bifurcation values of one degree l. The table has to reach past the lambda it is
/// used with, otherwise counting against it is rejected.
struct DegreeTable {
  int l = 1;
  std::vector<Rational> lambdas;
};

/// lambda_j^{l,q} for j = 1, 2, ... up to and including the first value >= bound.
DegreeTable degree_table(int n, int l, const Rational& q, const Rational& bound);

struct SolutionCount {
  int total = 0;
  std::vector<std::pair<int, int>> per_degree;  ///< (l, count)
};

/// Sum over degrees of #{j : lambda_j^{l,q} < spec.lambda}. Bifurcation values themselves are not
/// counted. Only nontrivial branches count; the constant solution is never included.
SolutionCount count_solutions(const ProductSpec& spec, const std::vector<DegreeTable>& degrees);

/// Convenience form that builds the tables for every l in `degrees`.
SolutionCount count_solutions(const ProductSpec& spec, const std::vector<int>& degrees);

/// 1/T > (6(n+5)(n+k-1) - n(n-1)) / (k(k-1)).
bool existence_threshold(int n, int k, const Rational& T);

/// s_bar > -a_m mu / (p_m - 2). Throws UsageError unless mu < 0 and m >= 3.
bool instability_predicate(const Rational& s_bar, const Rational& mu, int m);

}  // namespace isolab
