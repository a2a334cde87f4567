#include "isolab/products.hpp"

#include <cmath>
#include <numbers>

namespace isolab {

double sphere_volume(int n) {
  const double half = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double ProductSpec::fibre_volume() const { return std::pow(to_double(T), 0.5 * k) * sphere_volume(k); }

ProductSpec product_spec(int n, int k, const Rational& T) {
  if (n < 2 || k < 2) throw UsageError("product dimensions must be at least 2");
  if (T <= 0) throw UsageError("metric scale T must be positive");
  ProductSpec s;
  s.n = n;
  s.k = k;
  s.T = T;
  s.m = n + k;
  s.a_m = make_rational(4 * (s.m - 1), s.m - 2);
  s.p_m = make_rational(2 * s.m, s.m - 2);
  s.q = s.p_m - 1;
  s.s_bar = Rational(n * (n - 1)) + Rational(k * (k - 1)) / T;
  s.lambda = s.s_bar / s.a_m;
  return s;
}

Rational bifurcation_lambda(int n, int l, int j, const Rational& q) {
  if (q <= 1) throw UsageError("exponent q must exceed 1");
  const long jl = static_cast<long>(j) * l;
  return Rational(jl * (n + jl - 1)) / (q - 1);
}

Rational T_threshold(int n, int k, int i) {
  if (i < 1) throw UsageError("threshold index must be >= 1");
  const ProductSpec unit = product_spec(n, k, Rational(1));
  const Rational lambda_i = bifurcation_lambda(n, 1, i, unit.q);
  const Rational inv_T = (unit.a_m * lambda_i - n * (n - 1)) / (k * (k - 1));
  if (inv_T <= 0) throw UsageError("no positive metric scale reaches this bifurcation value");
  return 1 / inv_T;
}

Rational T_thresholds(int i) { return T_threshold(3, 3, i); }

DegreeTable degree_table(int n, int l, const Rational& q, const Rational& bound) {
  DegreeTable table{l, {}};
  for (int j = 1;; ++j) {
    table.lambdas.push_back(bifurcation_lambda(n, l, j, q));
    if (table.lambdas.back() >= bound) break;
  }
  return table;
}

SolutionCount count_solutions(const ProductSpec& spec, const std::vector<DegreeTable>& degrees) {
  SolutionCount out;
  for (const auto& table : degrees) {
    if (table.lambdas.empty() || table.lambdas.back() < spec.lambda)
      throw UsageError("bifurcation table for l = " + std::to_string(table.l) + " does not reach lambda");
    int count = 0;
    for (const auto& value : table.lambdas)
      if (value < spec.lambda) ++count;
    out.per_degree.emplace_back(table.l, count);
    out.total += count;
  }
  return out;
}

SolutionCount count_solutions(const ProductSpec& spec, const std::vector<int>& degrees) {
  std::vector<DegreeTable> tables;
  tables.reserve(degrees.size());
  for (int l : degrees) tables.push_back(degree_table(spec.n, l, spec.q, spec.lambda));
  return count_solutions(spec, tables);
}

bool existence_threshold(int n, int k, const Rational& T) {
  if (n < 2 || k < 2) throw UsageError("product dimensions must be at least 2");
  if (T <= 0) throw UsageError("metric scale T must be positive");
  const Rational bound = Rational(6 * (n + 5) * (n + k - 1) - n * (n - 1)) / (k * (k - 1));
  return 1 / T > bound;
}

bool instability_predicate(const Rational& s_bar, const Rational& mu, int m) {
  if (mu >= 0) throw UsageError("instability predicate needs a negative eigenvalue");
  if (m < 3) throw UsageError("total dimension must be at least 3");
  const Rational a_m = make_rational(4 * (m - 1), m - 2);
  const Rational p_m = make_rational(2 * m, m - 2);
  return s_bar > -a_m * mu / (p_m - 2);
}

}  // namespace isolab
