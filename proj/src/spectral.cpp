#include "isolab/spectral.hpp"

#include <cmath>

namespace isolab {

ReducedCoeffs reduced_coeffs(const IsoparametricFamily& family) {
  family.validate();
  const long n = family.n, l = family.l;
  ReducedCoeffs rc;
  rc.family = family;
  rc.a = RationalPolynomial({make_rational(family.c * l * l, 2), Rational(-l * (n + l - 1))});
  rc.b = RationalPolynomial({Rational(l * l), Rational(0), Rational(-l * l)});
  rc.a_minus = rc.a(Rational(-1));
  rc.a_plus = rc.a(Rational(1));
  if (rc.a_minus != Rational(l * l * (family.m2 + 1)) || rc.a_plus != Rational(-l * l * (family.m1 + 1)))
    throw InvariantViolation("endpoint values of a(t) do not factor through the multiplicities");
  return rc;
}

Rational sphere_eigenvalue(int n, int j) { return Rational(-static_cast<long>(j) * (n + j - 1)); }

RationalPolynomial apply_O(const RationalPolynomial& alpha, int j, const ReducedCoeffs& coeffs) {
  auto d1 = alpha.derivative();
  auto d2 = d1.derivative();
  return coeffs.b * d2 + coeffs.a * d1 - sphere_eigenvalue(coeffs.family.n, j) * alpha;
}

std::optional<RationalPolynomial> solve_monic_eigen_system(int j, int degree, const ReducedCoeffs& coeffs) {
  if (degree < 0) throw UsageError("degree must be non-negative");
  const Rational lambda = sphere_eigenvalue(coeffs.family.n, j);
  const Rational a0 = coeffs.a[0], a1 = coeffs.a[1];
  const Rational b0 = coeffs.b[0], b2 = coeffs.b[2];
  // O_j(t^k) = E_k t^k + F_k t^{k-1} + G_k t^{k-2}
  auto E = [&](long k) { return Rational(b2 * k * (k - 1) + a1 * k - lambda); };
  auto F = [&](long k) { return Rational(a0 * k); };
  auto G = [&](long k) { return Rational(b0 * k * (k - 1)); };

  const auto d = static_cast<std::size_t>(degree);
  std::vector<Rational> beta(d + 3, Rational(0));
  beta[d] = 1;
  if (E(degree) != 0) return std::nullopt;
  for (long m = degree - 1; m >= 0; --m) {
    const auto um = static_cast<std::size_t>(m);
    Rational rhs = F(m + 1) * beta[um + 1] + G(m + 2) * beta[um + 2];
    Rational e = E(m);
    if (e == 0) {
      if (rhs != 0) return std::nullopt;
      beta[um] = 0;
    } else {
      beta[um] = -rhs / e;
    }
  }
  beta.resize(d + 1);
  return RationalPolynomial(std::move(beta));
}

EigenPoly eigen_poly(int i, const IsoparametricFamily& family) {
  if (i < 0) throw UsageError("eigen index must be non-negative");
  const ReducedCoeffs rc = reduced_coeffs(family);
  const int j = i * family.l;
  auto p = solve_monic_eigen_system(j, i, rc);
  if (!p) throw InvariantViolation("triangular eigen system is singular at index " + std::to_string(i));
  return {i, std::move(*p), sphere_eigenvalue(family.n, j)};
}

double Weight::operator()(double t) const {
  return std::pow(1.0 - t, alpha.get_d()) * std::pow(1.0 + t, beta.get_d());
}

Weight weight_exponents(const IsoparametricFamily& family) {
  if (family.m1 < 1 || family.m2 < 1) throw UsageError("multiplicities must be positive");
  return {make_rational(family.m1 - 1, 2), make_rational(family.m2 - 1, 2)};
}

bool weight_identity_holds(const ReducedCoeffs& coeffs, const Weight& w) {
  const RationalPolynomial one_minus_t2({Rational(1), Rational(0), Rational(-1)});
  const RationalPolynomial one_minus_t({Rational(1), Rational(-1)});
  const RationalPolynomial one_plus_t({Rational(1), Rational(1)});
  RationalPolynomial lhs = coeffs.b.derivative() * one_minus_t2 + coeffs.b * (w.beta * one_minus_t - w.alpha * one_plus_t);
  return lhs == coeffs.a * one_minus_t2;
}

RationalPolynomial jacobi_oracle(int i, const Rational& alpha, const Rational& beta) {
  if (i < 0) throw UsageError("degree must be non-negative");
  if (alpha <= -1 || beta <= -1) throw UsageError("Jacobi exponents must exceed -1");
  RationalPolynomial prev;  // P_{-1} = 0
  RationalPolynomial cur = RationalPolynomial::constant(Rational(1));
  const RationalPolynomial t = RationalPolynomial::monomial(1);
  for (int k = 0; k < i; ++k) {
    Rational diag, offdiag;
    jacobi_recurrence(k, alpha, beta, diag, offdiag);
    RationalPolynomial next = (t - RationalPolynomial::constant(diag)) * cur - offdiag * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace isolab
