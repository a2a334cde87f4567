#pragma once

#include "isolab/cartan_munzner.hpp"
#include "isolab/polynomial.hpp"

#include <optional>

namespace isolab {

/// Coefficients of the reduced operator phi -> b phi'' + a phi' acting on functions of f.
struct ReducedCoeffs {
  IsoparametricFamily family;
  RationalPolynomial a;  ///< -l(n+l-1) t + c l^2 / 2
  RationalPolynomial b;  ///< l^2 (1 - t^2)
  Rational a_minus;      ///< a(-1) = l^2 (m2 + 1)
  Rational a_plus;       ///< a(+1) = -l^2 (m1 + 1)
};

ReducedCoeffs reduced_coeffs(const IsoparametricFamily& family);

/// Eigenvalue -j(n+j-1) of the sphere Laplacian.
Rational sphere_eigenvalue(int n, int j);

/// O_j(alpha) = b alpha'' + a alpha' - lambda_j alpha, with lambda_j = -j(n+j-1).
RationalPolynomial apply_O(const RationalPolynomial& alpha, int j, const ReducedCoeffs& coeffs);

struct EigenPoly {
  int index = 0;
  RationalPolynomial coeffs;  ///< monic, degree index
  Rational eigenvalue;        ///< lambda_{il} = -il(n+il-1)
};

/// Monic degree-`degree` polynomial solving O_j(p) = 0, or nullopt when the triangular
/// system is inconsistent (no such polynomial exists).
std::optional<RationalPolynomial> solve_monic_eigen_system(int j, int degree, const ReducedCoeffs& coeffs);

/// The unique monic eigenpolynomial p_i with O_{il}(p_i) = 0.
EigenPoly eigen_poly(int i, const IsoparametricFamily& family);

/// Exponents of the weight w(t) = (1-t)^alpha (1+t)^beta making the reduced operator symmetric.
struct Weight {
  Rational alpha;  ///< (m1 - 1) / 2
  Rational beta;   ///< (m2 - 1) / 2

  double operator()(double t) const;
};

Weight weight_exponents(const IsoparametricFamily& family);

/// Checks (b w)' = a w exactly. With w'/w = -alpha/(1-t) + beta/(1+t) the identity is
/// equivalent to the polynomial identity b'(1-t^2) + b(beta(1-t) - alpha(1+t)) = a(1-t^2).
bool weight_identity_holds(const ReducedCoeffs& coeffs, const Weight& w);

/// Monic Jacobi polynomial of degree i for the weight (1-t)^alpha (1+t)^beta, from the
/// three-term recurrence.
RationalPolynomial jacobi_oracle(int i, const Rational& alpha, const Rational& beta);

/// Monic recurrence coefficients: P_{k+1} = (t - diag_k) P_k - offdiag_k P_{k-1}.
/// offdiag_0 is unused and set to zero.
template <typename Scalar>
void jacobi_recurrence(int k, const Scalar& alpha, const Scalar& beta, Scalar& diag, Scalar& offdiag) {
  const Scalar ab = alpha + beta;
  const Scalar two_k_ab = Scalar(2 * k) + ab;
  if (k == 0) {
    diag = (beta - alpha) / (ab + Scalar(2));
    offdiag = Scalar(0);
    return;
  }
  diag = (beta * beta - alpha * alpha) / (two_k_ab * (two_k_ab + Scalar(2)));
  offdiag = Scalar(4 * k) * (Scalar(k) + alpha) * (Scalar(k) + beta) * (Scalar(k) + ab) /
            (two_k_ab * two_k_ab * (two_k_ab + Scalar(1)) * (two_k_ab - Scalar(1)));
}

}  // namespace isolab
