#include "isolab/quadrature.hpp"
#include "isolab/spectral.hpp"
#include "isolab/sturm.hpp"

#include <doctest.h>

#include <cmath>

using namespace isolab;

namespace {

const RationalPolynomial T = RationalPolynomial::monomial(1);

RationalPolynomial poly(std::initializer_list<Rational> c) { return RationalPolynomial(c); }

std::vector<IsoparametricFamily> test_families() {
  return {catalog_linear(4).family,          catalog_product_spheres(3, 3).family,
          catalog_nomizu(2).family,          catalog_ozeki_takeuchi().family,
          catalog_product_spheres(4, 2).family, catalog_nomizu(4).family,
          make_family(1, 1, 1),              make_family(3, 2, 2),
          make_family(6, 1, 1)};
}

// Monic Legendre polynomials from Bonnet's recurrence (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}.
RationalPolynomial monic_legendre(int degree) {
  RationalPolynomial prev, cur = RationalPolynomial::constant(Rational(1));
  for (int k = 0; k < degree; ++k) {
    RationalPolynomial next = make_rational(2 * k + 1, k + 1) * (T * cur) - make_rational(k, k + 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur.monic();
}

}  // namespace

TEST_CASE("reduced_coeffs instantiations") {
  auto s3 = reduced_coeffs(make_family(1, 2, 2));
  CHECK(s3.family.n == 3);
  CHECK(s3.a == poly({0, -3}));
  CHECK(s3.b == poly({1, 0, -1}));

  auto prod = reduced_coeffs(catalog_product_spheres(3, 3).family);
  CHECK(prod.a == poly({0, -12}));
  CHECK(prod.b == poly({4, 0, -4}));
  CHECK(prod.a_minus == 12);

  auto ot = reduced_coeffs(catalog_ozeki_takeuchi().family);
  CHECK(ot.a == poly({8, -72}));
  CHECK(ot.a_minus == 80);
  CHECK(ot.a_plus == -64);

  for (const auto& fam : test_families()) {
    auto rc = reduced_coeffs(fam);
    CHECK(rc.b(Rational(1)) == 0);
    CHECK(rc.b(Rational(-1)) == 0);
    CHECK(rc.b(Rational(0)) > 0);
    CHECK(rc.a_minus > 0);
    CHECK(rc.a_plus < 0);
  }
}

TEST_CASE("apply_O examples") {
  auto rc = reduced_coeffs(make_family(2, 2, 2));
  CHECK(apply_O(RationalPolynomial::constant(Rational(1)), 0, rc).is_zero());
  CHECK(apply_O(T, 2, rc).is_zero());
  auto ot = reduced_coeffs(catalog_ozeki_takeuchi().family);
  auto image = apply_O(T * T, 8, ot);
  CHECK(image.degree() <= 1);
  // c != 0: O_l(t) is the constant c l^2 / 2
  CHECK(apply_O(T, 4, ot) == RationalPolynomial::constant(Rational(8)));
}

TEST_CASE("eigen_poly low-degree examples") {
  for (const auto& fam : test_families()) {
    CHECK(eigen_poly(0, fam).coeffs == RationalPolynomial::constant(Rational(1)));
    CHECK(eigen_poly(0, fam).eigenvalue == 0);
  }
  CHECK(eigen_poly(1, make_family(2, 2, 2)).coeffs == T);
  CHECK(eigen_poly(2, make_family(1, 1, 1)).coeffs == poly({make_rational(-1, 3), 0, 1}));

  // p_1 = t + beta solves a0 + l(n+l-1) beta = 0, i.e. beta = -c l / (2(n+l-1)).
  for (const auto& fam : test_families()) {
    auto p1 = eigen_poly(1, fam).coeffs;
    CHECK(p1 == T - RationalPolynomial::constant(make_rational(fam.c * fam.l, 2 * (fam.n + fam.l - 1))));
  }
  CHECK(eigen_poly(1, catalog_ozeki_takeuchi().family).coeffs == T - RationalPolynomial::constant(make_rational(1, 9)));
  // For l = 2 the harmonic-projection shift t - c/(n+1) coincides with the triangular solve...
  auto l2 = catalog_product_spheres(4, 2).family;
  CHECK(eigen_poly(1, l2).coeffs == T - RationalPolynomial::constant(make_rational(l2.c, l2.n + 1)));
  // ...but for l = 4 with c != 0 it does not solve O_l.
  auto ot = catalog_ozeki_takeuchi().family;
  auto shifted = T - RationalPolynomial::constant(make_rational(ot.c, ot.n + 1));
  CHECK_FALSE(apply_O(shifted, ot.l, reduced_coeffs(ot)).is_zero());
}

TEST_CASE("eigen_poly agrees with the Legendre oracle on S^2") {
  auto fam = make_family(1, 1, 1);
  for (int i = 0; i <= 12; ++i) CHECK(eigen_poly(i, fam).coeffs == monic_legendre(i));
}

TEST_CASE("eigenpolynomial properties for i <= 20") {
  for (const auto& fam : test_families()) {
    CAPTURE(fam.n);
    CAPTURE(fam.l);
    CAPTURE(fam.m1);
    CAPTURE(fam.m2);
    const auto rc = reduced_coeffs(fam);
    const auto w = weight_exponents(fam);
    const Rational endpoint_denominator = make_rational(fam.c * fam.l * fam.l, 2) + fam.l * (fam.n + fam.l - 1);
    std::vector<RationalPolynomial> ps;
    for (int i = 0; i <= 21; ++i) ps.push_back(eigen_poly(i, fam).coeffs);
    for (int i = 0; i <= 20; ++i) {
      const auto& p = ps[static_cast<std::size_t>(i)];
      CHECK(p.degree() == i);
      CHECK(p.leading() == 1);
      CHECK(apply_O(p, i * fam.l, rc).is_zero());
      CHECK(root_isolation(p).size() == static_cast<std::size_t>(i));
      CHECK(roots_interlace(p, ps[static_cast<std::size_t>(i + 1)]));
      CHECK(p == jacobi_oracle(i, w.alpha, w.beta));
      const Rational lambda = sphere_eigenvalue(fam.n, i * fam.l);
      CHECK(eigen_poly(i, fam).eigenvalue == lambda);
      const Rational p_at = p(Rational(-1));
      REQUIRE(p_at != 0);
      CHECK(p.derivative()(Rational(-1)) / p_at == lambda / endpoint_denominator);
    }
  }
}

TEST_CASE("only multiples of l carry polynomial eigenfunctions") {
  for (const auto& fam : test_families()) {
    if (fam.l == 1) continue;
    auto rc = reduced_coeffs(fam);
    for (int j = 1; j < 3 * fam.l; ++j) {
      if (j % fam.l == 0) continue;
      for (int d = 0; d <= 20; ++d) CHECK_FALSE(solve_monic_eigen_system(j, d, rc).has_value());
    }
    CHECK(solve_monic_eigen_system(2 * fam.l, 2, rc).has_value());
  }
}

TEST_CASE("weight exponents and the symmetry identity") {
  auto lin = catalog_linear(5).family;
  auto w = weight_exponents(lin);
  CHECK(w.alpha == make_rational(3, 2));
  CHECK(w.beta == make_rational(3, 2));

  auto prod = catalog_product_spheres(4, 3).family;
  auto wp = weight_exponents(prod);
  CHECK(wp.alpha == make_rational(1, 2));
  CHECK(wp.beta == Rational(1));

  for (const auto& fam : test_families()) {
    auto rc = reduced_coeffs(fam);
    auto wf = weight_exponents(fam);
    CHECK(weight_identity_holds(rc, wf));
    CHECK_FALSE(weight_identity_holds(rc, Weight{wf.beta + 1, wf.alpha}));
    CHECK(wf(0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("jacobi_oracle examples") {
  CHECK(jacobi_oracle(0, Rational(3), Rational(1)) == RationalPolynomial::constant(Rational(1)));
  CHECK(jacobi_oracle(1, make_rational(1, 2), make_rational(1, 2)) == T);
  CHECK(jacobi_oracle(2, Rational(0), Rational(0)) == poly({make_rational(-1, 3), 0, 1}));
  CHECK_THROWS_AS(jacobi_oracle(2, Rational(-1), Rational(0)), UsageError);
}

TEST_CASE("root isolation examples") {
  CHECK(root_isolation(RationalPolynomial::constant(Rational(1))).empty());

  auto one = root_isolation(T);
  REQUIRE(one.size() == 1);
  CHECK(one[0].lo < 0);
  CHECK(one[0].hi >= 0);

  auto two = root_isolation(poly({make_rational(-1, 3), 0, 1}));
  REQUIRE(two.size() == 2);
  // each interval brackets one of -1/sqrt(3), +1/sqrt(3)
  CHECK(two[0].hi <= 0);
  CHECK(two[1].lo >= 0);
  for (const auto& iv : two) {
    const Rational third = make_rational(1, 3);
    const Rational near = iv.hi <= 0 ? -iv.hi : iv.lo;
    const Rational far = iv.hi <= 0 ? -iv.lo : iv.hi;
    CHECK(near * near <= third);
    CHECK(far * far >= third);
  }

  CHECK_THROWS_AS(root_isolation(poly({make_rational(1, 4), -1, 1})), InvariantViolation);  // (t - 1/2)^2
  CHECK_THROWS_AS(root_isolation(poly({-4, 0, 1})), InvariantViolation);                  // roots +-2
}

TEST_CASE("interlacing detects violations") {
  CHECK(roots_interlace(T, poly({make_rational(-1, 3), 0, 1})));
  CHECK_FALSE(roots_interlace(T - RationalPolynomial::constant(make_rational(9, 10)), poly({make_rational(-1, 3), 0, 1})));
}

TEST_CASE("Gauss-Jacobi rule") {
  GaussJacobi legendre(10, Rational(0), Rational(0));
  CHECK(static_cast<double>(legendre.mass()) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(legendre.integrate([](double t) { return t * t; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(legendre.integrate([](double t) { return std::pow(t, 18); }) == doctest::Approx(2.0 / 19.0).epsilon(1e-13));

  GaussJacobi cheb2(8, make_rational(1, 2), make_rational(1, 2));
  const double pi = std::acos(-1.0);
  CHECK(static_cast<double>(cheb2.mass()) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(cheb2.integrate([](double t) { return t * t; }) == doctest::Approx(pi / 8).epsilon(1e-14));

  auto rule = gauss_jacobi_rule(Rational(1), Rational(3, 2));
  CHECK(rule->size() == 200);
  CHECK(rule.get() == gauss_jacobi_rule(Rational(1), Rational(3, 2)).get());
  Float50 total = 0;
  for (const auto& w : rule->weights()) total += w;
  CHECK(static_cast<double>(abs(total - rule->mass())) < 1e-40);
}

TEST_CASE("eigenpolynomials are orthogonal for the weight") {
  for (const auto& fam : test_families()) {
    auto w = weight_exponents(fam);
    auto rule = gauss_jacobi_rule(w.alpha, w.beta);
    std::vector<Polynomial<Float50>> ps;
    for (int i = 0; i <= 10; ++i) ps.push_back(eigen_poly(i, fam).coeffs.cast<Float50>());
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j < i; ++j) {
        const auto& p = ps[static_cast<std::size_t>(i)];
        const auto& q = ps[static_cast<std::size_t>(j)];
        Float50 pq = rule->integrate_high([&](const Float50& t) { return p(t) * q(t); });
        Float50 pp = rule->integrate_high([&](const Float50& t) { return p(t) * p(t); });
        Float50 qq = rule->integrate_high([&](const Float50& t) { return q(t) * q(t); });
        CHECK(static_cast<double>(abs(pq) / sqrt(pp * qq)) < 1e-10);
      }
  }
}
