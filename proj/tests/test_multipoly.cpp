#include "isolab/multipoly.hpp"

#include <doctest.h>

#include <random>

using namespace isolab;

namespace {

MultiPoly var(std::size_t n, std::size_t j) { return MultiPoly::variable(n, j); }

// Random polynomial with small rational coefficients and total degree <= max_degree.
MultiPoly random_poly(std::mt19937& rng, std::size_t vars, int max_terms, int max_degree) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, vars - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  MultiPoly p(vars);
  const int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    Exponents e(vars, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[pick(rng)];
    p.add_term(e, make_rational(num(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("poly_arith: difference of squares, annihilator, cancellation") {
  const auto x1 = var(2, 0), x2 = var(2, 1);
  auto prod = poly_arith(x1 + x2, x1 - x2, ArithOp::mul);
  CHECK(prod == x1 * x1 - x2 * x2);
  CHECK(prod.size() == 2);

  CHECK(poly_arith(prod, MultiPoly(2), ArithOp::mul).is_zero());

  auto third = MultiPoly::constant(2, make_rational(1, 3));
  auto sum = poly_arith(x1 * x1 - third, third, ArithOp::add);
  CHECK(sum == x1 * x1);
  CHECK(sum.size() == 1);
  CHECK(sum.coefficient(Exponents{0, 0}) == 0);
}

TEST_CASE("poly_arith rejects mismatched variable counts") {
  CHECK_THROWS_AS(poly_arith(var(2, 0), var(3, 0), ArithOp::add), UsageError);
  CHECK_THROWS_AS(poly_arith(var(2, 0), var(3, 0), ArithOp::mul), UsageError);
}

TEST_CASE("gradient_inner examples") {
  CHECK(gradient_inner(var(5, 4)) == MultiPoly::constant(5, Rational(1)));
  CHECK(gradient_inner(MultiPoly::constant(4, Rational(7))).is_zero());

  // x^2 - y^2 on R^{3+2}: gradient is (2x, -2y), so |grad|^2 = 4 |z|^2.
  MultiPoly f(5);
  for (std::size_t j = 0; j < 5; ++j) {
    Exponents e(5, 0);
    e[j] = 2;
    f.add_term(e, Rational(j < 3 ? 1 : -1));
  }
  CHECK(gradient_inner(f) == Rational(4) * MultiPoly::radius_power(5, 1));
}

TEST_CASE("euclidean_laplacian examples") {
  CHECK(euclidean_laplacian(var(5, 4)).is_zero());
  CHECK(euclidean_laplacian(var(1, 0) * var(1, 0)) == MultiPoly::constant(1, Rational(2)));

  // x^2 - y^2 with n = 4, k = 2: Delta = 2n - 2k = 4.
  MultiPoly f(6);
  for (std::size_t j = 0; j < 6; ++j) {
    Exponents e(6, 0);
    e[j] = 2;
    f.add_term(e, Rational(j < 4 ? 1 : -1));
  }
  CHECK(euclidean_laplacian(f) == MultiPoly::constant(6, Rational(4)));
}

TEST_CASE("differential operators: linearity and the product rule on random polynomials") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t vars = 1 + trial % 4;
    auto p = random_poly(rng, vars, 6, 4);
    auto q = random_poly(rng, vars, 6, 4);
    const Rational s = make_rational(trial - 20, 7);
    CAPTURE(p.to_string());
    CAPTURE(q.to_string());
    CHECK(euclidean_laplacian(p + s * q) == euclidean_laplacian(p) + s * euclidean_laplacian(q));
    CHECK(gradient_pairing(p + s * q, q) == gradient_pairing(p, q) + s * gradient_inner(q));
    CHECK(euclidean_laplacian(p * q) ==
          p * euclidean_laplacian(q) + q * euclidean_laplacian(p) + Rational(2) * gradient_pairing(p, q));
  }
}

TEST_CASE("Euler identity for homogeneous polynomials") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t vars = 2 + trial % 3;
    const int d = 1 + trial % 5;
    MultiPoly h(vars);
    const auto source = random_poly(rng, vars, 8, d);
    for (const auto& [key, c] : source.terms()) {
      Exponents e = key;
      // pad every monomial to degree d in the last variable
      e.back() = static_cast<std::uint16_t>(e.back() + d - static_cast<int>(total_degree(e)));
      if (static_cast<int>(total_degree(e)) == d) h.add_term(e, c);
    }
    REQUIRE(h.is_homogeneous());
    CHECK(euler_operator(h) == Rational(d) * h);
  }
}

TEST_CASE("homogeneity and degree") {
  auto x = var(3, 0), y = var(3, 1);
  CHECK((x * y + y * y).is_homogeneous());
  CHECK_FALSE((x * y + y).is_homogeneous());
  CHECK((x * y + y).degree() == 2);
  CHECK(MultiPoly(3).degree() == -1);
}

TEST_CASE("JSON serialization round-trips exactly") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(rng, 1 + trial % 5, 10, 5);
    auto j = to_json(p);
    CHECK(j.at("num_vars").get<std::size_t>() == p.num_vars());
    CHECK(multipoly_from_json(nlohmann::json::parse(j.dump())) == p);
  }
  auto j = to_json(make_rational(-3, 4) * var(2, 1));
  CHECK(j["terms"][0]["exps"] == nlohmann::json::array({0, 1}));
  CHECK(j["terms"][0]["num"] == "-3");
  CHECK(j["terms"][0]["den"] == "4");

  CHECK_THROWS_AS(multipoly_from_json(nlohmann::json{{"num_vars", 2}}), UsageError);
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("2/3") == make_rational(2, 3));
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(parse_rational("0.125") == make_rational(1, 8));
  CHECK(parse_rational("1.5e-3") == make_rational(3, 2000));
  CHECK(parse_rational("12") == Rational(12));
  CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
  CHECK_THROWS_AS(parse_rational("abc"), UsageError);
}
