#pragma once

#include "isolab/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace isolab {

using Exponents = std::vector<std::uint16_t>;

/// Graded lexicographic order: total degree first, then reverse lex on exponents.
struct GradedLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

std::uint32_t total_degree(const Exponents& e);

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored and
/// every exponent vector has length num_vars().
class MultiPoly {
public:
  using TermMap = std::map<Exponents, Rational, GradedLess>;

  explicit MultiPoly(std::size_t num_vars = 1);

  static MultiPoly constant(std::size_t num_vars, const Rational& value);
  static MultiPoly variable(std::size_t num_vars, std::size_t index);
  /// (x_0^2 + ... + x_{N-1}^2)^power
  static MultiPoly radius_power(std::size_t num_vars, unsigned power);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the given monomial (zero if absent).
  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  /// -1 for the zero polynomial.
  int degree() const;
  /// True for the zero polynomial and for polynomials whose terms share one degree.
  bool is_homogeneous() const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  MultiPoly derivative(std::size_t var) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& s);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

private:
  void check_compatible(const MultiPoly& other) const;

  std::size_t num_vars_;
  TermMap terms_;
};

enum class ArithOp { add, sub, mul };

/// Exact p op q; throws UsageError if the variable counts differ.
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, ArithOp op);

MultiPoly pow(const MultiPoly& p, unsigned exponent);

/// Sum of squared partial derivatives.
MultiPoly gradient_inner(const MultiPoly& f);
/// Sum of the bilinear pairing <grad p, grad q>.
MultiPoly gradient_pairing(const MultiPoly& p, const MultiPoly& q);
/// Sum of pure second partials.
MultiPoly euclidean_laplacian(const MultiPoly& f);
/// Sum of x_j * dF/dx_j.
MultiPoly euler_operator(const MultiPoly& f);

nlohmann::json to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const nlohmann::json& j);

}  // namespace isolab
