#pragma once

#include "isolab/rational.hpp"
#include "isolab/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace isolab {

/// Dense univariate polynomial sum_k coeffs[k] t^k over a field-like Scalar.
/// The coefficient vector never has a trailing zero; the zero polynomial is empty.
template <typename Scalar>
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Scalar& v) { return Polynomial({v}); }
  static Polynomial monomial(int degree, const Scalar& v = Scalar(1)) {
    std::vector<Scalar> c(static_cast<std::size_t>(degree) + 1, Scalar(0));
    c.back() = v;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar operator[](int k) const {
    return k >= 0 && k <= degree() ? c_[static_cast<std::size_t>(k)] : Scalar(0);
  }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  template <typename T>
  T operator()(const T& t) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + scalar_cast<T>(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Scalar(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (c_.empty()) return {};
    Polynomial out = *this;
    const Scalar lead = leading();
    for (auto& v : out.c_) v = v / lead;
    return out;
  }

  template <typename U>
  Polynomial<U> cast() const {
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(scalar_cast<U>(v));
    return Polynomial<U>(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Scalar& v = c_[static_cast<std::size_t>(k)];
      if (v == Scalar(0)) continue;
      os << (first ? "" : " + ") << v;
      if (k >= 1) os << "*" << var;
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

/// Quotient and remainder of a / b over a field.
template <typename Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> divmod(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  if (b.is_zero()) throw UsageError("polynomial division by zero");
  std::vector<Scalar> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<Scalar>{}, a};
  std::vector<Scalar> quot(static_cast<std::size_t>(a.degree() - db + 1), Scalar(0));
  const Scalar lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Scalar factor = rem[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - db)] = factor;
    if (factor == Scalar(0)) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<Scalar>(std::move(quot)), Polynomial<Scalar>(std::move(rem))};
}

template <typename Scalar>
Polynomial<Scalar> gcd(Polynomial<Scalar> a, Polynomial<Scalar> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using RationalPolynomial = Polynomial<Rational>;

}  // namespace isolab
