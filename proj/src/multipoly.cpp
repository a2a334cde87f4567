#include "isolab/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace isolab {

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

using Accumulator = std::unordered_map<Exponents, Rational, ExponentsHash>;

}  // namespace

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GradedLess::operator()(const Exponents& a, const Exponents& b) const {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {
  if (num_vars == 0) throw UsageError("MultiPoly needs at least one variable");
}

MultiPoly MultiPoly::constant(std::size_t num_vars, const Rational& value) {
  MultiPoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), value);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw UsageError("variable index out of range");
  MultiPoly p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::radius_power(std::size_t num_vars, unsigned power) {
  MultiPoly r2(num_vars);
  for (std::size_t j = 0; j < num_vars; ++j) {
    Exponents e(num_vars, 0);
    e[j] = 2;
    r2.add_term(e, Rational(1));
  }
  return isolab::pow(r2, power);
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != num_vars_) throw UsageError("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw UsageError("evaluation point has wrong dimension");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t j = 0; j < num_vars_; ++j)
      for (unsigned k = 0; k < e[j]; ++k) term *= point[j];
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (point.size() != num_vars_) throw UsageError("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t j = 0; j < num_vars_; ++j)
      for (unsigned k = 0; k < e[j]; ++k) term *= point[j];
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= num_vars_) throw UsageError("variable index out of range");
  MultiPoly d(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    d.terms_.emplace(std::move(f), c * e[var]);
  }
  return d;
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (num_vars_ != other.num_vars_)
    throw UsageError("polynomials live in different numbers of variables (" + std::to_string(num_vars_) +
                     " vs " + std::to_string(other.num_vars_) + ")");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  Accumulator acc;
  acc.reserve(a.size() * b.size());
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = static_cast<std::uint16_t>(ea[j] + eb[j]);
      auto [it, inserted] = acc.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  MultiPoly out(a.num_vars_);
  for (auto& [k, c] : acc)
    if (c != 0) out.terms_.emplace(k, std::move(c));
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = total_degree(e) == 0;
    if (mag != 1 || constant) os << mag.get_str();
    bool need_star = mag != 1 && !constant;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << "x" << (j + 1);
      if (e[j] > 1) os << "^" << e[j];
    }
  }
  return os.str();
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, ArithOp op) {
  switch (op) {
    case ArithOp::add: return p + q;
    case ArithOp::sub: return p - q;
    case ArithOp::mul: return p * q;
  }
  throw UsageError("unknown arithmetic operation");
}

MultiPoly pow(const MultiPoly& p, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(p.num_vars(), Rational(1));
  MultiPoly base = p;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

MultiPoly gradient_pairing(const MultiPoly& p, const MultiPoly& q) {
  if (p.num_vars() != q.num_vars()) throw UsageError("gradient pairing of incompatible polynomials");
  MultiPoly sum(p.num_vars());
  for (std::size_t j = 0; j < p.num_vars(); ++j) sum += p.derivative(j) * q.derivative(j);
  return sum;
}

MultiPoly gradient_inner(const MultiPoly& f) { return gradient_pairing(f, f); }

MultiPoly euclidean_laplacian(const MultiPoly& f) {
  MultiPoly sum(f.num_vars());
  for (std::size_t j = 0; j < f.num_vars(); ++j) sum += f.derivative(j).derivative(j);
  return sum;
}

MultiPoly euler_operator(const MultiPoly& f) {
  MultiPoly sum(f.num_vars());
  for (std::size_t j = 0; j < f.num_vars(); ++j) sum += MultiPoly::variable(f.num_vars(), j) * f.derivative(j);
  return sum;
}

nlohmann::json to_json(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"exps", e}, {"num", numerator_string(c)}, {"den", denominator_string(c)}});
  }
  return {{"num_vars", p.num_vars()}, {"terms", std::move(terms)}};
}

MultiPoly multipoly_from_json(const nlohmann::json& j) {
  try {
    MultiPoly p(j.at("num_vars").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
      auto e = t.at("exps").get<Exponents>();
      Rational c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
      if (c.get_den() == 0) throw UsageError("zero denominator in polynomial JSON");
      c.canonicalize();
      p.add_term(e, c);
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("malformed polynomial JSON: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw UsageError(std::string("malformed polynomial JSON: ") + ex.what());
  }
}

}  // namespace isolab
