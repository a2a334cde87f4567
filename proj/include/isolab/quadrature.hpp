#pragma once

#include "isolab/rational.hpp"
#include "isolab/scalar.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace isolab {

/// Gauss-Jacobi rule for int_{-1}^{1} g(t) (1-t)^alpha (1+t)^beta dt, exact for polynomial g
/// of degree < 2 * size(). Nodes come from Golub-Welsch in double and are polished by Newton
/// iteration in 50-digit arithmetic; weights are Christoffel numbers evaluated at the polished nodes.
class GaussJacobi {
public:
  GaussJacobi(int points, const Rational& alpha, const Rational& beta);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Float50>& nodes() const { return nodes_; }
  const std::vector<Float50>& weights() const { return weights_; }
  const std::vector<double>& nodes_double() const { return nodes_d_; }
  const std::vector<double>& weights_double() const { return weights_d_; }
  /// int_{-1}^{1} (1-t)^alpha (1+t)^beta dt
  const Float50& mass() const { return mass_; }

  double integrate(const std::function<double(double)>& g) const;
  Float50 integrate_high(const std::function<Float50(const Float50&)>& g) const;

private:
  std::vector<Float50> nodes_, weights_;
  std::vector<double> nodes_d_, weights_d_;
  Float50 mass_;
};

/// Shared rule of the documented default degree (200 points) for the given exponents.
std::shared_ptr<const GaussJacobi> gauss_jacobi_rule(const Rational& alpha, const Rational& beta, int points = 200);

}  // namespace isolab
