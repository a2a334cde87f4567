#include "isolab/quadrature.hpp"

#include "isolab/spectral.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include <map>
#include <mutex>
#include <tuple>

namespace isolab {

GaussJacobi::GaussJacobi(int points, const Rational& alpha, const Rational& beta) {
  if (points < 1) throw UsageError("quadrature needs at least one point");
  if (alpha <= -1 || beta <= -1) throw UsageError("Jacobi exponents must exceed -1");
  const auto n = static_cast<std::size_t>(points);
  const Float50 a = scalar_cast<Float50>(alpha);
  const Float50 b = scalar_cast<Float50>(beta);

  std::vector<Float50> diag(n), offdiag(n);
  for (int k = 0; k < points; ++k) jacobi_recurrence(k, a, b, diag[static_cast<std::size_t>(k)], offdiag[static_cast<std::size_t>(k)]);

  using boost::math::tgamma;
  mass_ = pow(Float50(2), a + b + 1) * tgamma(a + 1) * tgamma(b + 1) / tgamma(a + b + 2);

  Eigen::VectorXd d(points);
  Eigen::VectorXd e(points > 1 ? points - 1 : 0);
  for (int k = 0; k < points; ++k) d(k) = static_cast<double>(diag[static_cast<std::size_t>(k)]);
  for (int k = 1; k < points; ++k) e(k - 1) = std::sqrt(static_cast<double>(offdiag[static_cast<std::size_t>(k)]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvariantViolation("Golub-Welsch eigen solve failed");

  const Float50 tolerance = Float50("1e-48");
  nodes_.resize(n);
  weights_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Float50 x = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    for (int iter = 0; iter < 20; ++iter) {
      Float50 p_prev = 0, p = 1, dp_prev = 0, dp = 0;
      for (std::size_t k = 0; k < n; ++k) {
        Float50 p_next = (x - diag[k]) * p - offdiag[k] * p_prev;
        Float50 dp_next = p + (x - diag[k]) * dp - offdiag[k] * dp_prev;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
      }
      Float50 step = p / dp;
      x -= step;
      if (abs(step) < tolerance) break;
    }
    nodes_[i] = x;

    Float50 q_prev = 0, q = 1 / sqrt(mass_);
    Float50 sum = q * q;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      Float50 next = ((x - diag[k]) * q - (k > 0 ? sqrt(offdiag[k]) : Float50(0)) * q_prev) / sqrt(offdiag[k + 1]);
      q_prev = q;
      q = next;
      sum += q * q;
    }
    weights_[i] = 1 / sum;
  }
  nodes_d_.reserve(n);
  weights_d_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes_d_.push_back(static_cast<double>(nodes_[i]));
    weights_d_.push_back(static_cast<double>(weights_[i]));
  }
}

double GaussJacobi::integrate(const std::function<double(double)>& g) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_d_.size(); ++i) sum += weights_d_[i] * g(nodes_d_[i]);
  return sum;
}

Float50 GaussJacobi::integrate_high(const std::function<Float50(const Float50&)>& g) const {
  Float50 sum = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * g(nodes_[i]);
  return sum;
}

std::shared_ptr<const GaussJacobi> gauss_jacobi_rule(const Rational& alpha, const Rational& beta, int points) {
  static std::mutex mutex;
  static std::map<std::tuple<std::string, std::string, int>, std::shared_ptr<const GaussJacobi>> cache;
  auto key = std::make_tuple(alpha.get_str(), beta.get_str(), points);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const GaussJacobi>(points, alpha, beta);
  cache.emplace(std::move(key), rule);
  return rule;
}

}  // namespace isolab
