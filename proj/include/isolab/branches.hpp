#pragma once

#include "isolab/polynomial.hpp"
#include "isolab/profile.hpp"

#include <memory>
#include <string>
#include <vector>

namespace isolab {

/// lambda_i = i l (n + i l - 1) / (q - 1) and mu_i = 1 + i l (n + i l - 1) = (q - 1) lambda_i + 1.
struct BifurcationPoint {
  int i = 1;
  int l = 1;
  Rational lambda;
  Rational mu;
};

/// Points i = 1..i_max for the family and exponent q (q must be subcritical on S^n).
std::vector<BifurcationPoint> bifurcation_points(const IsoparametricFamily& family, const Rational& q, int i_max);

/// p_i scaled to sup-norm 1 on [-1, 1], sampled on a uniform grid.
struct TangentSample {
  RationalPolynomial p;   ///< monic p_i
  double scale = 1.0;     ///< 1 / sup |p_i|
  std::vector<double> t;
  std::vector<double> value;

  double operator()(double x) const;
  double at_minus() const { return (*this)(-1.0); }
  double at_plus() const { return (*this)(1.0); }
};

TangentSample local_tangent(const BifurcationPoint& point, const IsoparametricFamily& family, int samples = 401);

struct StepConfig {
  double initial_step = 1e-3;
  double min_step = 1e-5;
  double max_step = 0.5;
  int max_steps = 4000;
  double seed_amplitude = 1e-3;
  int residual_check_every = 10;
  double residual_limit = 1e-8;
  ShootingConfig shooting{};
};

struct BranchSample {
  double lambda = 0.0;
  double amplitude = 0.0;  ///< sup |phi - 1|
  double s_minus = 1.0;
  double s_plus = 1.0;
  int crossings = 0;
  std::shared_ptr<const ProfileSolution> solution;
};

struct Branch {
  BifurcationPoint point;
  IsoparametricFamily family;
  double q = 2.0;
  int direction = 1;  ///< sign of the seed perturbation along p_i
  std::vector<BranchSample> samples;
  bool reached_target = false;
  std::string diagnostic;  ///< why continuation stopped early, if it did
};

/// Pseudo-arclength continuation in (s_minus, s_plus, lambda) from a seed 1 + eps p_i near lambda_i.
/// Both seed signs are tried; the first one that reaches lambda_max is kept (otherwise the longer one).
/// Throws InvariantViolation when the crossing count changes, a sample falls to lambda <= n/(q-1),
/// or a spot-checked residual exceeds the limit.
Branch continue_branch(const BifurcationPoint& point, const IsoparametricFamily& family, const Rational& q,
                       double lambda_max, const StepConfig& cfg = {});

/// Max-norm distance in (s_minus, s_plus) between the samples of `refined` and `reference` at matched
/// lambda: `reference` is re-solved at each sample lambda of `refined`, starting from the nearest
/// interpolant of its own bracketing samples. Samples outside the lambda range of `reference` are skipped.
struct BranchAgreement {
  double max_deviation = 0.0;
  int matched = 0;
};

BranchAgreement branch_agreement(const Branch& reference, const Branch& refined);

/// |<phi - 1, p_j>_w| / (|phi - 1|_w |p_j|_w) at the smallest-amplitude sample; j defaults to the
/// branch index. Throws UsageError unless that sample has amplitude <= 1e-2.
double branch_tangent_check(const Branch& branch, int against = 0);

}  // namespace isolab
