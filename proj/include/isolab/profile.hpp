#pragma once

#include "isolab/cartan_munzner.hpp"
#include "isolab/ode.hpp"
#include "isolab/products.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <vector>

namespace isolab {

/// -(b phi'' + a phi') + lambda phi = lambda phi^q on [-1, 1], with b = l^2 (1 - t^2) and
/// a = c l^2 / 2 - l (n + l - 1) t.
struct ProblemSpec {
  IsoparametricFamily family;
  double lambda = 1.0;
  double q = 2.0;

  /// p_n - 1 = (n + 2)/(n - 2), infinite for n = 2.
  double critical_q() const;
  /// Throws UsageError unless lambda > 0 and 1 < q < p_n - 1.
  void validate() const;

  double a(double t) const;
  double b(double t) const;
  /// lambda (phi - phi^q)
  double source(double phi) const;
};

enum class Endpoint { minus = -1, plus = 1 };

inline double endpoint_value(Endpoint e) { return static_cast<double>(static_cast<int>(e)); }

struct ShootingConfig {
  int series_order = 4;
  double series_offset = 1e-5;
  IntegratorTolerances tol{};
  double divergence_cap = 1e6;

  double newton_fd_scale = 1e-7;
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  double trivial_threshold = 1e-4;

  /// After convergence Newton is repeated and the profile assembled at this tighter tolerance
  /// (0 disables). Large-amplitude profiles need it to keep the pointwise residual below 1e-8.
  double polish_rtol = 1e-12;
  double polish_atol = 1e-14;
};

/// phi'(end) = lambda (s - s^q) / a(end).
double regular_slope(double s, Endpoint end, const ProblemSpec& spec);

struct SeriesStart {
  Endpoint end = Endpoint::minus;
  double t0 = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  std::vector<double> coeffs;  ///< Taylor coefficients in tau = t - end

  /// (phi, phi') of the truncated series at t.
  Eigen::Vector2d operator()(double t) const;
};

/// Taylor jump-off from the regular singular endpoint, evaluated at t0 = end -+ offset.
SeriesStart series_start(double s, Endpoint end, const ProblemSpec& spec, int order, double offset);

struct HalfProfile {
  ProblemSpec spec;
  double s = 1.0;
  SeriesStart start;
  Trajectory<2> traj;

  bool diverged() const { return traj.aborted || traj.empty(); }
  Eigen::Vector2d at_zero() const { return traj.final_state(); }
  Eigen::Vector2d operator()(double t) const;
};

/// Series start at `end` followed by adaptive integration to t = 0.
HalfProfile integrate_half(double s, Endpoint end, const ProblemSpec& spec, const ShootingConfig& cfg = {});

/// (phi, phi') at t = 0 reached from the endpoint value s, or nullopt on divergence.
std::optional<Eigen::Vector2d> half_state_at_zero(double s, Endpoint end, const ProblemSpec& spec,
                                                  const ShootingConfig& cfg = {});

/// Left minus right half-profile state at t = 0; nullopt when either side diverges.
std::optional<Eigen::Vector2d> match_residual(double s_minus, double s_plus, const ProblemSpec& spec,
                                              const ShootingConfig& cfg = {});

struct GridPoint {
  double t, phi, dphi;
};

struct ProfileSolution {
  ProblemSpec spec;
  ShootingConfig config;
  double s_minus = 1.0;
  double s_plus = 1.0;
  HalfProfile left, right;
  int crossings = 0;
  double residual_max = 0.0;
  std::optional<double> quotient;

  /// (phi, phi') anywhere on [-1, 1]; t <= 0 is served by the left half.
  Eigen::Vector2d state(double t) const;
  /// Ordered samples: both endpoints, every accepted step boundary and `per_step - 1` interior points.
  std::vector<GridPoint> grid(int per_step = 1) const;
  /// sup |phi - 1| over the dense grid
  double amplitude() const;
  bool trivial(double threshold = 1e-4) const;
};

/// Assembles the profile for given endpoint values (no Newton); crossings and residual are filled in.
/// Throws InvariantViolation when either half diverges.
ProfileSolution assemble_profile(double s_minus, double s_plus, const ProblemSpec& spec, const ShootingConfig& cfg = {});

/// Sign changes of phi - 1, each located by bisection on the dense output. A crossing with |phi'|
/// below `tangency` is re-sampled; if it stays ambiguous InvariantViolation is thrown.
int crossing_count(const ProfileSolution& profile, double tangency = 1e-7);

/// Max over the refined grid of |-(b phi'' + a phi') + lambda phi - lambda phi^q| where phi'' comes
/// from an independent re-integration at a tenth of the tolerance; includes the match defect at 0.
double pde_residual(const ProfileSolution& profile, int refinement = 4);
/// Same, for an arbitrary (phi, phi') sampled against the reference built from the profile's endpoint values.
double pde_residual(const ProfileSolution& profile, const std::function<Eigen::Vector2d(double)>& state,
                    int refinement = 4);

/// zero_solution: Newton slid onto phi = 0, which solves the equation but is not positive.
enum class SolveStatus { converged, trivial, zero_solution, no_convergence, diverged };

struct SolveOutcome {
  SolveStatus status = SolveStatus::no_convergence;
  std::optional<ProfileSolution> solution;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Damped Newton on match_residual with a finite-difference Jacobian.
SolveOutcome solve_profile(double s_minus, double s_plus, const ProblemSpec& spec, const ShootingConfig& cfg = {});

struct ScanConfig {
  double s_min = 0.05;
  double s_max = 20.0;
  int points = 64;
  double dedup_tol = 1e-6;
  ShootingConfig shooting{};
};

/// Log-grid scan of seeds, Newton on every cell where both residual components change sign,
/// deduplication; nontrivial solutions sorted by (crossings, s_minus).
std::vector<ProfileSolution> enumerate_solutions(const ProblemSpec& spec, const ScanConfig& scan = {});

/// Problem induced by a product: q = p_m - 1 and lambda = s_bar / a_m, on the given family of S^n.
ProblemSpec problem_for_product(const IsoparametricFamily& family, const ProductSpec& product);

/// Reduced Yamabe quotient of u = phi o f on S^n x (S^k, T g0):
/// V^{1-2/p} (int (a_m b phi'^2 + s_bar phi^2) C w) / (int phi^p C w)^{2/p},
/// C = Vol(S^n) / int w, p = p_m, V the fibre volume. Throws UsageError when q or lambda do not
/// match the product.
double yamabe_quotient(const ProfileSolution& profile, const ProductSpec& product);
/// Quotient of an arbitrary S_f function given by t -> (phi, phi').
double yamabe_quotient(const std::function<Eigen::Vector2d(double)>& state, const IsoparametricFamily& family,
                       const ProductSpec& product);

}  // namespace isolab
