#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace isolab {

/// One accepted Dormand-Prince step with its continuous extension (Hairer's DOPRI5 dense output).
template <int Dim>
struct DenseStep {
  using State = Eigen::Matrix<double, Dim, 1>;
  double t0 = 0.0;
  double h = 0.0;
  State r1, r2, r3, r4, r5;

  double t1() const { return t0 + h; }
  State start() const { return r1; }
  State end() const { return r1 + r2; }
  State operator()(double t) const {
    const double theta = (t - t0) / h;
    const double theta1 = 1.0 - theta;
    return r1 + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
  }
};

template <int Dim>
struct Trajectory {
  std::vector<DenseStep<Dim>> steps;
  bool aborted = false;  ///< state left the admissible region or the step size collapsed

  bool empty() const { return steps.empty(); }
  double t_begin() const { return steps.front().t0; }
  double t_end() const { return steps.back().t1(); }
  typename DenseStep<Dim>::State final_state() const { return steps.back().end(); }

  /// Dense-output evaluation; t must lie inside the integrated range.
  typename DenseStep<Dim>::State operator()(double t) const {
    const bool forward = steps.front().h > 0;
    auto it = std::lower_bound(steps.begin(), steps.end(), t, [forward](const DenseStep<Dim>& s, double x) {
      return forward ? s.t1() < x : s.t1() > x;
    });
    if (it == steps.end()) it = std::prev(steps.end());
    return (*it)(t);
  }

  /// Like operator() but re-steps from the start of the enclosing step, which keeps the full
  /// fifth order instead of the fourth-order continuous extension.
  template <typename Rhs>
  typename DenseStep<Dim>::State evaluate(Rhs&& rhs, double t) const;
};

template <int Dim, typename Rhs>
Eigen::Matrix<double, Dim, 1> dopri5_single_step(Rhs&& rhs, double t, const Eigen::Matrix<double, Dim, 1>& y, double h);

struct IntegratorTolerances {
  double rtol = 1e-10;
  double atol = 1e-12;
  double min_step = 1e-14;
  int max_steps = 200000;
};

namespace dopri5 {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dopri5

/// Fifth-order value at t0 + h from a single Dormand-Prince step (no error control).
template <int Dim, typename Rhs>
Eigen::Matrix<double, Dim, 1> dopri5_single_step(Rhs&& rhs, double t, const Eigen::Matrix<double, Dim, 1>& y, double h) {
  using State = Eigen::Matrix<double, Dim, 1>;
  using namespace dopri5;
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + c2 * h, State(y + h * a21 * k1));
  const State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
  const State k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = rhs(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const State k6 = rhs(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
  return y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
}

/// Adaptive Dormand-Prince 5(4) from (t0, y0) to t1 (either direction). `rhs(t, y)` returns y';
/// `admissible(y)` is checked after each accepted step, and integration stops with
/// `aborted = true` as soon as it fails.
template <int Dim, typename Rhs, typename Admissible>
Trajectory<Dim> integrate_dopri5(Rhs&& rhs, Admissible&& admissible, double t0, const Eigen::Matrix<double, Dim, 1>& y0,
                                 double t1, double h0, const IntegratorTolerances& tol) {
  using State = Eigen::Matrix<double, Dim, 1>;
  using namespace dopri5;

  Trajectory<Dim> traj;
  const double direction = t1 >= t0 ? 1.0 : -1.0;
  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  double h = direction * std::min(std::abs(h0), std::abs(t1 - t0));
  int steps = 0;

  while (direction * (t1 - t) > 0) {
    if (++steps > tol.max_steps || std::abs(h) < tol.min_step) {
      traj.aborted = true;
      return traj;
    }
    if (direction * (t + h - t1) > 0) h = t1 - t;

    const State k2 = rhs(t + c2 * h, State(y + h * a21 * k1));
    const State k3 = rhs(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
    const State k4 = rhs(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 = rhs(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const State k6 = rhs(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const State y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const State k7 = rhs(t + h, y_new);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const State scale = (tol.atol + tol.rtol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
    double err_norm = std::sqrt((err.array() / scale.array()).square().mean());
    if (!std::isfinite(err_norm) || !y_new.allFinite()) {
      h *= 0.25;
      continue;
    }

    if (err_norm <= 1.0) {
      DenseStep<Dim> step;
      step.t0 = t;
      step.h = h;
      const State ydiff = y_new - y;
      const State bspl = h * k1 - ydiff;
      step.r1 = y;
      step.r2 = ydiff;
      step.r3 = bspl;
      step.r4 = ydiff - h * k7 - bspl;
      step.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      traj.steps.push_back(step);
      t += h;
      y = y_new;
      k1 = k7;
      if (!admissible(y)) {
        traj.aborted = true;
        return traj;
      }
    }
    const double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= err_norm <= 1.0 ? factor : std::min(1.0, factor);
  }
  return traj;
}

template <int Dim>
template <typename Rhs>
typename DenseStep<Dim>::State Trajectory<Dim>::evaluate(Rhs&& rhs, double t) const {
  const bool forward = steps.front().h > 0;
  auto it = std::lower_bound(steps.begin(), steps.end(), t, [forward](const DenseStep<Dim>& s, double x) {
    return forward ? s.t1() < x : s.t1() > x;
  });
  if (it == steps.end()) it = std::prev(steps.end());
  if (t == it->t1()) return it->end();
  if (t == it->t0) return it->start();
  return dopri5_single_step<Dim>(rhs, it->t0, it->start(), t - it->t0);
}

}  // namespace isolab
