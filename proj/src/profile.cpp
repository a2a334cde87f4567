#include "isolab/profile.hpp"

#include "isolab/quadrature.hpp"
#include "isolab/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace isolab {

double ProblemSpec::critical_q() const {
  if (family.n <= 2) return std::numeric_limits<double>::infinity();
  return static_cast<double>(family.n + 2) / (family.n - 2);
}

void ProblemSpec::validate() const {
  family.validate();
  if (!(lambda > 0) || !std::isfinite(lambda)) throw UsageError("lambda must be positive");
  if (!(q > 1) || !(q < critical_q())) throw UsageError("q must satisfy 1 < q < p_n - 1");
}

double ProblemSpec::a(double t) const {
  const double l = family.l;
  return 0.5 * family.c * l * l - l * (family.n + l - 1) * t;
}

double ProblemSpec::b(double t) const {
  const double l = family.l;
  return l * l * (1.0 - t * t);
}

double ProblemSpec::source(double phi) const {
  const double power = q == 2.0 ? phi * phi : std::pow(phi, q);
  return lambda * (phi - power);
}

double regular_slope(double s, Endpoint end, const ProblemSpec& spec) {
  if (!(s > 0)) throw UsageError("endpoint value must be positive");
  return spec.source(s) / spec.a(endpoint_value(end));
}

Eigen::Vector2d SeriesStart::operator()(double t) const {
  const double tau = t - endpoint_value(end);
  double phi = 0.0, dphi = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    phi = phi * tau + coeffs[k];
    if (k > 0) dphi = dphi * tau + static_cast<double>(k) * coeffs[k];
  }
  return {phi, dphi};
}

SeriesStart series_start(double s, Endpoint end, const ProblemSpec& spec, int order, double offset) {
  if (!(s > 0)) throw UsageError("endpoint value must be positive");
  if (order < 1) throw UsageError("series order must be >= 1");
  if (!(offset > 0) || !(offset < 1)) throw UsageError("series offset must lie in (0, 1)");

  const double e = endpoint_value(end);
  const double l2 = static_cast<double>(spec.family.l) * spec.family.l;
  const double b1 = -2.0 * l2 * e;
  const double b2 = -l2;
  const double a0 = spec.a(e);
  const double a1 = -static_cast<double>(spec.family.l) * (spec.family.n + spec.family.l - 1);
  const auto n = static_cast<std::size_t>(order);

  std::vector<double> c(n + 1, 0.0), g(n + 1, 0.0);
  c[0] = s;
  g[0] = std::pow(s, spec.q);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kd = static_cast<double>(k);
    if (k > 0) {
      // Miller's recurrence for the coefficients of phi^q
      double sum = 0.0;
      for (std::size_t j = 1; j <= k; ++j) sum += ((spec.q + 1) * static_cast<double>(j) - kd) * c[j] * g[k - j];
      g[k] = sum / (kd * c[0]);
    }
    const double denom = (kd + 1) * (b1 * kd + a0);
    if (std::abs(denom) < 1e-300)
      throw InvariantViolation("series recursion denominator vanishes at order " + std::to_string(k + 1));
    c[k + 1] = (spec.lambda * (c[k] - g[k]) - b2 * kd * (kd - 1) * c[k] - a1 * kd * c[k]) / denom;
  }

  SeriesStart out;
  out.end = end;
  out.coeffs = std::move(c);
  out.t0 = e - e * offset;
  const Eigen::Vector2d y = out(out.t0);
  out.phi = y(0);
  out.dphi = y(1);
  return out;
}

namespace {

// y = (phi, phi'); nonpositive phi yields NaN so the step controller backs off.
struct ProfileRhs {
  const ProblemSpec& spec;
  Eigen::Vector2d operator()(double t, const Eigen::Vector2d& y) const {
    if (!(y(0) > 0)) return {y(1), std::numeric_limits<double>::quiet_NaN()};
    return {y(1), (spec.source(y(0)) - spec.a(t) * y(1)) / spec.b(t)};
  }
};

}  // namespace

Eigen::Vector2d HalfProfile::operator()(double t) const {
  const double e = endpoint_value(start.end);
  if (traj.empty() || std::abs(t - e) <= std::abs(start.t0 - e)) return start(t);
  return traj.evaluate(ProfileRhs{spec}, t);
}

HalfProfile integrate_half(double s, Endpoint end, const ProblemSpec& spec, const ShootingConfig& cfg) {
  HalfProfile half;
  half.s = s;
  half.spec = spec;
  half.start = series_start(s, end, spec, cfg.series_order, cfg.series_offset);
  const double cap = cfg.divergence_cap;
  const ProfileRhs rhs{spec};
  auto admissible = [cap](const Eigen::Vector2d& y) { return y(0) > 0 && std::abs(y(0)) < cap && y.allFinite(); };
  const Eigen::Vector2d y0(half.start.phi, half.start.dphi);
  if (!admissible(y0)) {
    half.traj.aborted = true;
    return half;
  }
  half.traj = integrate_dopri5<2>(rhs, admissible, half.start.t0, y0, 0.0, cfg.series_offset, cfg.tol);
  return half;
}

std::optional<Eigen::Vector2d> half_state_at_zero(double s, Endpoint end, const ProblemSpec& spec,
                                                  const ShootingConfig& cfg) {
  if (!(s > 0)) return std::nullopt;
  const HalfProfile half = integrate_half(s, end, spec, cfg);
  if (half.diverged()) return std::nullopt;
  return half.at_zero();
}

std::optional<Eigen::Vector2d> match_residual(double s_minus, double s_plus, const ProblemSpec& spec,
                                              const ShootingConfig& cfg) {
  const auto left = half_state_at_zero(s_minus, Endpoint::minus, spec, cfg);
  if (!left) return std::nullopt;
  const auto right = half_state_at_zero(s_plus, Endpoint::plus, spec, cfg);
  if (!right) return std::nullopt;
  return Eigen::Vector2d(*left - *right);
}

Eigen::Vector2d ProfileSolution::state(double t) const {
  t = std::clamp(t, -1.0, 1.0);
  return t <= 0 ? left(t) : right(t);
}

std::vector<GridPoint> ProfileSolution::grid(int per_step) const {
  per_step = std::max(per_step, 1);
  std::vector<double> ts{-1.0, left.start.t0};
  auto add_step = [&](double from, double to) {
    for (int k = 1; k <= per_step; ++k) ts.push_back(from + (to - from) * k / per_step);
  };
  for (const auto& step : left.traj.steps) add_step(step.t0, step.t1());
  for (auto it = right.traj.steps.rbegin(); it != right.traj.steps.rend(); ++it) add_step(it->t1(), it->t0);
  ts.push_back(1.0);

  std::vector<GridPoint> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (!out.empty() && t <= out.back().t) continue;
    const Eigen::Vector2d y = state(t);
    out.push_back({t, y(0), y(1)});
  }
  return out;
}

double ProfileSolution::amplitude() const {
  double amp = 0.0;
  for (const auto& g : grid(4)) amp = std::max(amp, std::abs(g.phi - 1.0));
  return amp;
}

bool ProfileSolution::trivial(double threshold) const {
  return std::abs(s_minus - 1.0) < threshold && std::abs(s_plus - 1.0) < threshold;
}

ProfileSolution assemble_profile(double s_minus, double s_plus, const ProblemSpec& spec, const ShootingConfig& cfg) {
  ProfileSolution p;
  p.spec = spec;
  p.config = cfg;
  p.s_minus = s_minus;
  p.s_plus = s_plus;
  p.left = integrate_half(s_minus, Endpoint::minus, spec, cfg);
  p.right = integrate_half(s_plus, Endpoint::plus, spec, cfg);
  if (p.left.diverged() || p.right.diverged()) throw InvariantViolation("profile half diverged during assembly");
  p.crossings = p.trivial(cfg.trivial_threshold) ? 0 : crossing_count(p);
  p.residual_max = pde_residual(p);
  return p;
}

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

// Crossing of phi - 1 inside [lo, hi] where the sign differs at the ends.
double bisect_crossing(const ProfileSolution& p, double lo, double hi) {
  const int s_lo = sign_of(p.state(lo)(0) - 1.0);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const int s_mid = sign_of(p.state(mid)(0) - 1.0);
    if (s_mid == 0) return mid;
    (s_mid == s_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Sign changes of phi - 1 among ts, zero samples skipped; returns the brackets.
std::vector<std::pair<double, double>> sign_brackets(const ProfileSolution& p, const std::vector<double>& ts) {
  std::vector<std::pair<double, double>> out;
  int last_sign = 0;
  double last_t = ts.front();
  for (double t : ts) {
    const int s = sign_of(p.state(t)(0) - 1.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) out.emplace_back(last_t, t);
    last_sign = s;
    last_t = t;
  }
  return out;
}

}  // namespace

int crossing_count(const ProfileSolution& profile, double tangency) {
  std::vector<double> ts;
  for (const auto& g : profile.grid(8)) ts.push_back(g.t);
  int count = 0;
  for (const auto& [lo, hi] : sign_brackets(profile, ts)) {
    const double root = bisect_crossing(profile, lo, hi);
    if (std::abs(profile.state(root)(1)) >= tangency) {
      ++count;
      continue;
    }
    std::vector<double> fine;
    constexpr int samples = 256;
    for (int k = 0; k <= samples; ++k) fine.push_back(lo + (hi - lo) * k / samples);
    const auto sub = sign_brackets(profile, fine);
    for (const auto& [a, b] : sub) {
      const double r = bisect_crossing(profile, a, b);
      if (std::abs(profile.state(r)(1)) < tangency)
        throw InvariantViolation("unresolved tangency of the profile with 1 near t = " + std::to_string(r));
    }
    count += static_cast<int>(sub.size());
  }
  return count;
}

double pde_residual(const ProfileSolution& profile, int refinement) {
  return pde_residual(profile, [&profile](double t) { return profile.state(t); }, refinement);
}

double pde_residual(const ProfileSolution& profile, const std::function<Eigen::Vector2d(double)>& state,
                    int refinement) {
  ShootingConfig fine = profile.config;
  fine.tol.rtol /= 10;
  fine.tol.atol /= 10;
  const ProblemSpec& spec = profile.spec;
  const HalfProfile ref_left = integrate_half(profile.s_minus, Endpoint::minus, spec, fine);
  const HalfProfile ref_right = integrate_half(profile.s_plus, Endpoint::plus, spec, fine);
  if (ref_left.diverged() || ref_right.diverged()) return std::numeric_limits<double>::infinity();

  double worst = 0.0;
  for (const auto& g : profile.grid(refinement)) {
    const Eigen::Vector2d ref = g.t <= 0 ? ref_left(g.t) : ref_right(g.t);
    const Eigen::Vector2d y = state(g.t);
    // b phi''_ref = f(phi_ref) - a phi'_ref, so the residual of y reduces to first-order terms
    const double r = spec.a(g.t) * (ref(1) - y(1)) + spec.source(y(0)) - spec.source(ref(0));
    worst = std::max(worst, std::abs(r));
  }
  if (!profile.left.diverged() && !profile.right.diverged()) {
    const Eigen::Vector2d defect = profile.left.at_zero() - profile.right.at_zero();
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

struct NewtonResult {
  bool converged = false;
  bool diverged = false;
  Eigen::Vector2d x;
  double norm = 0.0;
  int iterations = 0;
};

NewtonResult newton_match(Eigen::Vector2d x, const ProblemSpec& spec, const ShootingConfig& cfg) {
  NewtonResult out;
  out.x = x;
  auto left = half_state_at_zero(x(0), Endpoint::minus, spec, cfg);
  auto right = half_state_at_zero(x(1), Endpoint::plus, spec, cfg);
  if (!left || !right) {
    out.diverged = true;
    return out;
  }
  Eigen::Vector2d f = *left - *right;

  for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
    out.iterations = iter;
    out.norm = f.norm();
    out.x = x;
    if (out.norm < cfg.newton_tol) {
      out.converged = true;
      return out;
    }
    Eigen::Matrix2d jac;
    for (int side = 0; side < 2; ++side) {
      const Endpoint end = side == 0 ? Endpoint::minus : Endpoint::plus;
      const Eigen::Vector2d& base = side == 0 ? *left : *right;
      double h = cfg.newton_fd_scale * std::max(1.0, std::abs(x(side)));
      auto shifted = half_state_at_zero(x(side) + h, end, spec, cfg);
      if (!shifted) {
        h = -h;
        shifted = half_state_at_zero(x(side) + h, end, spec, cfg);
      }
      if (!shifted) {
        out.diverged = true;
        return out;
      }
      jac.col(side) = (side == 0 ? 1.0 : -1.0) * (*shifted - base) / h;
    }
    const Eigen::FullPivLU<Eigen::Matrix2d> lu(jac);
    if (!lu.isInvertible()) return out;
    const Eigen::Vector2d delta = -lu.solve(f);

    bool accepted = false;
    for (double damping = 1.0; damping > 1e-6; damping *= 0.5) {
      const Eigen::Vector2d trial = x + damping * delta;
      if (trial.minCoeff() <= 0) continue;
      auto l_new = half_state_at_zero(trial(0), Endpoint::minus, spec, cfg);
      auto r_new = half_state_at_zero(trial(1), Endpoint::plus, spec, cfg);
      if (!l_new || !r_new) continue;
      const Eigen::Vector2d f_new = *l_new - *r_new;
      if (f_new.norm() < f.norm() || f_new.norm() < cfg.newton_tol) {
        x = trial;
        left = l_new;
        right = r_new;
        f = f_new;
        accepted = true;
        break;
      }
    }
    if (!accepted) return out;
  }
  out.norm = f.norm();
  out.x = x;
  out.converged = out.norm < cfg.newton_tol;
  return out;
}

}  // namespace

SolveOutcome solve_profile(double s_minus, double s_plus, const ProblemSpec& spec, const ShootingConfig& cfg) {
  spec.validate();
  if (!(s_minus > 0) || !(s_plus > 0)) throw UsageError("shooting guess must be positive");

  SolveOutcome out;
  NewtonResult coarse = newton_match(Eigen::Vector2d(s_minus, s_plus), spec, cfg);
  out.iterations = coarse.iterations;
  out.residual_norm = coarse.norm;
  if (!coarse.converged) {
    out.status = coarse.diverged ? SolveStatus::diverged : SolveStatus::no_convergence;
    return out;
  }
  Eigen::Vector2d x = coarse.x;
  ShootingConfig final_cfg = cfg;
  if (cfg.polish_rtol > 0 && cfg.polish_rtol < cfg.tol.rtol) {
    ShootingConfig fine = cfg;
    fine.tol.rtol = cfg.polish_rtol;
    fine.tol.atol = cfg.polish_atol;
    const NewtonResult polished = newton_match(x, spec, fine);
    if (polished.converged) {
      x = polished.x;
      final_cfg = fine;
      out.iterations += polished.iterations;
      out.residual_norm = polished.norm;
    }
  }
  out.solution = assemble_profile(x(0), x(1), spec, final_cfg);
  if (out.solution->trivial(cfg.trivial_threshold)) {
    out.status = SolveStatus::trivial;
  } else {
    // a positive nonconstant solution exceeds 1 somewhere; otherwise Newton found phi = 0
    const auto g = out.solution->grid(4);
    const bool above_one = std::any_of(g.begin(), g.end(), [](const GridPoint& p) { return p.phi > 1.0; });
    out.status = above_one ? SolveStatus::converged : SolveStatus::zero_solution;
  }
  return out;
}

namespace {

struct AxisSample {
  double s;
  std::optional<Eigen::Vector2d> state;  ///< nullopt: diverged
};

// Half-profile states at t = 0 over the seed grid. Where neighbouring seeds straddle a divergence
// boundary the boundary is approached by bisection in log s, since solutions tend to sit close to it.
std::vector<AxisSample> scan_axis(const std::vector<double>& seeds, Endpoint end, const ProblemSpec& spec,
                                  const ShootingConfig& cfg) {
  constexpr int boundary_bisections = 30;
  std::vector<std::optional<Eigen::Vector2d>> states;
  states.reserve(seeds.size());
  for (double s : seeds) states.push_back(half_state_at_zero(s, end, spec, cfg));

  std::vector<AxisSample> out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    out.push_back({seeds[i], states[i]});
    if (i + 1 == seeds.size() || states[i].has_value() == states[i + 1].has_value()) continue;
    double good = seeds[i], bad = seeds[i + 1];
    if (!states[i]) std::swap(good, bad);
    for (int k = 0; k < boundary_bisections; ++k) {
      const double mid = std::sqrt(good * bad);
      auto y = half_state_at_zero(mid, end, spec, cfg);
      out.push_back({mid, y});
      (y ? good : bad) = mid;
    }
  }
  std::sort(out.begin(), out.end(), [](const AxisSample& a, const AxisSample& b) { return a.s < b.s; });
  return out;
}

}  // namespace

std::vector<ProfileSolution> enumerate_solutions(const ProblemSpec& spec, const ScanConfig& scan) {
  spec.validate();
  if (!(scan.s_min > 0) || !(scan.s_max > scan.s_min) || scan.points < 2) throw UsageError("invalid scan range");
  const auto n = static_cast<std::size_t>(scan.points);
  std::vector<double> s(n);
  const double log_lo = std::log(scan.s_min), log_hi = std::log(scan.s_max);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / (n - 1));

  const std::vector<AxisSample> left = scan_axis(s, Endpoint::minus, spec, scan.shooting);
  const std::vector<AxisSample> right = scan_axis(s, Endpoint::plus, spec, scan.shooting);

  std::vector<ProfileSolution> found;
  for (std::size_t i = 0; i + 1 < left.size(); ++i) {
    for (std::size_t j = 0; j + 1 < right.size(); ++j) {
      if (!left[i].state || !left[i + 1].state || !right[j].state || !right[j + 1].state) continue;
      Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
      Eigen::Vector2d hi = -lo;
      for (std::size_t di = 0; di < 2; ++di)
        for (std::size_t dj = 0; dj < 2; ++dj) {
          const Eigen::Vector2d corner = *left[i + di].state - *right[j + dj].state;
          lo = lo.cwiseMin(corner);
          hi = hi.cwiseMax(corner);
        }
      if (lo(0) > 0 || hi(0) < 0 || lo(1) > 0 || hi(1) < 0) continue;

      const SolveOutcome outcome = solve_profile(std::sqrt(left[i].s * left[i + 1].s),
                                                 std::sqrt(right[j].s * right[j + 1].s), spec, scan.shooting);
      if (outcome.status != SolveStatus::converged) continue;
      const ProfileSolution& sol = *outcome.solution;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const ProfileSolution& other) {
        return other.crossings == sol.crossings &&
               std::abs(other.s_minus - sol.s_minus) + std::abs(other.s_plus - sol.s_plus) < scan.dedup_tol;
      });
      if (!duplicate) found.push_back(sol);
    }
  }
  std::sort(found.begin(), found.end(), [](const ProfileSolution& a, const ProfileSolution& b) {
    return a.crossings != b.crossings ? a.crossings < b.crossings : a.s_minus < b.s_minus;
  });
  return found;
}

ProblemSpec problem_for_product(const IsoparametricFamily& family, const ProductSpec& product) {
  if (family.n != product.n) throw UsageError("family lives on S^" + std::to_string(family.n) +
                                              " but the product has n = " + std::to_string(product.n));
  ProblemSpec spec{family, to_double(product.lambda), to_double(product.q)};
  spec.validate();
  return spec;
}

double yamabe_quotient(const std::function<Eigen::Vector2d(double)>& state, const IsoparametricFamily& family,
                       const ProductSpec& product) {
  if (family.n != product.n) throw UsageError("family and product disagree on n");
  const Weight w = weight_exponents(family);
  const auto rule = gauss_jacobi_rule(w.alpha, w.beta);
  const double p = to_double(product.p_m);
  const double a_m = to_double(product.a_m);
  const double s_bar = to_double(product.s_bar);
  const double l2 = static_cast<double>(family.l) * family.l;
  const double scale = sphere_volume(family.n) / static_cast<double>(rule->mass());

  double num = 0.0, den = 0.0;
  const auto& nodes = rule->nodes_double();
  const auto& weights = rule->weights_double();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t = nodes[i];
    const Eigen::Vector2d y = state(t);
    num += weights[i] * (a_m * l2 * (1 - t * t) * y(1) * y(1) + s_bar * y(0) * y(0));
    den += weights[i] * std::pow(std::abs(y(0)), p);
  }
  num *= scale;
  den *= scale;
  return std::pow(product.fibre_volume(), 1.0 - 2.0 / p) * num / std::pow(den, 2.0 / p);
}

double yamabe_quotient(const ProfileSolution& profile, const ProductSpec& product) {
  const ProblemSpec expected = problem_for_product(profile.spec.family, product);
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); };
  if (!close(profile.spec.q, expected.q)) throw UsageError("profile exponent q does not match p_m - 1");
  if (!close(profile.spec.lambda, expected.lambda)) throw UsageError("profile lambda does not match s_bar / a_m");
  return yamabe_quotient([&profile](double t) { return profile.state(t); }, profile.spec.family, product);
}

}  // namespace isolab
