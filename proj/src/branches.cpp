#include "isolab/branches.hpp"

#include "isolab/quadrature.hpp"
#include "isolab/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace isolab {

std::vector<BifurcationPoint> bifurcation_points(const IsoparametricFamily& family, const Rational& q, int i_max) {
  ProblemSpec{family, 1.0, to_double(q)}.validate();
  std::vector<BifurcationPoint> out;
  for (int i = 1; i <= i_max; ++i) {
    const long il = static_cast<long>(i) * family.l;
    const Rational lambda = bifurcation_lambda(family.n, family.l, i, q);
    out.push_back({i, family.l, lambda, Rational(1 + il * (family.n + il - 1))});
  }
  return out;
}

double TangentSample::operator()(double x) const { return scale * p(x); }

TangentSample local_tangent(const BifurcationPoint& point, const IsoparametricFamily& family, int samples) {
  if (samples < 2) throw UsageError("tangent needs at least two samples");
  TangentSample out;
  out.p = eigen_poly(point.i, family).coeffs;
  double sup = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = -1.0 + 2.0 * k / (samples - 1);
    out.t.push_back(t);
    out.value.push_back(out.p(t));
    sup = std::max(sup, std::abs(out.value.back()));
  }
  // sup over [-1, 1] is attained at an endpoint or at a critical point of p_i
  const RationalPolynomial dp = out.p.derivative();
  for (int k = 0; k + 1 < samples; ++k) {
    double lo = out.t[static_cast<std::size_t>(k)], hi = out.t[static_cast<std::size_t>(k + 1)];
    double flo = dp(lo), fhi = dp(hi);
    if (flo * fhi > 0) continue;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = dp(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    sup = std::max(sup, std::abs(out.p(0.5 * (lo + hi))));
  }
  out.scale = 1.0 / sup;
  for (auto& v : out.value) v *= out.scale;
  return out;
}

namespace {

using Vec3 = Eigen::Vector3d;

// G(s_minus, s_plus, lambda) = left(0) - right(0), with the 2x3 Jacobian by forward differences.
struct MatchMap {
  const IsoparametricFamily& family;
  double q;
  const ShootingConfig& cfg;

  std::optional<Eigen::Vector2d> value(const Vec3& x) const {
    if (!(x(2) > 0)) return std::nullopt;
    return match_residual(x(0), x(1), ProblemSpec{family, x(2), q}, cfg);
  }

  std::optional<Eigen::Matrix<double, 2, 3>> jacobian(const Vec3& x, const Eigen::Vector2d& g) const {
    Eigen::Matrix<double, 2, 3> jac;
    for (int j = 0; j < 3; ++j) {
      double h = cfg.newton_fd_scale * std::max(1.0, std::abs(x(j)));
      Vec3 shifted = x;
      shifted(j) += h;
      auto gh = value(shifted);
      if (!gh) {
        h = -h;
        shifted(j) = x(j) + h;
        gh = value(shifted);
      }
      if (!gh) return std::nullopt;
      jac.col(j) = (*gh - g) / h;
    }
    return jac;
  }
};

// Unit null vector of the 2x3 Jacobian.
Vec3 null_direction(const Eigen::Matrix<double, 2, 3>& jac) {
  const Vec3 r0 = jac.row(0).transpose(), r1 = jac.row(1).transpose();
  return r0.cross(r1).normalized();
}

struct Corrected {
  Vec3 x;
  int iterations = 0;
};

// Newton on [G(x); n . (x - anchor)] = 0.
std::optional<Corrected> correct(const MatchMap& map, Vec3 x, const Vec3& normal, const Vec3& anchor,
                                 int max_iter = 12) {
  for (int iter = 0; iter < max_iter; ++iter) {
    const auto g = map.value(x);
    if (!g) return std::nullopt;
    const double constraint = normal.dot(x - anchor);
    if (g->norm() < map.cfg.newton_tol && std::abs(constraint) < 1e-12) return Corrected{x, iter};
    const auto jac = map.jacobian(x, *g);
    if (!jac) return std::nullopt;
    Eigen::Matrix3d full;
    full.topRows<2>() = *jac;
    full.row(2) = normal.transpose();
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(full);
    if (!lu.isInvertible()) return std::nullopt;
    Vec3 rhs;
    rhs << -*g, -constraint;
    const Vec3 delta = lu.solve(rhs);
    x += delta;
    if (x(0) <= 0 || x(1) <= 0 || x(2) <= 0) return std::nullopt;
  }
  return std::nullopt;
}

BranchSample make_sample(const Vec3& x, const IsoparametricFamily& family, double q, const ShootingConfig& cfg) {
  ProfileSolution assembled = assemble_profile(x(0), x(1), ProblemSpec{family, x(2), q}, cfg);
  // seeds below the trivial threshold still carry the sign pattern of p_i
  if (assembled.crossings == 0 && assembled.amplitude() > 0) assembled.crossings = crossing_count(assembled);
  BranchSample s;
  s.lambda = x(2);
  s.s_minus = x(0);
  s.s_plus = x(1);
  s.crossings = assembled.crossings;
  s.amplitude = assembled.amplitude();
  s.solution = std::make_shared<const ProfileSolution>(std::move(assembled));
  return s;
}

// Continuation runs entirely at the polish tolerance so that every sample meets the residual bound.
ShootingConfig continuation_tolerances(ShootingConfig cfg) {
  if (cfg.polish_rtol > 0 && cfg.polish_rtol < cfg.tol.rtol) {
    cfg.tol.rtol = cfg.polish_rtol;
    cfg.tol.atol = cfg.polish_atol;
  }
  cfg.polish_rtol = 0;
  return cfg;
}

Branch trace(const BifurcationPoint& point, const IsoparametricFamily& family, double q, double lambda_max,
             const StepConfig& cfg, int direction) {
  Branch branch;
  branch.point = point;
  branch.family = family;
  branch.q = q;
  branch.direction = direction;
  const double floor_lambda = static_cast<double>(family.n) / (q - 1);
  const ShootingConfig shooting = continuation_tolerances(cfg.shooting);
  const MatchMap map{family, q, shooting};

  // the seed is rescaled until sup |phi - 1| <= seed_amplitude
  const TangentSample tangent = local_tangent(point, family);
  const Vec3 seed_dir = Vec3(tangent.at_minus(), tangent.at_plus(), 0.0).normalized();
  double eps = direction * cfg.seed_amplitude;
  std::optional<Corrected> start;
  std::optional<BranchSample> first;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Vec3 seed(1 + eps * tangent.at_minus(), 1 + eps * tangent.at_plus(), to_double(point.lambda));
    start = correct(map, seed, seed_dir, seed, 30);
    if (!start) {
      branch.diagnostic = "seed correction failed";
      return branch;
    }
    first = make_sample(start->x, family, q, shooting);
    if (first->amplitude <= cfg.seed_amplitude) break;
    eps *= 0.999 * cfg.seed_amplitude / first->amplitude;
  }
  if (first->crossings != point.i) {
    branch.diagnostic = "seed has " + std::to_string(first->crossings) + " crossings";
    return branch;
  }

  Vec3 x = start->x;
  auto g0 = map.value(x);
  auto jac0 = g0 ? map.jacobian(x, *g0) : std::nullopt;
  if (!jac0) {
    branch.diagnostic = "no Jacobian at the seed";
    return branch;
  }
  Vec3 tau = null_direction(*jac0);
  if (tau.dot(direction * seed_dir) < 0) tau = -tau;
  branch.samples.push_back(std::move(*first));

  double h = cfg.initial_step;
  for (int step = 0; step < cfg.max_steps; ++step) {
    const Vec3 predicted = x + h * tau;
    auto corrected = correct(map, predicted, tau, predicted);
    // a large corrector offset means the predictor left the basin of this branch
    if (corrected && (corrected->x - predicted).norm() > 0.1 * h) corrected.reset();
    std::optional<BranchSample> sample;
    if (corrected) {
      sample = make_sample(corrected->x, family, q, shooting);
      if (sample->crossings != point.i) {
        if (h > cfg.min_step) {
          sample.reset();
        } else {
          throw InvariantViolation("crossing count changed from " + std::to_string(point.i) + " to " +
                                   std::to_string(sample->crossings) + " along branch " + std::to_string(point.i));
        }
      }
    }
    if (!sample) {
      h *= 0.5;
      if (h < cfg.min_step) {
        branch.diagnostic = "corrector failed at minimum step near lambda = " + std::to_string(x(2));
        return branch;
      }
      continue;
    }

    const Vec3 x_new = corrected->x;
    if (x_new(2) <= floor_lambda)
      throw InvariantViolation("nontrivial branch sample at lambda <= n/(q-1)");
    auto g = map.value(x_new);
    auto jac = g ? map.jacobian(x_new, *g) : std::nullopt;
    if (!jac) {
      h *= 0.5;
      continue;
    }
    Vec3 tau_new = null_direction(*jac);
    if (tau_new.dot(tau) < 0) tau_new = -tau_new;

    if (x_new(2) >= lambda_max) {
      // land exactly on lambda_max by interpolating between the last two points
      const double w = (lambda_max - x(2)) / (x_new(2) - x(2));
      Vec3 guess = x + w * (x_new - x);
      guess(2) = lambda_max;
      const SolveOutcome last = solve_profile(guess(0), guess(1), ProblemSpec{family, lambda_max, q}, shooting);
      if (last.status != SolveStatus::converged || last.solution->crossings != point.i)
        throw InvariantViolation("final sample at lambda_max failed");
      branch.samples.push_back(
          make_sample(Vec3(last.solution->s_minus, last.solution->s_plus, lambda_max), family, q, shooting));
      branch.reached_target = true;
      return branch;
    }

    branch.samples.push_back(std::move(*sample));
    if (branch.samples.size() % static_cast<std::size_t>(cfg.residual_check_every) == 0) {
      if (!(branch.samples.back().solution->residual_max < cfg.residual_limit))
        throw InvariantViolation("branch residual spot check failed near lambda = " + std::to_string(x_new(2)));
    }
    x = x_new;
    tau = tau_new;
    if (corrected->iterations <= 3) h = std::min(cfg.max_step, 1.5 * h);
    else if (corrected->iterations >= 7) h = std::max(cfg.min_step, 0.5 * h);
  }
  branch.diagnostic = "step budget exhausted near lambda = " + std::to_string(x(2));
  return branch;
}

}  // namespace

Branch continue_branch(const BifurcationPoint& point, const IsoparametricFamily& family, const Rational& q,
                       double lambda_max, const StepConfig& cfg) {
  if (!(lambda_max > to_double(point.lambda))) throw UsageError("lambda_max must exceed the bifurcation value");
  if (!(cfg.min_step > 0) || cfg.initial_step < cfg.min_step || cfg.max_step < cfg.initial_step)
    throw UsageError("inconsistent continuation step bounds");
  const double qd = to_double(q);
  ProblemSpec{family, lambda_max, qd}.validate();

  Branch best;
  for (int direction : {1, -1}) {
    Branch b = trace(point, family, qd, lambda_max, cfg, direction);
    if (b.reached_target) return b;
    if (b.samples.size() > best.samples.size() || best.samples.empty()) best = std::move(b);
  }
  return best;
}

BranchAgreement branch_agreement(const Branch& reference, const Branch& refined) {
  BranchAgreement out;
  const auto& ref = reference.samples;
  // fixed-lambda Newton is ill-conditioned next to the bifurcation point (ds/dlambda is unbounded there)
  ShootingConfig cfg = continuation_tolerances(ref.front().solution->config);
  cfg.newton_tol = 1e-12;
  for (const BranchSample& target : refined.samples) {
    std::optional<Vec3> guess;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < ref.size(); ++k) {
      const double l0 = ref[k].lambda, l1 = ref[k + 1].lambda;
      if ((target.lambda - l0) * (target.lambda - l1) > 0 || l0 == l1) continue;
      const double w = (target.lambda - l0) / (l1 - l0);
      const Vec3 g(ref[k].s_minus + w * (ref[k + 1].s_minus - ref[k].s_minus),
                   ref[k].s_plus + w * (ref[k + 1].s_plus - ref[k].s_plus), target.lambda);
      const double d = std::max(std::abs(g(0) - target.s_minus), std::abs(g(1) - target.s_plus));
      if (d < best) {
        best = d;
        guess = g;
      }
    }
    if (!guess) continue;
    const SolveOutcome re =
        solve_profile((*guess)(0), (*guess)(1), ProblemSpec{reference.family, target.lambda, reference.q},
                      cfg);
    double dev = std::numeric_limits<double>::infinity();
    if (re.status == SolveStatus::converged)
      dev = std::max(std::abs(re.solution->s_minus - target.s_minus), std::abs(re.solution->s_plus - target.s_plus));
    out.max_deviation = std::max(out.max_deviation, dev);
    ++out.matched;
  }
  return out;
}

double branch_tangent_check(const Branch& branch, int against) {
  if (branch.samples.empty()) throw UsageError("empty branch");
  const auto smallest = std::min_element(branch.samples.begin(), branch.samples.end(),
                                         [](const auto& a, const auto& b) { return a.amplitude < b.amplitude; });
  if (smallest->amplitude > 1e-2) throw UsageError("branch has no sample with amplitude <= 1e-2");
  const int j = against > 0 ? against : branch.point.i;
  const RationalPolynomial p = eigen_poly(j, branch.family).coeffs;
  const Weight w = weight_exponents(branch.family);
  const auto rule = gauss_jacobi_rule(w.alpha, w.beta);
  const ProfileSolution& sol = *smallest->solution;
  double vp = 0, vv = 0, pp = 0;
  const auto& nodes = rule->nodes_double();
  const auto& weights = rule->weights_double();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double v = sol.state(nodes[k])(0) - 1.0;
    const double pv = p(nodes[k]);
    vp += weights[k] * v * pv;
    vv += weights[k] * v * v;
    pp += weights[k] * pv * pv;
  }
  return std::abs(vp) / std::sqrt(vv * pp);
}

}  // namespace isolab
