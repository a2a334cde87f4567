#include "isolab/profile.hpp"
#include "isolab/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace isolab;

namespace {

const IsoparametricFamily s3_linear = make_family(1, 2, 2);  // n = 3, l = 1, c = 0

ProblemSpec s3(double lambda) { return ProblemSpec{s3_linear, lambda, 2.0}; }

ScanConfig wide_scan() {
  ScanConfig scan;
  scan.s_min = 1e-9;
  return scan;
}

double eval(const RationalPolynomial& p, double t) { return p(t); }

}  // namespace

TEST_CASE("ProblemSpec validation") {
  CHECK_NOTHROW(s3(1.0).validate());
  CHECK_THROWS_AS((ProblemSpec{s3_linear, -1.0, 2.0}.validate()), UsageError);
  CHECK_THROWS_AS((ProblemSpec{s3_linear, 1.0, 1.0}.validate()), UsageError);
  // p_3 - 1 = 5 is critical on S^3
  CHECK_THROWS_AS((ProblemSpec{s3_linear, 1.0, 5.0}.validate()), UsageError);
  CHECK_NOTHROW((ProblemSpec{make_family(1, 1, 1), 1.0, 50.0}.validate()));
}

TEST_CASE("regular_slope") {
  CHECK(regular_slope(1.0, Endpoint::minus, s3(4)) == 0.0);
  CHECK(regular_slope(1.0, Endpoint::plus, s3(4)) == 0.0);
  // a(-1) = 3: 4 (2 - 4) / 3
  CHECK(regular_slope(2.0, Endpoint::minus, s3(4)) == doctest::Approx(-8.0 / 3).epsilon(1e-15));
  // a(+1) = -3
  CHECK(regular_slope(2.0, Endpoint::plus, s3(4)) == doctest::Approx(8.0 / 3).epsilon(1e-15));
  CHECK_THROWS_AS(regular_slope(0.0, Endpoint::minus, s3(4)), UsageError);

  // Linearized at lambda_i^{l,q}: slope / (s - 1) -> p_i'(-1) / p_i(-1) as the perturbation shrinks.
  for (const auto& fam : {s3_linear, make_family(2, 1, 1), make_family(4, 3, 4)}) {
    for (int i = 1; i <= 3; ++i) {
      const auto p = eigen_poly(i, fam).coeffs;
      const double ratio = to_double(p.derivative()(Rational(-1)) / p(Rational(-1)));
      const double q = 2.0;
      const double lambda = to_double(-eigen_poly(i, fam).eigenvalue) / (q - 1);
      const ProblemSpec spec{fam, lambda, q};
      double previous = 1e300;
      for (double eps : {1e-3, 1e-4, 1e-5}) {
        const double s = 1 + eps * eval(p, -1.0);
        const double err = std::abs(regular_slope(s, Endpoint::minus, spec) / (s - 1) - ratio);
        CHECK(err < previous);
        previous = err;
      }
      CHECK(previous < 1e-4 * std::abs(ratio) + 1e-9);
    }
  }
}

TEST_CASE("series_start basics") {
  const auto one = series_start(1.0, Endpoint::minus, s3(7), 6, 1e-5);
  for (std::size_t k = 1; k < one.coeffs.size(); ++k) CHECK(one.coeffs[k] == 0.0);
  CHECK(one.phi == 1.0);
  CHECK(one.dphi == 0.0);

  for (Endpoint end : {Endpoint::minus, Endpoint::plus}) {
    const auto first = series_start(2.5, end, s3(7), 1, 1e-5);
    CHECK(first.dphi == regular_slope(2.5, end, s3(7)));
    const auto st = series_start(2.5, end, s3(7), 4, 1e-5);
    CHECK(st.t0 == doctest::Approx(endpoint_value(end) * (1 - 1e-5)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(series_start(-1.0, Endpoint::minus, s3(7), 4, 1e-5), UsageError);
  CHECK_THROWS_AS(series_start(1.0, Endpoint::minus, s3(7), 4, 2.0), UsageError);
}

TEST_CASE("truncated series satisfies the ODE to its order") {
  // Plug the polynomial back into b phi'' + a phi' - f(phi): the defect must scale like tau^order.
  for (const auto& fam : {s3_linear, make_family(4, 3, 4), make_family(2, 1, 1)}) {
    const ProblemSpec spec{fam, 6.0, 1.5};
    for (Endpoint end : {Endpoint::minus, Endpoint::plus}) {
      const int order = 5;
      const auto st = series_start(1.7, end, spec, order, 1e-3);
      auto defect = [&](double tau) {
        const double t = endpoint_value(end) + tau;
        double phi = 0, d1 = 0, d2 = 0;
        for (std::size_t k = 0; k < st.coeffs.size(); ++k) {
          const double c = st.coeffs[k];
          const auto kd = static_cast<double>(k);
          phi += c * std::pow(tau, kd);
          if (k >= 1) d1 += kd * c * std::pow(tau, kd - 1);
          if (k >= 2) d2 += kd * (kd - 1) * c * std::pow(tau, kd - 2);
        }
        return spec.b(t) * d2 + spec.a(t) * d1 - spec.source(phi);
      };
      const double sgn = end == Endpoint::minus ? 1.0 : -1.0;
      const double r1 = std::abs(defect(sgn * 0.02)), r2 = std::abs(defect(sgn * 0.01));
      CHECK(r2 < 1e-7);
      CHECK(r1 / r2 == doctest::Approx(std::pow(2.0, order)).epsilon(0.15));
    }
  }
}

TEST_CASE("series jump-off converges at order + 1") {
  for (int order : {2, 3}) {
    CAPTURE(order);
    ShootingConfig cfg;
    cfg.series_order = order;
    cfg.tol.rtol = 1e-13;
    cfg.tol.atol = 1e-15;
    std::vector<double> values;
    for (double eps : {0.02, 0.01, 0.005}) {
      cfg.series_offset = eps;
      const HalfProfile half = integrate_half(1.6, Endpoint::minus, s3(5), cfg);
      REQUIRE_FALSE(half.diverged());
      values.push_back(half(-0.5)(0));
    }
    // O(eps^{order+1}): each halving shrinks the change by at least ~2^{order+1}
    const double d1 = std::abs(values[0] - values[1]), d2 = std::abs(values[1] - values[2]);
    CHECK(d1 < 1e-4);
    CHECK(d1 / d2 > 0.8 * std::pow(2.0, order + 1));
  }
}

TEST_CASE("integrate_half and match_residual on the constant solution") {
  for (Endpoint end : {Endpoint::minus, Endpoint::plus}) {
    const HalfProfile half = integrate_half(1.0, end, s3(3.5));
    REQUIRE_FALSE(half.diverged());
    for (const auto& step : half.traj.steps) {
      CHECK(step.end()(0) == 1.0);
      CHECK(step.end()(1) == 0.0);
    }
  }
  const auto r = match_residual(1.0, 1.0, s3(3.5));
  REQUIRE(r.has_value());
  CHECK(r->norm() == 0.0);
}

TEST_CASE("match_residual reflection symmetry when c = 0") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> pick(0.3, 2.5);
  for (int trial = 0; trial < 10; ++trial) {
    const double s = pick(rng);
    const auto r = match_residual(s, s, s3(6.0));
    if (!r) continue;
    CHECK(std::abs((*r)(0)) < 1e-12);
    CHECK(std::abs((*r)(1)) > 1e-6);
  }
}

TEST_CASE("divergence is reported, not thrown") {
  // A huge endpoint value blows up before t = 0.
  CHECK_FALSE(half_state_at_zero(1e5, Endpoint::minus, s3(18)).has_value());
  CHECK_FALSE(match_residual(1e5, 1.0, s3(18)).has_value());
}

TEST_CASE("solve_profile") {
  const auto trivial = solve_profile(1.0, 1.0, s3(3.5));
  CHECK(trivial.status == SolveStatus::trivial);

  // Seed taken from a coarse look at the scan grid.
  const auto found = solve_profile(0.4, 1.9, s3(3.5));
  REQUIRE(found.status == SolveStatus::converged);
  const ProfileSolution& sol = *found.solution;
  CHECK(sol.crossings == 1);
  CHECK(sol.residual_max < 1e-8);
  CHECK(pde_residual(sol, 8) < 1e-8);
  const auto r = match_residual(sol.s_minus, sol.s_plus, sol.spec, sol.config);
  REQUIRE(r.has_value());
  CHECK(r->norm() < 1e-10);

  // Below n/(q-1) = 3 every seed ends trivial, at the zero solution, or fails.
  for (double sm : {0.2, 0.7, 1.4, 3.0})
    for (double sp : {0.3, 0.9, 2.0, 5.0}) {
      const auto out = solve_profile(sm, sp, s3(2.0));
      CHECK(out.status != SolveStatus::converged);
    }
  CHECK(solve_profile(0.2, 0.3, s3(2.0)).status == SolveStatus::zero_solution);
  CHECK_THROWS_AS(solve_profile(-1.0, 1.0, s3(2.0)), UsageError);
}

TEST_CASE("enumerate_solutions: uniqueness below n/(q-1)") {
  for (double factor : {0.5, 0.9, 1.0}) {
    CHECK(enumerate_solutions(s3(3.0 * factor)).empty());
    CHECK(enumerate_solutions(s3(3.0 * factor), wide_scan()).empty());
  }
  // q = 3/2 on S^3: threshold n/(q-1) = 6
  CHECK(enumerate_solutions(ProblemSpec{s3_linear, 5.5, 1.5}).empty());
}

TEST_CASE("enumerate_solutions: lambda = 10 on S^3 has both one- and two-crossing solutions") {
  const auto sols = enumerate_solutions(s3(10.0), wide_scan());
  CHECK(sols.size() >= 2);
  std::set<int> crossings;
  for (const auto& s : sols) crossings.insert(s.crossings);
  CHECK(crossings.count(1) == 1);
  CHECK(crossings.count(2) == 1);
  for (std::size_t i = 1; i < sols.size(); ++i) {
    const bool ordered = sols[i - 1].crossings < sols[i].crossings ||
                         (sols[i - 1].crossings == sols[i].crossings && sols[i - 1].s_minus < sols[i].s_minus);
    CHECK(ordered);
  }
}

TEST_CASE("enumerate_solutions: l = 2 on S^5 just above onset") {
  // q = p_7 - 1 = 9/5, lambda_1^{2,q} = 2 * 6 / (4/5) = 15
  const ProblemSpec spec{make_family(2, 2, 2), 15.5, 1.8};
  const auto sols = enumerate_solutions(spec, wide_scan());
  REQUIRE_FALSE(sols.empty());
  CHECK(sols.front().crossings == 1);
}

TEST_CASE("solution properties: regularity, positivity, crossings of 1, reflection") {
  for (double lambda : {5.0, 10.0, 18.0}) {
    CAPTURE(lambda);
    const auto sols = enumerate_solutions(s3(lambda), wide_scan());
    REQUIRE_FALSE(sols.empty());
    for (const auto& s : sols) {
      CHECK(s.residual_max < 1e-8);
      CHECK(s.crossings >= 1);
      double lo = 1e300, hi = -1e300;
      for (const auto& g : s.grid(4)) {
        lo = std::min(lo, g.phi);
        hi = std::max(hi, g.phi);
      }
      CHECK(lo > 0);
      CHECK(lo < 1);
      CHECK(hi > 1);
      for (Endpoint end : {Endpoint::minus, Endpoint::plus}) {
        const double sv = end == Endpoint::minus ? s.s_minus : s.s_plus;
        const auto reference = series_start(sv, end, s.spec, 6, s.config.series_offset);
        CHECK(std::abs(s.state(reference.t0)(1) - reference.dphi) < 1e-7);
      }
      // c = 0: the mirrored pair is a solution with the same crossing count
      const bool mirrored = std::any_of(sols.begin(), sols.end(), [&](const ProfileSolution& o) {
        return o.crossings == s.crossings && std::abs(o.s_minus - s.s_plus) + std::abs(o.s_plus - s.s_minus) < 1e-6;
      });
      CHECK(mirrored);
    }
  }
}

TEST_CASE("count lower bound at interval midpoints, i <= 4") {
  struct Case {
    IsoparametricFamily family;
    double q;
  };
  for (const auto& c : {Case{s3_linear, 2.0}, Case{make_family(2, 1, 1), 2.0}, Case{s3_linear, 1.5}}) {
    for (int i = 1; i <= 4; ++i) {
      const double li = to_double(-sphere_eigenvalue(c.family.n, i * c.family.l)) / (c.q - 1);
      const double lj = to_double(-sphere_eigenvalue(c.family.n, (i + 1) * c.family.l)) / (c.q - 1);
      CAPTURE(c.family.l);
      CAPTURE(c.q);
      CAPTURE(i);
      const auto sols = enumerate_solutions(ProblemSpec{c.family, 0.5 * (li + lj), c.q}, wide_scan());
      CHECK(sols.size() >= static_cast<std::size_t>(i));
      std::set<int> crossings;
      for (const auto& s : sols) crossings.insert(s.crossings);
      for (int z = 1; z <= i; ++z) CHECK(crossings.count(z) == 1);
    }
  }
}

TEST_CASE("crossing_count near onset") {
  for (int i = 1; i <= 3; ++i) {
    const double li = static_cast<double>(i * (i + 2));
    ScanConfig scan;
    scan.s_min = 0.5;
    scan.s_max = 2.0;
    const auto sols = enumerate_solutions(s3(li * 1.02), scan);
    REQUIRE_FALSE(sols.empty());
    const auto smallest = std::min_element(sols.begin(), sols.end(), [](const auto& a, const auto& b) {
      return a.amplitude() < b.amplitude();
    });
    CAPTURE(i);
    CHECK(smallest->amplitude() < 0.5);
    CHECK(smallest->crossings == i);
  }
}

TEST_CASE("pde_residual") {
  const auto trivial = solve_profile(1.0, 1.0, s3(6.0));
  REQUIRE(trivial.solution.has_value());
  CHECK(pde_residual(*trivial.solution) == 0.0);
  CHECK(crossing_count(*trivial.solution) == 0);

  const auto sol = solve_profile(0.4, 1.9, s3(3.5)).solution;
  REQUIRE(sol.has_value());
  CHECK(pde_residual(*sol) < 1e-8);
  const double corrupted = pde_residual(*sol, [&](double t) {
    Eigen::Vector2d y = sol->state(t);
    y(0) += 1e-3;
    return y;
  });
  CHECK(corrupted > 1e-4);
}

TEST_CASE("yamabe_quotient") {
  // S^3 x (S^3, T g0) with T = 3/22: s_bar = 6 + 44 = 50, lambda = 10, q = 2.
  const ProductSpec product = product_spec(3, 3, make_rational(3, 22));
  REQUIRE(product.lambda == 10);
  const double p = 3.0;
  const double vol = sphere_volume(3) * product.fibre_volume();

  const auto constant = [](double) { return Eigen::Vector2d(1.0, 0.0); };
  CHECK(yamabe_quotient(constant, s3_linear, product) ==
        doctest::Approx(50.0 * std::pow(vol, 1 - 2 / p)).epsilon(1e-12));

  const auto sols = enumerate_solutions(problem_for_product(s3_linear, product), wide_scan());
  REQUIRE(sols.size() >= 2);
  for (const auto& s : sols) {
    const double y = yamabe_quotient(s, product);
    const double scaled = yamabe_quotient([&](double t) { return Eigen::Vector2d(3.7 * s.state(t)); }, s3_linear, product);
    CHECK(scaled == doctest::Approx(y).epsilon(1e-12));
    // c = 0: the mirror image has the same quotient
    for (const auto& o : sols)
      if (std::abs(o.s_minus - s.s_plus) < 1e-6 && std::abs(o.s_plus - s.s_minus) < 1e-6)
        CHECK(yamabe_quotient(o, product) == doctest::Approx(y).epsilon(1e-9));
  }

  // Critical point: first variation along random S_f directions vanishes.
  std::mt19937 rng(2718);
  std::normal_distribution<double> gauss;
  std::vector<RationalPolynomial> basis;
  for (int i = 0; i <= 4; ++i) basis.push_back(eigen_poly(i, s3_linear).coeffs);
  const ProfileSolution& sol = sols.front();
  for (int dir = 0; dir < 5; ++dir) {
    std::vector<double> coef(basis.size());
    for (auto& c : coef) c = gauss(rng);
    auto psi = [&](double t) {
      Eigen::Vector2d v(0, 0);
      for (std::size_t k = 0; k < basis.size(); ++k) v += coef[k] * Eigen::Vector2d(basis[k](t), basis[k].derivative()(t));
      return v;
    };
    const double h = 1e-5;
    const double plus = yamabe_quotient([&](double t) { return Eigen::Vector2d(sol.state(t) + h * psi(t)); }, s3_linear, product);
    const double minus = yamabe_quotient([&](double t) { return Eigen::Vector2d(sol.state(t) - h * psi(t)); }, s3_linear, product);
    CHECK(std::abs(plus - minus) / (2 * h) < 1e-6);
  }

  const ProductSpec other = product_spec(3, 4, Rational(1));
  CHECK_THROWS_AS(yamabe_quotient(sol, other), UsageError);
  CHECK_THROWS_AS(yamabe_quotient(sol, product_spec(3, 3, Rational(1))), UsageError);
}
