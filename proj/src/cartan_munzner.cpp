#include "isolab/cartan_munzner.hpp"

namespace isolab {

void IsoparametricFamily::validate() const {
  if (l != 1 && l != 2 && l != 3 && l != 4 && l != 6)
    throw UsageError("isoparametric degree must be one of 1, 2, 3, 4, 6 (got " + std::to_string(l) + ")");
  if (m1 < 1 || m2 < 1) throw UsageError("multiplicities must be positive");
  if (l % 2 == 1 && m1 != m2) throw UsageError("odd degree requires equal multiplicities");
  if (l * (m1 + m2) != 2 * (n - 1))
    throw UsageError("multiplicities inconsistent with sphere dimension: (l/2)(m1+m2) must equal n-1");
  if (c != m2 - m1) throw UsageError("c must equal m2 - m1");
}

IsoparametricFamily make_family(int l, int m1, int m2) {
  IsoparametricFamily f;
  f.l = l;
  f.m1 = m1;
  f.m2 = m2;
  f.c = m2 - m1;
  f.n = l * (m1 + m2) / 2 + 1;
  f.validate();
  return f;
}

CatalogEntry catalog_linear(int n) {
  if (n < 2) throw UsageError("linear family needs n >= 2");
  const auto vars = static_cast<std::size_t>(n + 1);
  return {"linear", MultiPoly::variable(vars, vars - 1), make_family(1, n - 1, n - 1)};
}

CatalogEntry catalog_product_spheres(int n, int k) {
  if (n < 2 || k < 2) throw UsageError("product-spheres family needs n, k >= 2");
  const auto vars = static_cast<std::size_t>(n + k);
  MultiPoly f(vars);
  for (std::size_t j = 0; j < vars; ++j) {
    Exponents e(vars, 0);
    e[j] = 2;
    f.add_term(e, Rational(j < static_cast<std::size_t>(n) ? 1 : -1));
  }
  return {"product-spheres", std::move(f), make_family(2, k - 1, n - 1)};
}

CatalogEntry catalog_nomizu(int n) {
  if (n < 2) throw UsageError("Nomizu family needs n >= 2");
  const auto half = static_cast<std::size_t>(n + 1);
  const auto vars = 2 * half;
  MultiPoly x2(vars), y2(vars), xy(vars);
  for (std::size_t j = 0; j < half; ++j) {
    auto xj = MultiPoly::variable(vars, j);
    auto yj = MultiPoly::variable(vars, half + j);
    x2 += xj * xj;
    y2 += yj * yj;
    xy += xj * yj;
  }
  auto diff = x2 - y2;
  MultiPoly f = MultiPoly::radius_power(vars, 2) - Rational(2) * (diff * diff) - Rational(8) * (xy * xy);
  return {"nomizu", std::move(f), make_family(4, 1, n - 1)};
}

MultiPoly ozeki_takeuchi_f0_poly() {
  constexpr std::size_t vars = 16;
  auto q = ozeki_takeuchi_f0(quaternion_coordinates(vars, 0), quaternion_coordinates(vars, 4),
                             quaternion_coordinates(vars, 8), quaternion_coordinates(vars, 12));
  for (int part = 1; part < 4; ++part)
    if (!q.c[part].is_zero()) throw InvariantViolation("Ozeki-Takeuchi F_0 expansion is not real-valued");
  return q.c[0];
}

CatalogEntry catalog_ozeki_takeuchi() {
  MultiPoly f = MultiPoly::radius_power(16, 2) - Rational(2) * ozeki_takeuchi_f0_poly();
  return {"ozeki-takeuchi", std::move(f), make_family(4, 3, 4)};
}

CatalogEntry catalog(const std::string& family_id, int n, int k) {
  if (family_id == "linear") return catalog_linear(n);
  if (family_id == "product-spheres" || family_id == "product_spheres") return catalog_product_spheres(n, k);
  if (family_id == "nomizu") return catalog_nomizu(n);
  if (family_id == "ozeki-takeuchi" || family_id == "ozeki_takeuchi") return catalog_ozeki_takeuchi();
  throw UsageError("unknown family '" + family_id + "'");
}

CartanMunznerReport verify_cartan_munzner(const MultiPoly& f, int l) {
  if (l < 1) throw UsageError("degree must be positive");
  if (!f.is_homogeneous() || f.degree() != l)
    throw UsageError("F must be homogeneous of degree " + std::to_string(l));

  const std::size_t vars = f.num_vars();
  const Rational l2(l * l);
  CartanMunznerReport report;
  report.gradient_defect = gradient_inner(f) - l2 * MultiPoly::radius_power(vars, static_cast<unsigned>(l - 1));

  MultiPoly lap = euclidean_laplacian(f);
  if (l % 2 == 0) {
    Exponents probe(vars, 0);
    probe[0] = static_cast<std::uint16_t>(l - 2);
    Rational k = lap.coefficient(probe);
    report.c = Rational(2 * k / l2);
    report.laplacian_defect = lap - k * MultiPoly::radius_power(vars, static_cast<unsigned>((l - 2) / 2));
  } else if (lap.is_zero()) {
    report.c = Rational(0);
    report.laplacian_defect = MultiPoly(vars);
  } else {
    // An odd-degree F could only satisfy the second equation with c != 0 if (Delta F)^2 is a
    // multiple of r^{2l-4}.
    MultiPoly sq = lap * lap;
    Exponents probe(vars, 0);
    probe[0] = static_cast<std::uint16_t>(2 * l - 4);
    Rational k2 = sq.coefficient(probe);
    if (k2 != 0 && sq == k2 * MultiPoly::radius_power(vars, static_cast<unsigned>(l - 2)))
      throw InvariantViolation("odd degree l = " + std::to_string(l) + " with nonzero c");
    report.laplacian_defect = lap;
  }
  report.ok = report.gradient_defect.is_zero() && report.laplacian_defect.is_zero();
  return report;
}

}  // namespace isolab
