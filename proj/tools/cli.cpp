#include "cli.hpp"

#include "isolab/branches.hpp"
#include "isolab/cartan_munzner.hpp"
#include "isolab/products.hpp"
#include "isolab/profile.hpp"
#include "isolab/spectral.hpp"
#include "isolab/sturm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace isolab::cli {

namespace {

using nlohmann::json;

std::string decimal(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// 12 significant digits: the shortest round-trip form of the rounded value prints the same digits
json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(decimal(x).c_str(), nullptr);
}

json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json fraction(const Rational& r) { return to_string(r); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return quoted + "\"";
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream os;
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << csv_field(cells[k]);
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

struct Sink {
  std::ostream& out;
  std::string path = "-";

  void write(const std::string& text) const {
    if (path == "-") {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
  }
  void write(const json& doc) const { write(doc.dump(2) + "\n"); }
};

struct FamilyOptions {
  std::string id;
  int dim = 0;
  int dim2 = 0;
  int n = 0;
  int l = 0;
  int m1 = 0;
  int m2 = 0;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
  cmd->add_option("--family", f.id, "catalog family: linear, product-spheres, nomizu, ozeki-takeuchi");
  cmd->add_option("--dim", f.dim, "first catalog dimension parameter");
  cmd->add_option("--dim2", f.dim2, "second catalog dimension parameter (product-spheres)");
  cmd->add_option("--n", f.n, "sphere dimension of an explicit family");
  cmd->add_option("--l", f.l, "degree of an explicit family");
  cmd->add_option("--m1", f.m1, "first multiplicity");
  cmd->add_option("--m2", f.m2, "second multiplicity");
}

CatalogEntry catalog_with_defaults(const FamilyOptions& f) {
  int dim = f.dim, dim2 = f.dim2;
  if (f.id == "linear" && dim == 0) dim = 4;
  if ((f.id == "product-spheres" || f.id == "product_spheres") && dim == 0) dim = 3;
  if ((f.id == "product-spheres" || f.id == "product_spheres") && dim2 == 0) dim2 = 3;
  if (f.id == "nomizu" && dim == 0) dim = 2;
  return catalog(f.id, dim, dim2);
}

IsoparametricFamily resolve_family(const FamilyOptions& f) {
  if (!f.id.empty()) {
    if (f.l || f.m1 || f.m2) throw UsageError("--family excludes --l, --m1, --m2");
    const IsoparametricFamily fam = catalog_with_defaults(f).family;
    if (f.n && f.n != fam.n) throw UsageError("--n does not match the catalog family");
    return fam;
  }
  const int l = f.l ? f.l : 1;
  if (f.m1 || f.m2) {
    const IsoparametricFamily fam = make_family(l, f.m1, f.m2);
    if (f.n && f.n != fam.n) throw UsageError("--n does not match (l, m1, m2)");
    return fam;
  }
  if (f.n < 2) throw UsageError("give --family, or --n with --l (and --m1 --m2 when unequal)");
  if ((2 * (f.n - 1)) % l != 0 || ((2 * (f.n - 1)) / l) % 2 != 0)
    throw UsageError("no equal-multiplicity family of degree " + std::to_string(l) + " on S^" + std::to_string(f.n) +
                     "; give --m1 and --m2");
  const int m = (f.n - 1) / l;
  return make_family(l, m, m);
}

json family_json(const IsoparametricFamily& fam) {
  return {{"n", fam.n}, {"l", fam.l}, {"m1", fam.m1}, {"m2", fam.m2}, {"c", fam.c}};
}

// exactly one of {q + lambda, n-k-T product} for solver commands
struct ProblemOptions {
  std::string q;
  std::string lambda;
  int k = 0;
  std::string T;
};

void add_problem_options(CLI::App* cmd, ProblemOptions& p, bool with_lambda = true) {
  cmd->add_option("--q", p.q, "exponent q (fraction or decimal)");
  if (with_lambda) cmd->add_option("--lambda", p.lambda, "lambda (fraction or decimal)");
  cmd->add_option("--k", p.k, "fibre dimension of the product S^n x S^k");
  cmd->add_option("--T", p.T, "fibre scale T of the product metric");
}

struct ResolvedProblem {
  ProblemSpec spec;
  Rational q;
  std::optional<Rational> lambda;
  std::optional<ProductSpec> product;
};

ResolvedProblem resolve_problem(const IsoparametricFamily& fam, const ProblemOptions& p, bool need_lambda) {
  const bool product_form = p.k != 0 || !p.T.empty();
  const bool direct_form = !p.q.empty() || !p.lambda.empty();
  if (product_form == direct_form) throw UsageError("give exactly one of {--q, --lambda} or {--k, --T}");
  ResolvedProblem r;
  if (product_form) {
    if (p.k == 0 || p.T.empty()) throw UsageError("product form needs both --k and --T");
    r.product = product_spec(fam.n, p.k, parse_rational(p.T));
    r.q = r.product->q;
    r.lambda = r.product->lambda;
  } else {
    if (p.q.empty()) throw UsageError("--q is required");
    r.q = parse_rational(p.q);
    if (!p.lambda.empty()) r.lambda = parse_rational(p.lambda);
    if (need_lambda && !r.lambda) throw UsageError("--lambda is required");
  }
  r.spec = ProblemSpec{fam, r.lambda ? to_double(*r.lambda) : 1.0, to_double(r.q)};
  r.spec.validate();
  return r;
}

json problem_json(const IsoparametricFamily& fam, const ResolvedProblem& r) {
  json spec{{"family", family_json(fam)}, {"q", fraction(r.q)}, {"q_decimal", number(to_double(r.q))}};
  if (r.lambda) {
    spec["lambda"] = fraction(*r.lambda);
    spec["lambda_decimal"] = number(to_double(*r.lambda));
  }
  if (r.product) {
    spec["product"] = {{"n", r.product->n},
                       {"k", r.product->k},
                       {"T", fraction(r.product->T)},
                       {"m", r.product->m},
                       {"s_bar", fraction(r.product->s_bar)}};
  }
  return spec;
}

struct GridOptions {
  bool grid = false;
  int per_step = 1;
};

json solution_json(const ProfileSolution& sol, const GridOptions& g) {
  json j{{"s_minus", number(sol.s_minus)},
         {"s_plus", number(sol.s_plus)},
         {"crossings", sol.crossings},
         {"residual_max", number(sol.residual_max)},
         {"amplitude", number(sol.amplitude())},
         {"quotient", number(sol.quotient)}};
  if (g.grid) {
    json rows = json::array();
    for (const auto& p : sol.grid(g.per_step)) rows.push_back({number(p.t), number(p.phi), number(p.dphi)});
    j["grid"] = std::move(rows);
  }
  return j;
}

CsvTable solution_table(const std::vector<ProfileSolution>& sols) {
  CsvTable t{{"index", "s_minus", "s_plus", "crossings", "residual_max", "amplitude", "quotient"}, {}};
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const auto& s = sols[k];
    t.rows.push_back({std::to_string(k), decimal(s.s_minus), decimal(s.s_plus), std::to_string(s.crossings),
                      decimal(s.residual_max), decimal(s.amplitude()), s.quotient ? decimal(*s.quotient) : ""});
  }
  return t;
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::trivial: return "trivial";
    case SolveStatus::zero_solution: return "zero_solution";
    case SolveStatus::no_convergence: return "no_convergence";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
}

std::vector<int> default_degrees(int n) {
  std::vector<int> out{1};
  if (n >= 3) out.push_back(2);
  return out;
}

std::string breakdown(const SolutionCount& c) {
  std::vector<std::string> parts;
  for (const auto& [l, count] : c.per_degree) parts.push_back("l=" + std::to_string(l) + ":" + std::to_string(count));
  return join(parts, ";");
}

json breakdown_json(const SolutionCount& c) {
  json arr = json::array();
  for (const auto& [l, count] : c.per_degree) arr.push_back({{"l", l}, {"count", count}});
  return arr;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"isoparametric reductions of the constant scalar curvature equation", "isolab"};
  app.require_subcommand(1);

  std::string format, output = "-", seed;
  const std::string cmdline = "isolab " + join(args, " ");
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: json or csv (default depends on the command)");
    cmd->add_option("--output,-o", output, "output file, - for stdout");
    cmd->add_option("--seed", seed, "random seed (reserved, unused)");
  };

  FamilyOptions fam_opts;
  ProblemOptions prob;
  GridOptions grid;

  auto* verify = app.add_subcommand("verify-cm", "exact Cartan-Munzner check of a catalog polynomial");
  bool emit_poly = false;
  verify->add_option("--family", fam_opts.id, "catalog family")->required();
  verify->add_option("--dim", fam_opts.dim, "first catalog dimension parameter");
  verify->add_option("--dim2", fam_opts.dim2, "second catalog dimension parameter");
  verify->add_flag("--emit-polynomial", emit_poly, "include the polynomial in the JSON output");

  int i_max = 10, index = 1;
  auto* spectrum = app.add_subcommand("spectrum", "eigenpolynomials p_1..p_imax with root isolation");
  add_family_options(spectrum, fam_opts);
  spectrum->add_option("--i-max", i_max, "largest index")->capture_default_str();

  auto* eigen = app.add_subcommand("eigenpoly", "one eigenpolynomial with its certificates");
  add_family_options(eigen, fam_opts);
  eigen->add_option("--i", index, "index i")->capture_default_str();

  double s_minus = 1.0, s_plus = 1.0;
  auto* shoot = app.add_subcommand("shoot", "Newton shooting from a seed (s_minus, s_plus)");
  add_family_options(shoot, fam_opts);
  add_problem_options(shoot, prob);
  shoot->add_option("--s-minus", s_minus, "seed phi(-1)")->required();
  shoot->add_option("--s-plus", s_plus, "seed phi(1)")->required();

  ScanConfig scan;
  auto* enumerate = app.add_subcommand("enumerate", "scan seeds and list every nontrivial solution");
  add_family_options(enumerate, fam_opts);
  add_problem_options(enumerate, prob);
  enumerate->add_option("--s-min", scan.s_min, "smallest seed value")->capture_default_str();
  enumerate->add_option("--s-max", scan.s_max, "largest seed value")->capture_default_str();
  enumerate->add_option("--points", scan.points, "seeds per axis")->capture_default_str();

  for (auto* cmd : {shoot, enumerate}) {
    cmd->add_flag("--grid", grid.grid, "include the profile grid [[t, phi, dphi], ...]");
    cmd->add_option("--grid-refine", grid.per_step, "grid points per integration step")->capture_default_str();
  }

  StepConfig steps;
  double lambda_max = 0.0;
  std::string output_dir = ".";
  auto* branch = app.add_subcommand("branch", "pseudo-arclength continuation of branches 1..i-max");
  add_family_options(branch, fam_opts);
  add_problem_options(branch, prob, false);
  int branch_i_max = 1;
  branch->add_option("--i-max", branch_i_max, "continue branches 1..i-max")->capture_default_str();
  branch->add_option("--lambda-max", lambda_max, "stop at this lambda")->required();
  branch->add_option("--output-dir", output_dir, "directory for branch_<i>.csv and manifest.json")
      ->capture_default_str();
  branch->add_option("--initial-step", steps.initial_step)->capture_default_str();
  branch->add_option("--min-step", steps.min_step)->capture_default_str();
  branch->add_option("--max-step", steps.max_step)->capture_default_str();
  branch->add_option("--max-steps", steps.max_steps)->capture_default_str();
  branch->add_option("--seed-amplitude", steps.seed_amplitude)->capture_default_str();

  int count_n = 0, count_k = 0;
  std::string count_T;
  std::vector<int> degrees;
  auto* count = app.add_subcommand("count", "guaranteed solution count on S^n x (S^k, T g0)");
  count->add_option("--n", count_n, "base sphere dimension")->required();
  count->add_option("--k", count_k, "fibre sphere dimension")->required();
  count->add_option("--T", count_T, "fibre scale")->required();
  count->add_option("--degrees", degrees, "degrees l to count (default 1 and 2)")->delimiter(',');

  auto* thresholds = app.add_subcommand("thresholds", "T_i at which lambda crosses lambda_i");
  thresholds->add_option("--n", count_n, "base sphere dimension")->required();
  thresholds->add_option("--k", count_k, "fibre sphere dimension")->required();
  thresholds->add_option("--i-max", i_max, "largest index")->capture_default_str();
  thresholds->add_option("--degrees", degrees, "degrees l to count (default 1 and 2)")->delimiter(',');

  for (auto* cmd : {verify, spectrum, eigen, shoot, enumerate, branch, count, thresholds}) common(cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  try {
    if (format.empty()) format = spectrum->parsed() || count->parsed() || thresholds->parsed() ? "csv" : "json";
    check_format(format);
    const Sink sink{out, output};

    if (verify->parsed()) {
      const CatalogEntry entry = catalog_with_defaults(fam_opts);
      const CartanMunznerReport rep = verify_cartan_munzner(entry.polynomial, entry.family.l);
      const bool c_matches = rep.c && *rep.c == entry.family.c;
      const bool ok = rep.ok && c_matches;
      if (format == "csv") {
        sink.write(CsvTable{{"family", "ok", "l", "c", "vars"},
                            {{entry.name, ok ? "ok" : "fail", std::to_string(entry.family.l),
                              rep.c ? to_string(*rep.c) : "", std::to_string(entry.polynomial.num_vars())}}}
                       .str());
      } else {
        json doc{{"command", "verify-cm"},
                 {"cmdline", cmdline},
                 {"family", entry.name},
                 {"status", ok ? "ok" : "fail"},
                 {"ok", ok},
                 {"l", entry.family.l},
                 {"c", rep.c ? json(fraction(*rep.c)) : json(nullptr)},
                 {"sphere", family_json(entry.family)},
                 {"num_vars", entry.polynomial.num_vars()},
                 {"gradient_defect_terms", rep.gradient_defect.size()},
                 {"laplacian_defect_terms", rep.laplacian_defect.size()}};
        if (emit_poly) doc["polynomial"] = to_json(entry.polynomial);
        sink.write(doc);
      }
      if (!ok) throw InvariantViolation("Cartan-Munzner equations fail for " + entry.name);
      return 0;
    }

    if (spectrum->parsed() || eigen->parsed()) {
      const IsoparametricFamily fam = resolve_family(fam_opts);
      const int lo = spectrum->parsed() ? 1 : index, hi = spectrum->parsed() ? i_max : index;
      if (lo < 1 || hi < lo) throw UsageError("index must be at least 1");
      const ReducedCoeffs rc = reduced_coeffs(fam);
      const Weight w = weight_exponents(fam);
      CsvTable table{{"i", "eigenvalue", "coefficients", "root_intervals"}, {}};
      json rows = json::array();
      for (int i = lo; i <= hi; ++i) {
        const EigenPoly ep = eigen_poly(i, fam);
        if (!apply_O(ep.coeffs, i * fam.l, rc).is_zero()) throw InvariantViolation("O_il(p_i) != 0");
        const auto roots = root_isolation(ep.coeffs);
        std::vector<std::string> coeffs, intervals;
        json jc = json::array(), jr = json::array();
        for (const auto& c : ep.coeffs.coeffs()) {
          coeffs.push_back(to_string(c));
          jc.push_back(fraction(c));
        }
        for (const auto& r : roots) {
          intervals.push_back("(" + to_string(r.lo) + " " + to_string(r.hi) + "]");
          jr.push_back({fraction(r.lo), fraction(r.hi)});
        }
        table.rows.push_back({std::to_string(i), to_string(ep.eigenvalue), join(coeffs, " "), join(intervals, " ")});
        const RationalPolynomial dp = ep.coeffs.derivative();
        json row{{"i", i},
                 {"eigenvalue", fraction(ep.eigenvalue)},
                 {"coefficients", jc},
                 {"root_intervals", jr},
                 {"jacobi_oracle_match", ep.coeffs == jacobi_oracle(i, w.alpha, w.beta)},
                 {"endpoint_ratio", fraction(dp(Rational(-1)) / ep.coeffs(Rational(-1)))}};
        if (i > lo || eigen->parsed()) {
          // interlacing against the neighbour one degree up
          row["interlaces_next"] = roots_interlace(ep.coeffs, eigen_poly(i + 1, fam).coeffs);
        }
        rows.push_back(std::move(row));
      }
      if (format == "csv") {
        sink.write(table.str());
      } else {
        json doc{{"command", spectrum->parsed() ? "spectrum" : "eigenpoly"},
                 {"cmdline", cmdline},
                 {"family", family_json(fam)},
                 {"weight", {{"alpha", fraction(w.alpha)}, {"beta", fraction(w.beta)}}}};
        if (spectrum->parsed()) doc["polynomials"] = std::move(rows);
        else doc["polynomial"] = std::move(rows.front());
        sink.write(doc);
      }
      return 0;
    }

    if (shoot->parsed() || enumerate->parsed()) {
      const IsoparametricFamily fam = resolve_family(fam_opts);
      const ResolvedProblem problem = resolve_problem(fam, prob, true);
      if (grid.per_step < 1) throw UsageError("--grid-refine must be positive");
      std::vector<ProfileSolution> solutions;
      json doc{{"command", shoot->parsed() ? "shoot" : "enumerate"},
               {"cmdline", cmdline},
               {"spec", problem_json(fam, problem)}};
      if (shoot->parsed()) {
        if (!(s_minus > 0) || !(s_plus > 0)) throw UsageError("seeds must be positive");
        const SolveOutcome outcome = solve_profile(s_minus, s_plus, problem.spec);
        doc["status"] = status_name(outcome.status);
        doc["iterations"] = outcome.iterations;
        doc["residual_norm"] = number(outcome.residual_norm);
        if (outcome.solution && outcome.status == SolveStatus::converged) solutions.push_back(*outcome.solution);
      } else {
        if (!(scan.s_min > 0) || !(scan.s_max > scan.s_min) || scan.points < 2)
          throw UsageError("scan needs 0 < s-min < s-max and at least 2 points");
        solutions = enumerate_solutions(problem.spec, scan);
      }
      if (problem.product)
        for (auto& s : solutions) s.quotient = yamabe_quotient(s, *problem.product);
      if (format == "csv") {
        sink.write(solution_table(solutions).str());
      } else {
        json arr = json::array();
        for (const auto& s : solutions) arr.push_back(solution_json(s, grid));
        doc["solutions"] = std::move(arr);
        sink.write(doc);
      }
      return 0;
    }

    if (branch->parsed()) {
      const IsoparametricFamily fam = resolve_family(fam_opts);
      const ResolvedProblem problem = resolve_problem(fam, prob, false);
      if (branch_i_max < 1) throw UsageError("--i-max must be at least 1");
      std::filesystem::create_directories(output_dir);
      json manifest{{"command", "branch"},
                    {"cmdline", cmdline},
                    {"spec", problem_json(fam, problem)},
                    {"lambda_max", number(lambda_max)}};
      json entries = json::array();
      for (const auto& point : bifurcation_points(fam, problem.q, branch_i_max)) {
        if (to_double(point.lambda) >= lambda_max) continue;
        const Branch b = continue_branch(point, fam, problem.q, lambda_max, steps);
        CsvTable table{{"lambda", "amplitude", "s_minus", "s_plus", "crossings"}, {}};
        for (const auto& s : b.samples)
          table.rows.push_back({decimal(s.lambda), decimal(s.amplitude), decimal(s.s_minus), decimal(s.s_plus),
                                std::to_string(s.crossings)});
        const std::string file = "branch_" + std::to_string(point.i) + ".csv";
        Sink{out, (std::filesystem::path(output_dir) / file).string()}.write(table.str());
        json entry{{"i", point.i},
                   {"file", file},
                   {"lambda_i", fraction(point.lambda)},
                   {"mu_i", fraction(point.mu)},
                   {"direction", b.direction},
                   {"samples", b.samples.size()},
                   {"reached_target", b.reached_target},
                   {"diagnostic", b.diagnostic}};
        if (!b.samples.empty() && b.samples.front().amplitude <= 1e-2)
          entry["tangent_cosine"] = number(branch_tangent_check(b));
        entries.push_back(std::move(entry));
      }
      manifest["branches"] = std::move(entries);
      const std::string manifest_path = (std::filesystem::path(output_dir) / "manifest.json").string();
      Sink{out, output == "-" ? manifest_path : output}.write(manifest);
      return 0;
    }

    if (count->parsed() || thresholds->parsed()) {
      const std::vector<int> degs = degrees.empty() ? default_degrees(count_n) : degrees;
      CsvTable table{{"i", "T", "T_decimal", "lambda", "lambda_decimal", "count", "per_degree"}, {}};
      json rows = json::array();
      auto emit = [&](int i, const Rational& T, const ProductSpec& p, const SolutionCount& c) {
        table.rows.push_back({std::to_string(i), to_string(T), decimal(to_double(T)), to_string(p.lambda),
                              decimal(to_double(p.lambda)), std::to_string(c.total), breakdown(c)});
        rows.push_back({{"i", i},
                        {"T", fraction(T)},
                        {"T_decimal", number(to_double(T))},
                        {"lambda", fraction(p.lambda)},
                        {"lambda_decimal", number(to_double(p.lambda))},
                        {"count", c.total},
                        {"per_degree", breakdown_json(c)}});
      };
      if (count->parsed()) {
        const Rational T = parse_rational(count_T);
        const ProductSpec p = product_spec(count_n, count_k, T);
        // i: number of degree-1 bifurcation values below lambda
        emit(count_solutions(p, std::vector<int>{1}).total, T, p, count_solutions(p, degs));
      } else {
        if (i_max < 1) throw UsageError("--i-max must be at least 1");
        for (int i = 1; i <= i_max; ++i) {
          const Rational T = T_threshold(count_n, count_k, i);
          // the count on [T_{i+1}, T_i), where lambda runs over (lambda_i, lambda_{i+1}]
          const ProductSpec next = product_spec(count_n, count_k, T_threshold(count_n, count_k, i + 1));
          emit(i, T, product_spec(count_n, count_k, T), count_solutions(next, degs));
        }
      }
      if (format == "csv") {
        sink.write(table.str());
      } else {
        json doc{{"command", count->parsed() ? "count" : "thresholds"},
                 {"cmdline", cmdline},
                 {"n", count_n},
                 {"k", count_k},
                 {"degrees", degs},
                 {"rows", std::move(rows)}};
        if (count->parsed()) doc["existence_threshold"] = existence_threshold(count_n, count_k, parse_rational(count_T));
        sink.write(doc);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    const int code = exit_code(e);
    err << (code == 2 ? "usage error: " : "invariant violation: ") << e.what() << "\n";
    return code;
  }
  return 2;
}

int exit_code(const std::exception& e) { return dynamic_cast<const UsageError*>(&e) ? 2 : 1; }

}  // namespace isolab::cli
