#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "macs/band_forms.hpp"
#include "macs/comparison.hpp"
#include "macs/coverage.hpp"
#include "macs/errors.hpp"
#include "macs/geometry.hpp"
#include "macs/mc_validation.hpp"
#include "macs/pivotal_density.hpp"
#include "macs/regression_bands.hpp"
#include "macs/reports.hpp"
#include "macs/solver.hpp"

namespace {

using namespace macs;

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

// Raised for inputs that parse but make no sense; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outputs {
  std::string csv;
  std::string json;
  bool text = false;
};

void add_outputs(CLI::App* cmd, Outputs& out) {
  cmd->add_option("--csv", out.csv, "Write CSV to this file ('-' for stdout)");
  cmd->add_option("--json", out.json, "Write JSON to this file ('-' for stdout)");
  cmd->add_flag("--text", out.text, "Print an aligned text table");
}

void emit(const TableView& view, const Manifest& m, const Outputs& out) {
  auto open = [](const std::string& path, auto&& body) {
    if (path == "-") {
      body(std::cout);
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    body(f);
  };
  const bool any = !out.csv.empty() || !out.json.empty() || out.text;
  if (!out.csv.empty()) open(out.csv, [&](std::ostream& os) { write_csv(os, view, m); });
  if (!out.json.empty()) {
    open(out.json, [&](std::ostream& os) { os << view_json(view, m).dump(2) << '\n'; });
  }
  if (out.text) write_text(std::cout, view);
  if (!any) write_csv(std::cout, view, m);
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

// Dataset lookup: explicit path, then MACS_DRUG_DATA, then the shipped slots.
std::string resolve_dataset(const std::string& given) {
  std::vector<std::string> candidates;
  if (!given.empty()) {
    candidates.push_back(given);
  } else {
    if (const char* env = std::getenv("MACS_DRUG_DATA")) candidates.emplace_back(env);
    candidates.emplace_back("data/ruberg_hsu_batch1.csv");
    candidates.emplace_back("examples/ruberg_hsu_batch1.csv");
  }
  for (const auto& c : candidates) {
    if (std::filesystem::is_regular_file(c)) return c;
  }
  throw DataError("external dataset required: no readable file at " +
                  (given.empty() ? std::string("data/ruberg_hsu_batch1.csv") : given) +
                  " (pass --data or set MACS_DRUG_DATA)");
}

struct ScenarioFlags {
  double alpha = 0.05;
  double gamma = 0.5;
  int n = 10;
  std::optional<double> s;
  std::optional<double> a;
  std::optional<double> b;
  double s_xx = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "1 - confidence level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--gamma", gamma, "Percentile level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--n", n, "Sample size")->check(CLI::Range(3, 1000000));
    auto* s_opt = cmd->add_option("--s", s, "Half-width b/sqrt(S_xx) of a symmetric interval");
    auto* a_opt = cmd->add_option("--a", a, "Interval start, centered units");
    auto* b_opt = cmd->add_option("--b", b, "Interval end, centered units");
    auto* sxx_opt = cmd->add_option("--sxx", s_xx, "S_xx of the design");
    s_opt->excludes(a_opt)->excludes(b_opt)->excludes(sxx_opt);
    a_opt->needs(b_opt);
    b_opt->needs(a_opt);
  }

  Scenario scenario() const {
    Scenario scn;
    if (s) {
      scn = Scenario::symmetric_interval(alpha, gamma, n, *s);
    } else if (a && b) {
      scn.alpha = alpha;
      scn.gamma = gamma;
      scn.n = n;
      scn.a = *a;
      scn.b = *b;
      scn.s_xx = s_xx;
    } else {
      throw UsageError("give --s or both --a and --b");
    }
    try {
      scn.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return scn;
  }
};

BandForm band_flag(const std::string& text, bool force_asym) {
  BandForm f;
  try {
    f = parse_band(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (force_asym) f.symmetric = false;
  return f;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

// ---- solve

struct SolveArgs {
  ScenarioFlags scn;
  std::string band;
  bool asymmetric = false;
  std::optional<double> tol;
  bool mc_check = false;
  std::uint64_t seed = 42;
  std::int64_t draws = 1'000'000;
  Outputs out;
};

int run_solve(const SolveArgs& args, const std::string& cmdline) {
  const Scenario scn = args.scn.scenario();
  const BandForm form = band_flag(args.band, args.asymmetric);
  SolverOptions opt;
  if (args.tol) opt.coverage_tol = *args.tol;
  const Solution sol = solve(scn, form, opt);

  Manifest m;
  m.command = cmdline;
  m.tolerances = solver_tolerances(opt);
  if (args.mc_check) m.seed = args.seed;
  TableView view = solution_view(scn, form, sol);

  std::string mc_line;
  bool mc_ok = true;
  if (args.mc_check) {
    McConfig cfg;
    cfg.seed = args.seed;
    cfg.n_draws = args.draws;
    const McEstimate est = mc_coverage(sol.cc, scn, form, cfg);
    const double z = (est.estimate - sol.coverage) / est.std_error;
    mc_ok = std::abs(z) <= 3.5;
    mc_line = six_digits(est.estimate) + " +- " + six_digits(est.std_error) + " (z = " +
              six_digits(z) + ", " + (mc_ok ? "agrees" : "DISAGREES") + ")";
    view.notes.push_back("monte carlo coverage " + mc_line);
  }
  if (!args.out.csv.empty() || !args.out.json.empty()) emit(view, m, args.out);

  // The summary moves to stderr when stdout carries CSV or JSON.
  std::ostream& os = args.out.csv == "-" || args.out.json == "-" ? std::cerr : std::cout;
  os << "band      " << form.label() << '\n'
     << "c1        " << six_digits(sol.cc.c1) << '\n'
     << "c2        " << six_digits(sol.cc.c2) << '\n'
     << "coverage  " << six_digits(sol.coverage) << '\n'
     << "area_rv   " << six_digits(sol.area.area_rv) << '\n'
     << "area_ct   " << six_digits(sol.area.area_ct) << '\n'
     << "phi       " << six_digits(sol.geometry.phi) << '\n'
     << "case      " << to_string(sol.geometry.case_tag) << '\n';
  if (args.mc_check) os << "mc        " << mc_line << '\n';
  if (!mc_ok) return kExitNumeric;
  return 0;
}

// ---- table / curve

struct TableArgs {
  std::string id;
  std::vector<double> confidence;
  std::vector<double> gamma;
  std::vector<int> n;
  std::vector<double> s;
  std::string data;
  double alpha = 0.05;
  double fit_gamma = 0.05;
  std::vector<double> x_range = {0.0, 2.0};
  Outputs out;
};

int run_table(const TableArgs& args, const std::string& cmdline) {
  const auto id = parse_table_id(args.id);
  if (!id) throw UsageError("unknown table id '" + args.id + "'");
  SolveCache cache;
  Manifest m;
  m.command = cmdline;
  m.tolerances = solver_tolerances(cache.options());
  std::vector<RatioRecord> records;
  if (*id == TableId::T5) {
    const Dataset ds = Dataset::load_csv(resolve_dataset(args.data));
    const FitResult f = fit(ds);
    const Scenario scn =
        scenario_for_fit(f, args.alpha, args.fit_gamma, args.x_range[0], args.x_range[1]);
    m.grid = {{"alpha", scn.alpha}, {"gamma", scn.gamma}, {"n", scn.n},
              {"a", scn.a}, {"b", scn.b}, {"s_xx", scn.s_xx}};
    records = scenario_table(scn, cache);
  } else {
    TableGrid grid;
    if (!args.confidence.empty()) grid.confidence = args.confidence;
    if (!args.gamma.empty()) grid.gamma = args.gamma;
    if (!args.n.empty()) grid.n = args.n;
    if (!args.s.empty()) grid.s = args.s;
    m.grid = grid_json(grid);
    records = table(*id, cache, grid);
  }
  emit(ratio_table_view(records, table_layout(*id)), m, args.out);
  for (const auto& r : records) {
    if (!r.r) return kExitNumeric;
  }
  return 0;
}

struct CurveArgs {
  double gamma = 0.95;
  int n = 10;
  double alpha = 0.01;
  double phi_min = 0.3;
  double phi_max = 3.1;
  int points = 29;
  std::vector<double> phi;
  Outputs out;
};

int run_curve(const CurveArgs& args, const std::string& cmdline) {
  const std::vector<double> grid =
      args.phi.empty() ? linspace(args.phi_min, args.phi_max, args.points) : args.phi;
  SolveCache cache;
  const auto pts = ratio_curve(args.gamma, args.n, args.alpha, grid, cache);
  Manifest m;
  m.command = cmdline;
  m.tolerances = solver_tolerances(cache.options());
  m.grid = {{"gamma", args.gamma}, {"n", args.n}, {"alpha", args.alpha}, {"phi", grid}};
  emit(curve_view(pts), m, args.out);
  return 0;
}

// ---- fit / band / expiry

struct FitArgs {
  std::string data;
};

int run_fit(const FitArgs& args) {
  const Dataset ds = Dataset::load_csv(resolve_dataset(args.data));
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << '\n';
  const FitResult f = fit(ds);
  for (const auto& w : f.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "fit       y = " << round_half_even(f.beta0_hat) << " + ("
            << round_half_even(f.beta1_hat) << ")(x - " << round_half_even(f.x_bar) << ")\n"
            << "n         " << f.n << '\n'
            << "sigma_hat " << six_digits(f.sigma_hat) << '\n'
            << "s_xx      " << six_digits(f.s_xx) << '\n'
            << "r_squared " << round_half_even(f.r_squared, 4) << '\n';
  return 0;
}

struct BandArgs {
  std::string data;
  std::string band = "UVa";
  bool asymmetric = false;
  double alpha = 0.05;
  double gamma = 0.05;
  std::vector<double> x_range = {0.0, 2.0};
  int points = 21;
  double h = 98.0;
  Outputs out;
};

struct FittedBand {
  FitResult fit;
  BandCurve curve;
  Solution sol;
};

FittedBand fit_band(const BandArgs& args) {
  const Dataset ds = Dataset::load_csv(resolve_dataset(args.data));
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << '\n';
  FittedBand fb;
  fb.fit = fit(ds);
  if (args.x_range[0] >= args.x_range[1]) throw UsageError("--x-range needs lo < hi");
  const Scenario scn = scenario_for_fit(fb.fit, args.alpha, args.gamma,
                                        args.x_range[0], args.x_range[1]);
  const BandForm form = band_flag(args.band, args.asymmetric);
  fb.sol = solve(scn, form);
  fb.curve = BandCurve{form, fb.sol.cc, scn};
  return fb;
}

int run_band(const BandArgs& args, const std::string& cmdline) {
  const FittedBand fb = fit_band(args);
  TableView view;
  view.header = {"x", "lower", "center", "upper"};
  for (double x : linspace(args.x_range[0], args.x_range[1], args.points)) {
    const BandValue v = band_at(x, fb.fit, fb.curve);
    view.rows.push_back({six_digits(x), six_digits(v.lower), six_digits(v.center),
                         six_digits(v.upper)});
  }
  Manifest m;
  m.command = cmdline;
  m.tolerances = solver_tolerances(SolverOptions{});
  m.grid = {{"c1", fb.sol.cc.c1}, {"c2", fb.sol.cc.c2}};
  emit(view, m, args.out);
  return 0;
}

int run_expiry(const BandArgs& args) {
  const FittedBand fb = fit_band(args);
  const Crossings c = threshold_crossings(args.h, fb.fit, fb.curve);
  const double conf = 100.0 * (1.0 - args.alpha);
  const double prop = 100.0 * (1.0 - args.gamma);
  std::cout << "band      " << fb.curve.form.label() << " (c1, c2) = ("
            << round_half_even(fb.sol.cc.c1) << ", " << round_half_even(fb.sol.cc.c2)
            << ")\n";
  std::cout << "lower     "
            << (c.lower ? round_half_even(*c.lower) : std::string("none")) << '\n'
            << "upper     "
            << (c.upper ? round_half_even(*c.upper) : std::string("none")) << '\n';
  if (c.lower && c.upper) {
    std::cout << "With " << six_digits(conf) << "% confidence the " << six_digits(prop)
              << "% content line stays above " << six_digits(args.h) << " before x = "
              << round_half_even(*c.lower) << " and falls below it after x = "
              << round_half_even(*c.upper) << "; the crossing lies in ("
              << round_half_even(*c.lower) << ", " << round_half_even(*c.upper) << ").\n";
  } else {
    std::cout << "The band does not cross " << six_digits(args.h)
              << " on both sides within the interval.\n";
  }
  return 0;
}

// ---- validate

struct ValidateArgs {
  std::string suite;
  std::uint64_t seed = 42;
  int count = 0;
  std::int64_t draws = 1'000'000;
};

int validate_areas(const ValidateArgs& args) {
  std::mt19937_64 rng = substream_engine(args.seed, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int count = args.count > 0 ? args.count : 200;
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    const double phi = 0.05 + 3.05 * u(rng);
    const double phi1 = -0.3 + (phi + 0.3) * u(rng);
    const double phi2 = phi - phi1;
    const CriticalConstants cc{0.2 + 6.0 * u(rng), 0.2 + 6.0 * u(rng)};
    const WedgeGeometry geo = zeta_angles(cc, phi, phi1, phi2);
    const double closed = region_area(cc, geo).area_rv;
    const double oracle = region_area_polar(cc, phi1, phi2);
    const double rel = std::abs(closed - oracle) / oracle;
    worst = std::max(worst, rel);
    if (rel > 1e-8) {
      ++failures;
      std::cout << "FAIL phi=" << six_digits(phi) << " c=(" << six_digits(cc.c1) << ", "
                << six_digits(cc.c2) << ") closed=" << closed << " oracle=" << oracle << '\n';
    }
  }
  std::cout << "areas: " << count << " inputs, worst relative error " << worst << ", "
            << failures << " failures\n";
  return failures ? kExitNumeric : 0;
}

int validate_density(const ValidateArgs&) {
  int failures = 0;
  double worst = 0.0;
  int count = 0;
  for (BandName name : kAllBandNames) {
    for (double g : {0.05, 0.5, 0.75, 0.95}) {
      for (int n : {5, 10, 100}) {
        const Scenario scn = Scenario::symmetric_interval(0.05, g, n, 1.0);
        const double mass = density_total_mass(DensityParams::from(scn, xi_theta(name, scn.nu())));
        worst = std::max(worst, std::abs(mass - 1.0));
        ++count;
        if (std::abs(mass - 1.0) > 1e-6) {
          ++failures;
          std::cout << "FAIL " << to_string(name) << " gamma=" << g << " n=" << n
                    << " mass=" << mass << '\n';
        }
      }
    }
  }
  std::cout << "density: " << count << " cases, worst |mass - 1| " << worst << ", "
            << failures << " failures\n";
  return failures ? kExitNumeric : 0;
}

int validate_coverage(const ValidateArgs& args) {
  std::mt19937_64 rng = substream_engine(args.seed, 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int count = args.count > 0 ? args.count : 20;
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    const int n = 4 + int(40 * u(rng));
    const double g = 0.05 + 0.9 * u(rng);
    const double s = std::pow(10.0, -1.0 + 2.0 * u(rng));
    const BandName name = kAllBandNames[std::size_t(u(rng) * kAllBandNames.size()) %
                                        kAllBandNames.size()];
    const Scenario scn = Scenario::symmetric_interval(0.05, g, n, s);
    const CriticalConstants cc{1.0 + 3.0 * u(rng), 1.0 + 3.0 * u(rng)};
    const BandForm form{name, false};
    const double exact = coverage_probability(cc, scn, form);
    McConfig cfg;
    cfg.seed = args.seed + std::uint64_t(i);
    cfg.n_draws = args.draws;
    const McEstimate est = mc_coverage(cc, scn, form, cfg);
    const double z = (est.estimate - exact) / est.std_error;
    const bool ok = std::abs(z) <= 3.5;
    if (!ok) ++failures;
    std::cout << (ok ? "ok   " : "FAIL ") << to_string(name) << " n=" << n
              << " gamma=" << six_digits(g) << " s=" << six_digits(s) << " c=("
              << six_digits(cc.c1) << ", " << six_digits(cc.c2) << ") exact=" << six_digits(exact)
              << " mc=" << six_digits(est.estimate) << " z=" << six_digits(z) << '\n';
  }
  std::cout << "coverage: " << count << " scenarios, " << failures << " failures\n";
  return failures ? kExitNumeric : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-area simultaneous confidence bands for regression percentile lines"};
  app.require_subcommand(1);
  int jobs = 0;
  if (const char* env = std::getenv("MACS_JOBS")) {
    jobs = std::atoi(env);
  }
  app.add_option("--jobs", jobs, "Worker threads (default: MACS_JOBS or all cores)")
      ->check(CLI::NonNegativeNumber);
  const std::string cmdline = command_line(argc, argv);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve critical constants for one band");
  solve_args.scn.attach(solve_cmd);
  solve_cmd->add_option("--band", solve_args.band, "SB, TBU, TBE, V, UV or TT; suffix 'a' for asymmetric")
      ->required();
  solve_cmd->add_flag("--asymmetric", solve_args.asymmetric, "Solve the asymmetric version");
  solve_cmd->add_option("--tol", solve_args.tol, "Coverage tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--mc-check", solve_args.mc_check, "Cross-check coverage by simulation");
  solve_cmd->add_option("--seed", solve_args.seed, "Simulation seed");
  solve_cmd->add_option("--draws", solve_args.draws, "Simulation draws")->check(CLI::Range(std::int64_t(10000), std::int64_t(1) << 40));
  add_outputs(solve_cmd, solve_args.out);

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "Regenerate a ratio table (T2, T3, T4 or T5)");
  table_cmd->add_option("--id", table_args.id, "Table id")->required();
  table_cmd->add_option("--confidence", table_args.confidence, "Override confidence levels");
  table_cmd->add_option("--gammas", table_args.gamma, "Override gamma levels");
  table_cmd->add_option("--ns", table_args.n, "Override sample sizes");
  table_cmd->add_option("--ss", table_args.s, "Override interval half-widths");
  table_cmd->add_option("--data", table_args.data, "Dataset CSV for T5");
  table_cmd->add_option("--alpha", table_args.alpha, "T5: 1 - confidence level");
  table_cmd->add_option("--gamma", table_args.fit_gamma, "T5: percentile level");
  table_cmd->add_option("--x-range", table_args.x_range, "T5: covariate interval")->expected(2);
  add_outputs(table_cmd, table_args.out);

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "TBEa over UVa ratio as a function of phi");
  curve_cmd->add_option("--gamma", curve_args.gamma, "Percentile level");
  curve_cmd->add_option("--n", curve_args.n, "Sample size")->check(CLI::Range(3, 1000000));
  curve_cmd->add_option("--alpha", curve_args.alpha, "1 - confidence level");
  curve_cmd->add_option("--phi-min", curve_args.phi_min, "Smallest phi");
  curve_cmd->add_option("--phi-max", curve_args.phi_max, "Largest phi");
  curve_cmd->add_option("--points", curve_args.points, "Grid points")->check(CLI::Range(1, 10000));
  curve_cmd->add_option("--phi", curve_args.phi, "Explicit phi values");
  add_outputs(curve_cmd, curve_args.out);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the centered regression to a dataset");
  fit_cmd->add_option("--data", fit_args.data, "CSV with header x,y");

  BandArgs band_args;
  auto* band_cmd = app.add_subcommand("band", "Evaluate a fitted band on a grid");
  auto* expiry_cmd = app.add_subcommand("expiry", "Threshold crossings of a fitted band");
  for (auto* cmd : {band_cmd, expiry_cmd}) {
    cmd->add_option("--data", band_args.data, "CSV with header x,y");
    cmd->add_option("--band", band_args.band, "Band form");
    cmd->add_flag("--asymmetric", band_args.asymmetric, "Use the asymmetric version");
    cmd->add_option("--alpha", band_args.alpha, "1 - confidence level");
    cmd->add_option("--gamma", band_args.gamma, "Percentile level");
    cmd->add_option("--x-range", band_args.x_range, "Covariate interval")->expected(2);
  }
  band_cmd->add_option("--points", band_args.points, "Grid points")->check(CLI::Range(2, 100000));
  add_outputs(band_cmd, band_args.out);
  expiry_cmd->set_help_flag("--help", "Print this help message and exit");
  expiry_cmd->add_option("--h", band_args.h, "Threshold");

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Run a validation oracle suite");
  validate_cmd->add_option("--suite", validate_args.suite, "areas, density or coverage")
      ->required()
      ->check(CLI::IsMember({"areas", "density", "coverage"}));
  validate_cmd->add_option("--seed", validate_args.seed, "Seed for random inputs");
  validate_cmd->add_option("--count", validate_args.count, "Number of random inputs");
  validate_cmd->add_option("--draws", validate_args.draws, "Simulation draws")->check(CLI::Range(std::int64_t(10000), std::int64_t(1) << 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    if (*solve_cmd) return run_solve(solve_args, cmdline);
    if (*table_cmd) return run_table(table_args, cmdline);
    if (*curve_cmd) return run_curve(curve_args, cmdline);
    if (*fit_cmd) return run_fit(fit_args);
    if (*band_cmd) return run_band(band_args, cmdline);
    if (*expiry_cmd) return run_expiry(band_args);
    if (*validate_cmd) {
      if (validate_args.suite == "areas") return validate_areas(validate_args);
      if (validate_args.suite == "density") return validate_density(validate_args);
      return validate_coverage(validate_args);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
