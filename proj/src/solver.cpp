#include "macs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "macs/errors.hpp"
#include "macs/pivotal_density.hpp"

namespace macs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coverage evaluator bound to one scenario and band.
class CoverageFn {
 public:
  CoverageFn(const Scenario& scn, const BandForm& form, const SolverOptions& opt)
      : scn_(scn), opt_(opt) {
    scn.validate();
    fc_ = xi_theta(form.name, scn.nu());
    dp_ = DensityParams::from(scn, fc_);
    phi_ = fan_angle(scn, fc_.xi);
    sub_ = sub_angles(scn, fc_.xi);
  }

  double operator()(double c1, double c2) {
    ++evaluations;
    return coverage_regions({c1, c2}, scn_, fc_.xi, dp_, opt_.coverage).total();
  }

  double area_rv(double c1, double c2) const {
    const CriticalConstants cc{c1, c2};
    return region_area(cc, zeta_angles(cc, phi_, sub_.phi1, sub_.phi2)).area_rv;
  }

  double target() const { return 1.0 - scn_.alpha; }
  const FormConstants& form_constants() const { return fc_; }

  int evaluations = 0;

 private:
  Scenario scn_;
  SolverOptions opt_;
  FormConstants fc_;
  DensityParams dp_;
  double phi_ = 0.0;
  SubAngles sub_;
};

// Root of g(c) = coverage - target on [lo, hi] with g(lo) < 0 < g(hi).
double bracketed_root(const std::function<double(double)>& g, double lo,
                      double hi, double g_lo, double g_hi) {
  std::uintmax_t max_iter = 200;
  const auto tol = [](double a, double b) {
    return std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(a));
  };
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, g_lo, g_hi, tol, max_iter);
  return 0.5 * (r.first + r.second);
}

Solution finish(CoverageFn& cov, double c1, double c2, const Scenario& scn,
                const BandForm& form, const SolverOptions& opt) {
  Solution sol;
  sol.cc = {c1, c2};
  sol.coverage = cov(c1, c2);
  if (!(std::abs(sol.coverage - cov.target()) < opt.coverage_tol)) {
    throw NumericError("solver: achieved coverage " + std::to_string(sol.coverage) +
                       " misses target " + std::to_string(cov.target()));
  }
  sol.geometry = wedge_geometry(sol.cc, scn, cov.form_constants().xi);
  sol.area = constants_to_areas(sol.cc, scn, form);
  sol.coverage_evaluations = cov.evaluations;
  return sol;
}

double symmetric_constant(CoverageFn& cov, const SolverOptions& opt) {
  const double target = cov.target();
  auto g = [&](double c) { return cov(c, c) - target; };
  double hi = opt.c_upper;
  const double g_hi = g(hi);
  if (g_hi < 0.0) {
    throw UnsolvableError("solver: coverage at c = " + std::to_string(hi) +
                          " is below the target " + std::to_string(target));
  }
  double lo = opt.c_lower;
  double g_lo = g(lo);
  while (g_lo > 0.0) {  // tiny targets push c toward 0
    hi = lo;
    lo /= 2.0;
    if (lo < 1e-12) throw UnsolvableError("solver: symmetric bracket collapsed at 0");
    g_lo = g(lo);
  }
  return bracketed_root(g, lo, hi, g_lo, g_hi);
}

}  // namespace

AreaResult constants_to_areas(const CriticalConstants& cc, const Scenario& scn,
                              const BandForm& form) {
  const FormConstants fc = xi_theta(form.name, scn.nu());
  const WedgeGeometry geo = wedge_geometry(cc, scn, fc.xi);
  return scale_area(region_area(cc, geo).area_rv, scn, fc.xi);
}

Solution solve_symmetric(const Scenario& scn, const BandForm& form,
                         const SolverOptions& opt) {
  CoverageFn cov(scn, form, opt);
  const double c = symmetric_constant(cov, opt);
  return finish(cov, c, c, scn, form, opt);
}

namespace {

double c2_for_c1(CoverageFn& cov, double c1, double guess, const SolverOptions& opt) {
  const double target = cov.target();
  auto g = [&](double c2) { return cov(c1, c2) - target; };
  // Expand geometrically from the guess until the root is bracketed.
  double lo = std::clamp(guess, 1e-6, opt.c_upper);
  double g_lo = g(lo);
  double hi = lo, g_hi = g_lo;
  if (g_lo < 0.0) {
    double step = 0.05 * lo;
    while (g_hi < 0.0) {
      lo = hi;
      g_lo = g_hi;
      if (hi >= opt.c_upper) return -1.0;
      hi = std::min(opt.c_upper, hi + step);
      step *= 2.0;
      g_hi = g(hi);
    }
  } else {
    double step = 0.05 * hi;
    while (g_lo > 0.0) {
      hi = lo;
      g_hi = g_lo;
      lo = std::max(lo - step, 0.5 * lo);
      step *= 2.0;
      if (lo < 1e-9) return -1.0;
      g_lo = g(lo);
    }
  }
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  return bracketed_root(g, lo, hi, g_lo, g_hi);
}

}  // namespace

double solve_c2_given_c1(double c1, const Scenario& scn, const BandForm& form,
                         double guess, const SolverOptions& opt, int* evaluations) {
  CoverageFn cov(scn, form, opt);
  const double c2 = c2_for_c1(cov, c1, guess, opt);
  if (evaluations) *evaluations = cov.evaluations;
  return c2;
}

Solution solve_asymmetric(const Scenario& scn, const BandForm& form,
                          const SolverOptions& opt) {
  CoverageFn cov(scn, form, opt);
  const double c_sym = symmetric_constant(cov, opt);

  struct Point {
    double c1 = 0.0;
    double c2 = -1.0;
    double area = kInf;
  };
  double last_c2 = c_sym;
  auto evaluate = [&](double c1) {
    Point p;
    p.c1 = c1;
    p.c2 = c2_for_c1(cov, c1, last_c2, opt);
    if (p.c2 > 0.0) {
      p.area = cov.area_rv(c1, p.c2);
      last_c2 = p.c2;
    }
    return p;
  };

  // Coarse scan over c1, extended outward while the best point sits on an edge.
  const int m = std::max(opt.scan_points, 3);
  const double step = (opt.scan_hi - opt.scan_lo) * c_sym / (m - 1);
  std::vector<Point> scan;
  for (int i = 0; i < m; ++i) scan.push_back(evaluate(opt.scan_lo * c_sym + i * step));
  const Point sym_point{c_sym, c_sym, cov.area_rv(c_sym, c_sym)};

  auto best_index = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scan.size(); ++i)
      if (scan[i].area < scan[best].area) best = i;
    return best;
  };
  for (int guard = 0; guard < 40; ++guard) {
    const std::size_t b = best_index();
    if (b + 1 == scan.size() && scan[b].c2 > 0.0) {
      scan.push_back(evaluate(scan.back().c1 + step));
    } else if (b == 0 && scan.front().c1 - step > 0.0) {
      last_c2 = scan.front().c2 > 0.0 ? scan.front().c2 : last_c2;
      scan.insert(scan.begin(), evaluate(scan.front().c1 - step));
    } else {
      break;
    }
  }
  const std::size_t b = best_index();
  if (!std::isfinite(scan[b].area)) {
    throw UnsolvableError("solver: no feasible (c1, c2) on the coverage contour");
  }

  // Golden-section search on Area(c1) along the contour.
  double lo = b > 0 ? scan[b - 1].c1 : std::max(scan[b].c1 - step, 0.5 * scan[b].c1);
  double hi = b + 1 < scan.size() ? scan[b + 1].c1 : scan[b].c1 + step;
  constexpr double kInvPhi = 0.6180339887498949;
  last_c2 = scan[b].c2;
  Point x1 = evaluate(hi - kInvPhi * (hi - lo));
  Point x2 = evaluate(lo + kInvPhi * (hi - lo));
  Point best = scan[b];
  while (hi - lo > opt.c_tol) {
    if (x1.area < best.area) best = x1;
    if (x2.area < best.area) best = x2;
    if (x1.area <= x2.area) {
      hi = x2.c1;
      x2 = x1;
      last_c2 = x2.c2 > 0.0 ? x2.c2 : last_c2;
      x1 = evaluate(hi - kInvPhi * (hi - lo));
    } else {
      lo = x1.c1;
      x1 = x2;
      last_c2 = x1.c2 > 0.0 ? x1.c2 : last_c2;
      x2 = evaluate(lo + kInvPhi * (hi - lo));
    }
  }
  if (x1.area < best.area) best = x1;
  if (x2.area < best.area) best = x2;

  // Plateau tie-break: prefer the candidate closest to c1 = c2.
  if (sym_point.area <= best.area + 1e-9) best = sym_point;
  return finish(cov, best.c1, best.c2, scn, form, opt);
}

Solution solve(const Scenario& scn, const BandForm& form, const SolverOptions& opt) {
  return form.symmetric ? solve_symmetric(scn, form, opt) : solve_asymmetric(scn, form, opt);
}

}  // namespace macs
