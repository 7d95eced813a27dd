#include "macs/coverage.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <string>

#include "macs/errors.hpp"
#include "macs/quadrature.hpp"

namespace macs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kMaxDepth = 15;
// Pieces this narrow appear at case transitions through rounding; their mass
// is below the quadrature error and the rule's error estimate is meaningless.
constexpr double kNegligibleWidth = 1e-13;

constexpr unsigned kRadialPoints = 61;
constexpr unsigned kAngularPoints = 31;

// A piece of the partition: delta in [from, to), radius bounded either by a
// circle of radius `c` or by the line {v : u(normal).v = c}.
struct Piece {
  double from = 0.0;
  double to = 0.0;
  double c = 0.0;
  bool straight = false;
  double normal = 0.0;

  double radius(double delta) const {
    return straight ? c / std::cos(delta - normal) : c;
  }
};

void check_convergence(double value, double err, double l1, double tol,
                       const char* what) {
  if (!std::isfinite(value) || err > tol * l1 + 1e-15) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " quadrature did not converge (error %.3g, scale %.3g)", err, l1);
    throw NumericError(std::string("coverage: ") + what + buf);
  }
}

double integrate_piece(const Piece& piece, double offset,
                       const DensityParams& dp, const CoverageOptions& opt) {
  if (piece.to == piece.from) return 0.0;
  double sign = 1.0;
  double lo = piece.from, hi = piece.to;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  if (hi - lo < kNegligibleWidth) return 0.0;
  auto radial = [&](double delta) {
    const double rmax = piece.radius(delta);
    const double d = delta + offset;
    auto f = [&](double r) { return density_polar(r, d, dp); };
    double err = 0.0, l1 = 0.0;
    const double v = gauss_kronrod_unit<kRadialPoints>(f, 0.0, rmax, kMaxDepth, opt.inner_tol, &err, &l1);
    check_convergence(v, err, l1, 10.0 * opt.inner_tol, "radial");
    return v;
  };
  double err = 0.0, l1 = 0.0;
  const double v = gauss_kronrod_unit<kAngularPoints>(radial, lo, hi, kMaxDepth, opt.outer_tol, &err, &l1);
  check_convergence(v, err, l1, 10.0 * opt.outer_tol, "angular");
  return sign * v;
}

}  // namespace

double RegionProbabilities::total() const {
  double s = 0.0;
  for (double t : triangles) s += t;
  for (double t : sectors) s += t;
  return s;
}

RegionProbabilities coverage_regions(const CriticalConstants& cc,
                                     const Scenario& scn, double xi,
                                     const DensityParams& dp,
                                     const CoverageOptions& opt) {
  cc.validate();
  const double phi = fan_angle(scn, xi);
  if (phi <= kMinFanAngle) {
    throw GeometryError("coverage: degenerate wedge, phi = " + std::to_string(phi));
  }
  const SubAngles sub = sub_angles(scn, xi);
  const WedgeGeometry g = zeta_angles(cc, phi, sub.phi1, sub.phi2);

  // The partition is laid out with the smaller constant on the fan side.
  // For c1 > c2 the region is the point reflection of that layout, so the
  // density is read at delta + pi.
  const double s1 = cc.c_min();
  const double s2 = cc.c_max();
  const double offset = cc.c1 > cc.c2 ? kPi : 0.0;

  const double p1 = g.phi1, p2 = g.phi2;
  const double p1s = g.phi1_star, p2s = g.phi2_star;
  const Piece pieces[8] = {
      // triangles M1..M4
      {p1, p1 + g.zeta1, s1, true, p1},
      {p1 + g.zeta1, kPi - p2s, s2, true, kPi - p2s},
      {kPi + p1s, kPi + p1s + g.zeta2, s2, true, kPi + p1s},
      {kPi + p1s + g.zeta2, 2.0 * kPi - p2, s1, true, 2.0 * kPi - p2},
      // sectors N1..N4
      {0.0, p1, s1},
      {kPi - p2s, kPi, s2},
      {kPi, kPi + p1s, s2},
      {2.0 * kPi - p2, 2.0 * kPi, s1},
  };

  double parts[8] = {};
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int i = 0; i < 8; ++i) {
    try {
      parts[i] = integrate_piece(pieces[i], offset, dp, opt);
    } catch (...) {
#pragma omp critical(macs_coverage_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  RegionProbabilities out;
  for (int i = 0; i < 4; ++i) {
    out.triangles[i] = parts[i];
    out.sectors[i] = parts[4 + i];
  }
  return out;
}

double coverage_probability(const CriticalConstants& cc, const Scenario& scn,
                            const BandForm& form, const CoverageOptions& opt) {
  scn.validate();
  const FormConstants fc = xi_theta(form.name, scn.nu());
  const DensityParams dp = DensityParams::from(scn, fc);
  return coverage_regions(cc, scn, fc.xi, dp, opt).total();
}

CoverageGradient coverage_gradient_check(const CriticalConstants& cc,
                                         const Scenario& scn,
                                         const BandForm& form, double rel_step,
                                         const CoverageOptions& opt) {
  scn.validate();
  cc.validate();
  const FormConstants fc = xi_theta(form.name, scn.nu());
  const DensityParams dp = DensityParams::from(scn, fc);
  auto cov = [&](double c1, double c2) {
    return coverage_regions({c1, c2}, scn, fc.xi, dp, opt).total();
  };
  const double h1 = rel_step * cc.c1;
  const double h2 = rel_step * cc.c2;
  CoverageGradient g;
  g.d_c1 = (cov(cc.c1 + h1, cc.c2) - cov(cc.c1 - h1, cc.c2)) / (2.0 * h1);
  g.d_c2 = (cov(cc.c1, cc.c2 + h2) - cov(cc.c1, cc.c2 - h2)) / (2.0 * h2);
  return g;
}

}  // namespace macs
