#include "macs/mc_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "macs/errors.hpp"
#include "macs/pivotal_density.hpp"
#include "macs/quadrature.hpp"

namespace macs {

namespace {

// Draws handled by substream `stream` when n_draws are split evenly.
std::int64_t stream_draws(const McConfig& cfg, int stream) {
  const std::int64_t base = cfg.n_draws / cfg.stream_count;
  const std::int64_t extra = cfg.n_draws % cfg.stream_count;
  return base + (stream < extra ? 1 : 0);
}

McEstimate proportion(std::int64_t hits, std::int64_t draws) {
  McEstimate e;
  e.hits = hits;
  e.draws = draws;
  e.estimate = double(hits) / double(draws);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / double(draws));
  return e;
}

struct PivotSampler {
  DensityParams dp;
  double phi1 = 0.0;
  double phi2 = 0.0;
  CriticalConstants cc;

  PivotSampler(const CriticalConstants& c, const Scenario& scn, const BandForm& form)
      : cc(c) {
    scn.validate();
    if (c.c1 < 0.0 || c.c2 < 0.0) throw DomainError("mc_coverage: negative constants");
    const FormConstants fc = xi_theta(form.name, scn.nu());
    dp = DensityParams::from(scn, fc);
    const SubAngles sub = sub_angles(scn, fc.xi);
    phi1 = sub.phi1;
    phi2 = sub.phi2;
  }

  std::int64_t run_stream(std::uint64_t seed, int stream, std::int64_t draws) const {
    std::mt19937_64 rng = substream_engine(seed, stream);
    std::normal_distribution<double> normal(0.0, 1.0);
    ChiScaleSampler chi(dp.nu);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < draws; ++i) {
      const double n1 = normal(rng);
      const double n2 = normal(rng);
      const double u = chi(rng);
      const double v1 = dp.q1 * (n1 - dp.q3) / u + dp.q2;
      const double v2 = n2 / u;
      if (region_contains(cc, phi1, phi2, v1, v2)) ++hits;
    }
    return hits;
  }
};

struct AreaSampler {
  CriticalConstants cc;
  WedgeGeometry geo;
  double radius = 0.0;

  std::int64_t run_stream(std::uint64_t seed, int stream, std::int64_t draws) const {
    std::mt19937_64 rng = substream_engine(seed, stream);
    std::uniform_real_distribution<double> coord(-radius, radius);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < draws; ++i) {
      const double v1 = coord(rng);
      const double v2 = coord(rng);
      if (region_contains(cc, geo.phi1, geo.phi2, v1, v2)) ++hits;
    }
    return hits;
  }
};

McEstimate to_area(const McEstimate& p, double radius) {
  const double box = 4.0 * radius * radius;
  McEstimate a = p;
  a.estimate = p.estimate * box;
  a.std_error = p.std_error * box;
  return a;
}

}  // namespace

void McConfig::validate() const {
  if (n_draws < 10'000) throw DomainError("McConfig: n_draws must be >= 10000");
  if (stream_count < 1) throw DomainError("McConfig: stream_count must be >= 1");
}

std::mt19937_64 substream_engine(std::uint64_t seed, int stream) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(stream), 0x6d616373u};
  return std::mt19937_64(seq);
}

ChiScaleSampler::ChiScaleSampler(int nu) : nu_(nu), gamma_(nu / 2.0, 2.0) {
  if (nu < 1) throw DomainError("ChiScaleSampler: nu must be >= 1");
}

double ChiScaleSampler::operator()(std::mt19937_64& rng) {
  double chi2 = 0.0;
  if (nu_ <= 32) {
    for (int i = 0; i < nu_; ++i) {
      const double x = normal_(rng);
      chi2 += x * x;
    }
  } else {
    chi2 = gamma_(rng);
  }
  return std::sqrt(chi2 / nu_);
}

McEstimate mc_coverage(const CriticalConstants& cc, const Scenario& scn,
                       const BandForm& form, const McConfig& cfg) {
  cfg.validate();
  const PivotSampler sampler(cc, scn, form);
  std::int64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic)
  for (int s = 0; s < cfg.stream_count; ++s) {
    hits += sampler.run_stream(cfg.seed, s, stream_draws(cfg, s));
  }
  return proportion(hits, cfg.n_draws);
}

McEstimate mc_coverage_serial(const CriticalConstants& cc, const Scenario& scn,
                              const BandForm& form, const McConfig& cfg) {
  cfg.validate();
  const PivotSampler sampler(cc, scn, form);
  std::int64_t hits = 0;
  for (int s = 0; s < cfg.stream_count; ++s) {
    hits += sampler.run_stream(cfg.seed, s, stream_draws(cfg, s));
  }
  return proportion(hits, cfg.n_draws);
}

double region_bounding_radius(const CriticalConstants& cc, const WedgeGeometry& geo) {
  // Vertices of the spindle: where the fan-side line meets the opposite
  // line (or arc). Every other boundary point is nearer the origin.
  double r = cc.c_max();
  if (geo.case_tag != WedgeCase::ObtuseArc) {
    r = std::max(r, cc.c_min() / std::cos(geo.zeta1));
  }
  return r * (1.0 + 1e-9);
}

McEstimate mc_region_area(const CriticalConstants& cc, const WedgeGeometry& geo,
                          const McConfig& cfg) {
  cfg.validate();
  const AreaSampler sampler{cc, geo, region_bounding_radius(cc, geo)};
  std::int64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic)
  for (int s = 0; s < cfg.stream_count; ++s) {
    hits += sampler.run_stream(cfg.seed, s, stream_draws(cfg, s));
  }
  return to_area(proportion(hits, cfg.n_draws), sampler.radius);
}

McEstimate mc_region_area_serial(const CriticalConstants& cc,
                                 const WedgeGeometry& geo, const McConfig& cfg) {
  cfg.validate();
  const AreaSampler sampler{cc, geo, region_bounding_radius(cc, geo)};
  std::int64_t hits = 0;
  for (int s = 0; s < cfg.stream_count; ++s) {
    hits += sampler.run_stream(cfg.seed, s, stream_draws(cfg, s));
  }
  return to_area(proportion(hits, cfg.n_draws), sampler.radius);
}

}  // namespace macs

namespace macs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Adds the error estimate to *err_sum when given; otherwise checks it.
template <class F>
double adaptive(F f, double lo, double hi, double tol, unsigned depth,
                double* err_sum = nullptr) {
  double err = 0.0;
  double l1 = 0.0;
  const double v =
      std::isinf(hi)
          ? boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, depth, tol, &err, &l1)
          : gauss_kronrod_unit<61>(f, lo, hi, depth, tol, &err, &l1);
  if (!std::isfinite(v)) throw NumericError("validation quadrature diverged");
  if (err_sum) {
    *err_sum += err;
  } else if (!(err <= std::max(1e3 * tol * l1, 1e-300))) {
    throw NumericError("validation quadrature did not converge");
  }
  return v;
}

}  // namespace

double region_area_polar(const CriticalConstants& cc, double phi1, double phi2) {
  auto radius = [&](double delta) {
    const ProjectionRange pr =
        fan_projection_range(std::cos(delta), std::sin(delta), phi1, phi2);
    double r = std::numeric_limits<double>::infinity();
    if (pr.hi > 0.0) r = std::min(r, cc.c1 / pr.hi);
    if (pr.lo < 0.0) r = std::min(r, cc.c2 / -pr.lo);
    return r;
  };
  const double centre = 0.5 * (phi1 - phi2);
  std::vector<double> cuts = {0.0, kTwoPi};
  for (double d : {phi1, -phi2, phi1 + std::numbers::pi, std::numbers::pi - phi2,
                   centre, centre + std::numbers::pi}) {
    cuts.push_back(d - kTwoPi * std::floor(d / kTwoPi));
  }
  std::sort(cuts.begin(), cuts.end());
  // Points where the binding constant switches between c1 and c2.
  auto balance = [&](double d) {
    const ProjectionRange pr = fan_projection_range(std::cos(d), std::sin(d), phi1, phi2);
    return cc.c1 * -pr.lo - cc.c2 * pr.hi;
  };
  const std::vector<double> fan_cuts = cuts;
  for (std::size_t i = 0; i + 1 < fan_cuts.size(); ++i) {
    constexpr int kProbe = 32;
    const double lo = fan_cuts[i], hi = fan_cuts[i + 1];
    double x0 = lo, g0 = balance(lo);
    for (int k = 1; k <= kProbe; ++k) {
      const double x1 = lo + (hi - lo) * k / kProbe;
      const double g1 = balance(x1);
      if ((g0 < 0.0) != (g1 < 0.0) && g0 != 0.0 && g1 != 0.0) {
        std::uintmax_t iters = 200;
        const auto root = boost::math::tools::toms748_solve(
            balance, x0, x1, g0, g1, boost::math::tools::eps_tolerance<double>(52), iters);
        cuts.push_back(0.5 * (root.first + root.second));
      }
      x0 = x1;
      g0 = g1;
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-15) continue;
    total += adaptive(
        [&](double d) {
          const double r = radius(d);
          return 0.5 * r * r;
        },
        cuts[i], cuts[i + 1], 1e-13, 12, &err);
  }
  if (!(err <= 1e-10 * total)) throw NumericError("area quadrature did not converge");
  return total;
}

double density_total_mass(const DensityParams& dp) {
  auto ray = [&](double delta) {
    return adaptive([&](double r) { return density_polar(r, delta, dp); }, 0.0,
                    std::numeric_limits<double>::infinity(), 1e-11, 15);
  };
  double total = 0.0;
  for (int k = 0; k < 8; ++k) {
    total += adaptive(ray, k * kTwoPi / 8, (k + 1) * kTwoPi / 8, 1e-10, 15);
  }
  return total;
}

}  // namespace macs
