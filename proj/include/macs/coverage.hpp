#pragma once

#include <array>

#include "macs/band_forms.hpp"
#include "macs/geometry.hpp"
#include "macs/pivotal_density.hpp"

namespace macs {

struct CoverageOptions {
  double inner_tol = 1e-11;  // relative, radial integrals
  double outer_tol = 1e-10;  // relative, angular integrals
  bool parallel = true;      // spread the eight regions over OpenMP threads
};

/// Probabilities of the four triangles M1..M4 and four sectors N1..N4.
struct RegionProbabilities {
  std::array<double, 4> triangles{};
  std::array<double, 4> sectors{};
  double total() const;
};

/// Wedges thinner than this are rejected as degenerate.
inline constexpr double kMinFanAngle = 1e-8;

/// P{V in R_V} as the sum of eight iterated polar integrals.
double coverage_probability(const CriticalConstants& cc, const Scenario& scn,
                            const BandForm& form,
                            const CoverageOptions& opt = {});

/// The same sum, region by region, given precomputed density params.
RegionProbabilities coverage_regions(const CriticalConstants& cc,
                                     const Scenario& scn, double xi,
                                     const DensityParams& dp,
                                     const CoverageOptions& opt = {});

struct CoverageGradient {
  double d_c1 = 0.0;
  double d_c2 = 0.0;
};

/// Central differences with step rel_step * c in each constant.
CoverageGradient coverage_gradient_check(const CriticalConstants& cc,
                                         const Scenario& scn,
                                         const BandForm& form,
                                         double rel_step = 1e-4,
                                         const CoverageOptions& opt = {});

}  // namespace macs
