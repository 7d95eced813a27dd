#pragma once

#include <cstdint>
#include <random>

#include "macs/band_forms.hpp"
#include "macs/geometry.hpp"
#include "macs/pivotal_density.hpp"

namespace macs {

struct McConfig {
  std::int64_t n_draws = 1'000'000;
  std::uint64_t seed = 42;
  int stream_count = 64;

  void validate() const;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t hits = 0;
  std::int64_t draws = 0;
};

/// Engine for substream `stream` of a run seeded with `seed`. Substreams
/// are independent of thread count and scheduling.
std::mt19937_64 substream_engine(std::uint64_t seed, int stream);

/// Draws of U = sqrt(chi2_nu / nu).
class ChiScaleSampler {
 public:
  explicit ChiScaleSampler(int nu);
  double operator()(std::mt19937_64& rng);

 private:
  int nu_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::gamma_distribution<double> gamma_;
};

/// Direct simulation of P{V in R_V}. Parallel over substreams.
McEstimate mc_coverage(const CriticalConstants& cc, const Scenario& scn,
                       const BandForm& form, const McConfig& cfg = {});

/// Serial reference of mc_coverage; identical hit counts.
McEstimate mc_coverage_serial(const CriticalConstants& cc, const Scenario& scn,
                              const BandForm& form, const McConfig& cfg = {});

/// Hit-or-miss area of R_V over a bounding square. Parallel over substreams.
McEstimate mc_region_area(const CriticalConstants& cc,
                          const WedgeGeometry& geo, const McConfig& cfg = {});

McEstimate mc_region_area_serial(const CriticalConstants& cc,
                                 const WedgeGeometry& geo,
                                 const McConfig& cfg = {});

/// Radius of a disc containing R_V.
double region_bounding_radius(const CriticalConstants& cc,
                              const WedgeGeometry& geo);

}  // namespace macs

namespace macs {

/// Area of R_V by adaptive quadrature of r(delta)^2 / 2 over the full
/// turn, with r(delta) the radial extent implied by the fan constraints.
/// Independent of the closed-form partition.
double region_area_polar(const CriticalConstants& cc, double phi1, double phi2);

/// Total probability mass of the pivot density, by polar quadrature.
double density_total_mass(const DensityParams& dp);

}  // namespace macs
