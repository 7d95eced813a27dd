#pragma once

#include "macs/band_forms.hpp"
#include "macs/coverage.hpp"
#include "macs/geometry.hpp"

namespace macs {

struct SolverOptions {
  double coverage_tol = 1e-6;  // |coverage - (1 - alpha)| at the solution
  double c_tol = 1e-5;         // golden-section bracket width on c1
  double c_lower = 0.1;        // initial symmetric bracket
  double c_upper = 50.0;
  int scan_points = 8;
  double scan_lo = 0.6;  // scan range for c1, as multiples of the
  double scan_hi = 1.8;  // symmetric constant
  CoverageOptions coverage{};
};

struct Solution {
  CriticalConstants cc;
  double coverage = 0.0;
  AreaResult area;
  WedgeGeometry geometry;
  int coverage_evaluations = 0;
};

/// c1 = c2 = c with coverage 1 - alpha.
Solution solve_symmetric(const Scenario& scn, const BandForm& form,
                         const SolverOptions& opt = {});

/// (c1, c2) with coverage 1 - alpha and minimal Area(R_V).
Solution solve_asymmetric(const Scenario& scn, const BandForm& form,
                          const SolverOptions& opt = {});

/// Dispatches on form.symmetric.
Solution solve(const Scenario& scn, const BandForm& form,
               const SolverOptions& opt = {});

/// Area(R_V) and Area(C(T*)) for given constants.
AreaResult constants_to_areas(const CriticalConstants& cc, const Scenario& scn,
                              const BandForm& form);

/// For fixed c1, the c2 that attains coverage 1 - alpha, or a negative
/// value when no c2 <= opt.c_upper reaches it. `guess` seeds the bracket.
double solve_c2_given_c1(double c1, const Scenario& scn, const BandForm& form,
                         double guess, const SolverOptions& opt = {},
                         int* evaluations = nullptr);

}  // namespace macs
