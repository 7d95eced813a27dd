#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "macs/band_forms.hpp"
#include "macs/geometry.hpp"

namespace macs {

struct Observation {
  double x = 0.0;
  double y = 0.0;
};

struct Dataset {
  std::vector<Observation> rows;
  std::vector<std::string> warnings;

  /// CSV with header "x,y"; '#' comment lines and blank lines are skipped.
  /// Malformed rows are dropped with a warning.
  static Dataset read_csv(std::istream& in);
  static Dataset load_csv(const std::string& path);
};

struct FitResult {
  double beta0_hat = 0.0;  // intercept at x_bar
  double beta1_hat = 0.0;
  double sigma_hat = 0.0;
  int n = 0;
  int nu = 0;
  double x_bar = 0.0;
  double s_xx = 0.0;
  double r_squared = 0.0;
  std::vector<std::string> warnings;
};

/// Mean-centered least squares. Throws DataError on n < 3 or S_xx = 0.
FitResult fit(const Dataset& ds);

/// Band of the given form and constants around a fitted percentile line.
struct BandCurve {
  BandForm form;
  CriticalConstants cc;
  Scenario scn;  // gamma, n, x_bar, s_xx and the centered interval (a, b)
};

struct BandValue {
  double lower = 0.0;
  double upper = 0.0;
  double center = 0.0;
};

/// Scenario for a fit, with (x_lo, x_hi) in original covariate units.
Scenario scenario_for_fit(const FitResult& fit, double alpha, double gamma,
                          double x_lo, double x_hi);

/// Band at original-scale x. Throws DomainError if x - x_bar is outside [a, b].
BandValue band_at(double x, const FitResult& fit, const BandCurve& curve);

struct Crossings {
  std::optional<double> lower;  // where the lower band reaches h
  std::optional<double> upper;  // where the upper band reaches h
};

/// Threshold crossings over the band's interval: a 1000-cell sign scan
/// followed by bisection. The last crossing is reported for each side.
Crossings threshold_crossings(double h, const FitResult& fit,
                              const BandCurve& curve);

}  // namespace macs
