#pragma once

#include "macs/band_forms.hpp"
#include "macs/geometry.hpp"

namespace macs {

/// Shift and scale constants of the pivot V = (V1, V2):
///   V1 = q1 (N1 - q3) / U + q2,  V2 = N2 / U,
/// with N standard bivariate normal and U ~ sqrt(chi2_nu / nu).
struct DensityParams {
  double q1 = 1.0;
  double q2 = 0.0;
  double q3 = 0.0;
  int nu = 1;
  /// log of nu^{nu/2} / (q1 2^{nu/2} pi Gamma(nu/2)), cached.
  double log_norm = 0.0;

  static DensityParams from(const Scenario& scn, const FormConstants& fc);
  static DensityParams make(double q1, double q2, double q3, int nu);
};

/// log of int_0^inf t^{nu+1} exp(-(A t^2 + 2 B t) / 2) dt. Requires A > 0.
double log_inner_v3_integral(double A, double B, int nu);

/// int_0^inf t^{nu+1} exp(-(A t^2 + 2 B t) / 2) dt.
double inner_v3_integral(double A, double B, int nu);

/// Quadrature evaluation of the same integral; cross-check and fallback.
/// Throws NumericError if the adaptive rule does not converge.
double inner_v3_integral_quadrature(double A, double B, int nu);

/// Joint density of (V1, V2).
double density_v(double v1, double v2, const DensityParams& p);

/// Joint density of the polar coordinates (R, delta): r f_V(r cos, r sin).
double density_polar(double r, double delta, const DensityParams& p);

}  // namespace macs
