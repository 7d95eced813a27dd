#pragma once

#include <string_view>

namespace macs {

/// A band construction problem. The interval (a, b) is in centered
/// covariate units, x - x_bar.
struct Scenario {
  double alpha = 0.05;
  double gamma = 0.5;
  int n = 10;
  double x_bar = 0.0;
  double s_xx = 1.0;
  double a = -1.0;
  double b = 1.0;

  int nu() const { return n - 2; }
  /// Standard normal quantile at gamma.
  double z() const;
  /// Validates field ranges; throws DomainError.
  void validate() const;

  /// Interval a = -b with b / sqrt(S_xx) = s, S_xx = 1 and x_bar = 0.
  static Scenario symmetric_interval(double alpha, double gamma, int n,
                                     double s);
};

struct CriticalConstants {
  double c1 = 1.0;  // bound on the projection from above
  double c2 = 1.0;  // bound on the projection from below

  double c_min() const { return c1 < c2 ? c1 : c2; }
  double c_max() const { return c1 < c2 ? c2 : c1; }
  void validate() const;
};

enum class WedgeCase { AcuteFan, RightFan, ObtuseEdge, ObtuseArc };
std::string_view to_string(WedgeCase c);

/// Angles partitioning the spindle region into four triangles and four
/// circular sectors.
///
/// phi1 and phi2 are the fan half-angles above and below the v1 axis
/// (phi2 is negative when the interval lies right of x_bar). zeta1,
/// zeta2, phi1_star and phi2_star describe the region oriented so that
/// the smaller constant bounds the fan side (c_min in the c1 slot); the
/// region for c1 > c2 is the point reflection of that orientation.
struct WedgeGeometry {
  double phi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi1_star = 0.0;
  double phi2_star = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  WedgeCase case_tag = WedgeCase::AcuteFan;
};

struct AreaResult {
  double area_rv = 0.0;
  double scale = 1.0;
  double area_ct = 0.0;
};

struct SubAngles {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// |phi - pi/2| below this is treated as the right-angle case.
inline constexpr double kRightFanTolerance = 1e-9;

/// Angle between the direction vectors at x - x_bar = a and b.
double fan_angle(const Scenario& scn, double xi);

SubAngles sub_angles(const Scenario& scn, double xi);

WedgeGeometry zeta_angles(const CriticalConstants& cc, double phi,
                          double phi1, double phi2);

/// Convenience: fan angles plus zeta partition for a scenario.
WedgeGeometry wedge_geometry(const CriticalConstants& cc, const Scenario& scn,
                             double xi);

/// Closed-form area of the spindle region. The returned scale is 1.
AreaResult region_area(const CriticalConstants& cc, const WedgeGeometry& geo);

/// Rescales Area(R_V) to the area of the confidence set for the mapped
/// pivot, sqrt(1 + n z^2 xi) times larger.
AreaResult scale_area(double area_rv, const Scenario& scn, double xi);

/// Extremes of the unit-direction projection u(t).v over the fan
/// t in [-phi2, phi1].
struct ProjectionRange {
  double lo = 0.0;
  double hi = 0.0;
};
ProjectionRange fan_projection_range(double v1, double v2, double phi1,
                                     double phi2);

/// Membership in R_V: -c2 <= u(t).v <= c1 for every fan direction.
bool region_contains(const CriticalConstants& cc, double phi1, double phi2,
                     double v1, double v2);

}  // namespace macs
