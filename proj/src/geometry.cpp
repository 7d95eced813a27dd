#include "macs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "macs/errors.hpp"
#include "macs/special.hpp"

namespace macs {

namespace {

constexpr double kPi = std::numbers::pi;

// 1/n + z^2 xi, the squared first component of the direction vector.
double leading_component_sq(const Scenario& scn, double xi) {
  const double z = scn.z();
  const double k = 1.0 / scn.n + z * z * xi;
  if (!(k > 0.0)) {
    throw GeometryError("fan geometry undefined: 1/n + z^2 xi = " +
                        std::to_string(k) + " <= 0");
  }
  return k;
}

}  // namespace

double Scenario::z() const { return special::normal_quantile(gamma); }

void Scenario::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (n < 3) throw DomainError("n must be >= 3");
  if (!(s_xx > 0.0) || !std::isfinite(s_xx)) throw DomainError("S_xx must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval must be finite");
  if (!(a < b)) throw DomainError("interval requires a < b");
}

Scenario Scenario::symmetric_interval(double alpha, double gamma, int n,
                                      double s) {
  Scenario scn;
  scn.alpha = alpha;
  scn.gamma = gamma;
  scn.n = n;
  scn.x_bar = 0.0;
  scn.s_xx = 1.0;
  scn.a = -s;
  scn.b = s;
  return scn;
}

void CriticalConstants::validate() const {
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw DomainError("critical constants must be positive");
  }
}

std::string_view to_string(WedgeCase c) {
  switch (c) {
    case WedgeCase::AcuteFan: return "AcuteFan";
    case WedgeCase::RightFan: return "RightFan";
    case WedgeCase::ObtuseEdge: return "ObtuseEdge";
    case WedgeCase::ObtuseArc: return "ObtuseArc";
  }
  return "?";
}

double fan_angle(const Scenario& scn, double xi) {
  const double k = leading_component_sq(scn, xi);
  const double root_k = std::sqrt(k);
  const double sa = scn.a / std::sqrt(scn.s_xx);
  const double sb = scn.b / std::sqrt(scn.s_xx);
  // cos(phi) = (k + sa sb) / (|w_a| |w_b|); atan2 with the matching sine
  // keeps full precision near 0 and pi.
  const double dot = k + sa * sb;
  const double cross = root_k * (sb - sa);
  return std::atan2(cross, dot);
}

SubAngles sub_angles(const Scenario& scn, double xi) {
  const double root_k = std::sqrt(leading_component_sq(scn, xi));
  const double sa = scn.a / std::sqrt(scn.s_xx);
  const double sb = scn.b / std::sqrt(scn.s_xx);
  return {std::atan2(sb, root_k), std::atan2(-sa, root_k)};
}

WedgeGeometry zeta_angles(const CriticalConstants& cc, double phi,
                          double phi1, double phi2) {
  cc.validate();
  if (!(phi > 0.0 && phi < kPi)) {
    throw GeometryError("fan angle must lie in (0, pi)");
  }
  const double cmin = cc.c_min();
  const double cmax = cc.c_max();

  WedgeGeometry g;
  g.phi = phi;
  g.phi1 = phi1;
  g.phi2 = phi2;
  g.phi1_star = phi1;
  g.phi2_star = phi2;

  if (std::abs(phi - kPi / 2) < kRightFanTolerance) {
    g.case_tag = WedgeCase::RightFan;
    g.zeta1 = std::atan(cmax / cmin);
  } else if (phi < kPi / 2) {
    g.case_tag = WedgeCase::AcuteFan;
    g.zeta1 = std::atan((cmax / std::cos(phi) + cmin) * std::tan(kPi / 2 - phi) / cmin);
  } else {
    const double cos_supp = std::cos(kPi - phi);
    if (cmin / cos_supp > cmax) {
      g.case_tag = WedgeCase::ObtuseEdge;
      g.zeta1 = std::atan((cmax / cos_supp - cmin) * std::tan(phi - kPi / 2) / cmin);
    } else {
      g.case_tag = WedgeCase::ObtuseArc;
      g.zeta1 = std::acos(cmin / cmax);
      g.zeta2 = 0.0;
      g.phi1_star = kPi - phi2 - g.zeta1;
      g.phi2_star = kPi - phi1 - g.zeta1;
      return g;
    }
  }
  g.zeta2 = std::max(0.0, kPi - g.zeta1 - phi);
  return g;
}

WedgeGeometry wedge_geometry(const CriticalConstants& cc, const Scenario& scn,
                             double xi) {
  const double phi = fan_angle(scn, xi);
  const SubAngles sub = sub_angles(scn, xi);
  return zeta_angles(cc, phi, sub.phi1, sub.phi2);
}

AreaResult region_area(const CriticalConstants& cc, const WedgeGeometry& geo) {
  const double c1 = cc.c1;
  const double c2 = cc.c2;
  const double cmin = cc.c_min();
  const double cmax = cc.c_max();
  const double phi = geo.phi;
  const double sectors = phi * (c1 * c1 + c2 * c2) / 2.0;

  // Rearrangement of the acute and obtuse-edge expressions; their two
  // leading terms cancel catastrophically as phi -> pi/2.
  auto near_right = [&] {
    return (2.0 * c1 * c2 + (c1 * c1 + c2 * c2) * std::cos(phi)) / std::sin(phi) +
           sectors;
  };

  double area = 0.0;
  switch (geo.case_tag) {
    case WedgeCase::RightFan:
      area = 2.0 * c1 * c2 + sectors;
      break;
    case WedgeCase::AcuteFan: {
      if (std::abs(std::cos(phi)) < 1e-3) {
        area = near_right();
        break;
      }
      const double t = std::tan(phi);
      const double lead = cmin / std::cos(phi) + cmax;
      area = lead * lead / t - cmin * cmin * t + sectors;
      break;
    }
    case WedgeCase::ObtuseEdge: {
      if (std::abs(std::cos(phi)) < 1e-3) {
        area = near_right();
        break;
      }
      const double t = std::tan(kPi - phi);
      const double lead = cmin / std::cos(kPi - phi) - cmax;
      area = cmin * cmin * t - lead * lead / t + sectors;
      break;
    }
    case WedgeCase::ObtuseArc:
      area = cmin * std::sqrt(cmax * cmax - cmin * cmin) + cmin * cmin * phi / 2.0 +
             cmax * cmax * (2.0 * kPi - phi - 2.0 * std::acos(cmin / cmax)) / 2.0;
      break;
  }
  return {area, 1.0, area};
}

AreaResult scale_area(double area_rv, const Scenario& scn, double xi) {
  if (!(area_rv > 0.0)) throw DomainError("scale_area: area must be positive");
  const double z = scn.z();
  const double det = 1.0 + scn.n * z * z * xi;
  if (!(det > 0.0)) throw GeometryError("scale_area: 1 + n z^2 xi <= 0");
  const double scale = xi == 0.0 ? 1.0 : std::sqrt(det);
  return {area_rv, scale, area_rv * scale};
}

ProjectionRange fan_projection_range(double v1, double v2, double phi1,
                                     double phi2) {
  const double radius = std::hypot(v1, v2);
  const double centre = (phi1 - phi2) / 2.0;
  const double half = (phi1 + phi2) / 2.0;
  const double p_hi = v1 * std::cos(phi1) + v2 * std::sin(phi1);
  const double p_lo = v1 * std::cos(phi2) - v2 * std::sin(phi2);

  ProjectionRange out;
  out.hi = std::max(p_hi, p_lo);
  out.lo = std::min(p_hi, p_lo);
  if (radius == 0.0) return out;
  const double dir = std::atan2(v2, v1);
  // The projection |v| cos(t - dir) peaks at t = dir and bottoms at dir + pi.
  if (std::abs(std::remainder(dir - centre, 2.0 * kPi)) <= half) out.hi = radius;
  if (std::abs(std::remainder(dir + kPi - centre, 2.0 * kPi)) <= half) out.lo = -radius;
  return out;
}

bool region_contains(const CriticalConstants& cc, double phi1, double phi2,
                     double v1, double v2) {
  const ProjectionRange pr = fan_projection_range(v1, v2, phi1, phi2);
  return pr.hi <= cc.c1 && pr.lo >= -cc.c2;
}

}  // namespace macs
