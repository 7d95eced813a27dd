#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "macs/errors.hpp"
#include "macs/geometry.hpp"
#include "macs/mc_validation.hpp"

using namespace macs;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force membership: every one of `dirs` fan directions checked.
bool contains_sampled(const CriticalConstants& cc, double phi1, double phi2, double v1,
                      double v2, int dirs) {
  for (int i = 0; i <= dirs; ++i) {
    const double t = -phi2 + (phi1 + phi2) * i / dirs;
    const double p = v1 * std::cos(t) + v2 * std::sin(t);
    if (p > cc.c1 || p < -cc.c2) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Type I fan angle on a symmetric interval is 2 atan(s sqrt(n))") {
  for (int n : {5, 10, 100}) {
    for (double s : {0.01, 0.1, 1.0, 10.0}) {
      const Scenario scn = Scenario::symmetric_interval(0.05, 0.9, n, s);
      CHECK(fan_angle(scn, 0.0) == doctest::Approx(2.0 * std::atan(s * std::sqrt(n))).epsilon(1e-14));
      const SubAngles sub = sub_angles(scn, 0.0);
      CHECK(sub.phi1 == doctest::Approx(sub.phi2).epsilon(1e-15));
      CHECK(sub.phi1 + sub.phi2 == doctest::Approx(fan_angle(scn, 0.0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("fan angle matches the arccos formula away from its ill-conditioned ends") {
  Scenario scn;
  scn.gamma = 0.8;
  scn.n = 12;
  scn.s_xx = 3.5;
  scn.a = -0.7;
  scn.b = 2.1;
  const double xi = 0.05;
  const double z = scn.z();
  const double k = 1.0 / scn.n + z * z * xi;
  const double ka = k + scn.a * scn.a / scn.s_xx;
  const double kb = k + scn.b * scn.b / scn.s_xx;
  const double cos_phi = (k + scn.a * scn.b / scn.s_xx) / std::sqrt(ka * kb);
  CHECK(fan_angle(scn, xi) == doctest::Approx(std::acos(cos_phi)).epsilon(1e-13));
}

TEST_CASE("an interval right of x_bar gives a negative lower sub-angle") {
  Scenario scn;
  scn.n = 10;
  scn.a = 0.5;
  scn.b = 2.0;
  const SubAngles sub = sub_angles(scn, 0.0);
  CHECK(sub.phi2 < 0.0);
  CHECK(sub.phi1 + sub.phi2 == doctest::Approx(fan_angle(scn, 0.0)).epsilon(1e-14));
  CHECK(fan_angle(scn, 0.0) > 0.0);
}

TEST_CASE("case tags") {
  const CriticalConstants cc{2.0, 3.0};
  CHECK(zeta_angles(cc, 1.0, 0.5, 0.5).case_tag == WedgeCase::AcuteFan);
  CHECK(zeta_angles(cc, kPi / 2, kPi / 4, kPi / 4).case_tag == WedgeCase::RightFan);
  CHECK(zeta_angles(cc, 2.0, 1.0, 1.0).case_tag == WedgeCase::ObtuseEdge);
  CHECK(zeta_angles(cc, 3.0, 1.5, 1.5).case_tag == WedgeCase::ObtuseArc);
  CHECK_THROWS_AS(zeta_angles(cc, 0.0, 0.0, 0.0), GeometryError);
  CHECK_THROWS_AS(zeta_angles(cc, kPi, kPi / 2, kPi / 2), GeometryError);
  CHECK_THROWS_AS(zeta_angles(CriticalConstants{0.0, 1.0}, 1.0, 0.5, 0.5), DomainError);
}

TEST_CASE("partition angles close the half turn") {
  const CriticalConstants cc{1.5, 2.5};
  for (double phi : {0.3, 1.2, 1.9, 2.3}) {
    const WedgeGeometry g = zeta_angles(cc, phi, phi / 2, phi / 2);
    if (g.case_tag != WedgeCase::ObtuseArc) {
      CHECK(g.zeta1 + g.zeta2 + phi == doctest::Approx(kPi).epsilon(1e-14));
      // Triangle legs meet at the common vertex.
      CHECK(cc.c_min() / std::cos(g.zeta1) == doctest::Approx(cc.c_max() / std::cos(g.zeta2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form area matches polar quadrature on random inputs in every case") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int seen[4] = {0, 0, 0, 0};
  int checked = 0;
  while (checked < 200) {
    double phi;
    switch (checked % 4) {
      case 0: phi = 0.02 + 1.5 * u(rng); break;
      case 1: phi = kPi / 2; break;
      case 2: phi = kPi / 2 + 1.5 * u(rng); break;
      default: phi = 2.6 + 0.5 * u(rng); break;
    }
    const double phi1 = -0.2 + (phi + 0.4) * u(rng);
    const double phi2 = phi - phi1;
    const CriticalConstants cc{0.1 + 8.0 * u(rng), 0.1 + 8.0 * u(rng)};
    const WedgeGeometry g = zeta_angles(cc, phi, phi1, phi2);
    const double closed = region_area(cc, g).area_rv;
    const double oracle = region_area_polar(cc, phi1, phi2);
    CHECK(closed == doctest::Approx(oracle).epsilon(1e-8));
    ++seen[int(g.case_tag)];
    ++checked;
  }
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("area is continuous through the right angle") {
  const CriticalConstants cc{1.3, 2.9};
  const double at = region_area(cc, zeta_angles(cc, kPi / 2, 0.7, kPi / 2 - 0.7)).area_rv;
  for (double eps : {1e-4, 1e-6, 1e-8, 2e-9}) {
    for (double sgn : {-1.0, 1.0}) {
      const double phi = kPi / 2 + sgn * eps;
      const double near = region_area(cc, zeta_angles(cc, phi, 0.7, phi - 0.7)).area_rv;
      CHECK(near == doctest::Approx(at).epsilon(10 * eps));
    }
  }
}

TEST_CASE("area is symmetric in the two constants") {
  for (double phi : {0.4, kPi / 2, 2.0, 3.0}) {
    const CriticalConstants ab{1.2, 3.4};
    const CriticalConstants ba{3.4, 1.2};
    CHECK(region_area(ab, zeta_angles(ab, phi, phi / 2, phi / 2)).area_rv ==
          doctest::Approx(region_area(ba, zeta_angles(ba, phi, phi / 2, phi / 2)).area_rv).epsilon(1e-14));
  }
}

TEST_CASE("area grows with either constant") {
  for (double phi : {0.4, 1.5, 2.2, 3.0}) {
    const CriticalConstants base{2.0, 3.0};
    const double a0 = region_area(base, zeta_angles(base, phi, phi / 2, phi / 2)).area_rv;
    const CriticalConstants up1{2.01, 3.0};
    const CriticalConstants up2{2.0, 3.01};
    CHECK(region_area(up1, zeta_angles(up1, phi, phi / 2, phi / 2)).area_rv > a0);
    CHECK(region_area(up2, zeta_angles(up2, phi, phi / 2, phi / 2)).area_rv > a0);
  }
}

TEST_CASE("scaled area for the mapped pivot") {
  const Scenario scn = Scenario::symmetric_interval(0.05, 0.95, 10, 1.0);
  const AreaResult type1 = scale_area(4.0, scn, 0.0);
  CHECK(type1.scale == 1.0);
  CHECK(type1.area_ct == 4.0);
  const double xi = 0.07;
  const AreaResult type2 = scale_area(4.0, scn, xi);
  const double z = scn.z();
  CHECK(type2.scale == doctest::Approx(std::sqrt(1.0 + 10 * z * z * xi)).epsilon(1e-15));
  CHECK(type2.area_ct == doctest::Approx(4.0 * type2.scale).epsilon(1e-15));
  CHECK_THROWS_AS(scale_area(0.0, scn, xi), DomainError);
}

TEST_CASE("membership agrees with a dense scan of fan directions") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int disagreements = 0;
  for (int i = 0; i < 2000; ++i) {
    const double phi = 0.1 + 2.9 * u(rng);
    const double phi1 = -0.2 + (phi + 0.4) * u(rng);
    const CriticalConstants cc{0.5 + 3 * u(rng), 0.5 + 3 * u(rng)};
    const double v1 = -8 + 16 * u(rng);
    const double v2 = -8 + 16 * u(rng);
    const bool exact = region_contains(cc, phi1, phi - phi1, v1, v2);
    const bool sampled = contains_sampled(cc, phi1, phi - phi1, v1, v2, 20000);
    // A dense scan can only miss a violation, never invent one.
    if (sampled && !exact) {
      const ProjectionRange pr = fan_projection_range(v1, v2, phi1, phi - phi1);
      if (pr.hi - cc.c1 > 1e-6 || -cc.c2 - pr.lo > 1e-6) ++disagreements;
    }
    if (!sampled && exact) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("scenario validation") {
  Scenario scn;
  CHECK_NOTHROW(scn.validate());
  scn.a = 1.0;
  scn.b = 1.0;
  CHECK_THROWS_AS(scn.validate(), DomainError);
  scn = Scenario{};
  scn.n = 2;
  CHECK_THROWS_AS(scn.validate(), DomainError);
  scn = Scenario{};
  scn.gamma = 1.0;
  CHECK_THROWS_AS(scn.validate(), DomainError);
}
