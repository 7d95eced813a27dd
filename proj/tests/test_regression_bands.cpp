#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "macs/errors.hpp"
#include "macs/regression_bands.hpp"

using namespace macs;

namespace {

Dataset from_text(const std::string& text) {
  std::istringstream in(text);
  return Dataset::read_csv(in);
}

Dataset decay_data() {
  return from_text(
      "x,y\n0,100.1\n0.25,99.7\n0.5,99.3\n0.75,98.8\n1,98.6\n1.5,97.7\n2,97.0\n2.5,96.3\n3,95.4\n");
}

}  // namespace

TEST_CASE("CSV reading skips comments and drops malformed rows") {
  const Dataset ds = from_text("# a comment\n\nx,y\n1,2\n2,abc\n3,4,5\n 4 , 5 \n# end\n6,7\n");
  REQUIRE(ds.rows.size() == 3);
  CHECK(ds.rows[1].x == 4.0);
  CHECK(ds.rows[1].y == 5.0);
  CHECK(ds.warnings.size() == 2);
  CHECK_THROWS_AS(from_text("a,b\n1,2\n"), DataError);
  CHECK_THROWS_AS(from_text("# only comments\n"), DataError);
  CHECK_THROWS_AS(Dataset::load_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("exact line is recovered") {
  const Dataset ds = from_text("x,y\n0,2\n1,5\n2,8\n4,14\n");
  const FitResult f = fit(ds);
  CHECK(f.x_bar == doctest::Approx(1.75));
  CHECK(f.beta1_hat == doctest::Approx(3.0));
  CHECK(f.beta0_hat == doctest::Approx(2.0 + 3.0 * 1.75));
  CHECK(f.sigma_hat == doctest::Approx(0.0).scale(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.nu == 2);
  CHECK(f.s_xx == doctest::Approx(8.75));
}

TEST_CASE("constant response") {
  const FitResult f = fit(from_text("x,y\n0,3\n1,3\n2,3\n"));
  CHECK(f.beta1_hat == 0.0);
  CHECK(f.sigma_hat == 0.0);
  CHECK(f.r_squared == 1.0);
  CHECK(f.warnings.size() == 1);
}

TEST_CASE("degenerate designs are rejected") {
  CHECK_THROWS_AS(fit(from_text("x,y\n1,2\n2,3\n")), DataError);
  CHECK_THROWS_AS(fit(from_text("x,y\n1,2\n1,3\n1,4\n")), DataError);
}

TEST_CASE("noisy fit matches the normal equations") {
  const FitResult f = fit(decay_data());
  CHECK(f.n == 9);
  CHECK(f.beta1_hat < 0.0);
  CHECK(f.r_squared > 0.99);
  CHECK(f.r_squared <= 1.0);
  CHECK(f.sigma_hat > 0.0);
}

TEST_CASE("band evaluation") {
  const FitResult f = fit(decay_data());
  const Scenario scn = scenario_for_fit(f, 0.05, 0.05, 0.0, 2.0);
  CHECK(scn.a == doctest::Approx(-f.x_bar));
  CHECK(scn.b == doctest::Approx(2.0 - f.x_bar));

  SUBCASE("zero constants collapse to the centre line") {
    const BandCurve curve{{BandName::UV, false}, {0.0, 0.0}, scn};
    const BandValue v = band_at(1.0, f, curve);
    CHECK(v.lower == v.center);
    CHECK(v.upper == v.center);
    const FormConstants fc = xi_theta(BandName::UV, scn.nu());
    CHECK(v.center == doctest::Approx(f.beta0_hat + f.beta1_hat * (1.0 - f.x_bar) +
                                      scn.z() * f.sigma_hat / fc.theta));
  }
  SUBCASE("median percentile is symmetric about the fitted mean") {
    Scenario med = scn;
    med.gamma = 0.5;
    const BandCurve curve{{BandName::TBE, true}, {2.5, 2.5}, med};
    for (double x : {0.0, 0.7, 2.0}) {
      const BandValue v = band_at(x, f, curve);
      const double mean = f.beta0_hat + f.beta1_hat * (x - f.x_bar);
      CHECK(v.center == doctest::Approx(mean));
      CHECK(v.upper - mean == doctest::Approx(mean - v.lower));
    }
  }
  SUBCASE("width is smallest at x_bar") {
    const BandCurve curve{{BandName::UV, false}, {3.0, 2.0}, scn};
    const BandValue at_mean = band_at(f.x_bar, f, curve);
    for (double x : {0.0, 0.5, 1.0, 1.3, 1.7, 2.0}) {
      const BandValue v = band_at(x, f, curve);
      CHECK(v.upper - v.lower >= at_mean.upper - at_mean.lower - 1e-12);
      CHECK(v.lower < v.upper);
    }
  }
  SUBCASE("outside the interval") {
    const BandCurve curve{{BandName::SB, true}, {2.0, 2.0}, scn};
    CHECK_THROWS_AS(band_at(2.5, f, curve), DomainError);
    CHECK_THROWS_AS(band_at(-0.1, f, curve), DomainError);
    CHECK_NOTHROW(band_at(2.0, f, curve));
  }
}

TEST_CASE("threshold crossings") {
  const FitResult f = fit(decay_data());
  const Scenario scn = scenario_for_fit(f, 0.05, 0.05, 0.0, 2.0);
  const BandCurve curve{{BandName::UV, false}, {3.0, 2.0}, scn};

  const Crossings none = threshold_crossings(50.0, f, curve);
  CHECK_FALSE(none.lower.has_value());
  CHECK_FALSE(none.upper.has_value());

  const Crossings c = threshold_crossings(98.0, f, curve);
  REQUIRE(c.lower.has_value());
  REQUIRE(c.upper.has_value());
  CHECK(*c.lower < *c.upper);
  CHECK(band_at(*c.lower, f, curve).lower == doctest::Approx(98.0).epsilon(1e-6));
  CHECK(band_at(*c.upper, f, curve).upper == doctest::Approx(98.0).epsilon(1e-6));

  const double at_a = band_at(0.0, f, curve).lower;
  const Crossings edge = threshold_crossings(at_a, f, curve);
  REQUIRE(edge.lower.has_value());
  CHECK(*edge.lower == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("line inside the band on a grid iff its pivot lies in the region") {
  const FitResult f = fit(decay_data());
  const Scenario scn = scenario_for_fit(f, 0.05, 0.1, 0.0, 2.0);
  const BandForm form{BandName::UV, false};
  const CriticalConstants cc{2.8, 2.1};
  const BandCurve curve{form, cc, scn};
  const FormConstants fc = xi_theta(form.name, scn.nu());
  const double z = scn.z();
  const double k = 1.0 / scn.n + z * z * fc.xi;
  const SubAngles sub = sub_angles(scn, fc.xi);

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nrm(0.0, 1.0);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double b0 = f.beta0_hat + 0.4 * nrm(rng);
    const double b1 = f.beta1_hat + 0.4 * nrm(rng);
    const double sigma = f.sigma_hat * std::exp(0.3 * nrm(rng));
    double margin = 1e300;
    for (int i = 0; i <= 1000; ++i) {
      const double x = 2.0 * i / 1000;
      const BandValue v = band_at(x, f, curve);
      const double truth = b0 + b1 * (x - f.x_bar) + z * sigma;
      const double d = x - f.x_bar;
      const double w = f.sigma_hat * std::sqrt(1.0 / scn.n + d * d / scn.s_xx + z * z * fc.xi);
      margin = std::min({margin, (v.upper - truth) / w, (truth - v.lower) / w});
    }
    if (std::abs(margin) < 1e-4) continue;
    const double v1 = (f.beta0_hat - b0 + z * f.sigma_hat / fc.theta - z * sigma) /
                      (f.sigma_hat * std::sqrt(k));
    const double v2 = (f.beta1_hat - b1) * std::sqrt(scn.s_xx) / f.sigma_hat;
    CHECK((margin >= 0.0) == region_contains(cc, sub.phi1, sub.phi2, v1, v2));
    ++compared;
  }
  CHECK(compared > 900);
}
