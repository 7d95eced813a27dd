#include "doctest.h"

#include <cmath>

#include "macs/band_forms.hpp"
#include "macs/errors.hpp"
#include "macs/special.hpp"

using namespace macs;

TEST_CASE("xi and theta at nu = 8 match high-precision values") {
  CHECK(xi_theta(BandName::SB, 8).xi == 0.0);
  CHECK(xi_theta(BandName::SB, 8).theta == 1.0);
  CHECK(xi_theta(BandName::TBU, 8).theta == doctest::Approx(0.969310699713954077).epsilon(1e-14));
  CHECK(xi_theta(BandName::TBE, 8).theta == doctest::Approx(0.902703333676410059).epsilon(1e-14));
  CHECK(xi_theta(BandName::V, 8).xi == doctest::Approx(0.0604367674200447468).epsilon(1e-13));
  CHECK(xi_theta(BandName::V, 8).theta == 1.0);
  CHECK(xi_theta(BandName::UV, 8).xi == doctest::Approx(0.0643243214765768087).epsilon(1e-13));
  CHECK(xi_theta(BandName::UV, 8).theta == doctest::Approx(0.969310699713954077).epsilon(1e-14));
  CHECK(xi_theta(BandName::TT, 8).xi == doctest::Approx(1.0 / 16.0));
  CHECK(xi_theta(BandName::TT, 8).theta == doctest::Approx(31.0 / 32.0));
}

TEST_CASE("Type II constants tend to Type I as nu grows") {
  for (BandName name : {BandName::V, BandName::UV, BandName::TT}) {
    const FormConstants fc = xi_theta(name, 100000);
    CHECK(fc.xi < 1e-4);
    CHECK(fc.theta == doctest::Approx(1.0).epsilon(1e-4));
  }
  CHECK(xi_theta(BandName::TBE, 100000).theta == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("xi is positive and theta below one for finite nu") {
  for (int nu : {2, 3, 8, 98}) {
    for (BandName name : {BandName::V, BandName::UV, BandName::TT}) {
      CHECK(xi_theta(name, nu).xi > 0.0);
    }
    CHECK(xi_theta(BandName::TBU, nu).theta < 1.0);
    CHECK(xi_theta(BandName::TBE, nu).theta < xi_theta(BandName::TBU, nu).theta);
  }
}

TEST_CASE("small nu is rejected") {
  CHECK_THROWS_AS(xi_theta(BandName::SB, 1), DomainError);
  CHECK_THROWS_AS(xi_theta(BandName::TBE, 0), DomainError);
  CHECK_NOTHROW(xi_theta(BandName::TBE, 2));
}

TEST_CASE("band names parse case-insensitively") {
  CHECK(parse_band("SB") == BandForm{BandName::SB, true});
  CHECK(parse_band("tbea") == BandForm{BandName::TBE, false});
  CHECK(parse_band("UVa") == BandForm{BandName::UV, false});
  CHECK(parse_band("Va") == BandForm{BandName::V, false});
  CHECK(parse_band("tt") == BandForm{BandName::TT, true});
  CHECK_THROWS_AS(parse_band("XYZ"), DomainError);
  CHECK_THROWS_AS(parse_band(""), DomainError);
  for (BandName name : kAllBandNames) {
    for (bool sym : {true, false}) {
      const BandForm f{name, sym};
      CHECK(parse_band(f.label()) == f);
    }
  }
}

TEST_CASE("band types") {
  CHECK(BandForm{BandName::TBU, false}.band_type() == BandType::TypeI);
  CHECK(BandForm{BandName::TT, true}.band_type() == BandType::TypeII);
}

TEST_CASE("special functions") {
  CHECK(special::normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-14));
  CHECK(special::normal_quantile(0.5) == 0.0);
  CHECK(special::normal_cdf(1.6448536269514722) == doctest::Approx(0.95).epsilon(1e-14));
  for (double x : {-5.0, -1.0, 0.0, 0.5, 3.0, 20.0}) {
    CHECK(special::log_erfcx(x) == doctest::Approx(x * x + std::log(std::erfc(x))).epsilon(1e-12));
  }
  // Asymptotic branch: erfcx(x) ~ 1 / (x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4)).
  const double x = 40.0;
  const double series = 1.0 / (x * std::sqrt(M_PI)) * (1.0 - 0.5 / (x * x) + 0.75 / std::pow(x, 4));
  CHECK(special::log_erfcx(x) == doctest::Approx(std::log(series)).epsilon(1e-9));
  CHECK(std::isfinite(special::log_erfcx(1e6)));
}
