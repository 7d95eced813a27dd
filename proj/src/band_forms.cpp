#include "macs/band_forms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "macs/errors.hpp"

namespace macs {

namespace {

// Gamma((nu + 1) / 2) / Gamma(nu / 2) scaled by sqrt(2 / nu); this is
// E[U] for U ~ sqrt(chi2_nu / nu).
double mean_chi_scale(int nu) {
  const double v = nu;
  return std::sqrt(2.0 / v) *
         std::exp(std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0));
}

}  // namespace

BandType BandForm::band_type() const {
  switch (name) {
    case BandName::SB:
    case BandName::TBU:
    case BandName::TBE:
      return BandType::TypeI;
    default:
      return BandType::TypeII;
  }
}

std::string BandForm::label() const {
  std::string s(to_string(name));
  if (!symmetric) s += 'a';
  return s;
}

std::string_view to_string(BandName name) {
  switch (name) {
    case BandName::SB: return "SB";
    case BandName::TBU: return "TBU";
    case BandName::TBE: return "TBE";
    case BandName::V: return "V";
    case BandName::UV: return "UV";
    case BandName::TT: return "TT";
  }
  return "?";
}

FormConstants xi_theta(BandName name, int nu) {
  if (nu < 2) {
    throw DomainError("xi_theta: nu must be >= 2, got " + std::to_string(nu));
  }
  const double v = nu;
  switch (name) {
    case BandName::SB:
      return {0.0, 1.0};
    case BandName::TBU:
      return {0.0, mean_chi_scale(nu)};
    case BandName::TBE:
      return {0.0, std::sqrt(2.0 / v) * std::exp(std::lgamma(v / 2.0) -
                                                 std::lgamma((v - 1.0) / 2.0))};
    case BandName::V: {
      const double m = mean_chi_scale(nu);
      return {1.0 - m * m, 1.0};
    }
    case BandName::UV: {
      // (nu/2) (Gamma(nu/2) / Gamma((nu+1)/2))^2 - 1 = 1/E[U]^2 - 1.
      const double m = mean_chi_scale(nu);
      return {1.0 / (m * m) - 1.0, m};
    }
    case BandName::TT:
      return {1.0 / (2.0 * v), (4.0 * v - 1.0) / (4.0 * v)};
  }
  throw DomainError("xi_theta: unknown band");
}

BandForm parse_band(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  BandForm form;
  if (s.size() > 1 && s.back() == 'A') {
    form.symmetric = false;
    s.pop_back();
  }
  for (BandName name : kAllBandNames) {
    if (s == to_string(name)) {
      form.name = name;
      return form;
    }
  }
  throw DomainError("unknown band '" + std::string(text) + "'");
}

}  // namespace macs
