#pragma once

#include <array>
#include <string>
#include <string_view>

namespace macs {

enum class BandName { SB, TBU, TBE, V, UV, TT };
enum class BandType { TypeI, TypeII };

inline constexpr std::array<BandName, 6> kAllBandNames = {
    BandName::SB, BandName::TBU, BandName::TBE,
    BandName::V,  BandName::UV,  BandName::TT};

/// A band recipe: one of the six (xi, theta) families, either with a common
/// critical constant (symmetric) or independent upper and lower constants.
struct BandForm {
  BandName name = BandName::SB;
  bool symmetric = true;

  BandType band_type() const;
  /// "SB", "TBEa", ...
  std::string label() const;

  friend bool operator==(const BandForm&, const BandForm&) = default;
};

struct FormConstants {
  double xi = 0.0;
  double theta = 1.0;
};

/// xi(nu) and theta(nu) for a band family. Requires nu >= 2.
FormConstants xi_theta(BandName name, int nu);

/// Case-insensitive parse; a trailing "a" selects the asymmetric variant.
/// Throws DomainError on unknown names.
BandForm parse_band(std::string_view text);

std::string_view to_string(BandName name);

}  // namespace macs
