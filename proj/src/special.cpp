#include "macs/special.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

namespace macs::special {

double log_erfcx(double x) {
  if (x < 25.0) return x * x + std::log(std::erfc(x));
  // Asymptotic series; at x >= 25 the sixth term is below 1e-16.
  const double t = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) * t;
    sum += term;
  }
  return std::log(sum / (x * std::sqrt(std::numbers::pi)));
}

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, p);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace macs::special
