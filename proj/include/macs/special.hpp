#pragma once

namespace macs::special {

/// log(exp(x^2) erfc(x)), finite for all real x.
double log_erfcx(double x);

/// Standard normal quantile.
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace macs::special
