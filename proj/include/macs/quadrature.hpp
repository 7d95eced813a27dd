#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace macs {

/// Adaptive Gauss-Kronrod on a finite [a, b], evaluated on [0, 1].
/// Boost's roundoff floor on the error estimate is not scaled by the
/// interval width, so narrow intervals would otherwise never converge.
template <unsigned Points, class F>
double gauss_kronrod_unit(F f, double a, double b, unsigned max_depth, double tol,
                          double* err = nullptr, double* l1 = nullptr) {
  const double width = b - a;
  auto g = [&](double t) { return f(a + width * t); };
  double e = 0.0, l = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, Points>::integrate(
      g, 0.0, 1.0, max_depth, tol, &e, &l);
  if (err) *err = e * std::abs(width);
  if (l1) *l1 = l * std::abs(width);
  return v * width;
}

}  // namespace macs
