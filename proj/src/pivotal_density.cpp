#include "macs/pivotal_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "macs/errors.hpp"
#include "macs/quadrature.hpp"
#include "macs/special.hpp"

namespace macs {

namespace {

constexpr double kPi = std::numbers::pi;

// Running product that folds into a log whenever it leaves a safe range.
class LogProduct {
 public:
  explicit LogProduct(double log_start) : log_(log_start) {}
  void mul(double x) {
    p_ *= x;
    if (p_ > 1e150 || p_ < 1e-150) {
      log_ += std::log(p_);
      p_ = 1.0;
    }
  }
  double log() const { return log_ + std::log(p_); }

 private:
  double log_;
  double p_ = 1.0;
};

// Above this amplification exponent the forward recursion for m < 0 loses
// more than ~4 digits, and the continued fraction takes over.
constexpr double kForwardLimit = 9.0;

// log G_k(m), G_k(m) = exp(m^2/2) int_0^inf s^k exp(-(s - m)^2 / 2) ds.
// G_k = m G_{k-1} + (k-1) G_{k-2}; the ratios r_j = G_j / G_{j-1} satisfy
// r_j = m + (j-1) / r_{j-1} forwards and r_j = j / (r_{j+1} - m) backwards.
double log_shifted_moment(int k, double m) {
  const double log_g0 =
      0.5 * std::log(kPi / 2.0) + special::log_erfcx(-m / std::numbers::sqrt2);
  if (k == 0) return log_g0;
  LogProduct acc(log_g0);

  if (m >= 0.0 || 2.0 * -m * std::sqrt(double(k)) < kForwardLimit) {
    double r = m + std::exp(-log_g0);
    acc.mul(r);
    for (int j = 2; j <= k; ++j) {
      r = m + (j - 1) / r;
      acc.mul(r);
    }
    return acc.log();
  }

  // G is the minimal solution for m < 0: continued fraction for r_k, then
  // the stable downward ratio recursion.
  constexpr double tiny = 1e-300;
  const double b = -m;
  double f = tiny, c = tiny, d = 0.0;
  bool converged = false;
  for (int i = 1; i <= 100000; ++i) {
    const double a = k + i - 1;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericError("inner v3 integral: continued fraction did not converge (k=" +
                       std::to_string(k) + ", m=" + std::to_string(m) + ")");
  }
  // f = k / (b + (k+1) / (b + (k+2) / ...)) = r_k.
  double r = f;
  acc.mul(r);
  for (int j = k - 1; j >= 1; --j) {
    r = j / (r - m);
    acc.mul(r);
  }
  return acc.log();
}

}  // namespace

DensityParams DensityParams::make(double q1, double q2, double q3, int nu) {
  if (!(q1 > 0.0) || nu < 1) throw DomainError("density parameters out of range");
  DensityParams p;
  p.q1 = q1;
  p.q2 = q2;
  p.q3 = q3;
  p.nu = nu;
  const double v = nu;
  p.log_norm = 0.5 * v * std::log(v) - std::log(q1) - 0.5 * v * std::log(2.0) -
               std::log(kPi) - std::lgamma(v / 2.0);
  return p;
}

DensityParams DensityParams::from(const Scenario& scn, const FormConstants& fc) {
  const double z = scn.z();
  const double rn = std::sqrt(double(scn.n));
  const double det = 1.0 + scn.n * z * z * fc.xi;
  if (!(det > 0.0)) throw GeometryError("density: 1 + n z^2 xi <= 0");
  const double q1 = std::sqrt(1.0 / det);
  const double q2 = z * rn / std::sqrt(fc.theta * fc.theta * det);
  return make(q1, q2, z * rn, scn.nu());
}

double log_inner_v3_integral(double A, double B, int nu) {
  if (!(A > 0.0)) throw DomainError("inner v3 integral requires A > 0");
  const int k = nu + 1;
  const double m = -B / std::sqrt(A);
  return -0.5 * (k + 1) * std::log(A) + log_shifted_moment(k, m);
}

double inner_v3_integral(double A, double B, int nu) {
  return std::exp(log_inner_v3_integral(A, B, nu));
}

double inner_v3_integral_quadrature(double A, double B, int nu) {
  if (!(A > 0.0)) throw DomainError("inner v3 integral requires A > 0");
  const int k = nu + 1;
  // The log-integrand k log t - (A t^2 + 2 B t) / 2 is concave with its
  // peak at t_peak and curvature k / t^2 + A. Curvature >= A to the right
  // and >= its peak value to the left bound both tails, beyond 15 standard
  // widths, by exp(-112) relative to the peak.
  const double t_peak = (-B + std::sqrt(B * B + 4.0 * A * k)) / (2.0 * A);
  const double left_width = 1.0 / std::sqrt(k / (t_peak * t_peak) + A);
  auto log_integrand = [&](double t) {
    return k * std::log(t) - 0.5 * (A * t * t + 2.0 * B * t);
  };
  const double log_peak = log_integrand(t_peak);
  auto f = [&](double t) {
    return t <= 0.0 ? 0.0 : std::exp(log_integrand(t) - log_peak);
  };
  const double t_max = t_peak + 15.0 / std::sqrt(A);
  double err_lo = 0.0, err_hi = 0.0;
  const double t_min = std::max(0.0, t_peak - 15.0 * left_width);
  const double lo = gauss_kronrod_unit<61>(f, t_min, t_peak, 20, 1e-12, &err_lo);
  const double hi = gauss_kronrod_unit<61>(f, t_peak, t_max, 20, 1e-12, &err_hi);
  const double total = lo + hi;
  if (!(err_lo + err_hi <= 1e-11 * total)) {
    throw NumericError("inner v3 quadrature did not converge: error estimate " +
                       std::to_string(err_lo + err_hi) + " for value " +
                       std::to_string(total));
  }
  return std::exp(log_peak) * total;
}

double density_v(double v1, double v2, const DensityParams& p) {
  const double w = (v1 - p.q2) / p.q1;
  const double A = w * w + v2 * v2 + p.nu;
  const double B = p.q3 * w;
  return std::exp(p.log_norm - 0.5 * p.q3 * p.q3 + log_inner_v3_integral(A, B, p.nu));
}

double density_polar(double r, double delta, const DensityParams& p) {
  if (r <= 0.0) return 0.0;
  return r * density_v(r * std::cos(delta), r * std::sin(delta), p);
}

}  // namespace macs
