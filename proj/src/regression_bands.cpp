#include "macs/regression_bands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "macs/errors.hpp"
#include "macs/special.hpp"

namespace macs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(t, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == t.size() && std::isfinite(out);
}

std::string lower_case(std::string s) {
  for (char& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Latest root of f on [lo, hi] located by grid scan and bisection.
std::optional<double> last_root(const std::function<double(double)>& f,
                                double lo, double hi) {
  constexpr int kCells = 1000;
  constexpr double kTol = 1e-6;
  std::optional<double> found;
  double x0 = lo;
  double f0 = f(x0);
  if (f0 == 0.0) found = x0;
  for (int i = 1; i <= kCells; ++i) {
    const double x1 = lo + (hi - lo) * i / kCells;
    const double f1 = f(x1);
    if (f1 == 0.0) {
      found = x1;
    } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
      double l = x0, r = x1, fl = f0;
      while (r - l > kTol) {
        const double m = 0.5 * (l + r);
        const double fm = f(m);
        if (fm == 0.0) {
          l = r = m;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      found = 0.5 * (l + r);
    }
    x0 = x1;
    f0 = f1;
  }
  return found;
}

}  // namespace

Dataset Dataset::read_csv(std::istream& in) {
  Dataset ds;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      std::string h = lower_case(t);
      h.erase(std::remove_if(h.begin(), h.end(), ::isspace), h.end());
      if (h != "x,y") throw DataError("expected CSV header 'x,y', got '" + t + "'");
      continue;
    }
    const auto comma = t.find(',');
    Observation obs;
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos ||
        !parse_double(t.substr(0, comma), obs.x) ||
        !parse_double(t.substr(comma + 1), obs.y)) {
      ds.warnings.push_back("line " + std::to_string(line_no) +
                            ": malformed row dropped: '" + t + "'");
      continue;
    }
    ds.rows.push_back(obs);
  }
  if (!header_seen) throw DataError("empty CSV: missing 'x,y' header");
  return ds;
}

Dataset Dataset::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path + "'");
  return read_csv(in);
}

FitResult fit(const Dataset& ds) {
  const int n = int(ds.rows.size());
  if (n < 3) throw DataError("fit: at least 3 observations required");
  FitResult r;
  r.n = n;
  r.nu = n - 2;
  double sx = 0.0, sy = 0.0;
  for (const auto& o : ds.rows) {
    sx += o.x;
    sy += o.y;
  }
  r.x_bar = sx / n;
  const double y_bar = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& o : ds.rows) {
    const double dx = o.x - r.x_bar;
    const double dy = o.y - y_bar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DataError("fit: degenerate design, S_xx = 0");
  r.s_xx = sxx;
  r.beta1_hat = sxy / sxx;
  r.beta0_hat = y_bar;
  double sse = 0.0;
  for (const auto& o : ds.rows) {
    const double e = o.y - r.beta0_hat - r.beta1_hat * (o.x - r.x_bar);
    sse += e * e;
  }
  r.sigma_hat = std::sqrt(sse / r.nu);
  if (syy == 0.0) {
    r.r_squared = 1.0;
    r.warnings.push_back("constant response: R^2 undefined, reported as 1");
  } else {
    r.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
  }
  return r;
}

Scenario scenario_for_fit(const FitResult& f, double alpha, double gamma,
                          double x_lo, double x_hi) {
  Scenario s;
  s.alpha = alpha;
  s.gamma = gamma;
  s.n = f.n;
  s.x_bar = f.x_bar;
  s.s_xx = f.s_xx;
  s.a = x_lo - f.x_bar;
  s.b = x_hi - f.x_bar;
  s.validate();
  return s;
}

BandValue band_at(double x, const FitResult& f, const BandCurve& curve) {
  const Scenario& scn = curve.scn;
  const double d = x - f.x_bar;
  const double slack = 1e-12 * (1.0 + std::abs(scn.a) + std::abs(scn.b));
  if (d < scn.a - slack || d > scn.b + slack) {
    throw DomainError("band_at: x outside the band interval");
  }
  const FormConstants fc = xi_theta(curve.form.name, scn.nu());
  const double z = scn.z();
  BandValue v;
  v.center = f.beta0_hat + f.beta1_hat * d + z * f.sigma_hat / fc.theta;
  const double w =
      f.sigma_hat * std::sqrt(1.0 / scn.n + d * d / scn.s_xx + z * z * fc.xi);
  v.lower = v.center - curve.cc.c1 * w;
  v.upper = v.center + curve.cc.c2 * w;
  return v;
}

Crossings threshold_crossings(double h, const FitResult& f, const BandCurve& curve) {
  const double lo = f.x_bar + curve.scn.a;
  const double hi = f.x_bar + curve.scn.b;
  Crossings c;
  c.lower = last_root([&](double x) { return band_at(x, f, curve).lower - h; }, lo, hi);
  c.upper = last_root([&](double x) { return band_at(x, f, curve).upper - h; }, lo, hi);
  return c;
}

}  // namespace macs
