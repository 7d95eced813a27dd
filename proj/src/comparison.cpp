#include "macs/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "macs/errors.hpp"

namespace macs {

namespace {

BandForm sym(BandName n) { return BandForm{n, true}; }
BandForm asym(BandName n) { return BandForm{n, false}; }

std::vector<Scenario> grid_scenarios(const TableGrid& grid) {
  std::vector<Scenario> out;
  for (double conf : grid.confidence)
    for (double g : grid.gamma)
      for (int n : grid.n)
        for (double s : grid.s) out.push_back(Scenario::symmetric_interval(1.0 - conf, g, n, s));
  return out;
}

double interval_s(const Scenario& scn) {
  return scn.b / std::sqrt(scn.s_xx);
}

}  // namespace

SolveCache::Key SolveCache::key(const Scenario& scn, const BandForm& form) {
  return {int(form.name), form.symmetric, scn.alpha, scn.gamma, scn.n,
          scn.a, scn.b, scn.s_xx};
}

const Solution& SolveCache::get(const Scenario& scn, const BandForm& form) {
  const Key k = key(scn, form);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = solved_.find(k); it != solved_.end()) return it->second;
    if (auto it = failed_.find(k); it != failed_.end()) throw NumericError(it->second);
  }
  Solution sol;
  try {
    sol = solve(scn, form, opt_);
  } catch (const std::exception& e) {
    std::lock_guard<std::mutex> lock(mu_);
    failed_.emplace(k, e.what());
    throw;
  }
  std::lock_guard<std::mutex> lock(mu_);
  return solved_.emplace(k, sol).first->second;
}

std::optional<Solution> SolveCache::find(const Scenario& scn, const BandForm& form) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = solved_.find(key(scn, form)); it != solved_.end()) return it->second;
  return std::nullopt;
}

void SolveCache::prefetch(const std::vector<std::pair<Scenario, BandForm>>& jobs) {
  // Asymmetric solves dominate; start them first for better load balance.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return !jobs[l].second.symmetric && jobs[r].second.symmetric;
  });
  const long count = long(order.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    const auto& [scn, form] = jobs[order[std::size_t(i)]];
    try {
      get(scn, form);
    } catch (const std::exception&) {
      // recorded in failed_
    }
  }
}

std::size_t SolveCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return solved_.size();
}

RatioRecord ratio(const BandForm& band_a, const BandForm& band_b, const Scenario& scn,
                  SolveCache& cache) {
  RatioRecord rec;
  rec.confidence = 1.0 - scn.alpha;
  rec.gamma = scn.gamma;
  rec.n = scn.n;
  rec.s = interval_s(scn);
  rec.numerator = band_b;
  rec.denominator = band_a;
  rec.phi_I = phi_type1(scn);
  rec.phi_II = phi_type2(scn);
  double area_a = 0.0, area_b = 0.0;
  try {
    area_a = cache.get(scn, band_a).area.area_ct;
  } catch (const std::exception& e) {
    rec.error = band_a.label() + ": " + e.what();
    return rec;
  }
  try {
    area_b = cache.get(scn, band_b).area.area_ct;
  } catch (const std::exception& e) {
    rec.error = band_b.label() + ": " + e.what();
    return rec;
  }
  rec.r = band_a == band_b ? 1.0 : area_b / area_a;
  return rec;
}

std::optional<TableId> parse_table_id(std::string_view s) {
  std::string t(s);
  for (char& ch : t) ch = char(std::toupper(static_cast<unsigned char>(ch)));
  if (t == "T2" || t == "2") return TableId::T2;
  if (t == "T3" || t == "3") return TableId::T3;
  if (t == "T4" || t == "4") return TableId::T4;
  if (t == "T5" || t == "5") return TableId::T5;
  return std::nullopt;
}

TableLayout table_layout(TableId id) {
  using enum BandName;
  switch (id) {
    case TableId::T2:
      return {{sym(SB), sym(TBU), sym(TBE), asym(SB), asym(TBU)}, asym(TBE)};
    case TableId::T3:
      return {{sym(V), sym(UV), sym(TT), asym(V), asym(TT)}, asym(UV)};
    case TableId::T4:
      return {{sym(TBE), asym(TBE), sym(UV)}, asym(UV)};
    case TableId::T5:
      return {{sym(SB), sym(TBU), sym(TBE), sym(V), sym(UV), sym(TT), asym(SB),
               asym(TBU), asym(TBE), asym(V), asym(UV), asym(TT)},
              asym(UV)};
  }
  throw DomainError("unknown table id");
}

std::vector<RatioRecord> table(TableId id, SolveCache& cache, const TableGrid& grid) {
  if (id == TableId::T5) {
    throw DataError("table T5 needs a fitted scenario; use scenario_table");
  }
  const TableLayout layout = table_layout(id);
  const std::vector<Scenario> rows = grid_scenarios(grid);
  std::vector<std::pair<Scenario, BandForm>> jobs;
  for (const auto& scn : rows) {
    jobs.emplace_back(scn, layout.reference);
    for (const auto& f : layout.columns) jobs.emplace_back(scn, f);
  }
  cache.prefetch(jobs);
  std::vector<RatioRecord> out;
  for (const auto& scn : rows)
    for (const auto& f : layout.columns) out.push_back(ratio(layout.reference, f, scn, cache));
  return out;
}

std::vector<RatioRecord> scenario_table(const Scenario& scn, SolveCache& cache) {
  const TableLayout layout = table_layout(TableId::T5);
  std::vector<std::pair<Scenario, BandForm>> jobs;
  for (const auto& f : layout.columns) jobs.emplace_back(scn, f);
  cache.prefetch(jobs);
  std::vector<RatioRecord> out;
  for (const auto& f : layout.columns) out.push_back(ratio(layout.reference, f, scn, cache));
  return out;
}

double s_for_type1_angle(double phi, int n) {
  if (!(phi > 0.0 && phi < std::numbers::pi)) {
    throw DomainError("s_for_type1_angle: phi must lie in (0, pi)");
  }
  if (n < 3) throw DomainError("s_for_type1_angle: n must be >= 3");
  return std::tan(0.5 * phi) / std::sqrt(double(n));
}

std::vector<CurvePoint> ratio_curve(double gamma, int n, double alpha,
                                    std::vector<double> phi_grid, SolveCache& cache) {
  std::sort(phi_grid.begin(), phi_grid.end());
  phi_grid.erase(std::unique(phi_grid.begin(), phi_grid.end()), phi_grid.end());
  std::vector<Scenario> scns;
  std::vector<std::pair<Scenario, BandForm>> jobs;
  for (double phi : phi_grid) {
    const Scenario scn =
        Scenario::symmetric_interval(alpha, gamma, n, s_for_type1_angle(phi, n));
    scns.push_back(scn);
    jobs.emplace_back(scn, asym(BandName::UV));
    jobs.emplace_back(scn, asym(BandName::TBE));
  }
  cache.prefetch(jobs);
  std::vector<CurvePoint> out;
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    const RatioRecord rec =
        ratio(asym(BandName::UV), asym(BandName::TBE), scns[i], cache);
    out.push_back({phi_grid[i], rec.s, rec.r, rec.error});
  }
  return out;
}

double phi_type1(const Scenario& scn) { return fan_angle(scn, 0.0); }

double phi_type2(const Scenario& scn, BandName name) {
  return fan_angle(scn, xi_theta(name, scn.nu()).xi);
}

}  // namespace macs
