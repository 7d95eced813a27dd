#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "macs/band_forms.hpp"
#include "macs/geometry.hpp"
#include "macs/solver.hpp"

namespace macs {

struct RatioRecord {
  double confidence = 0.0;  // 1 - alpha
  double gamma = 0.0;
  int n = 0;
  double s = 0.0;
  double phi_I = 0.0;
  double phi_II = 0.0;
  BandForm numerator;
  BandForm denominator;
  std::optional<double> r;  // empty when a solve failed
  std::string error;
};

/// Memo of converged solves keyed by (form, alpha, gamma, n, a, b, S_xx).
class SolveCache {
 public:
  explicit SolveCache(SolverOptions opt = {}) : opt_(opt) {}

  /// Solves or returns the stored solution. Safe for concurrent use.
  const Solution& get(const Scenario& scn, const BandForm& form);
  std::optional<Solution> find(const Scenario& scn, const BandForm& form) const;
  /// Solves all pairs, in parallel across OpenMP threads. Failures are
  /// recorded and rethrown by get().
  void prefetch(const std::vector<std::pair<Scenario, BandForm>>& jobs);
  std::size_t size() const;
  const SolverOptions& options() const { return opt_; }

 private:
  using Key = std::tuple<int, bool, double, double, int, double, double, double>;
  static Key key(const Scenario& scn, const BandForm& form);

  SolverOptions opt_;
  mutable std::mutex mu_;
  std::map<Key, Solution> solved_;
  std::map<Key, std::string> failed_;
};

/// r = Area(C_B(T*)) / Area(C_A(T*)); r > 1 means A is better.
RatioRecord ratio(const BandForm& band_a, const BandForm& band_b,
                  const Scenario& scn, SolveCache& cache);

enum class TableId { T2, T3, T4, T5 };
std::optional<TableId> parse_table_id(std::string_view s);

/// Band columns and reference band of a table, in printed order.
struct TableLayout {
  std::vector<BandForm> columns;
  BandForm reference;
};
TableLayout table_layout(TableId id);

struct TableGrid {
  std::vector<double> confidence = {0.9, 0.99};
  std::vector<double> gamma = {0.75, 0.95};
  std::vector<int> n = {10, 100};
  std::vector<double> s = {0.1, 1.0, 10.0};
};

/// One record per (row, column), rows in printed order.
std::vector<RatioRecord> table(TableId id, SolveCache& cache,
                               const TableGrid& grid = {});

/// Table 5 analogue for a single scenario (all twelve bands over UVa).
std::vector<RatioRecord> scenario_table(const Scenario& scn, SolveCache& cache);

/// s = tan(phi / 2) / sqrt(n): the half-width giving fan angle phi for a
/// Type I band on a symmetric interval.
double s_for_type1_angle(double phi, int n);

struct CurvePoint {
  double phi = 0.0;
  double s = 0.0;
  std::optional<double> r;  // TBEa over UVa
  std::string error;
};

/// TBEa/UVa ratio curve, sorted by phi, duplicates removed.
std::vector<CurvePoint> ratio_curve(double gamma, int n, double alpha,
                                    std::vector<double> phi_grid,
                                    SolveCache& cache);

/// phi for Type I and the UV form at the given scenario.
double phi_type1(const Scenario& scn);
double phi_type2(const Scenario& scn, BandName name = BandName::UV);

}  // namespace macs
