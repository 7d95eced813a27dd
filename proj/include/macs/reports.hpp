#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "macs/comparison.hpp"
#include "macs/solver.hpp"

namespace macs {

inline constexpr std::string_view kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Fixed-point text rounded half-to-even at `decimals` places.
std::string round_half_even(double v, int decimals = 3);

/// Six significant digits, as used for raw numeric output.
std::string six_digits(double v);

/// RFC-4180 quoting when the field needs it.
std::string csv_field(std::string_view s);

struct Manifest {
  std::string command;
  std::optional<std::uint64_t> seed;
  Json tolerances = Json::object();
  Json grid = Json::object();

  Json to_json() const;
};

Json solver_tolerances(const SolverOptions& opt);
Json grid_json(const TableGrid& grid);

/// Rows of strings under a fixed header. Empty cells mark failed solves.
struct TableView {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

/// Wide view: one row per scenario, one ratio column per band in
/// layout order, values at 3 decimals.
TableView ratio_table_view(const std::vector<RatioRecord>& records,
                           const TableLayout& layout);
TableView curve_view(const std::vector<CurvePoint>& points);
TableView solution_view(const Scenario& scn, const BandForm& form,
                        const Solution& sol);

/// CSV with a leading '# manifest: {...}' comment line and CRLF endings.
void write_csv(std::ostream& out, const TableView& view, const Manifest& m);

/// {"manifest": ..., "columns": [...], "rows": [{...}], "notes": [...]}
/// Numeric-looking cells are emitted as numbers, empty cells as null.
Json view_json(const TableView& view, const Manifest& m);

/// Aligned plain-text rendering for terminals.
void write_text(std::ostream& out, const TableView& view);

}  // namespace macs
