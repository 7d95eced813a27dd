#include "macs/reports.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>
#include <iomanip>

namespace macs {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

bool numeric_cell(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

std::string round_half_even(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Decide ties on the shortest decimal text, not the binary value.
  const std::string wide = fixed(v * scale, 6);
  double scaled = std::strtod(wide.c_str(), nullptr);
  const int old_mode = std::fegetround();
  std::fesetround(FE_TONEAREST);
  scaled = std::nearbyint(scaled);
  std::fesetround(old_mode);
  std::string s = fixed(scaled / scale, decimals);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string six_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

Json Manifest::to_json() const {
  Json j;
  j["tool"] = "macs";
  j["version"] = std::string(kToolVersion);
  j["command"] = command;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["tolerances"] = tolerances;
  j["grid"] = grid;
  return j;
}

Json solver_tolerances(const SolverOptions& opt) {
  Json j;
  j["coverage_tol"] = opt.coverage_tol;
  j["c_tol"] = opt.c_tol;
  j["inner_quadrature_rel_tol"] = opt.coverage.inner_tol;
  j["outer_quadrature_rel_tol"] = opt.coverage.outer_tol;
  j["c_bracket"] = {opt.c_lower, opt.c_upper};
  j["scan"] = {{"points", opt.scan_points}, {"lo", opt.scan_lo}, {"hi", opt.scan_hi}};
  return j;
}

Json grid_json(const TableGrid& grid) {
  Json j;
  j["confidence"] = grid.confidence;
  j["gamma"] = grid.gamma;
  j["n"] = grid.n;
  j["s"] = grid.s;
  return j;
}

TableView ratio_table_view(const std::vector<RatioRecord>& records,
                           const TableLayout& layout) {
  TableView v;
  v.header = {"confidence", "gamma", "n", "s", "phi_I", "phi_II"};
  for (const auto& f : layout.columns) v.header.push_back(f.label());
  const std::size_t width = layout.columns.size();
  for (std::size_t i = 0; i + width <= records.size(); i += width) {
    const RatioRecord& first = records[i];
    std::vector<std::string> row = {six_digits(first.confidence), six_digits(first.gamma),
                                    std::to_string(first.n), six_digits(first.s),
                                    round_half_even(first.phi_I),
                                    round_half_even(first.phi_II)};
    for (std::size_t k = 0; k < width; ++k) {
      const RatioRecord& rec = records[i + k];
      row.push_back(rec.r ? round_half_even(*rec.r) : std::string());
      if (!rec.error.empty()) {
        v.notes.push_back(rec.numerator.label() + " at (" + row[0] + ", " + row[1] +
                          ", " + row[2] + ", " + row[3] + "): " + rec.error);
      }
    }
    v.rows.push_back(std::move(row));
  }
  return v;
}

TableView curve_view(const std::vector<CurvePoint>& points) {
  TableView v;
  v.header = {"phi", "s", "r", "below_one"};
  for (const auto& p : points) {
    v.rows.push_back({six_digits(p.phi), six_digits(p.s),
                      p.r ? six_digits(*p.r) : std::string(),
                      p.r ? (*p.r < 1.0 ? "1" : "0") : std::string()});
    if (!p.error.empty()) v.notes.push_back("phi " + six_digits(p.phi) + ": " + p.error);
  }
  return v;
}

TableView solution_view(const Scenario& scn, const BandForm& form, const Solution& sol) {
  TableView v;
  v.header = {"band", "alpha", "gamma", "n", "a", "b", "s_xx", "c1", "c2",
              "coverage", "area_rv", "area_ct", "phi", "case"};
  v.rows.push_back({form.label(), six_digits(scn.alpha), six_digits(scn.gamma),
                    std::to_string(scn.n), six_digits(scn.a), six_digits(scn.b),
                    six_digits(scn.s_xx), six_digits(sol.cc.c1), six_digits(sol.cc.c2),
                    six_digits(sol.coverage), six_digits(sol.area.area_rv),
                    six_digits(sol.area.area_ct), six_digits(sol.geometry.phi),
                    std::string(to_string(sol.geometry.case_tag))});
  return v;
}

void write_csv(std::ostream& out, const TableView& view, const Manifest& m) {
  out << "# manifest: " << m.to_json().dump() << "\r\n";
  for (std::size_t i = 0; i < view.header.size(); ++i) {
    out << (i ? "," : "") << csv_field(view.header[i]);
  }
  out << "\r\n";
  for (const auto& row : view.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\r\n";
  }
  for (const auto& note : view.notes) out << "# note: " << note << "\r\n";
}

Json view_json(const TableView& view, const Manifest& m) {
  Json j;
  j["manifest"] = m.to_json();
  j["columns"] = view.header;
  j["rows"] = Json::array();
  for (const auto& row : view.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size() && i < view.header.size(); ++i) {
      double x = 0.0;
      if (row[i].empty()) {
        r[view.header[i]] = nullptr;
      } else if (numeric_cell(row[i], x)) {
        const bool integral = row[i].find_first_not_of("-0123456789") == std::string::npos;
        if (integral) {
          r[view.header[i]] = static_cast<long long>(x);
        } else {
          r[view.header[i]] = x;
        }
      } else {
        r[view.header[i]] = row[i];
      }
    }
    j["rows"].push_back(std::move(r));
  }
  j["notes"] = view.notes;
  return j;
}

void write_text(std::ostream& out, const TableView& view) {
  std::vector<std::size_t> w(view.header.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = view.header[i].size();
  for (const auto& row : view.rows)
    for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < w.size(); ++i) {
      out << (i ? "  " : "") << std::setw(int(w[i])) << cells[i];
    }
    out << '\n';
  };
  line(view.header);
  for (const auto& row : view.rows) line(row);
  for (const auto& note : view.notes) out << "note: " << note << '\n';
}

}  // namespace macs
