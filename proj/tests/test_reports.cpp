#include "doctest.h"

#include <sstream>

#include "macs/reports.hpp"

using namespace macs;

TEST_CASE("round half to even at three decimals") {
  CHECK(round_half_even(1.0385) == "1.038");
  CHECK(round_half_even(1.0375) == "1.038");
  CHECK(round_half_even(1.0384999) == "1.038");
  CHECK(round_half_even(1.0386) == "1.039");
  CHECK(round_half_even(2.0) == "2.000");
  CHECK(round_half_even(-0.0004) == "0.000");
  CHECK(round_half_even(0.99615, 4) == "0.9962");
  CHECK(round_half_even(0.99625, 4) == "0.9962");
}

TEST_CASE("six significant digits") {
  CHECK(six_digits(3.14159265) == "3.14159");
  CHECK(six_digits(1234567.0) == "1.23457e+06");
  CHECK(six_digits(0.5) == "0.5");
}

TEST_CASE("CSV quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("CSV and JSON emission") {
  TableView v;
  v.header = {"band", "r"};
  v.rows = {{"SB", "1.038"}, {"TBE, sym", ""}};
  v.notes = {"TBE failed"};
  Manifest m;
  m.command = "table --id T2";
  m.seed = 42;
  m.tolerances = {{"coverage_tol", 1e-6}};

  std::ostringstream csv;
  write_csv(csv, v, m);
  const std::string text = csv.str();
  CHECK(text.rfind("# manifest: {\"tool\":\"macs\",\"version\":", 0) == 0);
  CHECK(text.find("band,r\r\nSB,1.038\r\n\"TBE, sym\",\r\n# note: TBE failed\r\n") != std::string::npos);

  const Json j = view_json(v, m);
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"manifest", "columns", "rows", "notes"});
  CHECK(j["rows"][0]["r"].get<double>() == doctest::Approx(1.038));
  CHECK(j["rows"][1]["r"].is_null());
  CHECK(j["rows"][1]["band"] == "TBE, sym");
  CHECK(j["manifest"]["seed"] == 42);
  std::vector<std::string> mkeys;
  for (const auto& [k, _] : j["manifest"].items()) mkeys.push_back(k);
  CHECK(mkeys == std::vector<std::string>{"tool", "version", "command", "seed", "tolerances", "grid"});
}

TEST_CASE("integer cells stay integers in JSON") {
  TableView v;
  v.header = {"n", "a", "c1"};
  v.rows = {{"10", "-1", "3.5396"}};
  const Json j = view_json(v, Manifest{});
  CHECK(j["rows"][0]["n"].is_number_integer());
  CHECK(j["rows"][0]["a"] == -1);
  CHECK(j["rows"][0]["c1"].is_number_float());
}

TEST_CASE("ratio table view is wide and ordered") {
  TableLayout layout{{{BandName::SB, true}, {BandName::TBE, true}}, {BandName::TBE, false}};
  RatioRecord a;
  a.confidence = 0.9;
  a.gamma = 0.75;
  a.n = 10;
  a.s = 0.1;
  a.phi_I = 0.6129;
  a.phi_II = 0.5431;
  a.numerator = {BandName::SB, true};
  a.r = 1.0384;
  RatioRecord b = a;
  b.numerator = {BandName::TBE, true};
  b.r.reset();
  b.error = "TBE: failed";
  const TableView v = ratio_table_view({a, b}, layout);
  CHECK(v.header == std::vector<std::string>{"confidence", "gamma", "n", "s", "phi_I", "phi_II", "SB", "TBE"});
  REQUIRE(v.rows.size() == 1);
  CHECK(v.rows[0] == std::vector<std::string>{"0.9", "0.75", "10", "0.1", "0.613", "0.543", "1.038", ""});
  CHECK(v.notes.size() == 1);
}
