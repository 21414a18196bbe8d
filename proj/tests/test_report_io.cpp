#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ektau/report_io.hpp"

using namespace ektau;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cols(line);
    std::string cell;
    while (std::getline(cols, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const SuiteResult& default_suite() {
  static const SuiteResult result = run_verification_suite();
  return result;
}

}  // namespace

TEST_CASE("sample CSV of a parabolic helicoid") {
  std::ostringstream out;
  write_sample_csv(out, make_P(0.25, -1.0, 0.0).patch, {20, 20});
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 401);
  CHECK(rows[0] == std::vector<std::string>{"u", "v", "H", "K", "nu", "q", "k1", "k2", "T1", "T2"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 10);
    CHECK(std::abs(std::stod(rows[i][4])) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(std::stod(rows[i][2]) == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("sample CSV: slice curvature and Nil cylinder q") {
  std::ostringstream slice;
  write_sample_csv(slice, make_slice(1.0, 0.0).patch, {5, 5});
  for (const auto& row : parse_csv(slice.str())) {
    if (row[0] == "u") continue;
    CHECK(std::stod(row[3]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  std::ostringstream cyl;
  write_sample_csv(cyl, make_cylinder(0.0, 0.5, 0.0).patch, {5, 5});
  for (const auto& row : parse_csv(cyl.str())) {
    if (row[0] == "u") continue;
    CHECK(std::abs(std::stod(row[5])) < 1e-12);
  }
}

TEST_CASE("parallel table") {
  SUBCASE("geodesic cylinder of H2 x R") {
    const auto rows = parallel_table(make_cylinder(-1.0, 0.0, 0.0).patch, {8, 8}, {0.0, 0.5, 1.0});
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(rows[0].h_closed_form) < 1e-14);
    CHECK(rows[2].h_closed_form == doctest::Approx(-0.380797).epsilon(1e-6));
    CHECK(std::abs(rows[2].h_closed_form - rows[2].h_direct) < 1e-4);
    CHECK(rows[2].status == "ok");
    CHECK(rows[2].spread < 1e-12);
  }
  SUBCASE("r = 0 reproduces H") {
    const auto rows = parallel_table(make_P(0.25, -1.0, 0.0).patch, {5, 5}, {0.0});
    CHECK(rows[0].h_closed_form == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(rows[0].h_direct == doctest::Approx(0.25).epsilon(1e-6));
  }
  SUBCASE("focal radius in S2 x R") {
    const auto rows = parallel_table(make_cylinder(1.0, 0.0, 0.0).patch, {5, 5}, {1.5, std::numbers::pi / 2});
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status == "focal");
    CHECK(std::isnan(rows[1].h_closed_form));
    std::ostringstream out;
    write_parallel_csv(out, rows);
    const auto csv = parse_csv(out.str());
    CHECK(csv[0] == std::vector<std::string>{"r", "h_closed_form", "h_direct", "detB", "spread_over_base_points",
                                             "status"});
    CHECK(csv[2].back() == "focal");
  }
}

TEST_CASE("default verification suite") {
  const SuiteResult& result = default_suite();
  CHECK(result.all_pass);
  CHECK(result.checks.size() >= 25);
  std::set<std::string> names;
  for (const VerificationReport& r : result.checks) {
    CAPTURE(r.name);
    CHECK(r.pass);
    CHECK(names.insert(r.name).second);
  }
}

TEST_CASE("verification JSON layout") {
  const auto doc = nlohmann::json::parse(verification_json(default_suite()));
  CHECK(doc["all_pass"] == true);
  const auto& first = doc["checks"].at(0);
  for (const char* key : {"name", "params", "max_residual", "tolerance", "pass", "expect", "samples"}) {
    CHECK(first.contains(key));
  }
  bool negative_control = false;
  for (const auto& entry : doc["checks"]) {
    if (entry["expect"] == "fail") {
      negative_control = true;
      CHECK(entry["max_residual"].get<double>() > 1e-3);
    }
  }
  CHECK(negative_control);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  VerificationOptions options;
  options.seed = 5;
  options.only = "jacobi_closed_form";
  const std::string a = verification_json(run_verification_suite(options));
  const std::string b = verification_json(run_verification_suite(options));
  CHECK(a == b);
}

TEST_CASE("selection by name and family") {
  VerificationOptions options;
  options.only = "check_cpc";
  options.family = Family::S;
  const SuiteResult s = run_verification_suite(options);
  REQUIRE_FALSE(s.checks.empty());
  CHECK_FALSE(s.all_pass);
  for (const VerificationReport& r : s.checks) {
    CHECK(r.family == "S");
    CHECK_FALSE(r.expect_fail);
  }

  options.family = Family::P;
  CHECK(run_verification_suite(options).all_pass);

  options.only = "no_such_check";
  options.family.reset();
  const SuiteResult none = run_verification_suite(options);
  CHECK(none.checks.empty());
  CHECK_FALSE(none.all_pass);
}
