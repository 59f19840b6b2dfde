/* Copyright 2026 darboux developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "darboux/scenario.hpp"

using namespace darboux;

namespace {

template <typename Fn> std::optional<ErrorCode> thrown_code(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return std::nullopt;
}

std::optional<ErrorCode> parse_code(const std::string &text) {
  return thrown_code([&] { parse_scenario_text(text); });
}

} // namespace

TEST_CASE("a full config round-trips through the parser") {
  ScenarioConfig c = parse_scenario_text(
      "# background and one edit\n"
      "interval = left_half\n"
      "omega_term = full_right 1.0 1.25\n"
      "edit = full_right 2 1 add\n"
      "grid_n = 801\n"
      "truncation = 6\n"
      "k = 0.5\n"
      "k = 1+0.5i\n"
      "out = scenario_out\n"
      "format = json\n");
  REQUIRE(c.interval.has_value());
  CHECK(*c.interval == IntervalKind::LEFT_HALF);
  REQUIRE(c.omega_terms.size() == 1);
  CHECK(c.omega_terms[0].kappa == doctest::Approx(1.0));
  CHECK(c.omega_terms[0].c == doctest::Approx(1.25));
  CHECK(c.omega_terms[0].sign == +1);
  CHECK(c.omega_terms[0].flavor == BoundStateFlavor::FULL_RIGHT);
  REQUIRE(c.edits.size() == 1);
  CHECK(c.edits[0].kappa == doctest::Approx(2.0));
  CHECK(c.grid_n == 801);
  CHECK(c.truncation == doctest::Approx(6.0));
  REQUIRE(c.k_list.size() == 2);
  CHECK(c.k_list[1] == std::complex<double>(1.0, 0.5));
  CHECK(c.out_dir == "scenario_out");
  CHECK(c.format == "json");
  CHECK_FALSE(c.verify_only);
}

TEST_CASE("catalog configs carry example id and parameter overrides") {
  ScenarioConfig c = parse_scenario_text(
      "example = EX5_5\n"
      "param.kappa2 = 3.0\n"
      "verify_only = true\n");
  CHECK(c.example_id == "EX5_5");
  REQUIRE(c.example_params.count("kappa2") == 1);
  CHECK(c.example_params.at("kappa2") == doctest::Approx(3.0));
  CHECK(c.verify_only);
}

TEST_CASE("removal edits parse both spellings") {
  ScenarioConfig c = parse_scenario_text(
      "interval = finite_left\n"
      "edit = dirichlet 1 1 remove\n"
      "edit = dirichlet 2 1 -1\n");
  REQUIRE(c.edits.size() == 2);
  CHECK(c.edits[0].sign == -1);
  CHECK(c.edits[1].sign == -1);
}

TEST_CASE("malformed configs are rejected as config errors") {
  CHECK(parse_code("weird = 1\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("interval = diagonal\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("edit = full_left\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("edit = full_left 1 1 maybe\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("edit = full_left 1 1 add junk\n") ==
        ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("edit = sideways 1 1\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("grid_n = 4\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("grid_n = many\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("truncation = 0\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("format = xml\n") == ErrorCode::CONFIG_ERROR);
  CHECK(parse_code("k = abc\n") == ErrorCode::CONFIG_ERROR);
}

TEST_CASE("wavenumbers parse and format consistently") {
  CHECK(parse_wavenumber("0.5") == std::complex<double>(0.5, 0.0));
  CHECK(parse_wavenumber("2") == std::complex<double>(2.0, 0.0));
  CHECK(parse_wavenumber("-1.5") == std::complex<double>(-1.5, 0.0));
  CHECK(parse_wavenumber("1.3i") == std::complex<double>(0.0, 1.3));
  CHECK(parse_wavenumber("1+0.5i") == std::complex<double>(1.0, 0.5));
  CHECK(parse_wavenumber("2-i") == std::complex<double>(2.0, -1.0));

  CHECK(format_k_label({0.5, 0.0}) == "0.5");
  CHECK(format_k_label({2.0, 0.0}) == "2");
  CHECK(format_k_label({0.0, 1.3}) == "1.3i");
  CHECK(format_k_label({1.0, 0.5}) == "1+0.5i");

  for (std::complex<double> k :
       {std::complex<double>(0.5, 0.0), {2.0, 0.0}, {0.0, 1.3}, {1.0, 0.5},
        {2.0, -1.0}, {-0.75, 0.25}}) {
    CHECK(parse_wavenumber(format_k_label(k)) == k);
  }
  CHECK(thrown_code([] { parse_wavenumber("abc"); }) ==
        ErrorCode::CONFIG_ERROR);
  CHECK(thrown_code([] { parse_wavenumber("1+2j"); }) ==
        ErrorCode::CONFIG_ERROR);
}

TEST_CASE("exit codes split input errors from numerical breakdown") {
  CHECK(exit_code_for(ErrorCode::CONFIG_ERROR) == 2);
  CHECK(exit_code_for(ErrorCode::UNKNOWN_ID) == 2);
  CHECK(exit_code_for(ErrorCode::DEGENERATE_PARAMS) == 2);
  CHECK(exit_code_for(ErrorCode::BAD_POINT_COUNT) == 2);
  CHECK(exit_code_for(ErrorCode::KIND_MISMATCH) == 2);
  CHECK(exit_code_for(ErrorCode::SINGULAR_SYSTEM) == 3);
  CHECK(exit_code_for(ErrorCode::NONPOSITIVE_GAMMA) == 3);
  CHECK(exit_code_for(ErrorCode::NONCONVERGENT_TAIL) == 3);
  CHECK(exit_code_for(ErrorCode::ETA_NOT_POSITIVE) == 3);
  CHECK(exit_code_for(ErrorCode::OUT_OF_DOMAIN) == 3);
}

TEST_CASE("sampled residual vanishes for a free plane wave") {
  Grid grid = build_grid(IntervalKind::FINITE_LEFT, 1.0, 101, 8.0);
  RealSamples u(grid.size(), 0.0);
  std::complex<double> k(2.0, 0.0);
  ComplexSamples psi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    psi[i] = std::exp(std::complex<double>(0.0, 2.0 * grid.points[i]));
  }
  CHECK(sampled_schrodinger_residual(psi, u, k, grid) <= 1e-7);

  RealSamples short_u(grid.size() - 1, 0.0);
  CHECK(thrown_code([&] {
          sampled_schrodinger_residual(psi, short_u, k, grid);
        }) == ErrorCode::LENGTH_MISMATCH);
}

TEST_CASE("inconsistent scenario requests are config errors") {
  ScenarioConfig both;
  both.example_id = "EX5_1";
  both.omega_terms.push_back({1.0, 1.0, +1, BoundStateFlavor::FULL_RIGHT});
  CHECK(thrown_code([&] { run_scenario(both); }) == ErrorCode::CONFIG_ERROR);

  ScenarioConfig verify_edit;
  verify_edit.example_id = "EX5_5";
  verify_edit.verify_only = true;
  verify_edit.edits.push_back({2.0, 1.0, +1, BoundStateFlavor::FULL_RIGHT});
  CHECK(thrown_code([&] { run_scenario(verify_edit); }) ==
        ErrorCode::CONFIG_ERROR);

  ScenarioConfig no_interval;
  no_interval.edits.push_back({1.0, 1.0, +1, BoundStateFlavor::DIRICHLET});
  CHECK(thrown_code([&] { run_scenario(no_interval); }) ==
        ErrorCode::CONFIG_ERROR);

  ScenarioConfig mismatch;
  mismatch.interval = IntervalKind::LEFT_HALF;
  mismatch.omega_terms.push_back({1.0, 1.0, +1, BoundStateFlavor::FULL_LEFT});
  mismatch.verify_only = true;
  CHECK(thrown_code([&] { run_scenario(mismatch); }) ==
        ErrorCode::CONFIG_ERROR);

  ScenarioConfig nothing_to_do;
  nothing_to_do.interval = IntervalKind::LEFT_HALF;
  nothing_to_do.omega_terms.push_back(
      {1.0, 1.0, +1, BoundStateFlavor::FULL_RIGHT});
  CHECK(thrown_code([&] { run_scenario(nothing_to_do); }) ==
        ErrorCode::CONFIG_ERROR);

  ScenarioConfig mixed_boundary;
  mixed_boundary.interval = IntervalKind::FINITE_LEFT;
  mixed_boundary.omega_terms.push_back(
      {1.0, 1.0, +1, BoundStateFlavor::DIRICHLET});
  mixed_boundary.edits.push_back(
      {2.0, 1.0, +1, BoundStateFlavor::NON_DIRICHLET});
  CHECK(thrown_code([&] { run_scenario(mixed_boundary); }) ==
        ErrorCode::CONFIG_ERROR);

  ScenarioConfig wrong_interval;
  wrong_interval.example_id = "EX5_5";
  wrong_interval.interval = IntervalKind::FINITE_LEFT;
  wrong_interval.verify_only = true;
  CHECK(thrown_code([&] { run_scenario(wrong_interval); }) ==
        ErrorCode::CONFIG_ERROR);
}

TEST_CASE("a verify-only catalog run passes its checks") {
  ScenarioConfig c;
  c.example_id = "EX5_1";
  c.verify_only = true;
  c.grid_n = 201;
  c.k_list = {std::complex<double>(0.5, 0.0)};
  ScenarioResult r = run_scenario(c);
  CHECK(r.all_pass());
  CHECK(r.u.size() == 201);
  CHECK(r.u_tilde.size() == 201);
  REQUIRE(r.waves.size() == 1);
  CHECK(r.waves[0].label == "0.5");
  // Without edits the perturbed wave is the base wave.
  CHECK(r.waves[0].psi_tilde == r.waves[0].psi);
  CHECK_FALSE(r.checks.empty());
  // The resolved config records the catalog's interval family.
  REQUIRE(r.config.interval.has_value());
  CHECK(*r.config.interval == IntervalKind::LEFT_HALF);
}

TEST_CASE("a raw background verifies without a catalog entry") {
  ScenarioConfig c;
  c.interval = IntervalKind::LEFT_HALF;
  c.omega_terms.push_back({1.0, 1.25, +1, BoundStateFlavor::FULL_RIGHT});
  c.verify_only = true;
  c.grid_n = 201;
  ScenarioResult r = run_scenario(c);
  CHECK(r.all_pass());
}

TEST_CASE("a flat-background edit run produces the report and outputs") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "darboux_scenario_case";
  fs::remove_all(dir);

  ScenarioConfig c;
  c.example_id = "NONDIRICHLET_GEN";
  c.grid_n = 401;
  c.k_list = {std::complex<double>(1.0, 0.0)};
  c.out_dir = dir.string();
  ScenarioResult r = run_scenario(c);
  CHECK(r.all_pass());
  REQUIRE(r.config.edits.size() == 1);
  CHECK(r.config.edits[0].flavor == BoundStateFlavor::NON_DIRICHLET);

  nlohmann::json rep = nlohmann::json::parse(report_json(r));
  CHECK(rep.at("schema_version").get<int>() == 1);
  CHECK(rep.at("all_pass").get<bool>());
  CHECK(rep.at("checks").size() == r.checks.size());
  CHECK(rep.at("grid").at("n").get<int>() == 401);

  write_outputs(r, false);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "potential.csv"));
  CHECK(fs::exists(dir / "wavefunction_1.csv"));

  std::ifstream pot(dir / "potential.csv");
  std::string header;
  std::getline(pot, header);
  CHECK(header == "x,u,u_tilde,delta_u_diag,delta_u_loggamma");
  std::size_t rows = 0;
  for (std::string line; std::getline(pot, line);) {
    if (!line.empty()) {
      ++rows;
    }
  }
  CHECK(rows == 401);

  // report-only mode writes just the report.
  fs::path dir2 = fs::temp_directory_path() / "darboux_scenario_case_verify";
  fs::remove_all(dir2);
  r.config.out_dir = dir2.string();
  write_outputs(r, true);
  CHECK(fs::exists(dir2 / "report.json"));
  CHECK_FALSE(fs::exists(dir2 / "potential.csv"));

  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("json output format writes structured columns") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "darboux_scenario_json";
  fs::remove_all(dir);

  ScenarioConfig c;
  c.example_id = "FULLLINE_RIGHT_GEN";
  c.grid_n = 201;
  c.format = "json";
  c.out_dir = dir.string();
  ScenarioResult r = run_scenario(c);
  CHECK(r.all_pass());
  write_outputs(r, false);
  REQUIRE(fs::exists(dir / "potential.json"));

  std::ifstream in(dir / "potential.json");
  nlohmann::json pot = nlohmann::json::parse(in);
  CHECK(pot.at("x").size() == 201);
  CHECK(pot.at("u_tilde").size() == 201);

  fs::remove_all(dir);
}

TEST_CASE("load_scenario_file parses the checked-in configs") {
  // ctest runs from the build tree; the repo sits one level up.
  namespace fs = std::filesystem;
  fs::path cfg = fs::path("..") / "tests" / "data" / "nondirichlet_flat.cfg";
  if (!fs::exists(cfg)) {
    cfg = fs::path("tests") / "data" / "nondirichlet_flat.cfg";
  }
  REQUIRE(fs::exists(cfg));
  ScenarioConfig c = load_scenario_file(cfg.string());
  REQUIRE(c.interval.has_value());
  CHECK(*c.interval == IntervalKind::FINITE_LEFT);
  REQUIRE(c.edits.size() == 1);
  CHECK(c.edits[0].flavor == BoundStateFlavor::NON_DIRICHLET);
  CHECK(c.grid_n == 801);
  CHECK(thrown_code([] { load_scenario_file("no_such_file.cfg"); }) ==
        ErrorCode::CONFIG_ERROR);
}
