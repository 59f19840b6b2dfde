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

#include "darboux/reference_examples.hpp"
#include "darboux/scenario.hpp"

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
  std::string out;
  std::string format;
  int grid_n = 0;
  double truncation = 0.0;
  std::vector<std::string> k_values;
  CLI::Option *out_opt = nullptr;
  CLI::Option *format_opt = nullptr;
  CLI::Option *grid_opt = nullptr;
  CLI::Option *trunc_opt = nullptr;
};

void attach_common(CLI::App *cmd, CommonOpts &opts) {
  opts.out_opt =
      cmd->add_option("--out", opts.out, "output directory (overrides the config)");
  opts.format_opt =
      cmd->add_option("--format", opts.format, "profile format: csv or json")
          ->check(CLI::IsMember({"csv", "json"}));
  opts.grid_opt =
      cmd->add_option("--grid-n", opts.grid_n, "output grid point count (odd)");
  opts.trunc_opt = cmd->add_option(
      "--truncation", opts.truncation,
      "window half-width, or right endpoint on the finite interval");
  cmd->add_option("-k,--k", opts.k_values,
                  "wavenumber to export, e.g. 0.5 or 1.3i or 1+0.5i "
                  "(repeatable, replaces the config's list)");
}

void apply_common(const CommonOpts &opts, darboux::ScenarioConfig &config) {
  if (opts.out_opt->count() > 0) {
    config.out_dir = opts.out;
  }
  if (opts.format_opt->count() > 0) {
    config.format = opts.format;
  }
  if (opts.grid_opt->count() > 0) {
    config.grid_n = opts.grid_n;
  }
  if (opts.trunc_opt->count() > 0) {
    config.truncation = opts.truncation;
  }
  if (!opts.k_values.empty()) {
    config.k_list.clear();
    for (const std::string &text : opts.k_values) {
      config.k_list.push_back(darboux::parse_wavenumber(text));
    }
  }
}

double parse_param_value(const std::string &token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception &) {
    used = std::string::npos;
  }
  if (used != token.size()) {
    throw darboux::Error(darboux::ErrorCode::CONFIG_ERROR,
                         "cannot read '" + token + "' as a parameter value");
  }
  return v;
}

int finish(const darboux::ScenarioResult &result, bool report_only) {
  darboux::write_outputs(result, report_only);
  std::size_t failed = 0;
  for (const auto &check : result.checks) {
    std::printf("[%s] %-46s value %10.3e  tolerance %9.3e\n",
                check.pass ? "PASS" : "FAIL", check.name.c_str(), check.value,
                check.tolerance);
    if (!check.pass) {
      ++failed;
    }
  }
  if (failed == 0) {
    std::printf("%zu checks passed; outputs in %s\n", result.checks.size(),
                result.config.out_dir.c_str());
    return 0;
  }
  std::printf("%zu of %zu checks FAILED; report in %s\n", failed,
              result.checks.size(), result.config.out_dir.c_str());
  return 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "generalized Darboux transformations: solve the fundamental integral "
      "equation for a data kernel, add or remove bound states, and export "
      "the perturbed potential and wavefunctions"};
  app.require_subcommand(1);

  CLI::App *list_cmd =
      app.add_subcommand("list", "show the built-in reference catalog");

  std::string run_path;
  CommonOpts run_opts;
  CLI::App *run_cmd =
      app.add_subcommand("run", "run a scenario config and write profiles");
  run_cmd->add_option("config", run_path, "scenario config file")->required();
  attach_common(run_cmd, run_opts);

  std::string verify_path;
  CommonOpts verify_opts;
  CLI::App *verify_cmd = app.add_subcommand(
      "verify", "run a scenario's checks and write report.json only");
  verify_cmd->add_option("config", verify_path, "scenario config file")
      ->required();
  attach_common(verify_cmd, verify_opts);

  std::string example_id;
  std::vector<std::string> param_values;
  CommonOpts example_opts;
  CLI::App *example_cmd =
      app.add_subcommand("example", "run a reference catalog entry");
  example_cmd->add_option("id", example_id, "catalog id, see 'list'")
      ->required();
  example_cmd->add_option(
      "--param", param_values,
      "override a parameter, e.g. --param kappa1=1.5 (repeatable)");
  attach_common(example_cmd, example_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      std::printf("%-18s %-12s %-5s %s\n", "ID", "INTERVAL", "EDIT",
                  "SUMMARY");
      for (const auto &info : darboux::example_catalog()) {
        std::printf("%-18s %-12s %-5s %s\n", info.id.c_str(),
                    darboux::interval_kind_name(info.kind),
                    info.has_edit ? "yes" : "-", info.summary.c_str());
      }
      return 0;
    }
    if (run_cmd->parsed()) {
      darboux::ScenarioConfig config = darboux::load_scenario_file(run_path);
      apply_common(run_opts, config);
      darboux::ScenarioResult result = darboux::run_scenario(config);
      return finish(result, result.config.verify_only);
    }
    if (verify_cmd->parsed()) {
      darboux::ScenarioConfig config =
          darboux::load_scenario_file(verify_path);
      apply_common(verify_opts, config);
      darboux::ScenarioResult result = darboux::run_scenario(config);
      return finish(result, true);
    }
    darboux::ScenarioConfig config;
    config.example_id = example_id;
    for (const std::string &kv : param_values) {
      std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
        throw darboux::Error(darboux::ErrorCode::CONFIG_ERROR,
                             "--param needs key=value, got '" + kv + "'");
      }
      config.example_params[kv.substr(0, eq)] =
          parse_param_value(kv.substr(eq + 1));
    }
    config.k_list = {{0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    config.out_dir = "out_" + example_id;
    for (const auto &info : darboux::example_catalog()) {
      if (info.id == example_id && !info.has_edit) {
        config.verify_only = true;
      }
    }
    apply_common(example_opts, config);
    darboux::ScenarioResult result = darboux::run_scenario(config);
    return finish(result, false);
  } catch (const darboux::Error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return darboux::exit_code_for(e.code());
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
