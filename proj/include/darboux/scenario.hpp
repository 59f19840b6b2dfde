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

#pragma once

#include "darboux/darboux.hpp"
#include "darboux/reference_examples.hpp"
#include "darboux/schrodinger.hpp"

#include <optional>
#include <string>
#include <vector>

namespace darboux {

/* Scenario front end: one flat key = value config describes an unperturbed
 * problem (a catalog entry or a list of separable kernel terms), a set of
 * bound-state edits, a sample grid, and the wavenumbers to export. Running
 * a scenario produces the perturbed potential and wavefunctions plus a
 * report of self-consistency checks.
 *
 * Recognized keys, one per line, '#' starts a comment:
 *
 *   interval    = right_half | left_half | finite_left
 *   example     = catalog id (EX5_1 .. EX5_9, *_GEN)
 *   param.<p>   = value            overrides a catalog parameter
 *   omega_term  = <flavor> <kappa> <c> [<sign>]   background kernel term
 *   edit        = <flavor> <kappa> <c> [<sign>]   bound-state edit
 *   verify_only = true | false      allow a run without edits
 *   grid_n      = odd point count   (default 1601)
 *   truncation  = window extent     (default 8)
 *   k           = wavenumber, "re" or "re+imi" or "<v>i"  (repeatable)
 *   out         = output directory  (default "out")
 *   format      = csv | json        (default csv)
 *
 * Flavors: full_left, full_right, dirichlet, non_dirichlet. Signs: +1 adds
 * the state, -1 removes it. `example` and `omega_term` are mutually
 * exclusive; a catalog entry that carries an edit applies it automatically
 * unless the config lists its own edits or sets verify_only.
 */
struct ScenarioConfig {
  std::optional<IntervalKind> interval;
  std::string example_id;
  OracleParams example_params;
  std::vector<BoundStateSpec> omega_terms;
  std::vector<BoundStateSpec> edits;
  bool verify_only = false;
  int grid_n = 1601;
  double truncation = 8.0;
  std::vector<std::complex<double>> k_list;
  std::string out_dir = "out";
  std::string format = "csv";
};

ScenarioConfig parse_scenario_text(const std::string &text);
ScenarioConfig load_scenario_file(const std::string &path);

// One self-consistency or closed-form comparison; value is the measured
// defect and pass is value <= tolerance unless noted otherwise in the name.
struct ScenarioCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioWave {
  std::complex<double> k;
  std::string label;
  ComplexSamples psi;
  ComplexSamples psi_tilde;
};

struct ScenarioResult {
  ScenarioConfig config; // resolved: catalog kind and edits filled in
  Grid grid;
  RealSamples u;
  RealSamples u_tilde;
  RealSamples delta_u_diag;
  RealSamples delta_u_loggamma;
  std::vector<ScenarioWave> waves;
  std::vector<ScenarioCheck> checks;

  bool all_pass() const;
};

ScenarioResult run_scenario(const ScenarioConfig &config);

// report.json content for a finished run.
std::string report_json(const ScenarioResult &result);

// Write report.json plus, unless report_only, potential.<ext> and one
// wavefunction_<k>.<ext> per exported wavenumber into config.out_dir.
void write_outputs(const ScenarioResult &result, bool report_only);

// Filesystem-safe rendering of a wavenumber: "0.5", "2", "1.3i", "1+0.5i".
std::string format_k_label(std::complex<double> k);

// Inverse of the rendering above: "0.5", "1.3i", "1+0.5i", "2-i".
std::complex<double> parse_wavenumber(const std::string &text);

// Max over interior grid points of |-psi'' + (u - k^2) psi| with the second
// derivative taken from the samples (five point stencil when enough points
// are available, three point otherwise).
double sampled_schrodinger_residual(const ComplexSamples &psi,
                                    const RealSamples &u,
                                    std::complex<double> k, const Grid &grid);

// Exit-code bands: 2 for malformed or inconsistent input, 3 for numerical
// breakdown of a well-posed request.
int exit_code_for(ErrorCode code);

} // namespace darboux
