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

#include <map>
#include <string>

#include "darboux/schrodinger.hpp"

namespace darboux {

/* Catalog of closed-form worked cases used as golden oracles. Every entry
 * resolves its formulas for concrete positive parameters (kappa1, kappa2,
 * c1, c2) and exposes whichever quantities have explicit expressions:
 * data kernel, solution kernel, resolvent, intermediate pipeline stages,
 * potentials, and wavefunctions. Entries with a bound-state edit double as
 * end-to-end scenarios; the others exercise solver and resolvent layers.
 */

using OracleParams = std::map<std::string, double>;

struct OracleBundle {
  std::string id;
  std::string summary;
  IntervalKind kind = IntervalKind::LEFT_HALF;

  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  // Library-side inputs: the separable data kernel feeding the solver, the
  // full data kernel for residual checks (they differ only where the full
  // kernel carries a non-separable completion), and the bound-state edit.
  SeparableKernel background;
  GeneralKernel omega_full;
  bool has_background = false;
  // False when the full data kernel has a derivative jump, so grid
  // quadrature against it converges at second order instead of fourth.
  bool omega_smooth = true;
  BoundStateSpec edit;
  bool has_edit = false;
  WavefunctionKind psi_kind = WavefunctionKind::JOST_RIGHT;

  // Closed-form evaluators; an absent quantity leaves the field empty.
  std::function<double(double, double)> omega;
  std::function<double(double, double)> alpha;
  std::function<double(double, double, double)> resolvent;
  std::function<double(double, double, double)> false_resolvent;
  std::function<double(double)> n;
  std::function<double(double)> q;
  std::function<double(double, double)> gtilde;
  std::function<double(double)> Gamma;
  std::function<double(double, double)> alpha_tilde;
  std::function<double(double)> u;
  std::function<double(double)> u_tilde;
  std::function<std::complex<double>(std::complex<double>, double)> psi;
  std::function<std::complex<double>(std::complex<double>, double)> psi_tilde;
  std::function<std::complex<double>(std::complex<double>, double)> psi_left;
};

struct ExampleInfo {
  std::string id;
  std::string summary;
  IntervalKind kind;
  bool has_edit;
};

// Catalog order is the presentation order of the worked cases.
const std::vector<ExampleInfo> &example_catalog();

// Resolve one catalog entry. Recognized parameter keys: kappa1, kappa2,
// c1, c2; omitted keys take the entry's defaults. Values must be positive,
// and entries with a (kappa1^2 - kappa2^2) denominator reject kappa1 ==
// kappa2.
OracleBundle oracle(const std::string &id, const OracleParams &params = {});

} // namespace darboux
