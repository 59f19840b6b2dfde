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

#include <eigen3/Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "darboux/expsum.hpp"
#include "darboux/grid.hpp"

namespace darboux {

using Matrix = Eigen::MatrixXd;
using MatrixFn = std::function<Matrix(double)>;
using KernelFn = std::function<Matrix(double, double)>;

// Signature matrix J = diag(+-1). J*J = I and J = J^T hold by construction.
struct Involution {
  explicit Involution(std::vector<int> signs);
  static Involution identity(int n);

  int dim() const { return int(signs_.size()); }
  const Matrix &matrix() const { return J_; }
  // J M^T J for real M (the adjoint is the transpose here).
  Matrix conjugate(const Matrix &m) const;
  double sign(int i) const { return double(signs_[std::size_t(i)]); }

private:
  std::vector<int> signs_;
  Matrix J_;
};

// One single-variable factor of a separable term. The optional scalar form
// unlocks exact integration; without it the factor is quadrature-only.
struct Factor {
  MatrixFn fn;
  std::optional<ExpSum> form;
  int dim = 1;

  Matrix operator()(double t) const { return fn(t); }
  static Factor from_form(const ExpSum &form);
  static Factor zero();
};

// Finite-rank kernel  sum_i f_i(x) g_i(y). Houses both the data kernel of
// the fundamental equation (when it is degenerate) and the rank-m
// perturbation built from bound-state edits.
struct SeparableKernel {
  std::vector<std::pair<Factor, Factor>> terms;
  int dim = 1;

  int rank() const { return int(terms.size()); }
  Matrix value(double x, double y) const;
  KernelFn as_kernel_fn() const;
};

// Arbitrary two-variable kernel, evaluable on the working box.
struct GeneralKernel {
  KernelFn eval;
  int dim = 1;

  Matrix value(double y, double z) const { return eval(y, z); }
  static GeneralKernel from_separable(const SeparableKernel &k);
  static GeneralKernel zero(int dim = 1);
};

// Flavor selects which boundary normalization the bound state belongs to,
// and with it the interval family and the shape of the perturbation pair.
enum class BoundStateFlavor { FULL_LEFT, FULL_RIGHT, DIRICHLET, NON_DIRICHLET };

const char *bound_state_flavor_name(BoundStateFlavor flavor);
IntervalKind flavor_interval(BoundStateFlavor flavor);

// One discrete-eigenvalue edit: energy -kappa^2, norming constant c,
// sign +1 to add the state, -1 to remove it.
struct BoundStateSpec {
  double kappa = 1.0;
  double c = 1.0;
  int sign = +1;
  BoundStateFlavor flavor = BoundStateFlavor::FULL_LEFT;

  void validate() const;
};

// max over grid pairs (y,z) of || w(y,z) - J w(z,y)^T J ||. Zero means the
// kernel is J-selfadjoint.
double j_selfadjoint_defect(const GeneralKernel &omega, const Involution &J,
                            const Grid &grid);

// Rank-1 perturbation f(x) g(y) for a bound-state edit:
//
//   FULL_LEFT      f(x) = c e^{-kappa x}        g(y) = c e^{-kappa y}
//   FULL_RIGHT     f(x) = c e^{+kappa x}        g(y) = c e^{+kappa y}
//   DIRICHLET      f(x) = (c/kappa) sinh(kappa x), same shape in y
//   NON_DIRICHLET  f(x) = c cosh(kappa x), same shape in y
//
// Removal (sign = -1) negates g and leaves f unchanged.
SeparableKernel perturbation_pair(const BoundStateSpec &spec);

} // namespace darboux
