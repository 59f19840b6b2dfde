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

#include <memory>

#include "darboux/kernels.hpp"

namespace darboux {

/* The fundamental integral equation ties the unknown kernel a(x,y) to the
 * data kernel w(x,y):
 *
 *                          /
 *   a(x,y) + w(x,y) +      | dz a(x,z) w(z,y)  =  0,
 *                          / I(x)
 *
 * where I(x) is (x,+inf), (-inf,x), or (0,x) per interval kind, and y runs
 * over I(x). This module solves it for a, in closed form when w has finite
 * rank and by dense discretization otherwise.
 */

// Quadrature controls for operations that must build their own grids.
struct QuadratureSpec {
  int n_points = 2001;
  double truncation = 40.0;
};

// Exact integral of an exponential-polynomial over I(x): the right tail
// from x, the left tail up to x, or [0, x] per kind. Throws
// NONCONVERGENT_TAIL when an infinite tail does not decay.
std::complex<double> interval_integral(const ExpSum &e, IntervalKind kind,
                                       double x);

// Analytic structure attached to an AlphaKernel solved from a finite-rank
// scalar kernel with exponential-polynomial factors: for fixed x the row
// a(x,.) = -sum_j c_j(x) g_j(.) is itself exponential-polynomial in the
// second slot, which downstream integrations exploit.
struct SeparableAlphaData {
  int rank = 0;
  int dim = 1;
  bool analytic = false;
  std::vector<ExpSum> f_forms;
  std::vector<ExpSum> g_forms;
  // dim x (rank*dim) row of coefficient blocks at a given x.
  std::function<Matrix(double)> coeff_row;
};

struct AlphaKernel {
  IntervalKind kind = IntervalKind::RIGHT_HALF;
  int dim = 1;
  KernelFn eval;
  std::shared_ptr<const SeparableAlphaData> separable;

  Matrix value(double x, double y) const { return eval(x, y); }
  double scalar(double x, double y) const;

  // Open support: x<y, y<x, or 0<y<x per kind.
  bool in_support(double x, double y) const;
  bool in_closure(double x, double y) const;

  bool has_row_form() const;
  // a(x,.) as an exponential-polynomial in the second argument.
  ExpSum row_form(double x) const;

  static AlphaKernel zero(IntervalKind kind, int dim = 1);
  static AlphaKernel from_function(KernelFn fn, IntervalKind kind, int dim = 1);
};

// One-sided limit of a(x,y) as y -> x from inside the support, via
// Richardson extrapolation over probe offsets h and h/2.
Matrix diagonal_limit(const AlphaKernel &alpha, double x, double h);

/* Closed-form solve for finite-rank w(x,y) = sum_i f_i(x) g_i(y): the
 * ansatz a(x,y) = -sum_j c_j(x) g_j(y) reduces the equation to the row
 * system
 *
 *   [c_1(x) ... c_m(x)] (I + G(x)) = [f_1(x) ... f_m(x)],
 *
 * with Gram blocks G(x)_ij = integral over I(x) of g_i(z) f_j(z) dz.
 * Gram integrals are exact when the factors carry forms, quadrature
 * otherwise.
 */
AlphaKernel solve_separable(const SeparableKernel &omega, IntervalKind kind,
                            const QuadratureSpec &quad = {});

// Dense collocation solve for the row a(x,.) on the grid: Simpson weights
// discretize the integral term and the resulting linear system is solved
// directly. Scalar kernels only.
RealSamples solve_nystrom(const GeneralKernel &omega, IntervalKind kind,
                          double x, const Grid &grid);

// Max norm of a + w + integral(a w) over grid pairs in the support closure,
// anchoring the equation at every grid point in turn.
double fundamental_residual(const AlphaKernel &alpha, const GeneralKernel &omega,
                            IntervalKind kind, const Grid &grid);

} // namespace darboux
