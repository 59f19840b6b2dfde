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

#include "darboux/fundamental_eq.hpp"

namespace darboux {

/* r(x;z,y) is the kernel of R = (I + Omega)^{-1} - I restricted to the
 * interval cut at the anchor x. It satisfies
 *
 *   r(x;z,y) + w(z,y) + integral over I(x) of r(x;z,s) w(s,y) ds = 0
 *
 * for both orderings of (z,y), and is built from a(x,y) by a two-branch
 * piecewise formula whose integration runs between the anchor and the
 * argument closer to it.
 */
struct ResolventKernel {
  IntervalKind kind = IntervalKind::RIGHT_HALF;
  double anchor = 0.0;
  int dim = 1;
  std::function<Matrix(double, double)> eval; // (z, y) at the stored anchor

  Matrix value(double z, double y) const;
  double scalar(double z, double y) const { return value(z, y)(0, 0); }
  bool in_domain(double z, double y) const;

  static ResolventKernel from_function(std::function<Matrix(double, double)> fn,
                                       IntervalKind kind, double anchor,
                                       int dim = 1);
};

/* Branches, following the interval family:
 *
 *   right half:   r(x;z,y) = a(z,y)            + int_x^min(z,y) ds J a(s,z)^T J a(s,y),  z <= y
 *                            J a(y,z)^T J      + same integral,                          y <  z
 *   left/finite:  r(x;z,y) = a(z,y)            + int_max(z,y)^x ds J a(s,z)^T J a(s,y),  y <= z
 *                            J a(y,z)^T J      + same integral,                          z <  y
 *
 * Ties on the diagonal use the first-listed branch.
 */
ResolventKernel resolvent_from_alpha(const AlphaKernel &alpha,
                                     const Involution &J, double x,
                                     const QuadratureSpec &quad = {});

// Max norm of r + w + integral(r w) over all grid pairs (z,y), covering both
// argument orderings.
double resolvent_residual(const ResolventKernel &r, const GeneralKernel &omega,
                          double x, const Grid &grid);

// Max norm of r(x;z,y) - J r(x;y,z)^T J over grid pairs.
double resolvent_symmetry_defect(const ResolventKernel &r, const Involution &J,
                                 double x, const Grid &grid);

// Max norm over grid points y of a(x,y) + w(x,y) + integral over I(x) of
// w(x,z) r(x;z,y) dz, with x the grid anchor: how well r reconstructs a
// from w. A kernel can pass this while failing resolvent_residual; the two
// checks together discriminate the true resolvent.
double reconstruction_residual(const AlphaKernel &alpha,
                               const GeneralKernel &omega,
                               const ResolventKernel &r, const Grid &grid);

} // namespace darboux
