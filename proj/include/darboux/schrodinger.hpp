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

namespace darboux {

/* Wavefunction layer for the scalar equation -psi'' + u psi = k^2 psi.
 * Each wavefunction kind pairs with one interval family through its seed:
 *
 *   JOST_LEFT             e^{ikx}    + int_x^inf   a(x,y) e^{iky}  dy
 *   JOST_RIGHT            e^{-ikx}   + int_-inf^x  a(x,y) e^{-iky} dy
 *   REGULAR_DIRICHLET     sin(kx)/k  + int_0^x     a(x,y) sin(ky)/k dy
 *   REGULAR_NON_DIRICHLET cos(kx)    + int_0^x     a(x,y) cos(ky)  dy
 */

enum class WavefunctionKind {
  JOST_LEFT,
  JOST_RIGHT,
  REGULAR_DIRICHLET,
  REGULAR_NON_DIRICHLET
};

const char *wavefunction_kind_name(WavefunctionKind kind);
IntervalKind wavefunction_interval(WavefunctionKind kind);

struct Wavefunction {
  WavefunctionKind kind = WavefunctionKind::JOST_LEFT;
  std::function<std::complex<double>(std::complex<double>, double)> eval;

  std::complex<double> operator()(std::complex<double> k, double x) const {
    return eval(k, x);
  }
};

struct PotentialProfile {
  Grid grid;
  RealSamples u;
};

// Seed plus the kernel integrated against the seed, per the table above.
// The kernel's interval family must pair with the wavefunction kind.
std::complex<double> wavefunction_from_alpha(const AlphaKernel &alpha,
                                             WavefunctionKind kind,
                                             std::complex<double> k, double x,
                                             const QuadratureSpec &quad = {});

Wavefunction make_wavefunction(const AlphaKernel &alpha, WavefunctionKind kind,
                               const QuadratureSpec &quad = {});

/* Closed-form wavefunction move for one bound-state edit (kappa, c, sign s):
 *
 *                          s c^2 psi(i kappa, x)  int dy psi(k,y) psi(i kappa,y)
 *   pt(k,x) - psi(k,x) = - ----------------------------------------------------,
 *                          1 + s c^2 int dz psi(i kappa, z)^2
 *
 * with both integrals over the interval attached to the flavor: (x,+inf)
 * for FULL_LEFT, (-inf,x) for FULL_RIGHT, (0,x) for the half-line flavors.
 */
std::complex<double> darboux_wavefunction_shift(
    const Wavefunction &psi,
    const std::function<std::complex<double>(double)> &psi_at_ikappa,
    const BoundStateSpec &spec, std::complex<double> k, double x,
    const QuadratureSpec &quad = {});

// Perturbed wavefunction sampled across the grid window: the same formula
// with the running integrals accumulated once along the axis.
ComplexSamples wavefunction_shift_profile(
    const Wavefunction &psi,
    const std::function<std::complex<double>(double)> &psi_at_ikappa,
    const BoundStateSpec &spec, std::complex<double> k, const Grid &grid,
    const QuadratureSpec &quad = {});

// The pair integral above in its Wronskian form, available because both
// spectral points solve the same equation:
//   int psi(k,y) psi(i kappa,y) dy
//     = +-[psi'(k,x) psi(ik,x) - psi(k,x) psi'(ik,x)] / (k^2 + kappa^2),
// with + toward +inf (JOST_LEFT) and - for the other orientations.
std::complex<double> bilinear_pair_integral(const Wavefunction &psi,
                                            double kappa,
                                            std::complex<double> k, double x);

// Max over interior grid points of |-psi'' + u psi - k^2 psi| with a
// second-order central difference for psi''.
double schrodinger_residual(const Wavefunction &psi,
                            const PotentialProfile &u, std::complex<double> k,
                            const Grid &grid);

struct StandardDarbouxResult {
  PotentialProfile u_tilde;
  Wavefunction f_l_tilde;
  Wavefunction f_r_tilde;
};

/* Classical full-line bound-state insertion through
 * eta(x) = f_l(i kappa, x) + gamma f_r(i kappa, x):
 *
 *   ut = u - 2 (ln eta)'',
 *   ft_l = [-i/(k + i kappa)] [f_l' - (eta'/eta) f_l],
 *   ft_r = [+i/(k + i kappa)] [f_r' - (eta'/eta) f_r].
 *
 * Requires eta > 0 across the grid; a sign change signals the method's
 * ordering restriction on the new eigenvalue.
 */
StandardDarbouxResult standard_darboux_fullline(const PotentialProfile &u,
                                                const Wavefunction &f_l,
                                                const Wavefunction &f_r,
                                                double kappa, double gamma_dep,
                                                std::complex<double> k);

struct GelfandLevitanResult {
  double delta_u = 0.0;
  std::complex<double> phi_tilde;
};

// Half-line Dirichlet comparator: the rank-1 input kernel
// C^2 phi(ik,x) phi(ik,y) solved in closed form, yielding
//   delta_u = -2 d/dx [C^2 phi(ik,x)^2 / (1 + C^2 int_0^x phi(ik,z)^2 dz)]
// and the matching perturbed regular solution at (k, x).
GelfandLevitanResult gelfand_levitan_dirichlet(const Wavefunction &phi,
                                               double kappa, double C,
                                               std::complex<double> k,
                                               double x,
                                               const QuadratureSpec &quad = {});

} // namespace darboux
