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

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "darboux/error.hpp"

namespace darboux {

// The three interval families the integral equations live on. Every kernel,
// grid, and pipeline stage is parameterized by one of these:
//
//   RIGHT_HALF   integration over (x, +inf)
//   LEFT_HALF    integration over (-inf, x)
//   FINITE_LEFT  integration over (0, x), all coordinates >= 0
enum class IntervalKind { RIGHT_HALF, LEFT_HALF, FINITE_LEFT };

const char *interval_kind_name(IntervalKind kind);

// Uniform sample axis. Infinite endpoints are replaced by the cutoff L
// stored in truncation: RIGHT_HALF grids end at +L, LEFT_HALF grids start
// at -L, FINITE_LEFT grids start at 0.
struct Grid {
  std::vector<double> points;
  double h = 0.0;
  IntervalKind kind = IntervalKind::FINITE_LEFT;
  double truncation = 0.0;

  std::size_t size() const { return points.size(); }
  double front() const { return points.front(); }
  double back() const { return points.back(); }
};

using RealSamples = std::vector<double>;
using ComplexSamples = std::vector<std::complex<double>>;

// Uniform grid covering [x, L], [-L, x], or [0, x] per kind. n_points must
// be odd and >= 3 so composite Simpson applies directly.
Grid build_grid(IntervalKind kind, double anchor_x, int n_points,
                double truncation);

// Composite Simpson on uniform samples; exact for cubics. Even sample
// counts close with one 3/8 block so the order stays four throughout.
double integrate(const RealSamples &samples, const Grid &grid);
std::complex<double> integrate(const ComplexSamples &samples,
                               const Grid &grid);

// Same rules on a bare uniform axis (internal sub-range integration).
double integrate_uniform(const double *values, std::size_t n, double h);
std::complex<double> integrate_uniform(const std::complex<double> *values,
                                       std::size_t n, double h);

// Weight vector w with dot(w, samples) identical to the integrate rules
// above, for matrix-assembled quadrature.
std::vector<double> quadrature_weights(std::size_t n, double h);

// Running integral F_i = int_{t_0}^{t_i}. Fourth order via cubic
// Adams-Moulton end corrections, so every prefix is usable, not just the
// full span.
RealSamples cumulative_integral(const RealSamples &samples, double h);
ComplexSamples cumulative_integral(const ComplexSamples &samples, double h);

// Central differences in the interior, one-sided at the ends, all O(h^2).
// order is 1 or 2.
RealSamples differentiate(const RealSamples &samples, const Grid &grid,
                          int order);

// Fourth-order stencil derivatives of a callable, used where the potential
// formulas need d/dx or d^2/dx^2 of smooth profile quantities. When the
// stencil would leave [lo, hi] it shifts to a one-sided form of the same
// order.
double stencil_derivative(const std::function<double(double)> &f, double x,
                          int order, double step, double lo, double hi);
std::complex<double>
stencil_derivative(const std::function<std::complex<double>(double)> &f,
                   double x, int order, double step, double lo, double hi);

} // namespace darboux
