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

#include "darboux/grid.hpp"

#include <cmath>
#include <cstdlib>

namespace darboux {

const char *error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::NON_POSITIVE_SPAN: return "NON_POSITIVE_SPAN";
  case ErrorCode::BAD_POINT_COUNT: return "BAD_POINT_COUNT";
  case ErrorCode::LENGTH_MISMATCH: return "LENGTH_MISMATCH";
  case ErrorCode::TOO_FEW_POINTS: return "TOO_FEW_POINTS";
  case ErrorCode::OUT_OF_SUPPORT: return "OUT_OF_SUPPORT";
  case ErrorCode::OUT_OF_DOMAIN: return "OUT_OF_DOMAIN";
  case ErrorCode::DIMENSION_MISMATCH: return "DIMENSION_MISMATCH";
  case ErrorCode::KIND_MISMATCH: return "KIND_MISMATCH";
  case ErrorCode::SINGULAR_SYSTEM: return "SINGULAR_SYSTEM";
  case ErrorCode::SINGULAR_GAMMA: return "SINGULAR_GAMMA";
  case ErrorCode::NONCONVERGENT_TAIL: return "NONCONVERGENT_TAIL";
  case ErrorCode::NONPOSITIVE_GAMMA: return "NONPOSITIVE_GAMMA";
  case ErrorCode::ZERO_DENOMINATOR: return "ZERO_DENOMINATOR";
  case ErrorCode::ETA_NOT_POSITIVE: return "ETA_NOT_POSITIVE";
  case ErrorCode::UNKNOWN_ID: return "UNKNOWN_ID";
  case ErrorCode::DEGENERATE_PARAMS: return "DEGENERATE_PARAMS";
  case ErrorCode::CONFIG_ERROR: return "CONFIG_ERROR";
  }
  return "UNKNOWN_ERROR";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
  case ErrorCode::NON_POSITIVE_SPAN:
  case ErrorCode::BAD_POINT_COUNT:
  case ErrorCode::LENGTH_MISMATCH:
  case ErrorCode::TOO_FEW_POINTS:
  case ErrorCode::DIMENSION_MISMATCH:
  case ErrorCode::KIND_MISMATCH:
  case ErrorCode::UNKNOWN_ID:
  case ErrorCode::DEGENERATE_PARAMS:
  case ErrorCode::CONFIG_ERROR:
    return true;
  default:
    return false;
  }
}

const char *interval_kind_name(IntervalKind kind) {
  switch (kind) {
  case IntervalKind::RIGHT_HALF: return "right_half";
  case IntervalKind::LEFT_HALF: return "left_half";
  case IntervalKind::FINITE_LEFT: return "finite_left";
  }
  return "unknown";
}

Grid build_grid(IntervalKind kind, double anchor_x, int n_points,
                double truncation) {
  if (n_points < 3 || n_points % 2 == 0) {
    throw Error(ErrorCode::BAD_POINT_COUNT,
                "need an odd point count >= 3, got " +
                    std::to_string(n_points));
  }
  double lo = 0.0, hi = 0.0;
  switch (kind) {
  case IntervalKind::RIGHT_HALF:
    lo = anchor_x;
    hi = truncation;
    break;
  case IntervalKind::LEFT_HALF:
    lo = -truncation;
    hi = anchor_x;
    break;
  case IntervalKind::FINITE_LEFT:
    lo = 0.0;
    hi = anchor_x;
    break;
  }
  if (!(hi - lo > 0.0)) {
    throw Error(ErrorCode::NON_POSITIVE_SPAN,
                "interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] has no positive length");
  }
  Grid grid;
  grid.kind = kind;
  grid.truncation = truncation;
  grid.h = (hi - lo) / (n_points - 1);
  grid.points.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    grid.points[i] = lo + grid.h * i;
  }
  grid.points.back() = hi;
  return grid;
}

namespace {

// Composite Simpson over n uniform samples. Odd n uses pure Simpson; even n
// keeps fourth order by closing with one Simpson 3/8 block on the last three
// panels (n >= 4). For n == 2 only the trapezoid is available.
template <typename T> T simpson_any(const T *v, std::size_t n, double h) {
  if (n < 2) return T(0);
  if (n == 2) return h / 2.0 * (v[0] + v[1]);
  std::size_t head = n;
  T tail_sum(0);
  if (n % 2 == 0) {
    if (n == 4) {
      return 3.0 * h / 8.0 * (v[0] + 3.0 * v[1] + 3.0 * v[2] + v[3]);
    }
    head = n - 3;
    const T *t = v + (n - 4);
    tail_sum = 3.0 * h / 8.0 * (t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3]);
  }
  T odd(0), even(0);
  for (std::size_t i = 1; i + 1 < head; i += 2) odd += v[i];
  for (std::size_t i = 2; i + 1 < head; i += 2) even += v[i];
  return h / 3.0 * (v[0] + 4.0 * odd + 2.0 * even + v[head - 1]) + tail_sum;
}

// Running integral, fourth order. The first panels use the cubic
// interpolatory rules through the leading four samples; interior steps use
// the four-point Adams-Moulton corrector.
template <typename T>
std::vector<T> cumulative_any(const std::vector<T> &v, double h) {
  const std::size_t n = v.size();
  std::vector<T> out(n, T(0));
  if (n < 2) return out;
  if (n < 4) {
    out[1] = h / 2.0 * (v[0] + v[1]);
    if (n == 3) out[2] = h / 3.0 * (v[0] + 4.0 * v[1] + v[2]);
    return out;
  }
  out[1] = out[0] + h / 24.0 * (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]);
  out[2] = out[1] + h / 24.0 * (-v[0] + 13.0 * v[1] + 13.0 * v[2] - v[3]);
  for (std::size_t i = 3; i < n; ++i) {
    out[i] = out[i - 1] + h / 24.0 *
                              (v[i - 3] - 5.0 * v[i - 2] + 19.0 * v[i - 1] +
                               9.0 * v[i]);
  }
  return out;
}

template <typename T>
T stencil_any(const std::function<T(double)> &f, double x, int order,
              double step, double lo, double hi) {
  if (order != 1 && order != 2) {
    throw Error(ErrorCode::OUT_OF_DOMAIN, "derivative order must be 1 or 2");
  }
  double h = step;
  const double span = hi - lo;
  if (4.0 * h > span) h = span / 4.0;
  // Center the 5-point stencil, sliding it inside [lo, hi] near the ends.
  double c = x;
  if (c - 2.0 * h < lo) c = lo + 2.0 * h;
  if (c + 2.0 * h > hi) c = hi - 2.0 * h;
  T s[5];
  for (int i = 0; i < 5; ++i) s[i] = f(c + (i - 2) * h);
  const double d = x - c; // offset of the evaluation point from the center
  // Fit the quartic through the stencil and differentiate it at offset d.
  // Divided into the standard central part plus Taylor shift terms.
  T d1 = (s[0] - 8.0 * s[1] + 8.0 * s[3] - s[4]) / (12.0 * h);
  T d2 = (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) /
         (12.0 * h * h);
  T d3 = (-s[0] + 2.0 * s[1] - 2.0 * s[3] + s[4]) / (2.0 * h * h * h);
  T d4 = (s[0] - 4.0 * s[1] + 6.0 * s[2] - 4.0 * s[3] + s[4]) /
         (h * h * h * h);
  if (order == 1) {
    return d1 + d * d2 + d * d * d3 / 2.0 + d * d * d * d4 / 6.0;
  }
  return d2 + d * d3 + d * d * d4 / 2.0;
}

} // namespace

double integrate_uniform(const double *values, std::size_t n, double h) {
  return simpson_any(values, n, h);
}

std::vector<double> quadrature_weights(std::size_t n, double h) {
  std::vector<double> w(n, 0.0);
  if (n < 2) return w;
  if (n == 2) {
    w[0] = w[1] = h / 2.0;
    return w;
  }
  std::size_t head = n;
  if (n % 2 == 0) {
    const double b = 3.0 * h / 8.0;
    w[n - 4] += b;
    w[n - 3] += 3.0 * b;
    w[n - 2] += 3.0 * b;
    w[n - 1] += b;
    if (n == 4) return w;
    head = n - 3;
  }
  w[0] += h / 3.0;
  w[head - 1] += h / 3.0;
  for (std::size_t i = 1; i + 1 < head; i += 2) w[i] += 4.0 * h / 3.0;
  for (std::size_t i = 2; i + 1 < head; i += 2) w[i] += 2.0 * h / 3.0;
  return w;
}

std::complex<double> integrate_uniform(const std::complex<double> *values,
                                       std::size_t n, double h) {
  return simpson_any(values, n, h);
}

double integrate(const RealSamples &samples, const Grid &grid) {
  if (samples.size() != grid.size()) {
    throw Error(ErrorCode::LENGTH_MISMATCH,
                std::to_string(samples.size()) + " samples on a grid of " +
                    std::to_string(grid.size()) + " points");
  }
  return simpson_any(samples.data(), samples.size(), grid.h);
}

std::complex<double> integrate(const ComplexSamples &samples,
                               const Grid &grid) {
  if (samples.size() != grid.size()) {
    throw Error(ErrorCode::LENGTH_MISMATCH,
                std::to_string(samples.size()) + " samples on a grid of " +
                    std::to_string(grid.size()) + " points");
  }
  return simpson_any(samples.data(), samples.size(), grid.h);
}

RealSamples cumulative_integral(const RealSamples &samples, double h) {
  return cumulative_any(samples, h);
}

ComplexSamples cumulative_integral(const ComplexSamples &samples, double h) {
  return cumulative_any(samples, h);
}

RealSamples differentiate(const RealSamples &samples, const Grid &grid,
                          int order) {
  if (samples.size() != grid.size()) {
    throw Error(ErrorCode::LENGTH_MISMATCH,
                "sample/grid size mismatch in differentiate");
  }
  if (order != 1 && order != 2) {
    throw Error(ErrorCode::OUT_OF_DOMAIN, "derivative order must be 1 or 2");
  }
  const std::size_t n = samples.size();
  if (n < 5) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "differentiate needs at least 5 points, got " +
                    std::to_string(n));
  }
  const double h = grid.h;
  RealSamples out(n);
  const RealSamples &v = samples;
  if (order == 1) {
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  } else {
    out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    }
    out[n - 1] =
        (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) /
        (h * h);
  }
  return out;
}

double stencil_derivative(const std::function<double(double)> &f, double x,
                          int order, double step, double lo, double hi) {
  return stencil_any<double>(f, x, order, step, lo, hi);
}

std::complex<double>
stencil_derivative(const std::function<std::complex<double>(double)> &f,
                   double x, int order, double step, double lo, double hi) {
  return stencil_any<std::complex<double>>(f, x, order, step, lo, hi);
}

} // namespace darboux
