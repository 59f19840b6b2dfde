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

#include "darboux/resolvent.hpp"

#include <cmath>
#include <string>

#include "darboux/error.hpp"

namespace darboux {

bool ResolventKernel::in_domain(double z, double y) const {
  switch (kind) {
  case IntervalKind::RIGHT_HALF: return z >= anchor && y >= anchor;
  case IntervalKind::LEFT_HALF: return z <= anchor && y <= anchor;
  case IntervalKind::FINITE_LEFT:
    return z >= 0.0 && y >= 0.0 && z <= anchor && y <= anchor;
  }
  return false;
}

Matrix ResolventKernel::value(double z, double y) const {
  if (!in_domain(z, y)) {
    throw Error(ErrorCode::OUT_OF_DOMAIN,
                "(" + std::to_string(z) + ", " + std::to_string(y) +
                    ") is outside the interval cut at " +
                    std::to_string(anchor));
  }
  return eval(z, y);
}

ResolventKernel
ResolventKernel::from_function(std::function<Matrix(double, double)> fn,
                               IntervalKind kind, double anchor, int dim) {
  ResolventKernel r;
  r.kind = kind;
  r.anchor = anchor;
  r.dim = dim;
  r.eval = std::move(fn);
  return r;
}

ResolventKernel resolvent_from_alpha(const AlphaKernel &alpha,
                                     const Involution &J, double x,
                                     const QuadratureSpec &quad) {
  if (alpha.dim != J.dim()) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "kernel dim " + std::to_string(alpha.dim) +
                    " vs involution dim " + std::to_string(J.dim()));
  }
  const bool right = (alpha.kind == IntervalKind::RIGHT_HALF);
  const bool scalar_fast = (alpha.dim == 1) && alpha.has_row_form();
  AlphaKernel a = alpha;
  Involution Jc = J;
  const int nq = quad.n_points;

  auto fn = [a, Jc, x, right, scalar_fast, nq](double z, double y) {
    // Integration runs between the anchor and the argument closer to it.
    const double edge = right ? std::min(z, y) : std::max(z, y);
    const double lo = right ? x : edge;
    const double hi = right ? edge : x;

    Matrix first;
    if (right ? (z <= y) : (y <= z)) {
      first = a.value(z, y);
    } else {
      first = Jc.conjugate(a.value(y, z));
    }
    if (!(hi - lo > 0.0)) return first;

    const double h = (hi - lo) / (nq - 1);
    if (scalar_fast) {
      const auto &data = *a.separable;
      std::vector<double> vals(static_cast<std::size_t>(nq));
      for (int i = 0; i < nq; ++i) {
        const double s = lo + h * i;
        const Matrix c = data.coeff_row(s);
        double az = 0.0, ay = 0.0;
        for (int j = 0; j < data.rank; ++j) {
          const ExpSum &gj = data.g_forms[std::size_t(j)];
          az -= c(0, j) * gj.real_value(z);
          ay -= c(0, j) * gj.real_value(y);
        }
        vals[std::size_t(i)] = az * ay;
      }
      Matrix out(1, 1);
      out(0, 0) = first(0, 0) + integrate_uniform(vals.data(), vals.size(), h);
      return out;
    }

    std::vector<double> w = quadrature_weights(std::size_t(nq), h);
    Matrix acc = Matrix::Zero(a.dim, a.dim);
    for (int i = 0; i < nq; ++i) {
      const double s = lo + h * i;
      acc += w[std::size_t(i)] * (Jc.conjugate(a.value(s, z)) * a.value(s, y));
    }
    return Matrix(first + acc);
  };

  return ResolventKernel::from_function(fn, alpha.kind, x, alpha.dim);
}

namespace {

void check_grid_anchor(const ResolventKernel &r, double x, const Grid &grid) {
  if (grid.kind != r.kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string("grid is ") + interval_kind_name(grid.kind) +
                    ", resolvent is " + interval_kind_name(r.kind));
  }
  const double anchor = (r.kind == IntervalKind::RIGHT_HALF) ? grid.front()
                                                             : grid.back();
  if (std::abs(anchor - x) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw Error(ErrorCode::KIND_MISMATCH,
                "grid anchored at " + std::to_string(anchor) +
                    ", resolvent anchored at " + std::to_string(x));
  }
}

} // namespace

double resolvent_residual(const ResolventKernel &r, const GeneralKernel &omega,
                          double x, const Grid &grid) {
  check_grid_anchor(r, x, grid);
  if (r.dim != omega.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH, "kernel dimensions disagree");
  }
  const std::size_t n = grid.size();
  const auto &pts = grid.points;
  const std::vector<double> w = quadrature_weights(n, grid.h);

  if (r.dim == 1) {
    Eigen::MatrixXd R(n, n), W(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        R(i, j) = r.eval(pts[i], pts[j])(0, 0);
        W(i, j) = omega.value(pts[i], pts[j])(0, 0);
      }
    }
    Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), n);
    Eigen::MatrixXd res = R + W + R * wv.asDiagonal() * W;
    return res.cwiseAbs().maxCoeff();
  }

  std::vector<Matrix> R(n * n), W(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      R[i * n + j] = r.eval(pts[i], pts[j]);
      W[i * n + j] = omega.value(pts[i], pts[j]);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix acc = R[i * n + j] + W[i * n + j];
      for (std::size_t s = 0; s < n; ++s) {
        acc += w[s] * (R[i * n + s] * W[s * n + j]);
      }
      worst = std::max(worst, acc.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double resolvent_symmetry_defect(const ResolventKernel &r, const Involution &J,
                                 double x, const Grid &grid) {
  check_grid_anchor(r, x, grid);
  if (r.dim != J.dim()) {
    throw Error(ErrorCode::DIMENSION_MISMATCH, "kernel dimensions disagree");
  }
  const std::size_t n = grid.size();
  const auto &pts = grid.points;
  std::vector<Matrix> R(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      R[i * n + j] = r.eval(pts[i], pts[j]);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix d = R[i * n + j] - J.conjugate(R[j * n + i]);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double reconstruction_residual(const AlphaKernel &alpha,
                               const GeneralKernel &omega,
                               const ResolventKernel &r, const Grid &grid) {
  const double x =
      (r.kind == IntervalKind::RIGHT_HALF) ? grid.front() : grid.back();
  check_grid_anchor(r, x, grid);
  if (alpha.kind != r.kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                "kernel and resolvent interval kinds must agree");
  }
  if (alpha.dim != omega.dim || alpha.dim != r.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH, "kernel dimensions disagree");
  }
  const std::size_t n = grid.size();
  const auto &pts = grid.points;
  const std::vector<double> w = quadrature_weights(n, grid.h);

  double worst = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const double y = pts[b];
    Matrix acc = alpha.value(x, y) + omega.value(x, y);
    for (std::size_t i = 0; i < n; ++i) {
      acc += w[i] * (omega.value(x, pts[i]) * r.eval(pts[i], y));
    }
    worst = std::max(worst, acc.cwiseAbs().maxCoeff());
  }
  return worst;
}

} // namespace darboux
