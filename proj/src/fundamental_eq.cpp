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

#include "darboux/fundamental_eq.hpp"

#include <cmath>
#include <string>

#include "darboux/error.hpp"

namespace darboux {

std::complex<double> interval_integral(const ExpSum &e, IntervalKind kind,
                                       double x) {
  switch (kind) {
  case IntervalKind::RIGHT_HALF: return e.integral_right_tail(x);
  case IntervalKind::LEFT_HALF: return e.integral_left_tail(x);
  case IntervalKind::FINITE_LEFT: return e.integral(0.0, x);
  }
  return 0.0;
}

namespace {

constexpr double kCondLimit = 1e12;

bool all_scalar_forms(const SeparableKernel &omega) {
  if (omega.dim != 1) return false;
  for (const auto &[f, g] : omega.terms) {
    if (!f.form || !g.form) return false;
  }
  return true;
}

} // namespace

double AlphaKernel::scalar(double x, double y) const {
  return eval(x, y)(0, 0);
}

bool AlphaKernel::in_support(double x, double y) const {
  switch (kind) {
  case IntervalKind::RIGHT_HALF: return x < y;
  case IntervalKind::LEFT_HALF: return y < x;
  case IntervalKind::FINITE_LEFT: return 0.0 < y && y < x;
  }
  return false;
}

bool AlphaKernel::in_closure(double x, double y) const {
  switch (kind) {
  case IntervalKind::RIGHT_HALF: return x <= y;
  case IntervalKind::LEFT_HALF: return y <= x;
  case IntervalKind::FINITE_LEFT: return 0.0 <= y && y <= x;
  }
  return false;
}

bool AlphaKernel::has_row_form() const {
  return separable && separable->analytic;
}

ExpSum AlphaKernel::row_form(double x) const {
  if (!has_row_form()) {
    throw Error(ErrorCode::OUT_OF_DOMAIN,
                "kernel carries no analytic row structure");
  }
  const Matrix a = separable->coeff_row(x);
  ExpSum row;
  for (int j = 0; j < separable->rank; ++j) {
    row = row + separable->g_forms[std::size_t(j)].scaled(-a(0, j));
  }
  return row;
}

AlphaKernel AlphaKernel::zero(IntervalKind kind, int dim) {
  AlphaKernel a;
  a.kind = kind;
  a.dim = dim;
  a.eval = [dim](double, double) { return Matrix::Zero(dim, dim); };
  auto data = std::make_shared<SeparableAlphaData>();
  data->rank = 0;
  data->dim = dim;
  data->analytic = (dim == 1);
  data->coeff_row = [dim](double) { return Matrix::Zero(dim, 0); };
  a.separable = std::move(data);
  return a;
}

AlphaKernel AlphaKernel::from_function(KernelFn fn, IntervalKind kind,
                                       int dim) {
  AlphaKernel a;
  a.kind = kind;
  a.dim = dim;
  a.eval = std::move(fn);
  return a;
}

Matrix diagonal_limit(const AlphaKernel &alpha, double x, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorCode::OUT_OF_SUPPORT, "probe offset must be positive");
  }
  const double dir =
      (alpha.kind == IntervalKind::RIGHT_HALF) ? 1.0 : -1.0;
  const double y_far = x + dir * h;
  const double y_near = x + dir * h / 2.0;
  if (!alpha.in_closure(x, y_far) || !alpha.in_closure(x, y_near)) {
    throw Error(ErrorCode::OUT_OF_SUPPORT,
                "probe points leave the kernel support at x = " +
                    std::to_string(x));
  }
  return 2.0 * alpha.value(x, y_near) - alpha.value(x, y_far);
}

AlphaKernel solve_separable(const SeparableKernel &omega, IntervalKind kind,
                            const QuadratureSpec &quad) {
  const int m = omega.rank();
  const int N = omega.dim;
  if (m == 0) return AlphaKernel::zero(kind, N);

  const bool analytic = all_scalar_forms(omega);
  auto data = std::make_shared<SeparableAlphaData>();
  data->rank = m;
  data->dim = N;
  data->analytic = analytic;
  if (analytic) {
    for (const auto &[f, g] : omega.terms) {
      data->f_forms.push_back(*f.form);
      data->g_forms.push_back(*g.form);
    }
  }

  SeparableKernel om = omega;
  QuadratureSpec qd = quad;
  // Pairwise products reused by every Gram evaluation on the analytic path.
  std::vector<ExpSum> gf_products;
  if (analytic) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        gf_products.push_back(data->g_forms[std::size_t(i)] *
                              data->f_forms[std::size_t(j)]);
      }
    }
  }

  auto gram = [om, kind, qd, analytic, gf_products](double x) {
    const int mm = om.rank();
    const int NN = om.dim;
    Matrix G = Matrix::Zero(mm * NN, mm * NN);
    if (analytic) {
      for (int i = 0; i < mm; ++i) {
        for (int j = 0; j < mm; ++j) {
          G(i, j) =
              interval_integral(gf_products[std::size_t(i * mm + j)], kind, x)
                  .real();
        }
      }
      return G;
    }
    const Grid grid = build_grid(kind, x, qd.n_points, qd.truncation);
    const std::vector<double> w = quadrature_weights(grid.size(), grid.h);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double z = grid.points[k];
      std::vector<Matrix> gv(static_cast<std::size_t>(mm)), fv(static_cast<std::size_t>(mm));
      for (int i = 0; i < mm; ++i) {
        gv[std::size_t(i)] = om.terms[std::size_t(i)].second(z);
        fv[std::size_t(i)] = om.terms[std::size_t(i)].first(z);
      }
      for (int i = 0; i < mm; ++i) {
        for (int j = 0; j < mm; ++j) {
          G.block(i * NN, j * NN, NN, NN) +=
              w[k] * (gv[std::size_t(i)] * fv[std::size_t(j)]);
        }
      }
    }
    return G;
  };

  auto coeff_row = [om, gram](double x) {
    const int mm = om.rank();
    const int NN = om.dim;
    const Matrix G = gram(x);
    Matrix F(NN, mm * NN);
    for (int j = 0; j < mm; ++j) {
      F.block(0, j * NN, NN, NN) = om.terms[std::size_t(j)].first(x);
    }
    if (mm * NN == 1) {
      const double M = 1.0 + G(0, 0);
      if (std::abs(M) * kCondLimit < std::max(1.0, std::abs(G(0, 0)))) {
        throw Error(ErrorCode::SINGULAR_SYSTEM,
                    "coefficient system vanishes at x = " + std::to_string(x));
      }
      return Matrix(F / M);
    }
    const Matrix M =
        Matrix::Identity(mm * NN, mm * NN) + G;
    Eigen::JacobiSVD<Matrix> svd(M.transpose(),
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin > kCondLimit) {
      throw Error(ErrorCode::SINGULAR_SYSTEM,
                  "coefficient system ill-conditioned at x = " +
                      std::to_string(x));
    }
    Matrix Xt = svd.solve(F.transpose());
    return Matrix(Xt.transpose());
  };
  data->coeff_row = coeff_row;

  AlphaKernel a;
  a.kind = kind;
  a.dim = N;
  a.separable = data;
  if (analytic) {
    a.eval = [data](double x, double y) {
      const Matrix c = data->coeff_row(x);
      double v = 0.0;
      for (int j = 0; j < data->rank; ++j) {
        v -= c(0, j) * data->g_forms[std::size_t(j)].real_value(y);
      }
      Matrix out(1, 1);
      out(0, 0) = v;
      return out;
    };
  } else {
    a.eval = [om, coeff_row](double x, double y) {
      const Matrix c = coeff_row(x);
      const int NN = om.dim;
      Matrix out = Matrix::Zero(NN, NN);
      for (int j = 0; j < om.rank(); ++j) {
        out -= c.block(0, j * NN, NN, NN) * om.terms[std::size_t(j)].second(y);
      }
      return out;
    };
  }
  return a;
}

RealSamples solve_nystrom(const GeneralKernel &omega, IntervalKind kind,
                          double x, const Grid &grid) {
  if (omega.dim != 1) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "dense collocation covers scalar kernels only");
  }
  if (grid.kind != kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string("grid is ") + interval_kind_name(grid.kind) +
                    ", requested " + interval_kind_name(kind));
  }
  const double anchor =
      (kind == IntervalKind::RIGHT_HALF) ? grid.front() : grid.back();
  if (std::abs(anchor - x) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw Error(ErrorCode::KIND_MISMATCH,
                "grid anchored at " + std::to_string(anchor) +
                    ", equation anchored at " + std::to_string(x));
  }
  const std::size_t n = grid.size();
  const std::vector<double> w = quadrature_weights(n, grid.h);
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd b(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double yj = grid.points[j];
    for (std::size_t i = 0; i < n; ++i) {
      M(j, i) = (i == j ? 1.0 : 0.0) + w[i] * omega.value(grid.points[i], yj)(0, 0);
    }
    b(j) = -omega.value(x, yj)(0, 0);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double rc = lu.rcond();
  if (!(rc > 1.0 / kCondLimit)) {
    throw Error(ErrorCode::SINGULAR_SYSTEM,
                "collocation matrix ill-conditioned, rcond = " +
                    std::to_string(rc));
  }
  Eigen::VectorXd v = lu.solve(b);
  return RealSamples(v.data(), v.data() + n);
}

double fundamental_residual(const AlphaKernel &alpha,
                            const GeneralKernel &omega, IntervalKind kind,
                            const Grid &grid) {
  if (alpha.kind != kind || grid.kind != kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                "kernel, grid, and requested interval kinds must agree");
  }
  if (alpha.dim != omega.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "kernel dimensions disagree");
  }
  const std::size_t n = grid.size();
  const auto &pts = grid.points;
  const bool right = (kind == IntervalKind::RIGHT_HALF);

  if (alpha.dim == 1) {
    Eigen::MatrixXd W(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        W(i, j) = omega.value(pts[i], pts[j])(0, 0);
      }
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      if (kind == IntervalKind::FINITE_LEFT && a == 0) continue;
      const std::size_t lo = right ? a : 0;
      const std::size_t len = right ? n - a : a + 1;
      Eigen::VectorXd row(len);
      for (std::size_t i = 0; i < len; ++i) {
        row(i) = alpha.scalar(pts[a], pts[lo + i]);
      }
      const std::vector<double> w = quadrature_weights(len, grid.h);
      Eigen::VectorXd wa(len);
      for (std::size_t i = 0; i < len; ++i) wa(i) = w[i] * row(i);
      const Eigen::RowVectorXd conv =
          wa.transpose() * W.block(lo, lo, len, len);
      for (std::size_t b = 0; b < len; ++b) {
        const double res = row(b) + W(a, lo + b) + conv(b);
        worst = std::max(worst, std::abs(res));
      }
    }
    return worst;
  }

  std::vector<Matrix> W(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      W[i * n + j] = omega.value(pts[i], pts[j]);
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (kind == IntervalKind::FINITE_LEFT && a == 0) continue;
    const std::size_t lo = right ? a : 0;
    const std::size_t len = right ? n - a : a + 1;
    std::vector<Matrix> row(len);
    for (std::size_t i = 0; i < len; ++i) {
      row[i] = alpha.value(pts[a], pts[lo + i]);
    }
    const std::vector<double> w = quadrature_weights(len, grid.h);
    for (std::size_t b = 0; b < len; ++b) {
      Matrix acc = row[b] + W[a * n + (lo + b)];
      for (std::size_t i = 0; i < len; ++i) {
        acc += w[i] * (row[i] * W[(lo + i) * n + (lo + b)]);
      }
      worst = std::max(worst, acc.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

} // namespace darboux
