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

#include "darboux/kernels.hpp"

#include <cmath>
#include <string>

#include "darboux/error.hpp"

namespace darboux {

Involution::Involution(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) {
    throw Error(ErrorCode::DIMENSION_MISMATCH, "involution needs dimension >= 1");
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) {
      throw Error(ErrorCode::DIMENSION_MISMATCH,
                  "involution entries must be +1 or -1");
    }
  }
  J_ = Matrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) J_(i, i) = double(signs_[std::size_t(i)]);
}

Involution Involution::identity(int n) {
  return Involution(std::vector<int>(std::size_t(n), 1));
}

Matrix Involution::conjugate(const Matrix &m) const {
  if (m.rows() != dim() || m.cols() != dim()) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", involution dim " +
                    std::to_string(dim()));
  }
  return J_ * m.transpose() * J_;
}

Factor Factor::from_form(const ExpSum &form) {
  Factor f;
  f.form = form;
  f.dim = 1;
  f.fn = [form](double t) {
    Matrix m(1, 1);
    m(0, 0) = form.real_value(t);
    return m;
  };
  return f;
}

Factor Factor::zero() { return from_form(ExpSum()); }

Matrix SeparableKernel::value(double x, double y) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto &[f, g] : terms) out += f(x) * g(y);
  return out;
}

KernelFn SeparableKernel::as_kernel_fn() const {
  SeparableKernel copy = *this;
  return [copy](double x, double y) { return copy.value(x, y); };
}

GeneralKernel GeneralKernel::from_separable(const SeparableKernel &k) {
  return GeneralKernel{k.as_kernel_fn(), k.dim};
}

GeneralKernel GeneralKernel::zero(int dim) {
  return GeneralKernel{
      [dim](double, double) { return Matrix::Zero(dim, dim); }, dim};
}

const char *bound_state_flavor_name(BoundStateFlavor flavor) {
  switch (flavor) {
  case BoundStateFlavor::FULL_LEFT: return "FULL_LEFT";
  case BoundStateFlavor::FULL_RIGHT: return "FULL_RIGHT";
  case BoundStateFlavor::DIRICHLET: return "DIRICHLET";
  case BoundStateFlavor::NON_DIRICHLET: return "NON_DIRICHLET";
  }
  return "UNKNOWN";
}

IntervalKind flavor_interval(BoundStateFlavor flavor) {
  switch (flavor) {
  case BoundStateFlavor::FULL_LEFT: return IntervalKind::RIGHT_HALF;
  case BoundStateFlavor::FULL_RIGHT: return IntervalKind::LEFT_HALF;
  case BoundStateFlavor::DIRICHLET:
  case BoundStateFlavor::NON_DIRICHLET: return IntervalKind::FINITE_LEFT;
  }
  return IntervalKind::RIGHT_HALF;
}

void BoundStateSpec::validate() const {
  if (!(kappa > 0.0)) {
    throw Error(ErrorCode::CONFIG_ERROR, "bound state needs kappa > 0");
  }
  if (!(c > 0.0)) {
    throw Error(ErrorCode::CONFIG_ERROR, "bound state needs c > 0");
  }
  if (sign != 1 && sign != -1) {
    throw Error(ErrorCode::CONFIG_ERROR, "bound state sign must be +1 or -1");
  }
}

double j_selfadjoint_defect(const GeneralKernel &omega, const Involution &J,
                            const Grid &grid) {
  if (omega.dim != J.dim()) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "kernel dim " + std::to_string(omega.dim) +
                    " vs involution dim " + std::to_string(J.dim()));
  }
  const std::size_t n = grid.size();
  std::vector<Matrix> rows(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i * n + j] = omega.value(grid.points[i], grid.points[j]);
    }
  }
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix d = rows[i * n + j] - J.conjugate(rows[j * n + i]);
      defect = std::max(defect, d.cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

SeparableKernel perturbation_pair(const BoundStateSpec &spec) {
  spec.validate();
  ExpSum shape;
  switch (spec.flavor) {
  case BoundStateFlavor::FULL_LEFT:
    shape = ExpSum::exponential(spec.c, -spec.kappa);
    break;
  case BoundStateFlavor::FULL_RIGHT:
    shape = ExpSum::exponential(spec.c, spec.kappa);
    break;
  case BoundStateFlavor::DIRICHLET:
    shape = ExpSum::sinh_fn(spec.c / spec.kappa, spec.kappa);
    break;
  case BoundStateFlavor::NON_DIRICHLET:
    shape = ExpSum::cosh_fn(spec.c, spec.kappa);
    break;
  }
  SeparableKernel k;
  k.dim = 1;
  ExpSum g = (spec.sign < 0) ? shape.scaled(-1.0) : shape;
  k.terms.emplace_back(Factor::from_form(shape), Factor::from_form(g));
  return k;
}

} // namespace darboux
