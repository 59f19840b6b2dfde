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

#include <doctest.h>

#include <cmath>
#include <optional>

#include "darboux/fundamental_eq.hpp"
#include "darboux/reference_examples.hpp"

using namespace darboux;

namespace {

template <typename Fn> std::optional<ErrorCode> thrown_code(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return std::nullopt;
}

// Rank-1 data kernel c^2 e^{-kappa(x+y)} on (x, +inf) with kappa = 1 and
// c^2 = 2 solves in closed form:
//
//   a(x,y) = -2 e^{-(x+y)} / (1 + e^{-2x})
double one_state_alpha(double x, double y) {
  return -2.0 * std::exp(-(x + y)) / (1.0 + std::exp(-2.0 * x));
}

} // namespace

TEST_CASE("interval_integral evaluates each family exactly") {
  ExpSum decay = ExpSum::exponential(1.0, -3.0);
  CHECK(interval_integral(decay, IntervalKind::RIGHT_HALF, 0.7).real() ==
        doctest::Approx(std::exp(-2.1) / 3.0).epsilon(1e-14));

  ExpSum grow = ExpSum::exponential(1.0, 2.0);
  CHECK(interval_integral(grow, IntervalKind::LEFT_HALF, -0.3).real() ==
        doctest::Approx(std::exp(-0.6) / 2.0).epsilon(1e-14));

  ExpSum cosine = ExpSum::cos_fn(1.0, 3.0);
  CHECK(interval_integral(cosine, IntervalKind::FINITE_LEFT, 1.4).real() ==
        doctest::Approx(std::sin(4.2) / 3.0).epsilon(1e-13));

  CHECK(thrown_code([&] {
          interval_integral(grow, IntervalKind::RIGHT_HALF, 0.0);
        }) == ErrorCode::NONCONVERGENT_TAIL);
  CHECK(thrown_code([&] {
          interval_integral(decay, IntervalKind::LEFT_HALF, 0.0);
        }) == ErrorCode::NONCONVERGENT_TAIL);
}

TEST_CASE("solve_separable matches the rank-1 closed form") {
  SeparableKernel omega =
      perturbation_pair({1.0, std::sqrt(2.0), +1, BoundStateFlavor::FULL_LEFT});
  AlphaKernel alpha = solve_separable(omega, IntervalKind::RIGHT_HALF);
  CHECK(alpha.dim == 1);
  CHECK(alpha.has_row_form());
  for (auto [x, y] : {std::pair{0.3, 0.9}, {-0.5, 0.2}, {1.1, 1.1}}) {
    CHECK(alpha.scalar(x, y) ==
          doctest::Approx(one_state_alpha(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("row_form reproduces the kernel row as a function of y") {
  SeparableKernel omega =
      perturbation_pair({1.0, std::sqrt(2.0), +1, BoundStateFlavor::FULL_LEFT});
  AlphaKernel alpha = solve_separable(omega, IntervalKind::RIGHT_HALF);
  double x = 0.4;
  ExpSum row = alpha.row_form(x);
  for (double y : {0.4, 1.0, 2.5}) {
    CHECK(row.real_value(y) ==
          doctest::Approx(one_state_alpha(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("solve_separable matches the two-exponential closed form") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  CHECK(alpha.scalar(0.5, -0.4) ==
        doctest::Approx(-0.59445247512809421).epsilon(1e-12));
  CHECK(alpha.scalar(0.5, -0.4) ==
        doctest::Approx(b.alpha(0.5, -0.4)).epsilon(1e-12));
}

TEST_CASE("support geometry follows the interval family") {
  AlphaKernel right = AlphaKernel::zero(IntervalKind::RIGHT_HALF);
  CHECK(right.in_support(0.2, 0.5));
  CHECK_FALSE(right.in_support(0.5, 0.2));
  CHECK_FALSE(right.in_support(0.5, 0.5));
  CHECK(right.in_closure(0.5, 0.5));

  AlphaKernel left = AlphaKernel::zero(IntervalKind::LEFT_HALF);
  CHECK(left.in_support(0.5, 0.2));
  CHECK_FALSE(left.in_support(0.2, 0.5));

  AlphaKernel finite = AlphaKernel::zero(IntervalKind::FINITE_LEFT);
  CHECK(finite.in_support(1.0, 0.4));
  CHECK_FALSE(finite.in_support(1.0, -0.1));
  CHECK_FALSE(finite.in_support(0.4, 1.0));
  CHECK(finite.in_closure(1.0, 0.0));
}

TEST_CASE("the zero kernel solves the zero equation") {
  AlphaKernel z = AlphaKernel::zero(IntervalKind::LEFT_HALF);
  CHECK(z.scalar(0.3, -1.0) == doctest::Approx(0.0));
  CHECK(z.has_row_form());
  CHECK(z.row_form(0.3).value(-1.0) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("diagonal_limit recovers the closed-form diagonal") {
  SeparableKernel omega =
      perturbation_pair({1.0, std::sqrt(2.0), +1, BoundStateFlavor::FULL_LEFT});
  AlphaKernel alpha = solve_separable(omega, IntervalKind::RIGHT_HALF);
  Matrix d = diagonal_limit(alpha, 0.4, 1e-5);
  CHECK(d(0, 0) == doctest::Approx(one_state_alpha(0.4, 0.4)).epsilon(1e-9));
}

TEST_CASE("fundamental_residual vanishes for the solved kernel") {
  SeparableKernel omega =
      perturbation_pair({1.0, std::sqrt(2.0), +1, BoundStateFlavor::FULL_LEFT});
  AlphaKernel alpha = solve_separable(omega, IntervalKind::RIGHT_HALF);
  GeneralKernel full = GeneralKernel::from_separable(omega);
  Grid grid = build_grid(IntervalKind::RIGHT_HALF, 0.5, 201, 8.0);
  CHECK(fundamental_residual(alpha, full, IntervalKind::RIGHT_HALF, grid) <=
        5e-6);
}

TEST_CASE("fundamental_residual flags a wrong kernel") {
  SeparableKernel omega =
      perturbation_pair({1.0, std::sqrt(2.0), +1, BoundStateFlavor::FULL_LEFT});
  GeneralKernel full = GeneralKernel::from_separable(omega);
  AlphaKernel wrong = AlphaKernel::from_function(
      [](double x, double y) {
        Matrix m(1, 1);
        m(0, 0) = 0.5 * one_state_alpha(x, y);
        return m;
      },
      IntervalKind::RIGHT_HALF);
  Grid grid = build_grid(IntervalKind::RIGHT_HALF, 0.5, 101, 8.0);
  CHECK(fundamental_residual(wrong, full, IntervalKind::RIGHT_HALF, grid) >
        1e-2);
}

TEST_CASE("solve_nystrom converges to the closed form row") {
  OracleBundle b = oracle("EX5_2");
  Grid grid = build_grid(IntervalKind::LEFT_HALF, 0.0, 801, 12.0);
  RealSamples row = solve_nystrom(b.omega_full, b.kind, 0.0, grid);
  REQUIRE(row.size() == grid.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(row[i] - b.alpha(0.0, grid.points[i])));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("an exactly cancelling removal renders the system singular") {
  // Removing (kappa, c) = (1, sqrt(2)) makes I + G(x) vanish at x = 0.
  SeparableKernel omega =
      perturbation_pair({1.0, std::sqrt(2.0), -1, BoundStateFlavor::FULL_LEFT});
  AlphaKernel alpha = solve_separable(omega, IntervalKind::RIGHT_HALF);
  CHECK(thrown_code([&] { alpha.scalar(0.0, 0.5); }) ==
        ErrorCode::SINGULAR_SYSTEM);
  // Away from the crossing the solve is regular again.
  CHECK(std::isfinite(alpha.scalar(1.0, 1.5)));
}
