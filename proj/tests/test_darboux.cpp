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

#include "darboux/darboux.hpp"
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

} // namespace

TEST_CASE("full-line pipeline stages hit their reference values") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);
  Involution J = Involution::identity(1);
  IntermediateBundle ib = make_intermediate_bundle(alpha, pert, J);

  CHECK(ib.rank == 1);
  CHECK(ib.n(0.5)(0, 0) ==
        doctest::Approx(1.39346632857301833).epsilon(1e-10));
  CHECK(ib.q(-0.4)(0, 0) ==
        doctest::Approx(0.356460000620665569).epsilon(1e-10));
  CHECK(ib.gtilde(0.5, -0.4)(0, 0) ==
        doctest::Approx(-0.0893008228905120884).epsilon(1e-9));
  CHECK(ib.Gamma(0.5)(0, 0) ==
        doctest::Approx(1.64685672493230481).epsilon(1e-10));
  CHECK(ib.Gamma(0.0)(0, 0) ==
        doctest::Approx(41.0 / 36.0).epsilon(1e-10));

  AlphaKernel at = make_alpha_tilde_kernel(alpha, ib);
  CHECK(at.scalar(0.5, -0.4) ==
        doctest::Approx(-0.518891749092921762).epsilon(1e-9));

  Matrix composed = compute_alpha_tilde(alpha, ib.n(0.5), ib.Gamma(0.5),
                                        ib.gtilde(0.5, -0.4), 0.5, -0.4);
  CHECK(composed(0, 0) ==
        doctest::Approx(-0.518891749092921762).epsilon(1e-9));
}

TEST_CASE("per-stage helpers agree with the bundle") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);
  Involution J = Involution::identity(1);

  Matrix n = compute_n(alpha, pert.terms[0].first, b.kind, 0.5);
  CHECK(n(0, 0) == doctest::Approx(1.39346632857301833).epsilon(1e-10));

  Matrix q = compute_q(alpha, pert.terms[0].second, J, b.kind, -0.4);
  CHECK(q(0, 0) == doctest::Approx(0.356460000620665569).epsilon(1e-10));

  // The twice-integrated Gamma route must land on the same value as the
  // once-integrated bundle route.
  IntermediateBundle ib = make_intermediate_bundle(alpha, pert, J);
  Matrix gamma = compute_gamma(ib.gtilde, pert.terms[0].first, b.kind, 0.5,
                               {2001, 20.0});
  CHECK(gamma(0, 0) == doctest::Approx(1.64685672493230481).epsilon(1e-7));
}

TEST_CASE("quadrature fallback matches the analytic path") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);

  // Strip the exact form so only the callable survives.
  Factor f_plain;
  f_plain.fn = pert.terms[0].first.fn;
  f_plain.dim = 1;
  Matrix n = compute_n(alpha, f_plain, b.kind, 0.5, {4001, 40.0});
  CHECK(n(0, 0) == doctest::Approx(1.39346632857301833).epsilon(1e-8));
}

TEST_CASE("gtilde through the resolvent agrees with the direct route") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);
  Involution J = Involution::identity(1);

  ResolventKernel r = resolvent_from_alpha(alpha, J, 0.5, {601, 40.0});
  Matrix gt = compute_gtilde_via_resolvent(pert.terms[0].second, r, b.kind,
                                           0.5, -0.4, {1501, 40.0});
  CHECK(gt(0, 0) == doctest::Approx(-0.0893008228905120884).epsilon(1e-6));
}

TEST_CASE("half-line pipeline stages hit their reference values") {
  OracleBundle b = oracle("EX5_8");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);
  Involution J = Involution::identity(1);
  IntermediateBundle ib = make_intermediate_bundle(alpha, pert, J);

  CHECK(ib.n(0.8)(0, 0) ==
        doctest::Approx(1.01409474687442172).epsilon(1e-10));
  CHECK(ib.q(0.7)(0, 0) ==
        doctest::Approx(0.854128354636352102).epsilon(1e-10));
  CHECK(ib.gtilde(1.2, 0.7)(0, 0) ==
        doctest::Approx(0.459861310658614737).epsilon(1e-9));
  CHECK(ib.Gamma(1.2)(0, 0) ==
        doctest::Approx(2.00449083865795723).epsilon(1e-10));

  AlphaKernel at = make_alpha_tilde_kernel(alpha, ib);
  CHECK(at.scalar(1.2, 0.7) ==
        doctest::Approx(-1.05047173034574024).epsilon(1e-9));
  CHECK(at.scalar(0.3, 0.1) ==
        doctest::Approx(-0.0613917990588814395).epsilon(1e-9));
  CHECK(at.scalar(0.9, 0.2) ==
        doctest::Approx(-0.290525533581176881).epsilon(1e-9));
  CHECK(at.scalar(2.1, 1.5) ==
        doctest::Approx(-0.776042703659572143).epsilon(1e-9));
}

TEST_CASE("half-line potential shift lands on the perturbed potential") {
  OracleBundle b = oracle("EX5_8");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);
  Involution J = Involution::identity(1);
  Grid grid = build_grid(IntervalKind::FINITE_LEFT, 2.2, 221, 8.0);
  ShiftProfiles sp = shift_profiles(alpha, pert, J, grid);

  REQUIRE(sp.delta_u_diag.size() == grid.size());
  // x = 1.1 and x = 0.5 sit at indices 110 and 50 on this axis.
  CHECK(b.u(1.1) + sp.delta_u_diag[110] ==
        doctest::Approx(-6.23669431704479933).epsilon(1e-6));
  CHECK(b.u(0.5) + sp.delta_u_diag[50] ==
        doctest::Approx(-4.82684872529666531).epsilon(1e-6));

  double route_gap = 0.0, gamma_min = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    route_gap = std::max(route_gap, std::abs(sp.delta_u_diag[i] -
                                             sp.delta_u_loggamma[i]));
    gamma_min = std::min(gamma_min, sp.gamma[i]);
  }
  CHECK(route_gap <= 3e-5);
  CHECK(gamma_min > 0.0);
}

TEST_CASE("two edits on a flat background compose to the chained result") {
  // Inserting both states of the two-exponential case at once, on the zero
  // kernel, must match the one-at-a-time chain.
  AlphaKernel zero = AlphaKernel::zero(IntervalKind::LEFT_HALF);
  SeparableKernel pert;
  for (auto spec :
       {BoundStateSpec{1.0, std::sqrt(2.0), +1, BoundStateFlavor::FULL_RIGHT},
        BoundStateSpec{2.0, 1.0, +1, BoundStateFlavor::FULL_RIGHT}}) {
    SeparableKernel pair = perturbation_pair(spec);
    pert.terms.push_back(pair.terms[0]);
  }
  Involution J = Involution::identity(1);

  IntermediateBundle ib = make_intermediate_bundle(zero, pert, J);
  CHECK(ib.rank == 2);
  AlphaKernel at = make_alpha_tilde_kernel(zero, ib);
  CHECK(at.scalar(0.5, -0.4) ==
        doctest::Approx(-0.518891749092921762).epsilon(1e-9));

  Grid grid = build_grid(IntervalKind::LEFT_HALF, 0.6, 431, 8.0);
  ShiftProfiles sp = shift_profiles(zero, pert, J, grid);
  // Flat background, so delta u is the whole perturbed potential. The axis
  // puts x = -1.2, 0, 0.6 at indices 340, 400, 430.
  CHECK(sp.delta_u_diag[400] ==
        doctest::Approx(-4.03688280785246877).epsilon(1e-6));
  CHECK(sp.delta_u_diag[430] ==
        doctest::Approx(-5.9790367316430187).epsilon(1e-6));
  CHECK(sp.delta_u_diag[340] ==
        doctest::Approx(-0.665404657924928761).epsilon(1e-6));
  for (double g : sp.gamma) {
    CHECK(g > 0.0);
  }
}

TEST_CASE("standalone shift routes match the closed-form difference") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel pert = perturbation_pair(b.edit);
  Involution J = Involution::identity(1);
  IntermediateBundle ib = make_intermediate_bundle(alpha, pert, J);
  AlphaKernel at = make_alpha_tilde_kernel(alpha, ib);
  Grid grid = build_grid(IntervalKind::LEFT_HALF, 0.6, 431, 8.0);

  RealSamples from_diag = potential_shift_from_diagonal(at, alpha, grid);
  RealSamples from_gamma = potential_shift_log_gamma(ib.Gamma, grid);
  double worst_diag = 0.0, worst_gamma = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double closed = b.u_tilde(grid.points[i]) - b.u(grid.points[i]);
    worst_diag = std::max(worst_diag, std::abs(from_diag[i] - closed));
    worst_gamma = std::max(worst_gamma, std::abs(from_gamma[i] - closed));
  }
  CHECK(worst_diag <= 1e-5);
  CHECK(worst_gamma <= 1e-5);
}

TEST_CASE("a removal that exhausts Gamma is rejected") {
  AlphaKernel zero = AlphaKernel::zero(IntervalKind::RIGHT_HALF);
  SeparableKernel pert =
      perturbation_pair({1.0, 10.0, -1, BoundStateFlavor::FULL_LEFT});
  Involution J = Involution::identity(1);
  Grid grid = build_grid(IntervalKind::RIGHT_HALF, 0.0, 201, 8.0);
  CHECK(thrown_code([&] { shift_profiles(zero, pert, J, grid); }) ==
        ErrorCode::NONPOSITIVE_GAMMA);
}

TEST_CASE("rank-0 perturbations leave the kernel unchanged") {
  OracleBundle b = oracle("EX5_5");
  AlphaKernel alpha = solve_separable(b.background, b.kind);
  SeparableKernel empty;
  Involution J = Involution::identity(1);
  IntermediateBundle ib = make_intermediate_bundle(alpha, empty, J);
  CHECK(ib.rank == 0);
  AlphaKernel at = make_alpha_tilde_kernel(alpha, ib);
  CHECK(at.scalar(0.5, -0.4) ==
        doctest::Approx(alpha.scalar(0.5, -0.4)).epsilon(1e-13));
}
