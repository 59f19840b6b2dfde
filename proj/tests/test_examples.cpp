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
#include <complex>
#include <optional>
#include <set>

#include "darboux/reference_examples.hpp"

using namespace darboux;

/* Every numeric constant below was produced by an independent
 * arbitrary-precision implementation of the same closed formulas and then
 * frozen. The catalog entries must keep reproducing them bit-for-bit up to
 * rounding noise.
 */

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

TEST_CASE("the catalog lists thirteen entries with stable ids") {
  const auto &cat = example_catalog();
  REQUIRE(cat.size() == 13);
  CHECK(cat.front().id == "EX5_1");
  std::set<std::string> ids;
  for (const auto &e : cat) {
    ids.insert(e.id);
    OracleBundle b = oracle(e.id);
    CHECK(b.kind == e.kind);
    CHECK(b.has_edit == e.has_edit);
    CHECK_FALSE(b.summary.empty());
    CHECK(b.omega_smooth == (e.id != "EX5_9"));
  }
  for (const char *id :
       {"EX5_5", "EX5_9", "FULLLINE_LEFT_GEN", "FULLLINE_RIGHT_GEN",
        "DIRICHLET_GEN", "NONDIRICHLET_GEN"}) {
    CHECK(ids.count(id) == 1);
  }
}

TEST_CASE("full-line resolvent values") {
  OracleBundle b1 = oracle("EX5_1");
  CHECK(b1.resolvent(0.0, -1.0, -2.0) ==
        doctest::Approx(-0.049787068367863943).epsilon(1e-13));
  CHECK(b1.resolvent(0.7, 0.2, -0.5) ==
        doctest::Approx(-0.293091559400415762).epsilon(1e-13));

  OracleBundle b2 = oracle("EX5_2");
  CHECK(b2.false_resolvent(0.7, 0.2, -0.5) ==
        doctest::Approx(-0.238619910826415706).epsilon(1e-13));
  CHECK(b2.alpha(0.2, -0.5) == doctest::Approx(b1.resolvent(0.2, 0.2, -0.5))
                                   .epsilon(1e-13));
}

TEST_CASE("two-exponential chain values") {
  OracleBundle b = oracle("EX5_5");
  CHECK(b.kappa1 == doctest::Approx(1.0));
  CHECK(b.kappa2 == doctest::Approx(2.0));
  CHECK(b.alpha(0.5, -0.4) ==
        doctest::Approx(-0.59445247512809421).epsilon(1e-13));
  CHECK(b.n(0.5) == doctest::Approx(1.39346632857301833).epsilon(1e-13));
  CHECK(b.q(-0.4) == doctest::Approx(0.356460000620665569).epsilon(1e-13));
  CHECK(b.gtilde(0.5, -0.4) ==
        doctest::Approx(-0.0893008228905120884).epsilon(1e-13));
  CHECK(b.Gamma(0.5) == doctest::Approx(1.64685672493230481).epsilon(1e-13));
  CHECK(b.Gamma(0.0) == doctest::Approx(41.0 / 36.0).epsilon(1e-14));
  CHECK(b.alpha_tilde(0.5, -0.4) ==
        doctest::Approx(-0.518891749092921762).epsilon(1e-13));
  CHECK(b.u(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(b.u_tilde(0.0) ==
        doctest::Approx(-4.03688280785246877).epsilon(1e-13));
  CHECK(b.u_tilde(0.6) ==
        doctest::Approx(-5.9790367316430187).epsilon(1e-13));
  CHECK(b.u_tilde(-1.2) ==
        doctest::Approx(-0.665404657924928761).epsilon(1e-13));

  std::complex<double> psi = b.psi(0.5, 0.4);
  CHECK(psi.real() == doctest::Approx(-0.211548322530233031).epsilon(1e-13));
  CHECK(psi.imag() == doctest::Approx(-0.52032324411821383).epsilon(1e-13));
  std::complex<double> pt = b.psi_tilde(0.5, 0.3);
  CHECK(pt.real() == doctest::Approx(-0.272854059523237433).epsilon(1e-13));
  CHECK(pt.imag() == doctest::Approx(-0.404114524332164378).epsilon(1e-13));
}

TEST_CASE("two-exponential potential decays on both flanks") {
  OracleBundle b = oracle("EX5_5");
  CHECK(b.u_tilde(-5.0) ==
        doctest::Approx(-0.000363182949619477044).epsilon(1e-12));
  CHECK(b.u_tilde(-4.0) ==
        doctest::Approx(-0.00268280104373744769).epsilon(1e-12));
  CHECK(b.u_tilde(4.0) ==
        doctest::Approx(-0.0241369823208683919).epsilon(1e-12));
  CHECK(b.u_tilde(4.5) ==
        doctest::Approx(-0.00888330669649604537).epsilon(1e-12));
  CHECK(b.u_tilde(5.0) ==
        doctest::Approx(-0.00326849783375542562).epsilon(1e-12));
}

TEST_CASE("half-line closed forms") {
  OracleBundle b6 = oracle("EX5_6");
  CHECK(b6.alpha(1.2, 0.7) ==
        doctest::Approx(-0.648183209543291919).epsilon(1e-13));

  OracleBundle b7 = oracle("EX5_7");
  CHECK(b7.resolvent(1.3, 0.9, 0.4) ==
        doctest::Approx(-0.208354826651897804).epsilon(1e-13));

  OracleBundle b8 = oracle("EX5_8");
  std::complex<double> psi = b8.psi(0.7, 1.1);
  CHECK(psi.real() == doctest::Approx(0.59309733045461044).epsilon(1e-13));
  CHECK(b8.u(1.1) == doctest::Approx(-3.09743599901122225).epsilon(1e-13));
  CHECK(b8.n(0.8) == doctest::Approx(1.01409474687442172).epsilon(1e-13));
  CHECK(b8.q(0.7) == doctest::Approx(0.854128354636352102).epsilon(1e-13));
  CHECK(b8.gtilde(1.2, 0.7) ==
        doctest::Approx(0.459861310658614737).epsilon(1e-13));
  CHECK(b8.Gamma(1.2) == doctest::Approx(2.00449083865795723).epsilon(1e-13));
  CHECK(b8.alpha_tilde(1.2, 0.7) ==
        doctest::Approx(-1.05047173034574024).epsilon(1e-13));
  CHECK(b8.alpha_tilde(0.3, 0.1) ==
        doctest::Approx(-0.0613917990588814395).epsilon(1e-13));
  CHECK(b8.alpha_tilde(0.9, 0.2) ==
        doctest::Approx(-0.290525533581176881).epsilon(1e-13));
  CHECK(b8.alpha_tilde(2.1, 1.5) ==
        doctest::Approx(-0.776042703659572143).epsilon(1e-13));
}

TEST_CASE("kinked data kernel closed forms") {
  OracleBundle b = oracle("EX5_9");
  CHECK_FALSE(b.omega_smooth);
  CHECK(b.omega(0.9, 0.3) ==
        doctest::Approx(b.omega_full.value(0.9, 0.3)(0, 0)).epsilon(1e-14));
  CHECK(b.alpha(0.9, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.resolvent(1.4, 0.9, 0.3) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(b.false_resolvent(1.4, 0.9, 0.3) ==
        doctest::Approx(1.58055930241171288).epsilon(1e-13));
  CHECK(b.Gamma(1.0) == doctest::Approx(4.19452804946532511).epsilon(1e-13));
  CHECK(b.alpha_tilde(0.9, 0.4) ==
        doctest::Approx(-0.716297870199024421).epsilon(1e-13));
  CHECK(b.u_tilde(0.9) ==
        doctest::Approx(-0.973834722296683125).epsilon(1e-13));
  // The background potential is flat; all motion comes from the edit.
  CHECK(b.u(0.9) == doctest::Approx(0.0));
}

TEST_CASE("flat-background full-line entries mirror each other") {
  OracleBundle gl = oracle("FULLLINE_LEFT_GEN");
  OracleBundle gr = oracle("FULLLINE_RIGHT_GEN");
  CHECK(gl.kind == IntervalKind::RIGHT_HALF);
  CHECK(gr.kind == IntervalKind::LEFT_HALF);

  CHECK(gl.u_tilde(0.3) ==
        doctest::Approx(-1.83027392365325836).epsilon(1e-13));
  CHECK(gr.u_tilde(-0.3) ==
        doctest::Approx(gl.u_tilde(0.3)).epsilon(1e-14));

  std::complex<double> pl = gl.psi_tilde(0.8, 0.6);
  std::complex<double> pr = gr.psi_tilde(0.8, -0.6);
  CHECK(pl.real() == doctest::Approx(0.740891271464261036).epsilon(1e-13));
  CHECK(pl.imag() == doctest::Approx(0.131115385221244551).epsilon(1e-13));
  CHECK(std::abs(pl - pr) <= 1e-14);
}

TEST_CASE("flat-background half-line entries") {
  OracleBundle nd = oracle("NONDIRICHLET_GEN");
  CHECK(nd.u_tilde(0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(nd.u_tilde(0.5) == doctest::Approx(-0.165702656427).epsilon(1e-9));
  CHECK(nd.u_tilde(1.0) == doctest::Approx(-1.05630047004).epsilon(1e-9));
  CHECK(nd.u_tilde(2.0) == doctest::Approx(-1.038739009).epsilon(1e-8));

  OracleBundle nd2 = oracle("NONDIRICHLET_GEN", {{"c1", std::sqrt(2.0)}});
  CHECK(nd2.u_tilde(0.9) ==
        doctest::Approx(-0.5218684107908661).epsilon(1e-12));
  std::complex<double> pt = nd2.psi_tilde(0.7, 1.1);
  CHECK(pt.real() == doctest::Approx(-0.198900811447172865).epsilon(1e-12));
  CHECK(std::abs(pt.imag()) <= 1e-14);

  OracleBundle di = oracle("DIRICHLET_GEN");
  CHECK(di.Gamma(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  // Dirichlet seeds vanish at the origin, so the potential shift does too.
  CHECK(std::abs(di.u_tilde(0.0)) <= 1e-12);
}

TEST_CASE("parameter overrides rebuild the closed forms") {
  OracleBundle base = oracle("EX5_5");
  OracleBundle moved = oracle("EX5_5", {{"kappa2", 3.0}});
  CHECK(moved.kappa2 == doctest::Approx(3.0));
  CHECK(moved.Gamma(0.5) != doctest::Approx(base.Gamma(0.5)).epsilon(1e-12));
}

TEST_CASE("bad ids and bad parameters are rejected") {
  CHECK(thrown_code([] { oracle("EX5_99"); }) == ErrorCode::UNKNOWN_ID);
  CHECK(thrown_code([] { oracle("EX5_5", {{"kappa2", 1.0}}); }) ==
        ErrorCode::DEGENERATE_PARAMS);
  CHECK(thrown_code([] { oracle("EX5_5", {{"bogus", 1.0}}); }) ==
        ErrorCode::DEGENERATE_PARAMS);
  CHECK(thrown_code([] { oracle("EX5_5", {{"c1", -1.0}}); }) ==
        ErrorCode::DEGENERATE_PARAMS);
  CHECK(thrown_code([] { oracle("EX5_5", {{"kappa1", 0.0}}); }) ==
        ErrorCode::DEGENERATE_PARAMS);
}

TEST_CASE("solver output coincides with each entry's closed-form kernel") {
  for (const char *id : {"EX5_2", "EX5_5", "EX5_6", "EX5_8", "EX5_9"}) {
    OracleBundle b = oracle(id);
    AlphaKernel alpha = solve_separable(b.background, b.kind);
    double x = (b.kind == IntervalKind::LEFT_HALF) ? 0.2 : 1.2;
    double y = (b.kind == IntervalKind::LEFT_HALF) ? -0.3 : 0.7;
    CHECK(alpha.scalar(x, y) ==
          doctest::Approx(b.alpha(x, y)).epsilon(1e-11));
  }
}
