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

#include "darboux/expsum.hpp"
#include "darboux/grid.hpp"

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

TEST_CASE("factory forms evaluate like the std functions") {
  double t = 0.9;
  CHECK(ExpSum::exponential(2.0, -1.3).real_value(t) ==
        doctest::Approx(2.0 * std::exp(-1.3 * t)).epsilon(1e-14));
  CHECK(ExpSum::constant(4.5).real_value(t) == doctest::Approx(4.5));
  CHECK(ExpSum::sinh_fn(1.7, 2.0).real_value(t) ==
        doctest::Approx(1.7 * std::sinh(2.0 * t)).epsilon(1e-14));
  CHECK(ExpSum::cosh_fn(0.8, 1.1).real_value(t) ==
        doctest::Approx(0.8 * std::cosh(1.1 * t)).epsilon(1e-14));
  CHECK(ExpSum::sin_fn(2.0, 1.5).real_value(t) ==
        doctest::Approx(2.0 * std::sin(1.5 * t)).epsilon(1e-14));
  CHECK(ExpSum::cos_fn(2.0, 1.5).real_value(t) ==
        doctest::Approx(2.0 * std::cos(1.5 * t)).epsilon(1e-14));
  // Trigonometric forms built from complex exponentials stay real on the axis.
  CHECK(std::abs(ExpSum::sin_fn(2.0, 1.5).value(t).imag()) <= 1e-15);
}

TEST_CASE("arithmetic matches pointwise arithmetic of the values") {
  ExpSum a = ExpSum::exponential(1.5, 0.7) + ExpSum::constant(2.0);
  ExpSum b = ExpSum::sinh_fn(0.9, 1.2);
  ExpSum sum = a + b;
  ExpSum diff = a - b;
  ExpSum prod = a * b;
  ExpSum scl = a.scaled(-3.0);
  for (double t : {-0.8, 0.0, 0.4, 1.3}) {
    double av = 1.5 * std::exp(0.7 * t) + 2.0;
    double bv = 0.9 * std::sinh(1.2 * t);
    CHECK(sum.real_value(t) == doctest::Approx(av + bv).epsilon(1e-13));
    CHECK(diff.real_value(t) == doctest::Approx(av - bv).epsilon(1e-13));
    CHECK(prod.real_value(t) == doctest::Approx(av * bv).epsilon(1e-13));
    CHECK(scl.real_value(t) == doctest::Approx(-3.0 * av).epsilon(1e-13));
  }
}

TEST_CASE("differences cancel to the zero function") {
  ExpSum a = ExpSum::cosh_fn(1.3, 0.6) + ExpSum::exponential(0.4, -0.2);
  ExpSum z = a - a;
  for (double t : {-1.0, 0.0, 2.0}) {
    CHECK(std::abs(z.value(t)) <= 1e-15);
  }
}

TEST_CASE("antiderivative introduces polynomial factors where needed") {
  // Antidifferentiating a constant gives t, then t^2/2.
  ExpSum t_fn = ExpSum::constant(1.0).antiderivative();
  CHECK(t_fn.real_value(0.8) == doctest::Approx(0.8).epsilon(1e-14));
  ExpSum t_sq_half = t_fn.antiderivative();
  CHECK(t_sq_half.real_value(0.8) == doctest::Approx(0.32).epsilon(1e-14));
  // Round trip back down.
  CHECK(t_sq_half.derivative().real_value(0.8) ==
        doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("derivative inverts antiderivative on mixed sums") {
  ExpSum a = ExpSum::exponential(1.1, -0.9) + ExpSum::sin_fn(0.7, 2.2) +
             ExpSum::constant(0.3);
  ExpSum round = a.antiderivative().derivative();
  for (double t : {-0.5, 0.2, 1.7}) {
    CHECK(round.real_value(t) == doctest::Approx(a.real_value(t)).epsilon(1e-13));
  }
}

TEST_CASE("integral agrees with dense quadrature") {
  ExpSum e = ExpSum::sinh_fn(1.0, 1.3) * ExpSum::cos_fn(1.0, 0.4);
  double lo = 0.2, hi = 1.7;
  std::size_t n = 2001;
  double h = (hi - lo) / double(n - 1);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::sinh(1.3 * (lo + h * double(i))) *
           std::cos(0.4 * (lo + h * double(i)));
  }
  double numeric = integrate_uniform(v.data(), n, h);
  CHECK(e.integral(lo, hi).real() == doctest::Approx(numeric).epsilon(1e-11));
  CHECK(std::abs(e.integral(lo, hi).imag()) <= 1e-13);
}

TEST_CASE("integral handles polynomial-times-exponential terms") {
  // t e^{2t} over [0, 1] has antiderivative e^{2t}(2t - 1)/4.
  ExpSum te = ExpSum::constant(1.0).antiderivative() *
              ExpSum::exponential(1.0, 2.0);
  double exact = (std::exp(2.0) + 1.0) / 4.0;
  CHECK(te.integral(0.0, 1.0).real() == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("tail integrals are exact where they converge") {
  ExpSum decay = ExpSum::exponential(2.0, -2.0);
  CHECK(decay.right_tail_convergent());
  CHECK(decay.integral_right_tail(0.7).real() ==
        doctest::Approx(std::exp(-1.4)).epsilon(1e-14));

  ExpSum grow = ExpSum::exponential(1.5, 3.0);
  CHECK(grow.left_tail_convergent());
  CHECK(grow.integral_left_tail(-0.2).real() ==
        doctest::Approx(0.5 * std::exp(-0.6)).epsilon(1e-14));
}

TEST_CASE("non-decaying tails are rejected") {
  ExpSum ch = ExpSum::cosh_fn(1.0, 2.0);
  CHECK_FALSE(ch.right_tail_convergent());
  CHECK_FALSE(ch.left_tail_convergent());
  CHECK(thrown_code([&] { ch.integral_right_tail(0.0); }) ==
        ErrorCode::NONCONVERGENT_TAIL);
  CHECK(thrown_code([&] { ch.integral_left_tail(0.0); }) ==
        ErrorCode::NONCONVERGENT_TAIL);

  ExpSum flat = ExpSum::constant(1.0);
  CHECK(thrown_code([&] { flat.integral_right_tail(1.0); }) ==
        ErrorCode::NONCONVERGENT_TAIL);
}

TEST_CASE("plane-wave tails with a decaying envelope converge") {
  // e^{(i k - kappa) t} decays to the right for kappa > 0.
  ExpSum wave = ExpSum::exponential(1.0, std::complex<double>(-1.0, 2.0));
  CHECK(wave.right_tail_convergent());
  std::complex<double> tail = wave.integral_right_tail(0.0);
  // int_0^inf e^{(-1 + 2i) t} dt = 1 / (1 - 2i) = (1 + 2i) / 5
  CHECK(tail.real() == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(tail.imag() == doctest::Approx(0.4).epsilon(1e-13));
}
