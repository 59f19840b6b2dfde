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
#include <vector>

#include "darboux/error.hpp"

namespace darboux {

// Finite sums of terms  c * t^p * exp(a t)  with complex c, a and small
// integer p >= 0. Closed under addition, multiplication, differentiation,
// and antidifferentiation, which makes every integral the kernel factors
// need exact: products of exponentials, hyperbolics, and plane waves all
// live here. Half-line tails are evaluated analytically when the decay
// condition holds and rejected otherwise.
class ExpSum {
public:
  struct Term {
    std::complex<double> coeff;
    std::complex<double> rate;
    int power = 0;
  };

  ExpSum() = default;
  explicit ExpSum(std::vector<Term> terms);

  // c * exp(a t)
  static ExpSum exponential(std::complex<double> c, std::complex<double> a);
  static ExpSum constant(std::complex<double> c);
  // c * sinh(a t), c * cosh(a t) as two-term exponentials
  static ExpSum sinh_fn(std::complex<double> c, std::complex<double> a);
  static ExpSum cosh_fn(std::complex<double> c, std::complex<double> a);
  // c * sin(k t), c * cos(k t)
  static ExpSum sin_fn(std::complex<double> c, std::complex<double> k);
  static ExpSum cos_fn(std::complex<double> c, std::complex<double> k);

  const std::vector<Term> &terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::complex<double> value(double t) const;
  double real_value(double t) const { return value(t).real(); }

  ExpSum operator+(const ExpSum &other) const;
  ExpSum operator-(const ExpSum &other) const;
  ExpSum operator*(const ExpSum &other) const;
  ExpSum scaled(std::complex<double> factor) const;

  ExpSum derivative() const;
  // Term-wise antiderivative; the constant of integration is zero.
  ExpSum antiderivative() const;

  std::complex<double> integral(double a, double b) const;
  // int_x^{+inf}; requires Re(rate) < 0 on every surviving term.
  std::complex<double> integral_right_tail(double x) const;
  // int_{-inf}^x; requires Re(rate) > 0 on every surviving term.
  std::complex<double> integral_left_tail(double x) const;

  bool right_tail_convergent() const;
  bool left_tail_convergent() const;

private:
  void normalize();
  std::vector<Term> terms_;
};

} // namespace darboux
