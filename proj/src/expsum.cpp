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

#include "darboux/expsum.hpp"

#include <algorithm>
#include <cmath>

namespace darboux {

namespace {
constexpr double kDropTol = 0.0; // keep exact zeros out, nothing else
constexpr std::complex<double> kI{0.0, 1.0};

bool same_rate(const std::complex<double> &a, const std::complex<double> &b) {
  return a.real() == b.real() && a.imag() == b.imag();
}
} // namespace

ExpSum::ExpSum(std::vector<Term> terms) : terms_(std::move(terms)) {
  normalize();
}

void ExpSum::normalize() {
  std::vector<Term> merged;
  for (const Term &t : terms_) {
    if (std::abs(t.coeff) <= kDropTol) continue;
    bool hit = false;
    for (Term &m : merged) {
      if (m.power == t.power && same_rate(m.rate, t.rate)) {
        m.coeff += t.coeff;
        hit = true;
        break;
      }
    }
    if (!hit) merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term &t) {
                                return t.coeff == std::complex<double>(0.0);
                              }),
               merged.end());
  terms_ = std::move(merged);
}

ExpSum ExpSum::exponential(std::complex<double> c, std::complex<double> a) {
  return ExpSum({Term{c, a, 0}});
}

ExpSum ExpSum::constant(std::complex<double> c) {
  return ExpSum({Term{c, 0.0, 0}});
}

ExpSum ExpSum::sinh_fn(std::complex<double> c, std::complex<double> a) {
  return ExpSum({Term{c * 0.5, a, 0}, Term{-c * 0.5, -a, 0}});
}

ExpSum ExpSum::cosh_fn(std::complex<double> c, std::complex<double> a) {
  return ExpSum({Term{c * 0.5, a, 0}, Term{c * 0.5, -a, 0}});
}

ExpSum ExpSum::sin_fn(std::complex<double> c, std::complex<double> k) {
  const std::complex<double> half = c / (2.0 * kI);
  return ExpSum({Term{half, kI * k, 0}, Term{-half, -kI * k, 0}});
}

ExpSum ExpSum::cos_fn(std::complex<double> c, std::complex<double> k) {
  return ExpSum({Term{c * 0.5, kI * k, 0}, Term{c * 0.5, -kI * k, 0}});
}

std::complex<double> ExpSum::value(double t) const {
  std::complex<double> s = 0.0;
  for (const Term &term : terms_) {
    double tp = 1.0;
    for (int i = 0; i < term.power; ++i) tp *= t;
    s += term.coeff * tp * std::exp(term.rate * t);
  }
  return s;
}

ExpSum ExpSum::operator+(const ExpSum &other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return ExpSum(std::move(all));
}

ExpSum ExpSum::operator-(const ExpSum &other) const {
  return *this + other.scaled(-1.0);
}

ExpSum ExpSum::operator*(const ExpSum &other) const {
  std::vector<Term> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const Term &a : terms_) {
    for (const Term &b : other.terms_) {
      prod.push_back(Term{a.coeff * b.coeff, a.rate + b.rate,
                          a.power + b.power});
    }
  }
  return ExpSum(std::move(prod));
}

ExpSum ExpSum::scaled(std::complex<double> factor) const {
  std::vector<Term> out = terms_;
  for (Term &t : out) t.coeff *= factor;
  return ExpSum(std::move(out));
}

ExpSum ExpSum::derivative() const {
  std::vector<Term> out;
  for (const Term &t : terms_) {
    if (t.power > 0) {
      out.push_back(Term{t.coeff * double(t.power), t.rate, t.power - 1});
    }
    if (t.rate != std::complex<double>(0.0)) {
      out.push_back(Term{t.coeff * t.rate, t.rate, t.power});
    }
  }
  return ExpSum(std::move(out));
}

ExpSum ExpSum::antiderivative() const {
  // int t^p e^{at} dt = e^{at} sum_{j=0..p} (-1)^j p!/(p-j)! t^{p-j}/a^{j+1}
  // for a != 0; t^{p+1}/(p+1) for a == 0.
  std::vector<Term> out;
  for (const Term &t : terms_) {
    if (t.rate == std::complex<double>(0.0)) {
      out.push_back(Term{t.coeff / double(t.power + 1), 0.0, t.power + 1});
      continue;
    }
    std::complex<double> c = t.coeff;
    for (int j = 0; j <= t.power; ++j) {
      c = (j == 0) ? t.coeff / t.rate : -c * double(t.power - j + 1) / t.rate;
      out.push_back(Term{c, t.rate, t.power - j});
    }
  }
  return ExpSum(std::move(out));
}

std::complex<double> ExpSum::integral(double a, double b) const {
  ExpSum F = antiderivative();
  return F.value(b) - F.value(a);
}

bool ExpSum::right_tail_convergent() const {
  for (const Term &t : terms_) {
    if (!(t.rate.real() < 0.0)) return false;
  }
  return true;
}

bool ExpSum::left_tail_convergent() const {
  for (const Term &t : terms_) {
    if (!(t.rate.real() > 0.0)) return false;
  }
  return true;
}

std::complex<double> ExpSum::integral_right_tail(double x) const {
  if (!right_tail_convergent()) {
    throw Error(ErrorCode::NONCONVERGENT_TAIL,
                "integrand does not decay toward +inf");
  }
  ExpSum F = antiderivative();
  return -F.value(x);
}

std::complex<double> ExpSum::integral_left_tail(double x) const {
  if (!left_tail_convergent()) {
    throw Error(ErrorCode::NONCONVERGENT_TAIL,
                "integrand does not decay toward -inf");
  }
  ExpSum F = antiderivative();
  return F.value(x);
}

} // namespace darboux
