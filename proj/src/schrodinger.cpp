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

#include "darboux/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace darboux {

namespace {

constexpr double kTailRatioLimit = 1e-6;
constexpr double kProbeStep = 1e-3;
constexpr std::complex<double> kImag{0.0, 1.0};

struct Span {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

std::optional<Span> truncated_interval(IntervalKind kind, double x, double L) {
  Span s;
  switch (kind) {
  case IntervalKind::RIGHT_HALF:
    s = {x, std::max(L, x)};
    break;
  case IntervalKind::LEFT_HALF:
    s = {std::min(-L, x), x};
    break;
  case IntervalKind::FINITE_LEFT:
    s = {0.0, x};
    break;
  }
  if (s.length() <= 0.0) {
    return std::nullopt;
  }
  return s;
}

int odd_count(int wanted) {
  int n = std::max(wanted, 3);
  return (n % 2 == 0) ? n + 1 : n;
}

// Node count that keeps the composite rule's per-span error small even on
// wide windows, while honoring an explicit larger request.
int span_nodes(const QuadratureSpec &quad, double length) {
  int scaled = int(std::ceil(length * 200.0)) + 1;
  return odd_count(std::max(quad.n_points, scaled));
}

void check_tail_decay(const ComplexSamples &values, IntervalKind kind,
                      const char *what) {
  if (kind == IntervalKind::FINITE_LEFT || values.empty()) {
    return;
  }
  double peak = 0.0;
  for (const auto &v : values) {
    peak = std::max(peak, std::abs(v));
  }
  double edge = (kind == IntervalKind::RIGHT_HALF) ? std::abs(values.back())
                                                   : std::abs(values.front());
  if (peak > 0.0 && edge > kTailRatioLimit * peak) {
    throw Error(ErrorCode::NONCONVERGENT_TAIL,
                std::string(what) +
                    " does not decay at the truncated end; edge/peak ratio " +
                    std::to_string(edge / peak));
  }
}

ExpSum seed_form(WavefunctionKind kind, std::complex<double> k) {
  switch (kind) {
  case WavefunctionKind::JOST_LEFT:
    return ExpSum::exponential(1.0, kImag * k);
  case WavefunctionKind::JOST_RIGHT:
    return ExpSum::exponential(1.0, -kImag * k);
  case WavefunctionKind::REGULAR_DIRICHLET:
    if (std::abs(k) < 1e-14) {
      return ExpSum({{1.0, 0.0, 1}});
    }
    return ExpSum::sin_fn(1.0 / k, k);
  case WavefunctionKind::REGULAR_NON_DIRICHLET:
  default:
    return ExpSum::cos_fn(1.0, k);
  }
}

WavefunctionKind flavor_wavefunction(BoundStateFlavor flavor) {
  switch (flavor) {
  case BoundStateFlavor::FULL_LEFT:
    return WavefunctionKind::JOST_LEFT;
  case BoundStateFlavor::FULL_RIGHT:
    return WavefunctionKind::JOST_RIGHT;
  case BoundStateFlavor::DIRICHLET:
    return WavefunctionKind::REGULAR_DIRICHLET;
  case BoundStateFlavor::NON_DIRICHLET:
  default:
    return WavefunctionKind::REGULAR_NON_DIRICHLET;
  }
}

void check_flavor_pairing(const Wavefunction &psi,
                          const BoundStateSpec &spec) {
  WavefunctionKind wanted = flavor_wavefunction(spec.flavor);
  if (psi.kind != wanted) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string("bound-state flavor ") +
                    bound_state_flavor_name(spec.flavor) + " pairs with " +
                    wavefunction_kind_name(wanted) + ", got " +
                    wavefunction_kind_name(psi.kind));
  }
}

} // namespace

const char *wavefunction_kind_name(WavefunctionKind kind) {
  switch (kind) {
  case WavefunctionKind::JOST_LEFT:
    return "JOST_LEFT";
  case WavefunctionKind::JOST_RIGHT:
    return "JOST_RIGHT";
  case WavefunctionKind::REGULAR_DIRICHLET:
    return "REGULAR_DIRICHLET";
  case WavefunctionKind::REGULAR_NON_DIRICHLET:
  default:
    return "REGULAR_NON_DIRICHLET";
  }
}

IntervalKind wavefunction_interval(WavefunctionKind kind) {
  switch (kind) {
  case WavefunctionKind::JOST_LEFT:
    return IntervalKind::RIGHT_HALF;
  case WavefunctionKind::JOST_RIGHT:
    return IntervalKind::LEFT_HALF;
  case WavefunctionKind::REGULAR_DIRICHLET:
  case WavefunctionKind::REGULAR_NON_DIRICHLET:
  default:
    return IntervalKind::FINITE_LEFT;
  }
}

std::complex<double> wavefunction_from_alpha(const AlphaKernel &alpha,
                                             WavefunctionKind kind,
                                             std::complex<double> k, double x,
                                             const QuadratureSpec &quad) {
  if (wavefunction_interval(kind) != alpha.kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string(wavefunction_kind_name(kind)) + " pairs with " +
                    interval_kind_name(wavefunction_interval(kind)) +
                    " kernels, got " + interval_kind_name(alpha.kind));
  }
  if (alpha.dim != 1) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "wavefunction evaluation needs a scalar kernel, got dim " +
                    std::to_string(alpha.dim));
  }
  ExpSum seed = seed_form(kind, k);
  if (alpha.has_row_form()) {
    return seed.value(x) +
           interval_integral(alpha.row_form(x) * seed, alpha.kind, x);
  }
  auto span = truncated_interval(alpha.kind, x, quad.truncation);
  if (!span) {
    return seed.value(x);
  }
  int n = span_nodes(quad, span->length());
  double h = span->length() / double(n - 1);
  ComplexSamples vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = span->lo + h * double(i);
    vals[std::size_t(i)] = alpha.scalar(x, z) * seed.value(z);
  }
  check_tail_decay(vals, alpha.kind, "wavefunction integrand");
  return seed.value(x) + integrate_uniform(vals.data(), vals.size(), h);
}

Wavefunction make_wavefunction(const AlphaKernel &alpha, WavefunctionKind kind,
                               const QuadratureSpec &quad) {
  if (wavefunction_interval(kind) != alpha.kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string(wavefunction_kind_name(kind)) + " pairs with " +
                    interval_kind_name(wavefunction_interval(kind)) +
                    " kernels, got " + interval_kind_name(alpha.kind));
  }
  Wavefunction psi;
  psi.kind = kind;
  psi.eval = [alpha, kind, quad](std::complex<double> k, double x) {
    return wavefunction_from_alpha(alpha, kind, k, x, quad);
  };
  return psi;
}

std::complex<double> darboux_wavefunction_shift(
    const Wavefunction &psi,
    const std::function<std::complex<double>(double)> &psi_at_ikappa,
    const BoundStateSpec &spec, std::complex<double> k, double x,
    const QuadratureSpec &quad) {
  spec.validate();
  check_flavor_pairing(psi, spec);
  IntervalKind kind = flavor_interval(spec.flavor);
  double s = double(spec.sign);
  double c2 = spec.c * spec.c;

  auto span = truncated_interval(kind, x, quad.truncation);
  if (!span) {
    return 0.0;
  }
  int n = span_nodes(quad, span->length());
  double h = span->length() / double(n - 1);
  ComplexSamples num(static_cast<std::size_t>(n));
  ComplexSamples den(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = span->lo + h * double(i);
    std::complex<double> pk = psi_at_ikappa(z);
    num[std::size_t(i)] = psi.eval(k, z) * pk;
    den[std::size_t(i)] = pk * pk;
  }
  check_tail_decay(num, kind, "wavefunction pair integrand");
  check_tail_decay(den, kind, "bound-state norm integrand");
  std::complex<double> pair = integrate_uniform(num.data(), num.size(), h);
  std::complex<double> norm = integrate_uniform(den.data(), den.size(), h);
  std::complex<double> denominator = 1.0 + s * c2 * norm;
  if (std::abs(denominator) <
      1e-12 * std::max(1.0, std::abs(s * c2 * norm))) {
    throw Error(ErrorCode::ZERO_DENOMINATOR,
                "bound-state normalization denominator vanishes at x = " +
                    std::to_string(x));
  }
  return -s * c2 * psi_at_ikappa(x) * pair / denominator;
}

ComplexSamples wavefunction_shift_profile(
    const Wavefunction &psi,
    const std::function<std::complex<double>(double)> &psi_at_ikappa,
    const BoundStateSpec &spec, std::complex<double> k, const Grid &grid,
    const QuadratureSpec &quad) {
  spec.validate();
  check_flavor_pairing(psi, spec);
  IntervalKind kind = flavor_interval(spec.flavor);
  if (grid.kind != kind) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string("profile grid is ") +
                    interval_kind_name(grid.kind) + ", flavor needs " +
                    interval_kind_name(kind));
  }
  std::size_t n = grid.size();
  if (n < 8) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "shift profile needs at least 8 grid points, got " +
                    std::to_string(n));
  }
  double s = double(spec.sign);
  double c2 = spec.c * spec.c;

  ComplexSamples psis(n), pk(n), num(n), den(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = grid.points[i];
    psis[i] = psi.eval(k, z);
    pk[i] = psi_at_ikappa(z);
    num[i] = psis[i] * pk[i];
    den[i] = pk[i] * pk[i];
  }

  // Portion of the interval outside the sample window.
  std::complex<double> piece_num = 0.0;
  std::complex<double> piece_den = 0.0;
  std::optional<Span> rest;
  if (kind == IntervalKind::RIGHT_HALF) {
    double L = std::max(quad.truncation, grid.back());
    if (L > grid.back()) {
      rest = Span{grid.back(), L};
    }
  } else if (kind == IntervalKind::LEFT_HALF) {
    double L = std::max(quad.truncation, -grid.front());
    if (-L < grid.front()) {
      rest = Span{-L, grid.front()};
    }
  } else if (grid.front() > 0.0) {
    rest = Span{0.0, grid.front()};
  }
  if (rest) {
    int np = odd_count(std::max(quad.n_points, 2001));
    double hp = rest->length() / double(np - 1);
    ComplexSamples rn(static_cast<std::size_t>(np)), rd(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
      double z = rest->lo + hp * double(i);
      std::complex<double> p = psi_at_ikappa(z);
      rn[std::size_t(i)] = psi.eval(k, z) * p;
      rd[std::size_t(i)] = p * p;
    }
    check_tail_decay(rn, kind, "wavefunction pair integrand");
    check_tail_decay(rd, kind, "bound-state norm integrand");
    piece_num = integrate_uniform(rn.data(), rn.size(), hp);
    piece_den = integrate_uniform(rd.data(), rd.size(), hp);
  }

  // Running integrals grow away from the anchored side, so the RIGHT_HALF
  // family accumulates over the reversed axis to avoid cancelling two
  // nearly equal totals.
  bool reversed = (kind == IntervalKind::RIGHT_HALF);
  if (reversed) {
    std::reverse(num.begin(), num.end());
    std::reverse(den.begin(), den.end());
  }
  ComplexSamples cum_num = cumulative_integral(num, grid.h);
  ComplexSamples cum_den = cumulative_integral(den, grid.h);

  ComplexSamples out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t at = reversed ? (n - 1 - i) : i;
    std::complex<double> pair = piece_num + cum_num[at];
    std::complex<double> norm = piece_den + cum_den[at];
    std::complex<double> denominator = 1.0 + s * c2 * norm;
    if (std::abs(denominator) <
        1e-12 * std::max(1.0, std::abs(s * c2 * norm))) {
      throw Error(ErrorCode::ZERO_DENOMINATOR,
                  "bound-state normalization denominator vanishes at x = " +
                      std::to_string(grid.points[i]));
    }
    out[i] = psis[i] - s * c2 * pk[i] * pair / denominator;
  }
  return out;
}

std::complex<double> bilinear_pair_integral(const Wavefunction &psi,
                                            double kappa,
                                            std::complex<double> k, double x) {
  if (kappa <= 0.0) {
    throw Error(ErrorCode::DEGENERATE_PARAMS,
                "kappa must be positive, got " + std::to_string(kappa));
  }
  std::complex<double> denom = k * k + kappa * kappa;
  if (std::abs(denom) < 1e-12) {
    throw Error(ErrorCode::ZERO_DENOMINATOR,
                "k^2 + kappa^2 vanishes; the pair integral has no Wronskian "
                "form there");
  }
  bool half_line = (wavefunction_interval(psi.kind) ==
                    IntervalKind::FINITE_LEFT);
  double lo = half_line ? 0.0 : x - 2.0;
  double hi = x + 2.0;
  std::complex<double> ik = kImag * kappa;
  auto at_k = [&](double t) { return psi.eval(k, t); };
  auto at_ik = [&](double t) { return psi.eval(ik, t); };
  std::complex<double> fk = psi.eval(k, x);
  std::complex<double> fik = psi.eval(ik, x);
  std::complex<double> dfk = stencil_derivative(at_k, x, 1, kProbeStep, lo, hi);
  std::complex<double> dfik =
      stencil_derivative(at_ik, x, 1, kProbeStep, lo, hi);
  std::complex<double> wronskian = dfk * fik - fk * dfik;
  if (psi.kind == WavefunctionKind::JOST_LEFT) {
    return wronskian / denom;
  }
  return -wronskian / denom;
}

double schrodinger_residual(const Wavefunction &psi, const PotentialProfile &u,
                            std::complex<double> k, const Grid &grid) {
  std::size_t n = grid.size();
  if (n < 3) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "residual needs at least 3 grid points, got " +
                    std::to_string(n));
  }
  if (u.u.size() != n) {
    throw Error(ErrorCode::LENGTH_MISMATCH,
                "potential has " + std::to_string(u.u.size()) +
                    " samples for " + std::to_string(n) + " grid points");
  }
  ComplexSamples vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = psi.eval(k, grid.points[i]);
  }
  double h2 = grid.h * grid.h;
  std::complex<double> k2 = k * k;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    std::complex<double> second =
        (vals[i - 1] - 2.0 * vals[i] + vals[i + 1]) / h2;
    worst = std::max(worst,
                     std::abs(-second + (u.u[i] - k2) * vals[i]));
  }
  return worst;
}

StandardDarbouxResult standard_darboux_fullline(const PotentialProfile &u,
                                                const Wavefunction &f_l,
                                                const Wavefunction &f_r,
                                                double kappa, double gamma_dep,
                                                std::complex<double> k) {
  if (f_l.kind != WavefunctionKind::JOST_LEFT ||
      f_r.kind != WavefunctionKind::JOST_RIGHT) {
    throw Error(ErrorCode::KIND_MISMATCH,
                "the full-line method needs a JOST_LEFT and a JOST_RIGHT "
                "solution");
  }
  if (kappa <= 0.0) {
    throw Error(ErrorCode::DEGENERATE_PARAMS,
                "kappa must be positive, got " + std::to_string(kappa));
  }
  if (std::abs(k + kImag * kappa) < 1e-12) {
    throw Error(ErrorCode::ZERO_DENOMINATOR,
                "k + i kappa vanishes at the requested spectral point");
  }
  std::size_t n = u.grid.size();
  if (n < 6) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "potential window needs at least 6 points, got " +
                    std::to_string(n));
  }
  std::complex<double> ik = kImag * kappa;
  auto fl = f_l.eval;
  auto fr = f_r.eval;
  std::function<double(double)> eta = [fl, fr, ik, gamma_dep](double t) {
    return (fl(ik, t) + gamma_dep * fr(ik, t)).real();
  };
  std::function<double(double)> log_eta = [eta](double t) {
    double e = eta(t);
    if (e <= 0.0) {
      throw Error(ErrorCode::ETA_NOT_POSITIVE,
                  "eta(x) <= 0 at x = " + std::to_string(t) +
                      "; the requested level does not sit below the "
                      "existing spectrum");
    }
    return std::log(e);
  };
  double lo = u.grid.front();
  double hi = u.grid.back();

  PotentialProfile shifted;
  shifted.grid = u.grid;
  shifted.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = u.grid.points[i];
    log_eta(x);
    shifted.u[i] =
        u.u[i] - 2.0 * stencil_derivative(log_eta, x, 2, kProbeStep, lo, hi);
  }

  auto transformed = [eta, lo,
                      hi](const std::function<std::complex<double>(
                              std::complex<double>, double)> &base,
                          std::complex<double> coeff_ik,
                          std::complex<double> kk, double x,
                          double kap) -> std::complex<double> {
    if (std::abs(kk + kImag * kap) < 1e-12) {
      throw Error(ErrorCode::ZERO_DENOMINATOR,
                  "k + i kappa vanishes at the requested spectral point");
    }
    double e = eta(x);
    if (e <= 0.0) {
      throw Error(ErrorCode::ETA_NOT_POSITIVE,
                  "eta(x) <= 0 at x = " + std::to_string(x));
    }
    auto slice = [&](double t) { return base(kk, t); };
    std::complex<double> df =
        stencil_derivative(slice, x, 1, kProbeStep, lo, hi);
    double de = stencil_derivative(eta, x, 1, kProbeStep, lo, hi);
    return coeff_ik / (kk + kImag * kap) * (df - (de / e) * base(kk, x));
  };

  Wavefunction fl_t;
  fl_t.kind = WavefunctionKind::JOST_LEFT;
  fl_t.eval = [transformed, fl, kappa](std::complex<double> kk, double x) {
    return transformed(fl, -kImag, kk, x, kappa);
  };
  Wavefunction fr_t;
  fr_t.kind = WavefunctionKind::JOST_RIGHT;
  fr_t.eval = [transformed, fr, kappa](std::complex<double> kk, double x) {
    return transformed(fr, kImag, kk, x, kappa);
  };
  return {std::move(shifted), std::move(fl_t), std::move(fr_t)};
}

GelfandLevitanResult gelfand_levitan_dirichlet(const Wavefunction &phi,
                                               double kappa, double C,
                                               std::complex<double> k,
                                               double x,
                                               const QuadratureSpec &quad) {
  if (phi.kind != WavefunctionKind::REGULAR_DIRICHLET) {
    throw Error(ErrorCode::KIND_MISMATCH,
                "the Dirichlet comparator needs a REGULAR_DIRICHLET "
                "solution");
  }
  if (kappa <= 0.0) {
    throw Error(ErrorCode::DEGENERATE_PARAMS,
                "kappa must be positive, got " + std::to_string(kappa));
  }
  if (x < 0.0) {
    throw Error(ErrorCode::OUT_OF_DOMAIN,
                "half-line coordinate must satisfy x >= 0, got " +
                    std::to_string(x));
  }
  std::complex<double> ik = kImag * kappa;
  double C2 = C * C;
  std::function<double(double)> phik = [&phi, ik](double t) {
    return phi.eval(ik, t).real();
  };

  std::complex<double> pair = 0.0;
  double norm = 0.0;
  if (x > 0.0) {
    int n = span_nodes(quad, x);
    double h = x / double(n - 1);
    ComplexSamples num(static_cast<std::size_t>(n));
    RealSamples den(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double z = h * double(i);
      double p = phik(z);
      num[std::size_t(i)] = phi.eval(k, z) * p;
      den[std::size_t(i)] = p * p;
    }
    pair = integrate_uniform(num.data(), num.size(), h);
    norm = integrate_uniform(den.data(), den.size(), h);
  }
  double denominator = 1.0 + C2 * norm;
  if (std::abs(denominator) < 1e-12 * std::max(1.0, std::abs(C2 * norm))) {
    throw Error(ErrorCode::ZERO_DENOMINATOR,
                "normalization denominator vanishes at x = " +
                    std::to_string(x));
  }
  double px = phik(x);
  double dpx = stencil_derivative(phik, x, 1, kProbeStep, 0.0, x + 2.0);
  double ratio = C2 * px * px / denominator;
  GelfandLevitanResult out;
  out.delta_u = -2.0 * (2.0 * C2 * px * dpx / denominator - ratio * ratio);
  out.phi_tilde = phi.eval(k, x) - C2 * px * pair / denominator;
  return out;
}

} // namespace darboux
