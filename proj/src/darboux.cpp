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

#include "darboux/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "darboux/error.hpp"

namespace darboux {

namespace {

constexpr double kCondLimit = 1e12;
constexpr double kTailRatioLimit = 1e-6;
constexpr double kFineStep = 5e-4;
constexpr double kDiagonalProbe = 1e-4;

// 16-node Gauss-Legendre rule on [-1, 1], nodes at +/- kGaussX[i].
constexpr int kGaussHalf = 8;
constexpr double kGaussX[kGaussHalf] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878317,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGaussW[kGaussHalf] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

struct Span {
  double lo = 0.0;
  double hi = 0.0;
};

// Truncated realization of I(x); empty when the span collapses.
std::optional<Span> truncated_interval(IntervalKind kind, double x, double L) {
  Span s;
  switch (kind) {
  case IntervalKind::RIGHT_HALF: s = {x, L}; break;
  case IntervalKind::LEFT_HALF: s = {-L, x}; break;
  case IntervalKind::FINITE_LEFT: s = {0.0, x}; break;
  }
  if (!(s.hi - s.lo > 0.0)) return std::nullopt;
  return s;
}

void check_kind(IntervalKind have, IntervalKind want) {
  if (have != want) {
    throw Error(ErrorCode::KIND_MISMATCH,
                std::string(interval_kind_name(have)) +
                    " kernel used in a " + interval_kind_name(want) +
                    " computation");
  }
}

// Rejects quadrature whose integrand has not decayed at the truncated end
// of an infinite interval.
void check_tail_decay(const std::vector<double> &norms, IntervalKind kind) {
  if (kind == IntervalKind::FINITE_LEFT || norms.empty()) return;
  double peak = 0.0;
  for (double v : norms) peak = std::max(peak, v);
  if (peak <= 0.0) return;
  const double edge =
      (kind == IntervalKind::RIGHT_HALF) ? norms.back() : norms.front();
  if (edge > kTailRatioLimit * peak) {
    throw Error(ErrorCode::NONCONVERGENT_TAIL,
                "integrand has not decayed at the truncation cutoff");
  }
}

std::vector<double> first_derivative_o4(const std::vector<double> &f,
                                        double h) {
  const std::size_t n = f.size();
  if (n < 5) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "fourth-order first derivative needs at least 5 samples");
  }
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
          3.0 * f[4]) * s;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
  }
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] +
              6.0 * f[n - 4] - f[n - 5]) * s;
  d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
              16.0 * f[n - 4] + 3.0 * f[n - 5]) * s;
  return d;
}

std::vector<double> second_derivative_o4(const std::vector<double> &f,
                                         double h) {
  const std::size_t n = f.size();
  if (n < 6) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "fourth-order second derivative needs at least 6 samples");
  }
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h * h);
  d[0] = (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] +
          61.0 * f[4] - 10.0 * f[5]) * s;
  d[1] = (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] -
          6.0 * f[4] + f[5]) * s;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] -
            f[i + 2]) * s;
  }
  d[n - 2] = (10.0 * f[n - 1] - 15.0 * f[n - 2] - 4.0 * f[n - 3] +
              14.0 * f[n - 4] - 6.0 * f[n - 5] + f[n - 6]) * s;
  d[n - 1] = (45.0 * f[n - 1] - 154.0 * f[n - 2] + 214.0 * f[n - 3] -
              156.0 * f[n - 4] + 61.0 * f[n - 5] - 10.0 * f[n - 6]) * s;
  return d;
}

} // namespace

Matrix compute_n(const AlphaKernel &alpha, const Factor &f, IntervalKind kind,
                 double x, const QuadratureSpec &quad) {
  check_kind(alpha.kind, kind);
  if (f.dim != alpha.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "factor and kernel dimensions disagree");
  }
  Matrix out = f(x);
  if (alpha.dim == 1 && alpha.has_row_form() && f.form) {
    out(0, 0) +=
        interval_integral(alpha.row_form(x) * (*f.form), kind, x).real();
    return out;
  }
  const auto span = truncated_interval(kind, x, quad.truncation);
  if (!span) return out;
  const int np = quad.n_points;
  const double h = (span->hi - span->lo) / (np - 1);
  const std::vector<double> w = quadrature_weights(std::size_t(np), h);
  for (int i = 0; i < np; ++i) {
    const double z = span->lo + h * i;
    out += w[std::size_t(i)] * (alpha.value(x, z) * f(z));
  }
  return out;
}

Matrix compute_q(const AlphaKernel &alpha, const Factor &g,
                 const Involution &J, IntervalKind kind, double y,
                 const QuadratureSpec &quad) {
  check_kind(alpha.kind, kind);
  if (g.dim != alpha.dim || J.dim() != alpha.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "factor, involution, and kernel dimensions disagree");
  }
  Matrix out = g(y);
  if (alpha.dim == 1 && alpha.has_row_form() && g.form) {
    // Scalar J conjugation is the identity on a real kernel value.
    out(0, 0) +=
        interval_integral(alpha.row_form(y) * (*g.form), kind, y).real();
    return out;
  }
  const auto span = truncated_interval(kind, y, quad.truncation);
  if (!span) return out;
  const int np = quad.n_points;
  const double h = (span->hi - span->lo) / (np - 1);
  const std::vector<double> w = quadrature_weights(std::size_t(np), h);
  for (int i = 0; i < np; ++i) {
    const double z = span->lo + h * i;
    out += w[std::size_t(i)] * (g(z) * J.conjugate(alpha.value(y, z)));
  }
  return out;
}

Matrix compute_gtilde(const Factor &q, const AlphaKernel &alpha,
                      IntervalKind kind, double x, double y,
                      const QuadratureSpec &quad) {
  check_kind(alpha.kind, kind);
  if (q.dim != alpha.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "factor and kernel dimensions disagree");
  }
  if (!alpha.in_closure(x, y)) {
    throw Error(ErrorCode::OUT_OF_DOMAIN,
                "y = " + std::to_string(y) +
                    " is outside the interval at x = " + std::to_string(x));
  }
  Matrix out = q(y);
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  if (!(hi - lo > 0.0)) return out;
  const int np = quad.n_points;
  const double h = (hi - lo) / (np - 1);
  const std::vector<double> w = quadrature_weights(std::size_t(np), h);
  for (int i = 0; i < np; ++i) {
    const double z = lo + h * i;
    out += w[std::size_t(i)] * (q(z) * alpha.value(z, y));
  }
  return out;
}

Matrix compute_gtilde_via_resolvent(const Factor &g, const ResolventKernel &r,
                                    IntervalKind kind, double x, double y,
                                    const QuadratureSpec &quad) {
  check_kind(r.kind, kind);
  if (g.dim != r.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "factor and resolvent dimensions disagree");
  }
  if (std::abs(r.anchor - x) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw Error(ErrorCode::OUT_OF_DOMAIN,
                "resolvent is anchored at " + std::to_string(r.anchor) +
                    ", not at " + std::to_string(x));
  }
  if (!r.in_domain(y, y)) {
    throw Error(ErrorCode::OUT_OF_DOMAIN,
                "y = " + std::to_string(y) +
                    " is outside the interval at x = " + std::to_string(x));
  }
  Matrix out = g(y);
  const auto span = truncated_interval(kind, x, quad.truncation);
  if (!span) return out;
  const int np = quad.n_points;
  const double h = (span->hi - span->lo) / (np - 1);
  const std::vector<double> w = quadrature_weights(std::size_t(np), h);
  for (int i = 0; i < np; ++i) {
    const double z = span->lo + h * i;
    out += w[std::size_t(i)] * (g(z) * r.eval(z, y));
  }
  return out;
}

Matrix compute_gamma(const std::function<Matrix(double, double)> &gtilde,
                     const Factor &f, IntervalKind kind, double x,
                     const QuadratureSpec &quad) {
  const int N = f.dim;
  const Matrix identity = Matrix::Identity(N, N);
  const auto span = truncated_interval(kind, x, quad.truncation);
  if (!span) return identity;
  const int np = quad.n_points;
  const double h = (span->hi - span->lo) / (np - 1);
  const std::vector<double> w = quadrature_weights(std::size_t(np), h);
  Matrix acc = Matrix::Zero(N, N);
  std::vector<double> norms(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i) {
    const double z = span->lo + h * i;
    const Matrix term = gtilde(x, z) * f(z);
    norms[std::size_t(i)] = term.cwiseAbs().maxCoeff();
    acc += w[std::size_t(i)] * term;
  }
  check_tail_decay(norms, kind);
  return identity + acc;
}

Matrix compute_alpha_tilde(const AlphaKernel &alpha, const Matrix &n,
                           const Matrix &Gamma, const Matrix &gtilde, double x,
                           double y) {
  if (Gamma.rows() == 0) return alpha.value(x, y);
  if (Gamma.rows() != Gamma.cols() || n.cols() != Gamma.rows() ||
      gtilde.rows() != Gamma.rows() || n.rows() != alpha.dim ||
      gtilde.cols() != alpha.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH, "bundle block shapes disagree");
  }
  Eigen::JacobiSVD<Matrix> svd(Gamma,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto &sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || smax > kCondLimit * smin) {
    throw Error(ErrorCode::SINGULAR_GAMMA,
                "Gamma is numerically singular at x = " + std::to_string(x));
  }
  return alpha.value(x, y) - n * svd.solve(gtilde);
}

IntermediateBundle make_intermediate_bundle(const AlphaKernel &alpha,
                                            const SeparableKernel &perturbation,
                                            const Involution &J,
                                            const QuadratureSpec &quad) {
  if (perturbation.dim != alpha.dim || J.dim() != alpha.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "perturbation, involution, and kernel dimensions disagree");
  }
  const IntervalKind kind = alpha.kind;
  const int N = alpha.dim;
  const int m = perturbation.rank();
  std::vector<Factor> fs, gs;
  fs.reserve(std::size_t(m));
  gs.reserve(std::size_t(m));
  for (const auto &[f, g] : perturbation.terms) {
    fs.push_back(f);
    gs.push_back(g);
  }

  IntermediateBundle b;
  b.kind = kind;
  b.dim = N;
  b.rank = m;
  b.n = [alpha, fs, kind, quad, N, m](double x) {
    Matrix out(N, m * N);
    for (int j = 0; j < m; ++j) {
      out.block(0, j * N, N, N) =
          compute_n(alpha, fs[std::size_t(j)], kind, x, quad);
    }
    return out;
  };
  b.q = [alpha, gs, J, kind, quad, N, m](double y) {
    Matrix out(N, m * N);
    for (int j = 0; j < m; ++j) {
      out.block(0, j * N, N, N) =
          compute_q(alpha, gs[std::size_t(j)], J, kind, y, quad);
    }
    return out;
  };
  b.gtilde = [alpha, gs, J, kind, quad, N, m](double x, double y) {
    Matrix out(m * N, N);
    for (int j = 0; j < m; ++j) {
      const Factor gj = gs[std::size_t(j)];
      Factor qj;
      qj.dim = N;
      qj.fn = [alpha, gj, J, kind, quad](double t) {
        return compute_q(alpha, gj, J, kind, t, quad);
      };
      out.block(j * N, 0, N, N) = compute_gtilde(qj, alpha, kind, x, y, quad);
    }
    return out;
  };
  // Rows n_j(z) and q_j(z) with closed-form tail integrals are smooth, so
  // the once-integrated Gamma can use Gauss-Legendre panels sized to the
  // stiffest exponential rate and reach roundoff-level accuracy.
  bool analytic = (N == 1 && alpha.has_row_form());
  double stiffness = 1.0;
  for (const auto &[f, g] : perturbation.terms) {
    if (!f.form || !g.form) analytic = false;
  }
  if (analytic) {
    auto absorb = [&stiffness](const ExpSum &e) {
      for (const auto &t : e.terms()) {
        stiffness = std::max(stiffness, std::abs(t.rate));
      }
    };
    for (const auto &[f, g] : perturbation.terms) {
      absorb(*f.form);
      absorb(*g.form);
    }
    for (const ExpSum &gf : alpha.separable->g_forms) absorb(gf);
  }

  // Once-integrated form: swapping the integration order in the literal
  // Gamma turns the inner gtilde into n, leaving one pass over q and n.
  b.Gamma = [nr = b.n, qr = b.q, kind, quad, N, m, analytic,
             stiffness](double x) {
    Matrix out = Matrix::Identity(m * N, m * N);
    const auto span = truncated_interval(kind, x, quad.truncation);
    if (!span || m == 0) return out;
    auto cross = [&](double z) {
      const Matrix qv = qr(z);
      const Matrix nv = nr(z);
      Matrix term(m * N, m * N);
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          term.block(j * N, k * N, N, N) =
              qv.block(0, j * N, N, N) * nv.block(0, k * N, N, N);
        }
      }
      return term;
    };
    Matrix acc = Matrix::Zero(m * N, m * N);
    if (analytic) {
      const double width = std::min(2.0, 2.0 / stiffness);
      const int panels =
          std::max(1, int(std::ceil((span->hi - span->lo) / width)));
      const double pw = (span->hi - span->lo) / panels;
      double peak = 0.0;
      for (int p = 0; p < panels; ++p) {
        const double mid = span->lo + pw * (p + 0.5);
        for (int g = 0; g < kGaussHalf; ++g) {
          for (double sg : {-1.0, 1.0}) {
            const Matrix term = cross(mid + sg * (pw / 2.0) * kGaussX[g]);
            peak = std::max(peak, term.cwiseAbs().maxCoeff());
            acc += (pw / 2.0) * kGaussW[g] * term;
          }
        }
      }
      if (kind != IntervalKind::FINITE_LEFT && peak > 0.0) {
        const double edge =
            (kind == IntervalKind::RIGHT_HALF) ? span->hi : span->lo;
        if (cross(edge).cwiseAbs().maxCoeff() > kTailRatioLimit * peak) {
          throw Error(ErrorCode::NONCONVERGENT_TAIL,
                      "integrand has not decayed at the truncation cutoff");
        }
      }
      return Matrix(out + acc);
    }
    const int np = quad.n_points;
    const double h = (span->hi - span->lo) / (np - 1);
    const std::vector<double> w = quadrature_weights(std::size_t(np), h);
    std::vector<double> norms(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
      const Matrix term = cross(span->lo + h * i);
      norms[std::size_t(i)] = term.cwiseAbs().maxCoeff();
      acc += w[std::size_t(i)] * term;
    }
    check_tail_decay(norms, kind);
    return Matrix(out + acc);
  };
  return b;
}

AlphaKernel make_alpha_tilde_kernel(const AlphaKernel &alpha,
                                    const IntermediateBundle &bundle) {
  check_kind(bundle.kind, alpha.kind);
  if (bundle.dim != alpha.dim) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "bundle and kernel dimensions disagree");
  }
  struct AnchorData {
    Matrix n;
    Matrix Gamma;
  };
  auto cache = std::make_shared<std::unordered_map<double, AnchorData>>();
  AlphaKernel base = alpha;
  IntermediateBundle b = bundle;
  KernelFn fn = [base, b, cache](double x, double y) {
    auto it = cache->find(x);
    if (it == cache->end()) {
      it = cache->emplace(x, AnchorData{b.n(x), b.Gamma(x)}).first;
    }
    return compute_alpha_tilde(base, it->second.n, it->second.Gamma,
                               b.gtilde(x, y), x, y);
  };
  return AlphaKernel::from_function(std::move(fn), alpha.kind, alpha.dim);
}

RealSamples potential_shift_from_diagonal(const AlphaKernel &alpha_tilde,
                                          const AlphaKernel &alpha,
                                          const Grid &grid) {
  check_kind(alpha_tilde.kind, alpha.kind);
  check_kind(alpha.kind, grid.kind);
  if (alpha.dim != 1 || alpha_tilde.dim != 1) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "potential shifts are defined for scalar kernels");
  }
  const std::size_t n = grid.size();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.points[i];
    double hp = kDiagonalProbe;
    if (grid.kind == IntervalKind::FINITE_LEFT) hp = std::min(hp, x);
    if (hp > 0.0) {
      diag[i] = diagonal_limit(alpha_tilde, x, hp)(0, 0) -
                diagonal_limit(alpha, x, hp)(0, 0);
    } else {
      diag[i] = alpha_tilde.scalar(x, x) - alpha.scalar(x, x);
    }
  }
  const double s = (grid.kind == IntervalKind::RIGHT_HALF) ? -2.0 : 2.0;
  std::vector<double> d = first_derivative_o4(diag, grid.h);
  for (double &v : d) v *= s;
  return d;
}

RealSamples
potential_shift_log_gamma(const std::function<Matrix(double)> &Gamma,
                          const Grid &grid) {
  const std::size_t n = grid.size();
  std::vector<double> lng(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix G = Gamma(grid.points[i]);
    const double det = (G.rows() == 1) ? G(0, 0) : G.determinant();
    if (!(det > 0.0)) {
      throw Error(ErrorCode::NONPOSITIVE_GAMMA,
                  "det Gamma <= 0 at x = " + std::to_string(grid.points[i]));
    }
    lng[i] = std::log(det);
  }
  std::vector<double> d = second_derivative_o4(lng, grid.h);
  for (double &v : d) v *= -2.0;
  return d;
}

ShiftProfiles shift_profiles(const AlphaKernel &alpha,
                             const SeparableKernel &perturbation,
                             const Involution &J, const Grid &grid,
                             const QuadratureSpec &quad) {
  check_kind(alpha.kind, grid.kind);
  if (alpha.dim != 1 || perturbation.dim != 1 || J.dim() != 1) {
    throw Error(ErrorCode::DIMENSION_MISMATCH,
                "profile pipeline is defined for scalar kernels");
  }
  const std::size_t n = grid.size();
  const int m = perturbation.rank();
  ShiftProfiles out;
  if (m == 0) {
    out.diagonal.assign(n, 0.0);
    out.delta_u_diag.assign(n, 0.0);
    out.delta_u_loggamma.assign(n, 0.0);
    out.gamma.assign(n, 1.0);
    return out;
  }

  bool analytic = alpha.has_row_form();
  for (const auto &[f, g] : perturbation.terms) {
    if (!f.form || !g.form) analytic = false;
  }

  // Writes [n_1..n_m](z) and [q_1..q_m](z) for one z.
  std::function<void(double, double *, double *)> rows;
  if (analytic) {
    const auto data = alpha.separable;
    const int r = data->rank;
    std::vector<ExpSum> bf(static_cast<std::size_t>(r * m)), bg(static_cast<std::size_t>(r * m));
    for (int k = 0; k < r; ++k) {
      for (int j = 0; j < m; ++j) {
        bf[std::size_t(k * m + j)] =
            data->g_forms[std::size_t(k)] *
            (*perturbation.terms[std::size_t(j)].first.form);
        bg[std::size_t(k * m + j)] =
            data->g_forms[std::size_t(k)] *
            (*perturbation.terms[std::size_t(j)].second.form);
      }
    }
    const IntervalKind kind = grid.kind;
    const auto terms = perturbation.terms;
    rows = [data, bf, bg, kind, terms, r, m](double z, double *nz,
                                             double *qz) {
      const Matrix c = data->coeff_row(z);
      for (int j = 0; j < m; ++j) {
        double nv = terms[std::size_t(j)].first.form->real_value(z);
        double qv = terms[std::size_t(j)].second.form->real_value(z);
        for (int k = 0; k < r; ++k) {
          nv -= c(0, k) *
                interval_integral(bf[std::size_t(k * m + j)], kind, z).real();
          qv -= c(0, k) *
                interval_integral(bg[std::size_t(k * m + j)], kind, z).real();
        }
        nz[j] = nv;
        qz[j] = qv;
      }
    };
  } else {
    const AlphaKernel base = alpha;
    const auto terms = perturbation.terms;
    const IntervalKind kind = grid.kind;
    const QuadratureSpec q2 = quad;
    const Involution Jc = J;
    rows = [base, terms, kind, q2, Jc, m](double z, double *nz, double *qz) {
      for (int j = 0; j < m; ++j) {
        nz[j] = compute_n(base, terms[std::size_t(j)].first, kind, z, q2)(0, 0);
        qz[j] =
            compute_q(base, terms[std::size_t(j)].second, Jc, kind, z, q2)(0, 0);
      }
    };
  }

  const int refine =
      analytic ? std::max(1, int(std::ceil(grid.h / kFineStep))) : 1;
  const std::size_t nf = (n - 1) * std::size_t(refine) + 1;
  const double hf = grid.h / refine;
  const double x0 = grid.front();

  std::vector<double> nrow(nf * std::size_t(m)), qrow(nf * std::size_t(m));
  for (std::size_t i = 0; i < nf; ++i) {
    rows(x0 + hf * double(i), &nrow[i * std::size_t(m)],
         &qrow[i * std::size_t(m)]);
  }

  // Straight quadrature over the part of I(x) outside the grid window.
  Matrix piece = Matrix::Zero(m, m);
  {
    std::optional<Span> span;
    if (grid.kind == IntervalKind::RIGHT_HALF) {
      span = truncated_interval(grid.kind, grid.back(), quad.truncation);
    } else if (grid.kind == IntervalKind::LEFT_HALF) {
      span = truncated_interval(grid.kind, grid.front(), quad.truncation);
    } else if (grid.front() > 0.0) {
      span = Span{0.0, grid.front()};
    }
    if (span) {
      const int np = std::max(quad.n_points, 2001) | 1;
      const double h = (span->hi - span->lo) / (np - 1);
      const std::vector<double> w = quadrature_weights(std::size_t(np), h);
      std::vector<double> nz(static_cast<std::size_t>(m)), qz(static_cast<std::size_t>(m));
      std::vector<double> norms(static_cast<std::size_t>(np));
      for (int i = 0; i < np; ++i) {
        const double z = span->lo + h * i;
        rows(z, nz.data(), qz.data());
        double peak = 0.0;
        for (int j = 0; j < m; ++j) {
          for (int k = 0; k < m; ++k) {
            const double t = qz[std::size_t(j)] * nz[std::size_t(k)];
            piece(j, k) += w[std::size_t(i)] * t;
            peak = std::max(peak, std::abs(t));
          }
        }
        norms[std::size_t(i)] = peak;
      }
      check_tail_decay(norms, grid.kind);
    }
  }

  // Running integrals of q_j n_k along the fine axis, oriented away from
  // the anchor side so that small values near the anchor stay exact.
  const bool reversed = (grid.kind == IntervalKind::RIGHT_HALF);
  std::vector<RealSamples> cum(static_cast<std::size_t>(m * m));
  {
    RealSamples prod(nf);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < nf; ++i) {
          const std::size_t at = reversed ? (nf - 1 - i) : i;
          prod[i] = qrow[at * std::size_t(m) + std::size_t(j)] *
                    nrow[at * std::size_t(m) + std::size_t(k)];
        }
        cum[std::size_t(j * m + k)] = cumulative_integral(prod, hf);
      }
    }
  }

  std::vector<double> dvals(nf), lng(nf), dets(nf);
  Matrix G(m, m);
  Eigen::VectorXd nv(m), qv(m);
  for (std::size_t i = 0; i < nf; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const std::size_t at = reversed ? (nf - 1 - i) : i;
        G(j, k) = ((j == k) ? 1.0 : 0.0) + piece(j, k) +
                  cum[std::size_t(j * m + k)][at];
      }
      nv(j) = nrow[i * std::size_t(m) + std::size_t(j)];
      qv(j) = qrow[i * std::size_t(m) + std::size_t(j)];
    }
    const double det = (m == 1) ? G(0, 0) : G.determinant();
    if (!(det > 0.0)) {
      throw Error(ErrorCode::NONPOSITIVE_GAMMA,
                  "det Gamma <= 0 at x = " +
                      std::to_string(x0 + hf * double(i)));
    }
    dets[i] = det;
    lng[i] = std::log(det);
    if (m == 1) {
      dvals[i] = -nv(0) * qv(0) / det;
    } else {
      Eigen::PartialPivLU<Matrix> lu(G);
      dvals[i] = -nv.dot(lu.solve(qv));
    }
  }

  const std::vector<double> du = first_derivative_o4(dvals, hf);
  const std::vector<double> dl = second_derivative_o4(lng, hf);
  const double s = (grid.kind == IntervalKind::RIGHT_HALF) ? -2.0 : 2.0;
  out.diagonal.resize(n);
  out.delta_u_diag.resize(n);
  out.delta_u_loggamma.resize(n);
  out.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t fi = i * std::size_t(refine);
    out.diagonal[i] = dvals[fi];
    out.delta_u_diag[i] = s * du[fi];
    out.delta_u_loggamma[i] = -2.0 * dl[fi];
    out.gamma[i] = dets[fi];
  }
  return out;
}

} // namespace darboux
