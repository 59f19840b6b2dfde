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

#include "darboux/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace darboux {

namespace {

std::string trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string &token, const std::string &what) {
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument(token);
    }
    return v;
  } catch (const std::exception &) {
    throw Error(ErrorCode::CONFIG_ERROR,
                "cannot read '" + token + "' as a number for " + what);
  }
}

bool parse_bool(const std::string &token, const std::string &what) {
  std::string t = lower(token);
  if (t == "true" || t == "yes" || t == "1") {
    return true;
  }
  if (t == "false" || t == "no" || t == "0") {
    return false;
  }
  throw Error(ErrorCode::CONFIG_ERROR,
              "cannot read '" + token + "' as a boolean for " + what);
}

BoundStateFlavor parse_flavor(const std::string &token) {
  std::string t = lower(token);
  if (t == "full_left") {
    return BoundStateFlavor::FULL_LEFT;
  }
  if (t == "full_right") {
    return BoundStateFlavor::FULL_RIGHT;
  }
  if (t == "dirichlet") {
    return BoundStateFlavor::DIRICHLET;
  }
  if (t == "non_dirichlet") {
    return BoundStateFlavor::NON_DIRICHLET;
  }
  throw Error(ErrorCode::CONFIG_ERROR,
              "unknown flavor '" + token +
                  "'; use full_left, full_right, dirichlet, or non_dirichlet");
}

IntervalKind parse_interval(const std::string &token) {
  std::string t = lower(token);
  if (t == "right_half") {
    return IntervalKind::RIGHT_HALF;
  }
  if (t == "left_half") {
    return IntervalKind::LEFT_HALF;
  }
  if (t == "finite_left") {
    return IntervalKind::FINITE_LEFT;
  }
  throw Error(ErrorCode::CONFIG_ERROR,
              "unknown interval '" + token +
                  "'; use right_half, left_half, or finite_left");
}

BoundStateSpec parse_bound_state(const std::string &value,
                                 const std::string &what) {
  std::istringstream in(value);
  std::string flavor_token, kappa_token, c_token, sign_token, extra;
  in >> flavor_token >> kappa_token >> c_token;
  if (flavor_token.empty() || kappa_token.empty() || c_token.empty()) {
    throw Error(ErrorCode::CONFIG_ERROR,
                what + " needs '<flavor> <kappa> <c> [<sign>]', got '" +
                    value + "'");
  }
  BoundStateSpec spec;
  spec.flavor = parse_flavor(flavor_token);
  spec.kappa = parse_number(kappa_token, what + " kappa");
  spec.c = parse_number(c_token, what + " c");
  spec.sign = +1;
  if (in >> sign_token) {
    std::string t = lower(sign_token);
    if (t == "add" || t == "+1" || t == "1") {
      spec.sign = +1;
    } else if (t == "remove" || t == "-1") {
      spec.sign = -1;
    } else {
      throw Error(ErrorCode::CONFIG_ERROR,
                  what + " sign must be +1, -1, add, or remove, got '" +
                      sign_token + "'");
    }
  }
  if (in >> extra) {
    throw Error(ErrorCode::CONFIG_ERROR,
                what + " has trailing text '" + extra + "'");
  }
  return spec;
}

// Uniform odd-count quadrature axis over [lo, hi].
std::vector<double> axis_nodes(double lo, double hi, int n) {
  std::vector<double> nodes(static_cast<std::size_t>(n));
  double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = lo + h * i;
  }
  nodes.back() = hi;
  return nodes;
}

// I(x) cut down to the sampling window [front, back].
bool cut_interval(IntervalKind kind, double x, double front, double back,
                  double &lo, double &hi) {
  switch (kind) {
  case IntervalKind::RIGHT_HALF:
    lo = x;
    hi = back;
    break;
  case IntervalKind::LEFT_HALF:
    lo = front;
    hi = x;
    break;
  case IntervalKind::FINITE_LEFT:
    lo = 0.0;
    hi = x;
    break;
  }
  return hi - lo > 0.0;
}

double omega_at(const GeneralKernel &omega, double z, double y) {
  return omega.value(z, y)(0, 0);
}

struct ResidualScan {
  double max_defect = 0.0;
  double scale = 1.0; // max(1, max |omega| over the sampled pairs)
};

// a(x, .) sampled across an axis, through the analytic row when available.
std::vector<double> alpha_row(const AlphaKernel &alpha, double x,
                              const std::vector<double> &nodes) {
  std::vector<double> out(nodes.size());
  if (alpha.has_row_form()) {
    ExpSum row = alpha.row_form(x);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out[i] = row.real_value(nodes[i]);
    }
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out[i] = alpha.scalar(x, nodes[i]);
    }
  }
  return out;
}

// a(x,y) + w(x,y) + int over I(x) of a(x,z) w(z,y) dz across sampled
// anchor pairs, normalized by the kernel scale. The interval is cut to the
// sampling window; the discarded tails are exponentially below the scale.
ResidualScan scan_fundamental(const AlphaKernel &alpha,
                              const GeneralKernel &omega, const Grid &grid,
                              int n_anchor, int nq) {
  ResidualScan scan;
  auto anchors = axis_nodes(grid.front(), grid.back(), n_anchor);
  double omega_max = 0.0;
  double defect = 0.0;
  std::vector<double> vals(static_cast<std::size_t>(nq));
  for (double x : anchors) {
    double lo = 0.0, hi = 0.0;
    bool nonempty = cut_interval(grid.kind, x, grid.front(), grid.back(),
                                 lo, hi);
    std::vector<double> nodes, avals;
    double h = 0.0;
    if (nonempty) {
      nodes = axis_nodes(lo, hi, nq);
      h = nodes[1] - nodes[0];
      avals = alpha_row(alpha, x, nodes);
    }
    for (double y : anchors) {
      if (!alpha.in_closure(x, y)) {
        continue;
      }
      omega_max = std::max(omega_max, std::abs(omega_at(omega, x, y)));
      double integral = 0.0;
      if (nonempty) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          vals[i] = avals[i] * omega_at(omega, nodes[i], y);
        }
        integral = integrate_uniform(vals.data(), nodes.size(), h);
      }
      double v = alpha.scalar(x, y) + omega_at(omega, x, y) + integral;
      defect = std::max(defect, std::abs(v));
    }
  }
  scan.scale = std::max(1.0, omega_max);
  scan.max_defect = defect / scan.scale;
  return scan;
}

/* Dense samples of the resolvent anchored at x, rebuilt from the kernel's
 * analytic row structure so that full rows cost O(rank^2) per point:
 *
 *   r(z,y) = branch(z,y) + sum_jk [int c_j c_k ds] g_j(z) g_k(y),
 *
 * with the coefficient products integrated once cumulatively along the
 * axis. Cross-checked against the library construction at the scan pairs.
 */
struct SampledResolvent {
  bool right = false;
  int rank = 0;
  double anchor = 0.0;
  std::vector<double> nodes;
  std::vector<std::vector<double>> coeff; // [node][term]
  std::vector<std::vector<double>> gval;  // [node][term]
  std::vector<RealSamples> cum;           // [term*rank+term][node]
  std::optional<ResolventKernel> slow;    // kernels without row structure

  double alpha_at(std::size_t s, std::size_t t) const {
    double v = 0.0;
    for (int j = 0; j < rank; ++j) {
      v -= coeff[s][static_cast<std::size_t>(j)] *
           gval[t][static_cast<std::size_t>(j)];
    }
    return v;
  }

  double value(std::size_t a, std::size_t b) const {
    if (slow) {
      return slow->scalar(nodes[a], nodes[b]);
    }
    double first = right ? (a <= b ? alpha_at(a, b) : alpha_at(b, a))
                         : (b <= a ? alpha_at(a, b) : alpha_at(b, a));
    if (rank == 0) {
      return first;
    }
    std::size_t edge = right ? std::min(a, b) : std::max(a, b);
    double acc = 0.0;
    for (int j = 0; j < rank; ++j) {
      for (int k = 0; k < rank; ++k) {
        const RealSamples &c = cum[static_cast<std::size_t>(j * rank + k)];
        double w = right ? c[edge] : c.back() - c[edge];
        acc += w * gval[a][static_cast<std::size_t>(j)] *
               gval[b][static_cast<std::size_t>(k)];
      }
    }
    return first + acc;
  }
};

SampledResolvent sample_resolvent(const AlphaKernel &alpha,
                                  const Involution &J, double x, double lo,
                                  double hi, int nq) {
  SampledResolvent sr;
  sr.right = alpha.kind == IntervalKind::RIGHT_HALF;
  sr.anchor = x;
  sr.nodes = axis_nodes(lo, hi, nq);
  if (!alpha.has_row_form()) {
    sr.slow = resolvent_from_alpha(alpha, J, x);
    return sr;
  }
  const auto &data = *alpha.separable;
  sr.rank = data.rank;
  std::size_t n = sr.nodes.size();
  sr.coeff.resize(n);
  sr.gval.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix row = data.coeff_row(sr.nodes[i]);
    sr.coeff[i].resize(static_cast<std::size_t>(sr.rank));
    sr.gval[i].resize(static_cast<std::size_t>(sr.rank));
    for (int j = 0; j < sr.rank; ++j) {
      sr.coeff[i][static_cast<std::size_t>(j)] = row(0, j);
      sr.gval[i][static_cast<std::size_t>(j)] =
          data.g_forms[static_cast<std::size_t>(j)].real_value(sr.nodes[i]);
    }
  }
  double h = n > 1 ? sr.nodes[1] - sr.nodes[0] : 0.0;
  for (int j = 0; j < sr.rank; ++j) {
    for (int k = 0; k < sr.rank; ++k) {
      RealSamples prod(n);
      for (std::size_t i = 0; i < n; ++i) {
        prod[i] = sr.coeff[i][static_cast<std::size_t>(j)] *
                  sr.coeff[i][static_cast<std::size_t>(k)];
      }
      sr.cum.push_back(cumulative_integral(prod, h));
    }
  }
  return sr;
}

// Scan-pair indices: n_anchor indices spread evenly across the axis.
std::vector<std::size_t> spread_indices(std::size_t n, int n_anchor) {
  std::vector<std::size_t> out;
  for (int i = 0; i < n_anchor; ++i) {
    out.push_back(static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * static_cast<double>(n - 1) /
                     (n_anchor - 1))));
  }
  return out;
}

// r(z,y) + w(z,y) + int over I(anchor) of r(z,s) w(s,y) ds, normalized by
// the kernel scale.
ResidualScan scan_resolvent(const SampledResolvent &sr,
                            const GeneralKernel &omega, int n_anchor) {
  ResidualScan scan;
  std::size_t n = sr.nodes.size();
  if (n < 2) {
    return scan;
  }
  auto points = spread_indices(n, n_anchor);
  double h = sr.nodes[1] - sr.nodes[0];
  double omega_max = 0.0;
  double defect = 0.0;
  std::vector<double> vals(n);
  for (std::size_t za : points) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = sr.value(za, i);
    }
    double z = sr.nodes[za];
    for (std::size_t yb : points) {
      double y = sr.nodes[yb];
      omega_max = std::max(omega_max, std::abs(omega_at(omega, z, y)));
      for (std::size_t i = 0; i < n; ++i) {
        vals[i] = row[i] * omega_at(omega, sr.nodes[i], y);
      }
      double v = sr.value(za, yb) + omega_at(omega, z, y) +
                 integrate_uniform(vals.data(), n, h);
      defect = std::max(defect, std::abs(v));
    }
  }
  scan.scale = std::max(1.0, omega_max);
  scan.max_defect = defect / scan.scale;
  return scan;
}

// a(x,y) + w(x,y) + int over I(x) of w(x,z) r(x; z,y) dz at the resolvent's
// anchor, normalized by the kernel scale.
ResidualScan scan_reconstruction(const AlphaKernel &alpha,
                                 const GeneralKernel &omega,
                                 const SampledResolvent &sr, int n_anchor) {
  ResidualScan scan;
  std::size_t n = sr.nodes.size();
  if (n < 2) {
    return scan;
  }
  double x = sr.anchor;
  auto points = spread_indices(n, n_anchor);
  double h = sr.nodes[1] - sr.nodes[0];
  std::vector<double> wrow(n);
  for (std::size_t i = 0; i < n; ++i) {
    wrow[i] = omega_at(omega, x, sr.nodes[i]);
  }
  double omega_max = 0.0;
  double defect = 0.0;
  std::vector<double> vals(n);
  for (std::size_t yb : points) {
    double y = sr.nodes[yb];
    omega_max = std::max(omega_max, std::abs(omega_at(omega, x, y)));
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = wrow[i] * sr.value(i, yb);
    }
    double v = alpha.scalar(x, y) + omega_at(omega, x, y) +
               integrate_uniform(vals.data(), n, h);
    defect = std::max(defect, std::abs(v));
  }
  scan.scale = std::max(1.0, omega_max);
  scan.max_defect = defect / scan.scale;
  return scan;
}

double far_anchor(const Grid &grid) {
  return grid.kind == IntervalKind::RIGHT_HALF ? grid.front() : grid.back();
}

WavefunctionKind seed_kind_for(IntervalKind kind, BoundStateFlavor flavor) {
  switch (kind) {
  case IntervalKind::RIGHT_HALF:
    return WavefunctionKind::JOST_LEFT;
  case IntervalKind::LEFT_HALF:
    return WavefunctionKind::JOST_RIGHT;
  case IntervalKind::FINITE_LEFT:
    break;
  }
  return flavor == BoundStateFlavor::DIRICHLET
             ? WavefunctionKind::REGULAR_DIRICHLET
             : WavefunctionKind::REGULAR_NON_DIRICHLET;
}

BoundStateFlavor flavor_of(WavefunctionKind kind) {
  switch (kind) {
  case WavefunctionKind::JOST_LEFT:
    return BoundStateFlavor::FULL_LEFT;
  case WavefunctionKind::JOST_RIGHT:
    return BoundStateFlavor::FULL_RIGHT;
  case WavefunctionKind::REGULAR_DIRICHLET:
    return BoundStateFlavor::DIRICHLET;
  case WavefunctionKind::REGULAR_NON_DIRICHLET:
    break;
  }
  return BoundStateFlavor::NON_DIRICHLET;
}

bool same_spec(const BoundStateSpec &a, const BoundStateSpec &b) {
  return a.flavor == b.flavor && a.sign == b.sign && a.kappa == b.kappa &&
         a.c == b.c;
}

std::string render(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json config_json(const ScenarioConfig &config) {
  nlohmann::json j;
  j["interval"] =
      config.interval ? interval_kind_name(*config.interval) : "unset";
  j["example"] = config.example_id;
  nlohmann::json params = nlohmann::json::object();
  for (const auto &[key, value] : config.example_params) {
    params[key] = value;
  }
  j["params"] = params;
  auto spec_json = [](const BoundStateSpec &s) {
    nlohmann::json t;
    t["flavor"] = bound_state_flavor_name(s.flavor);
    t["kappa"] = s.kappa;
    t["c"] = s.c;
    t["sign"] = s.sign;
    return t;
  };
  j["omega_terms"] = nlohmann::json::array();
  for (const auto &s : config.omega_terms) {
    j["omega_terms"].push_back(spec_json(s));
  }
  j["edits"] = nlohmann::json::array();
  for (const auto &s : config.edits) {
    j["edits"].push_back(spec_json(s));
  }
  j["verify_only"] = config.verify_only;
  j["grid_n"] = config.grid_n;
  j["truncation"] = config.truncation;
  j["k_list"] = nlohmann::json::array();
  for (const auto &k : config.k_list) {
    j["k_list"].push_back(format_k_label(k));
  }
  j["out"] = config.out_dir;
  j["format"] = config.format;
  return j;
}

void write_columns(const std::string &path, const std::string &format,
                   const std::vector<std::string> &names,
                   const std::vector<const RealSamples *> &columns) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::CONFIG_ERROR, "cannot write " + path);
  }
  std::size_t n = columns.front()->size();
  if (format == "json") {
    nlohmann::json j;
    for (std::size_t c = 0; c < names.size(); ++c) {
      j[names[c]] = *columns[c];
    }
    out << j.dump(2) << "\n";
    return;
  }
  for (std::size_t c = 0; c < names.size(); ++c) {
    out << (c ? "," : "") << names[c];
  }
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      out << (c ? "," : "") << render((*columns[c])[i]);
    }
    out << "\n";
  }
}

} // namespace

ScenarioConfig parse_scenario_text(const std::string &text) {
  ScenarioConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::CONFIG_ERROR,
                  "line " + std::to_string(line_no) +
                      " is not 'key = value': '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::CONFIG_ERROR,
                  "line " + std::to_string(line_no) + " has an empty " +
                      (key.empty() ? "key" : "value"));
    }
    if (key == "interval") {
      config.interval = parse_interval(value);
    } else if (key == "example") {
      config.example_id = value;
    } else if (key.rfind("param.", 0) == 0) {
      std::string name = key.substr(6);
      if (name.empty()) {
        throw Error(ErrorCode::CONFIG_ERROR, "empty parameter name");
      }
      config.example_params[name] = parse_number(value, key);
    } else if (key == "omega_term") {
      config.omega_terms.push_back(parse_bound_state(value, key));
    } else if (key == "edit") {
      config.edits.push_back(parse_bound_state(value, key));
    } else if (key == "verify_only") {
      config.verify_only = parse_bool(value, key);
    } else if (key == "grid_n") {
      double v = parse_number(value, key);
      if (v != std::floor(v) || v < 9.0 || v > 2e6) {
        throw Error(ErrorCode::CONFIG_ERROR,
                    "grid_n must be an integer in [9, 2000000], got " + value);
      }
      config.grid_n = static_cast<int>(v);
    } else if (key == "truncation") {
      config.truncation = parse_number(value, key);
      if (!(config.truncation > 0.0)) {
        throw Error(ErrorCode::CONFIG_ERROR, "truncation must be positive");
      }
    } else if (key == "k") {
      config.k_list.push_back(parse_wavenumber(value));
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "format") {
      std::string f = lower(value);
      if (f != "csv" && f != "json") {
        throw Error(ErrorCode::CONFIG_ERROR,
                    "format must be csv or json, got '" + value + "'");
      }
      config.format = f;
    } else {
      throw Error(ErrorCode::CONFIG_ERROR, "unknown key '" + key + "'");
    }
  }
  return config;
}

ScenarioConfig load_scenario_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::CONFIG_ERROR, "cannot open config file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

bool ScenarioResult::all_pass() const {
  for (const auto &check : checks) {
    if (!check.pass) {
      return false;
    }
  }
  return true;
}

std::complex<double> parse_wavenumber(const std::string &text) {
  std::string t = trim(text);
  if (t.empty()) {
    throw Error(ErrorCode::CONFIG_ERROR, "empty k value");
  }
  if (t.back() != 'i' && t.back() != 'I') {
    return {parse_number(t, "k"), 0.0};
  }
  std::string body = t.substr(0, t.size() - 1);
  // Split off a real part at the last +/- that is not a leading sign and
  // not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    return {0.0, parse_number(body, "k imaginary part")};
  }
  double re = parse_number(body.substr(0, split), "k real part");
  std::string imag = body.substr(split);
  if (imag == "+" || imag == "-") {
    imag += "1";
  }
  return {re, parse_number(imag, "k imaginary part")};
}

std::string format_k_label(std::complex<double> k) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  if (k.imag() == 0.0) {
    return num(k.real());
  }
  if (k.real() == 0.0) {
    return num(k.imag()) + "i";
  }
  std::string out = num(k.real());
  out += k.imag() < 0.0 ? "-" : "+";
  out += num(std::abs(k.imag())) + "i";
  return out;
}

double sampled_schrodinger_residual(const ComplexSamples &psi,
                                    const RealSamples &u,
                                    std::complex<double> k, const Grid &grid) {
  std::size_t n = grid.size();
  if (psi.size() != n || u.size() != n) {
    throw Error(ErrorCode::LENGTH_MISMATCH,
                "need one psi and one u sample per grid point");
  }
  if (n < 3) {
    throw Error(ErrorCode::TOO_FEW_POINTS,
                "need at least 3 samples for a second difference");
  }
  double h2 = grid.h * grid.h;
  std::complex<double> k2 = k * k;
  double worst = 0.0;
  if (n >= 5) {
    for (std::size_t i = 2; i + 2 < n; ++i) {
      std::complex<double> lap =
          (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] +
           16.0 * psi[i + 1] - psi[i + 2]) /
          (12.0 * h2);
      worst = std::max(worst, std::abs(-lap + (u[i] - k2) * psi[i]));
    }
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      std::complex<double> lap = (psi[i - 1] - 2.0 * psi[i] + psi[i + 1]) / h2;
      worst = std::max(worst, std::abs(-lap + (u[i] - k2) * psi[i]));
    }
  }
  return worst;
}

int exit_code_for(ErrorCode code) {
  return is_config_error(code) ? 2 : 3;
}

ScenarioResult run_scenario(const ScenarioConfig &config_in) {
  ScenarioResult result;
  ScenarioConfig &config = result.config;
  config = config_in;

  if (!config.example_id.empty() && !config.omega_terms.empty()) {
    throw Error(ErrorCode::CONFIG_ERROR,
                "choose one unperturbed source: example or omega_term lines");
  }
  if (config.verify_only && !config_in.edits.empty()) {
    throw Error(ErrorCode::CONFIG_ERROR,
                "verify_only scenarios take no edit lines");
  }

  std::optional<OracleBundle> bundle;
  SeparableKernel background;
  background.dim = 1;
  bool omega_smooth = true;
  IntervalKind kind = IntervalKind::FINITE_LEFT;

  if (!config.example_id.empty()) {
    bundle = oracle(config.example_id, config.example_params);
    kind = bundle->kind;
    if (config.interval && *config.interval != kind) {
      throw Error(ErrorCode::CONFIG_ERROR,
                  std::string("interval disagrees with the catalog entry, "
                              "which lives on ") +
                      interval_kind_name(kind));
    }
    config.interval = kind;
    if (bundle->has_background) {
      background = bundle->background;
    }
    omega_smooth = bundle->omega_smooth;
  } else {
    if (!config.interval) {
      throw Error(ErrorCode::CONFIG_ERROR,
                  "set interval = ... or pick an example");
    }
    kind = *config.interval;
    for (const auto &spec : config.omega_terms) {
      spec.validate();
      if (flavor_interval(spec.flavor) != kind) {
        throw Error(ErrorCode::CONFIG_ERROR,
                    std::string("omega_term flavor ") +
                        bound_state_flavor_name(spec.flavor) + " lives on " +
                        interval_kind_name(flavor_interval(spec.flavor)) +
                        ", not " + interval_kind_name(kind));
      }
      SeparableKernel pair = perturbation_pair(spec);
      for (auto &term : pair.terms) {
        background.terms.push_back(term);
      }
    }
  }

  std::vector<BoundStateSpec> edits = config.edits;
  if (edits.empty() && !config.verify_only && bundle && bundle->has_edit) {
    edits.push_back(bundle->edit);
  }
  if (edits.empty() && !config.verify_only) {
    throw Error(ErrorCode::CONFIG_ERROR,
                "add an edit = ... line or set verify_only = true");
  }
  for (const auto &spec : edits) {
    spec.validate();
    if (flavor_interval(spec.flavor) != kind) {
      throw Error(ErrorCode::CONFIG_ERROR,
                  std::string("edit flavor ") +
                      bound_state_flavor_name(spec.flavor) + " lives on " +
                      interval_kind_name(flavor_interval(spec.flavor)) +
                      ", not " + interval_kind_name(kind));
    }
  }
  config.edits = edits;

  // On the finite interval the boundary type must be uniform across the
  // background and every edit: the seed and the perturbation factors both
  // encode it.
  std::optional<BoundStateFlavor> boundary;
  if (kind == IntervalKind::FINITE_LEFT) {
    if (bundle) {
      boundary = flavor_of(bundle->psi_kind);
    } else if (!config.omega_terms.empty()) {
      boundary = config.omega_terms.front().flavor;
    } else if (!edits.empty()) {
      boundary = edits.front().flavor;
    }
    auto check_boundary = [&](const BoundStateSpec &spec, const char *what) {
      if (boundary && spec.flavor != *boundary) {
        throw Error(ErrorCode::CONFIG_ERROR,
                    std::string(what) + " flavor " +
                        bound_state_flavor_name(spec.flavor) +
                        " mixes boundary types with " +
                        bound_state_flavor_name(*boundary));
      }
    };
    for (const auto &spec : config.omega_terms) {
      check_boundary(spec, "omega_term");
    }
    for (const auto &spec : edits) {
      check_boundary(spec, "edit");
    }
  }

  double anchor = kind == IntervalKind::RIGHT_HALF ? -config.truncation
                                                   : config.truncation;
  result.grid = build_grid(kind, anchor, config.grid_n, config.truncation);
  const Grid &grid = result.grid;
  std::size_t n = grid.size();
  Involution J = Involution::identity(1);

  AlphaKernel alpha = background.rank() > 0
                          ? solve_separable(background, kind)
                          : AlphaKernel::zero(kind, 1);
  GeneralKernel omega_gen =
      bundle ? bundle->omega_full
             : (background.rank() > 0
                    ? GeneralKernel::from_separable(background)
                    : GeneralKernel::zero(1));

  result.u.assign(n, 0.0);
  if (bundle && bundle->u) {
    for (std::size_t i = 0; i < n; ++i) {
      result.u[i] = bundle->u(grid.points[i]);
    }
  } else if (background.rank() > 0) {
    ShiftProfiles base_profiles =
        shift_profiles(AlphaKernel::zero(kind, 1), background, J, grid);
    result.u = base_profiles.delta_u_diag;
  }

  result.delta_u_diag.assign(n, 0.0);
  result.delta_u_loggamma.assign(n, 0.0);
  RealSamples gamma_det(n, 1.0);
  SeparableKernel edit_kernel;
  edit_kernel.dim = 1;
  std::optional<IntermediateBundle> ib;
  std::optional<AlphaKernel> alpha_tilde;
  if (!edits.empty()) {
    for (const auto &spec : edits) {
      SeparableKernel pair = perturbation_pair(spec);
      for (auto &term : pair.terms) {
        edit_kernel.terms.push_back(term);
      }
    }
    ShiftProfiles profiles = shift_profiles(alpha, edit_kernel, J, grid);
    result.delta_u_diag = profiles.delta_u_diag;
    result.delta_u_loggamma = profiles.delta_u_loggamma;
    gamma_det = profiles.gamma;
    ib = make_intermediate_bundle(alpha, edit_kernel, J);
    alpha_tilde = make_alpha_tilde_kernel(alpha, *ib);
  }

  result.u_tilde = result.u;
  for (std::size_t i = 0; i < n; ++i) {
    result.u_tilde[i] += result.delta_u_diag[i];
  }

  // Wavefunction exports: the sampled shift formula covers one edit.
  if (!config.k_list.empty()) {
    if (edits.size() > 1) {
      throw Error(ErrorCode::CONFIG_ERROR,
                  "wavefunction export supports at most one edit; drop the "
                  "k = lines or the extra edits");
    }
    WavefunctionKind wkind;
    if (bundle) {
      wkind = bundle->psi_kind;
    } else if (kind != IntervalKind::FINITE_LEFT) {
      wkind = seed_kind_for(kind, BoundStateFlavor::FULL_LEFT);
    } else if (boundary) {
      wkind = seed_kind_for(kind, *boundary);
    } else {
      throw Error(ErrorCode::CONFIG_ERROR,
                  "cannot infer the boundary type for wavefunctions; add an "
                  "omega_term or edit line");
    }
    Wavefunction base = make_wavefunction(alpha, wkind);
    for (const auto &k : config.k_list) {
      ScenarioWave wave;
      wave.k = k;
      wave.label = format_k_label(k);
      wave.psi.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        wave.psi[i] = base(k, grid.points[i]);
      }
      if (!edits.empty()) {
        double kappa = edits.front().kappa;
        auto psik = [&base, kappa](double t) {
          return base(std::complex<double>(0.0, kappa), t);
        };
        wave.psi_tilde =
            wavefunction_shift_profile(base, psik, edits.front(), k, grid);
      } else {
        wave.psi_tilde = wave.psi;
      }
      result.waves.push_back(std::move(wave));
    }
  }

  // Self-consistency checks.
  auto push = [&result](const std::string &name, double value,
                        double tolerance) {
    result.checks.push_back({name, value, tolerance, value <= tolerance});
  };

  int nq = 4001;
  double window = grid.back() - grid.front();
  double hq = window / (nq - 1);
  double kappa_scale = 1.0;
  for (const auto &term : config.omega_terms) {
    kappa_scale = std::max(kappa_scale, term.kappa);
  }
  if (bundle) {
    kappa_scale = std::max({kappa_scale, bundle->kappa1, bundle->kappa2});
  }
  // A kernel with a derivative jump drops the quadrature to second order.
  double quad_tol =
      omega_smooth ? 1e-8
                   : std::max(1e-8, 2.0 * hq * hq * kappa_scale * kappa_scale);

  ResidualScan fund = scan_fundamental(alpha, omega_gen, grid, 17, nq);
  push("fundamental_relative_residual", fund.max_defect, quad_tol);

  double ranchor = far_anchor(grid);
  double rlo = 0.0, rhi = 0.0;
  if (cut_interval(kind, ranchor, grid.front(), grid.back(), rlo, rhi)) {
    SampledResolvent sr = sample_resolvent(alpha, J, ranchor, rlo, rhi, nq);
    ResidualScan res = scan_resolvent(sr, omega_gen, 9);
    push("resolvent_relative_residual", res.max_defect, quad_tol);

    ResidualScan rec = scan_reconstruction(alpha, omega_gen, sr, 17);
    push("reconstruction_relative_residual", rec.max_defect, quad_tol);

    // The dense rows above come from the axis-sampled rebuild; pin it to
    // the library construction at the scan pairs.
    ResolventKernel r = resolvent_from_alpha(alpha, J, ranchor);
    auto pts = spread_indices(sr.nodes.size(), 9);
    double gap = 0.0, rscale = 1.0;
    for (std::size_t za : pts) {
      for (std::size_t yb : pts) {
        double lib = r.scalar(sr.nodes[za], sr.nodes[yb]);
        gap = std::max(gap, std::abs(lib - sr.value(za, yb)));
        rscale = std::max(rscale, std::abs(lib));
      }
    }
    double step = (rhi - rlo) / 2000.0;
    double quad_err = std::pow(2.0 * kappa_scale * step, 4) / 180.0;
    push("resolvent_construction_divergence", gap / rscale,
         std::max(3e-8, 5.0 * quad_err));

    Grid sgrid = build_grid(kind, anchor, 21, config.truncation);
    double sym = resolvent_symmetry_defect(r, J, ranchor, sgrid);
    push("resolvent_symmetry_defect", sym / rscale, 1e-10);
  }

  {
    Grid vgrid = build_grid(kind, anchor, 201, config.truncation);
    double jsym = j_selfadjoint_defect(omega_gen, J, vgrid);
    push("omega_symmetry_defect", jsym / fund.scale, 1e-11);
  }

  if (!edits.empty()) {
    double min_det = gamma_det[0];
    for (double g : gamma_det) {
      min_det = std::min(min_det, g);
    }
    result.checks.push_back(
        {"gamma_min_det", min_det, 0.0, min_det > 0.0});

    double max_shift = 0.0, route_gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      max_shift = std::max(max_shift, std::abs(result.delta_u_diag[i]));
      route_gap = std::max(route_gap,
                           std::abs(result.delta_u_diag[i] -
                                    result.delta_u_loggamma[i]));
    }
    push("potential_shift_route_divergence", route_gap,
         std::max(1e-5 * max_shift, 1e-8));

    // gt(x,y) from the pipeline versus through the resolvent at anchor x.
    // Both routes share the bundle's interval truncation so their discarded
    // tails match; the reduced node counts stay inside the tolerance.
    double ggap = 0.0, gscale = 1.0;
    QuadratureSpec route_quad;
    route_quad.n_points = 3001;
    for (double fx : {0.6, 1.0}) {
      double span = fx * (grid.back() - grid.front());
      double x = kind == IntervalKind::RIGHT_HALF ? grid.back() - span
                                                  : grid.front() + span;
      double lo = 0.0, hi = 0.0;
      if (!cut_interval(kind, x, grid.front(), grid.back(), lo, hi)) {
        continue;
      }
      QuadratureSpec rx_quad;
      rx_quad.n_points = 601;
      ResolventKernel rx = resolvent_from_alpha(alpha, J, x, rx_quad);
      for (double fy : {0.25, 0.55, 0.9}) {
        double y = lo + fy * (hi - lo);
        Matrix via_pipeline = ib->gtilde(x, y);
        for (int j = 0; j < static_cast<int>(edit_kernel.terms.size());
             ++j) {
          Matrix via_res = compute_gtilde_via_resolvent(
              edit_kernel.terms[static_cast<std::size_t>(j)].second, rx,
              kind, x, y, route_quad);
          double a = via_pipeline(j, 0);
          double b = via_res(0, 0);
          ggap = std::max(ggap, std::abs(a - b));
          gscale = std::max(gscale, std::abs(a));
        }
      }
    }
    push("gtilde_route_divergence", ggap, 1e-6 * gscale);
  }

  for (const auto &wave : result.waves) {
    double scale = 1.0;
    for (const auto &v : wave.psi) {
      scale = std::max(scale, std::abs(v));
    }
    double base_res =
        sampled_schrodinger_residual(wave.psi, result.u, wave.k, grid);
    push("schrodinger_residual_base_k=" + wave.label, base_res / scale,
         5e-4);
    if (!edits.empty()) {
      double tscale = 1.0;
      for (const auto &v : wave.psi_tilde) {
        tscale = std::max(tscale, std::abs(v));
      }
      double tilde_res = sampled_schrodinger_residual(wave.psi_tilde,
                                                      result.u_tilde, wave.k,
                                                      grid);
      push("schrodinger_residual_tilde_k=" + wave.label, tilde_res / tscale,
           5e-4);
    }
  }

  if (bundle) {
    if (bundle->alpha) {
      double gap = 0.0, scale = 1.0;
      auto pts = axis_nodes(grid.front(), grid.back(), 13);
      for (double x : pts) {
        for (double y : pts) {
          if (!alpha.in_closure(x, y)) {
            continue;
          }
          double closed = bundle->alpha(x, y);
          gap = std::max(gap, std::abs(alpha.scalar(x, y) - closed));
          scale = std::max(scale, std::abs(closed));
        }
      }
      push("alpha_closed_form_divergence", gap / scale, 1e-8);
    }
    bool catalog_edit = edits.size() == 1 && bundle->has_edit &&
                        same_spec(edits.front(), bundle->edit);
    if (catalog_edit && bundle->Gamma) {
      double gap = 0.0;
      for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 16)) {
        double closed = bundle->Gamma(grid.points[i]);
        double rel = std::abs(gamma_det[i] - closed) /
                     std::max(1.0, std::abs(closed));
        gap = std::max(gap, rel);
      }
      push("gamma_closed_form_divergence", gap, 1e-7);
    }
    if (catalog_edit && bundle->alpha_tilde && alpha_tilde) {
      double gap = 0.0, scale = 1.0;
      auto pts = axis_nodes(grid.front(), grid.back(), 9);
      for (double x : pts) {
        for (double y : pts) {
          if (!alpha_tilde->in_closure(x, y)) {
            continue;
          }
          double closed = bundle->alpha_tilde(x, y);
          gap = std::max(gap, std::abs(alpha_tilde->scalar(x, y) - closed));
          scale = std::max(scale, std::abs(closed));
        }
      }
      push("alpha_tilde_closed_form_divergence", gap / scale, 1e-6);
    }
    if (catalog_edit && bundle->u_tilde) {
      double gap = 0.0, scale = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        double closed = bundle->u_tilde(grid.points[i]);
        gap = std::max(gap, std::abs(result.u_tilde[i] - closed));
        scale = std::max(scale, std::abs(closed));
      }
      push("u_tilde_closed_form_divergence", gap / std::max(1.0, scale),
           1e-6);
    }
    if (catalog_edit && bundle->psi_tilde) {
      for (const auto &wave : result.waves) {
        double gap = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          std::complex<double> closed =
              bundle->psi_tilde(wave.k, grid.points[i]);
          gap = std::max(gap, std::abs(wave.psi_tilde[i] - closed));
          scale = std::max(scale, std::abs(closed));
        }
        push("psi_tilde_closed_form_divergence_k=" + wave.label, gap / scale,
             1e-6);
      }
    }
  }

  return result;
}

std::string report_json(const ScenarioResult &result) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["scenario"] = config_json(result.config);
  j["grid"] = {{"n", result.grid.size()},
               {"front", result.grid.front()},
               {"back", result.grid.back()},
               {"h", result.grid.h}};
  j["checks"] = nlohmann::json::array();
  for (const auto &check : result.checks) {
    j["checks"].push_back({{"name", check.name},
                           {"value", check.value},
                           {"tolerance", check.tolerance},
                           {"pass", check.pass}});
  }
  j["all_pass"] = result.all_pass();
  return j.dump(2);
}

void write_outputs(const ScenarioResult &result, bool report_only) {
  namespace fs = std::filesystem;
  const ScenarioConfig &config = result.config;
  fs::create_directories(config.out_dir);
  {
    std::string path = (fs::path(config.out_dir) / "report.json").string();
    std::ofstream out(path);
    if (!out) {
      throw Error(ErrorCode::CONFIG_ERROR, "cannot write " + path);
    }
    out << report_json(result) << "\n";
  }
  if (report_only) {
    return;
  }
  std::string ext = config.format == "json" ? ".json" : ".csv";
  write_columns((fs::path(config.out_dir) / ("potential" + ext)).string(),
                config.format,
                {"x", "u", "u_tilde", "delta_u_diag", "delta_u_loggamma"},
                {&result.grid.points, &result.u, &result.u_tilde,
                 &result.delta_u_diag, &result.delta_u_loggamma});
  for (const auto &wave : result.waves) {
    std::size_t n = result.grid.size();
    RealSamples re_psi(n), im_psi(n), re_tilde(n), im_tilde(n);
    for (std::size_t i = 0; i < n; ++i) {
      re_psi[i] = wave.psi[i].real();
      im_psi[i] = wave.psi[i].imag();
      re_tilde[i] = wave.psi_tilde[i].real();
      im_tilde[i] = wave.psi_tilde[i].imag();
    }
    std::string name = "wavefunction_" + wave.label + ext;
    write_columns((fs::path(config.out_dir) / name).string(), config.format,
                  {"x", "re_psi", "im_psi", "re_psi_tilde", "im_psi_tilde"},
                  {&result.grid.points, &re_psi, &im_psi, &re_tilde,
                   &im_tilde});
  }
}

} // namespace darboux
