// Copyright 2026 The cliffordlens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliffordlens/clifford.hpp"
#include "cliffordlens/dense.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/lensing.hpp"
#include "cliffordlens/pauli.hpp"
#include "cliffordlens/random.hpp"
#include "cliffordlens/shadows.hpp"
#include "cliffordlens/sld.hpp"

namespace cliffordlens {

inline constexpr double kDegree = std::numbers::pi / 180.0;

enum class Protocol { ramsey_ghz, surface_code, magic_k, custom, independent };
enum class Readout { ensemble, projective };
enum class EstimatorKind { automatic, quadrature, sld_projector };

inline std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::ramsey_ghz: return "ramsey_ghz";
    case Protocol::surface_code: return "surface_code";
    case Protocol::magic_k: return "magic_k";
    case Protocol::custom: return "custom";
    case Protocol::independent: return "independent";
  }
  return "?";
}

inline Protocol parse_protocol(const std::string& s) {
  for (Protocol p : {Protocol::ramsey_ghz, Protocol::surface_code, Protocol::magic_k, Protocol::custom,
                     Protocol::independent}) {
    if (protocol_name(p) == s) return p;
  }
  throw ParseError("unknown protocol '" + s + "'");
}

inline std::string readout_name(Readout r) { return r == Readout::ensemble ? "ensemble" : "projective"; }

inline Readout parse_readout(const std::string& s) {
  if (s == "ensemble") return Readout::ensemble;
  if (s == "projective") return Readout::projective;
  throw ParseError("unknown readout '" + s + "'");
}

inline std::string estimator_name(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::automatic: return "auto";
    case EstimatorKind::quadrature: return "quadrature";
    case EstimatorKind::sld_projector: return "sld_projector";
  }
  return "?";
}

inline EstimatorKind parse_estimator(const std::string& s) {
  if (s == "auto") return EstimatorKind::automatic;
  if (s == "quadrature") return EstimatorKind::quadrature;
  if (s == "sld_projector") return EstimatorKind::sld_projector;
  throw ParseError("unknown estimator '" + s + "'");
}

/// 9.4 to 10.6 degrees in 0.2 degree steps.
inline std::vector<double> default_grid_degrees() {
  std::vector<double> g;
  for (int i = 0; i <= 6; ++i) g.push_back((94 + 2 * i) / 10.0);
  return g;
}

struct ProtocolConfig {
  std::size_t n_qubits = 3;  // physical qubits; a multiple of 4 for surface_code
  Protocol protocol = Protocol::ramsey_ghz;
  std::size_t k = 1;         // informative qubits for magic_k
  double theta_true = 10.0 * kDegree;
  std::vector<double> theta_grid = default_grid_degrees();  // degrees
  std::size_t shots = 10000;
  double ensemble_molecules = 1e15;
  std::uint64_t seed = 1;
  Readout readout = Readout::ensemble;
  bool ensemble_noise = true;
  EstimatorKind estimator = EstimatorKind::automatic;
  // -1: |1..1> picks up e^{-i n theta} (internal convention); +1 flips it.
  int phase_sign = -1;
  // Local-estimation reference in radians; defaults to the grid midpoint.
  std::optional<double> reference_theta;
  // Protocol::custom only.
  std::optional<StateVector> custom_state;
  std::optional<PauliSumOperator> custom_generator;
  std::optional<CliffordCircuit> custom_circuit;
  std::vector<std::size_t> custom_informative;

  double reference() const {
    if (reference_theta) return *reference_theta;
    const auto [lo, hi] = std::minmax_element(theta_grid.begin(), theta_grid.end());
    return 0.5 * (*lo + *hi) * kDegree;
  }

  void validate() const {
    if (shots < 1) throw PreconditionError("shots must be at least 1");
    if (theta_grid.empty()) throw PreconditionError("theta grid must be nonempty");
    if (!std::isfinite(theta_true)) throw PreconditionError("theta_true must be finite");
    for (double t : theta_grid) {
      if (!std::isfinite(t)) throw PreconditionError("theta grid values must be finite");
    }
    if (reference_theta && !std::isfinite(*reference_theta)) throw PreconditionError("reference must be finite");
    if (phase_sign != 1 && phase_sign != -1) throw PreconditionError("phase_sign must be +1 or -1");
    if (!(ensemble_molecules > 0)) throw PreconditionError("ensemble_molecules must be positive");
    if (n_qubits < 1) throw PreconditionError("n_qubits must be at least 1");
    if (n_qubits > kMaxStateQubits) throw CapExceeded("n_qubits exceeds the dense simulation cap of 12");
    if (protocol == Protocol::surface_code && n_qubits % 4 != 0) {
      throw PreconditionError("surface_code needs a multiple of 4 physical qubits");
    }
    if (protocol == Protocol::magic_k && (k < 1 || k > n_qubits)) throw PreconditionError("magic_k needs 1 <= k <= n");
    if (protocol == Protocol::custom && (!custom_state || !custom_generator || !custom_circuit)) {
      throw PreconditionError("custom protocol needs a state, a generator and a circuit");
    }
  }
};

struct GridEstimate {
  double theta = 0.0;
  double theta_hat = 0.0;
  double sigma_theta = 0.0;
};

struct EstimationResult {
  double theta_true = 0.0;
  double theta_hat = 0.0;
  double sigma_theta = 0.0;
  std::vector<GridEstimate> per_grid_estimates;
  double qfi_theoretical = 0.0;
  double crb = 0.0;  // 1/sqrt(shots * copies * QFI), a standard deviation
  std::string estimator;
  std::size_t k = 0;
};

/// Measurement model behind the estimators: the pure state of the
/// informative qubits as a function of theta, its generator, and how many
/// identical replicas each shot reads out.
struct ReadoutModel {
  std::function<StateVector(double)> factor;
  PauliSumOperator effective_generator;
  std::size_t replicas = 1;
  double qfi = 0.0;     // of the full probe
  double copies = 1.0;  // molecules per shot for ensemble readout
};

namespace detail {

inline double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

inline ReadoutModel build_model(const ProtocolConfig& c) {
  ReadoutModel m;
  m.copies = c.readout == Readout::ensemble ? c.ensemble_molecules : 1.0;
  const double s = double(c.phase_sign);
  const std::size_t n = c.n_qubits;
  if (c.protocol == Protocol::independent) {
    PauliSumOperator g1 = PauliSumOperator::collective(1, 'Z');
    g1 *= s;
    m.effective_generator = g1;
    m.factor = [g1](double t) { return evolve_phase(StateVector::plus(1), g1, t); };
    m.replicas = n;
    m.qfi = double(n);
    return m;
  }
  StateVector psi0;
  PauliSumOperator g;
  CliffordCircuit circuit;
  std::vector<std::size_t> informative;
  switch (c.protocol) {
    case Protocol::ramsey_ghz:
      psi0 = StateVector::ghz(n);
      g = PauliSumOperator::collective(n, 'Z');
      circuit = cnot_cascade(n);
      informative = {0};
      break;
    case Protocol::surface_code:
      psi0 = surface_code_ghz_state(n / 4);
      g = surface_code_generator(n / 4);
      circuit = surface_ghz_encoder(n / 4).inverse();
      informative = {0};
      break;
    case Protocol::magic_k:
      psi0 = magic_k_state(n, c.k);
      g = PauliSumOperator::collective(n, 'Z');
      circuit = cnot_cascade(n).inverse();
      for (std::size_t i = 0; i < c.k; ++i) informative.push_back(i);
      break;
    default:
      psi0 = *c.custom_state;
      g = *c.custom_generator;
      circuit = *c.custom_circuit;
      informative = c.custom_informative;
      if (psi0.n_qubits() != n) throw DimensionError("custom state does not match n_qubits");
      break;
  }
  g *= s;
  auto lens = std::make_shared<LensResult>(verify_lens(psi0, g, circuit, informative));
  if (!lens->verified) {
    throw PreconditionError("lens does not factor the protocol (residual " + std::to_string(lens->residual) + ")");
  }
  m.effective_generator = lens->effective_generator;
  m.factor = [lens](double t) { return lens->informative_factor(t); };
  m.qfi = qfi(psi0, g);
  return m;
}

// Single-qubit Bloch vector (<X>, <Y>, <Z>).
inline Eigen::Vector3d bloch(const StateVector& q) {
  const cplx a = q[0], b = q[1];
  const cplx off = std::conj(a) * b;
  return {2.0 * off.real(), 2.0 * off.imag(), std::norm(a) - std::norm(b)};
}

// Coefficient a of Z in G~ = c + a Z on one qubit; nullopt if G~ has X or Y.
inline std::optional<double> z_rate(const PauliSumOperator& g) {
  if (g.n_qubits() != 1) return std::nullopt;
  double a = 0.0;
  for (const auto& [p, coeff] : g.terms()) {
    const char ax = p.axis(0);
    if (ax == 'X' || ax == 'Y') return std::nullopt;
    if (ax == 'Z') a = coeff;
  }
  if (a == 0.0) return std::nullopt;
  return a;
}

struct AxisStats {
  double sum = 0.0;
  std::size_t count = 0;
};

}  // namespace detail

/// Randomized single-qubit readout of a one-qubit state: a uniformly random
/// Clifford per shot, then either a computational-basis bit or the ensemble
/// expectation <Z> of the rotated state (plus Gaussian noise of std sigma).
inline std::vector<ShadowRecord> acquire_qubit_records(const StateVector& q, std::size_t shots, Readout readout,
                                                       double sigma, Rng& rng) {
  if (q.n_qubits() != 1) throw DimensionError("acquire_qubit_records expects a single-qubit state");
  const Eigen::Vector3d r = detail::bloch(q);
  const auto& axes = detail::measured_axes();
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<ShadowRecord> out;
  out.reserve(shots);
  for (std::size_t i = 0; i < shots; ++i) {
    const std::size_t u = random_single_qubit_clifford_index(rng);
    const auto m = axes[u];
    const double mean = m.sign * r[m.axis == 'X' ? 0 : m.axis == 'Y' ? 1 : 2];
    if (readout == Readout::projective) {
      out.push_back({{u}, std::string(uni(rng) < 0.5 * (1.0 + mean) ? "0" : "1")});
    } else {
      out.push_back({{u}, sigma > 0 ? mean + sigma * noise(rng) : mean});
    }
  }
  return out;
}

struct QuadratureEstimate {
  double x = 0.0, y = 0.0;
  double var_x = 0.0, var_y = 0.0;
  std::size_t n_x = 0, n_y = 0;
};

/// Per-axis ratio estimator of <X> and <Y>: each is the sign-corrected mean
/// over the shots whose Clifford rotated that axis onto Z. Variances use the
/// binomial form for bits and the readout model sigma^2/N for ensemble data.
inline QuadratureEstimate quadrature_from_records(const std::vector<ShadowRecord>& records, double ensemble_sigma) {
  const auto& axes = detail::measured_axes();
  detail::AxisStats sx, sy;
  bool bits = false;
  for (const auto& r : records) {
    if (r.unitaries.size() != 1) throw DimensionError("quadrature estimator expects single-qubit records");
    const auto m = axes.at(r.unitaries[0]);
    double v;
    if (r.has_bits()) {
      bits = true;
      v = m.sign * (r.bits() == "1" ? -1.0 : 1.0);
    } else {
      v = m.sign * r.value();
    }
    if (m.axis == 'X') {
      sx.sum += v;
      ++sx.count;
    } else if (m.axis == 'Y') {
      sy.sum += v;
      ++sy.count;
    }
  }
  if (sx.count == 0 || sy.count == 0) {
    throw PreconditionError("quadrature estimator needs at least one shot on each of X and Y");
  }
  QuadratureEstimate q;
  q.n_x = sx.count;
  q.n_y = sy.count;
  q.x = sx.sum / double(sx.count);
  q.y = sy.sum / double(sy.count);
  if (bits) {
    q.var_x = std::max(1.0 - q.x * q.x, 1.0 / double(q.n_x)) / double(q.n_x);
    q.var_y = std::max(1.0 - q.y * q.y, 1.0 / double(q.n_y)) / double(q.n_y);
  } else {
    q.var_x = ensemble_sigma * ensemble_sigma / double(q.n_x);
    q.var_y = ensemble_sigma * ensemble_sigma / double(q.n_y);
  }
  return q;
}

namespace detail {

inline GridEstimate estimate_quadrature(const ReadoutModel& m, const ProtocolConfig& c, double theta, Rng& rng) {
  const double rate = 2.0 * *z_rate(m.effective_generator);  // phase = rate * theta
  const double sigma_m = 1.0 / std::sqrt(c.ensemble_molecules);
  const double noise = (c.readout == Readout::ensemble && c.ensemble_noise) ? sigma_m : 0.0;
  const auto records = acquire_qubit_records(m.factor(theta), c.shots * m.replicas, c.readout, noise, rng);
  const auto q = quadrature_from_records(records, sigma_m);
  const Eigen::Vector3d ref = bloch(m.factor(c.reference()));
  const double phi_ref = std::atan2(ref[1], ref[0]);
  const double phi = std::atan2(q.y, q.x);
  GridEstimate e;
  e.theta = theta;
  e.theta_hat = c.reference() + wrap_angle(phi - phi_ref) / rate;
  const double r2 = q.x * q.x + q.y * q.y;
  const double var_phi = (q.y * q.y * q.var_x + q.x * q.x * q.var_y) / (r2 * r2);
  e.sigma_theta = std::sqrt(var_phi) / std::abs(rate);
  return e;
}

inline GridEstimate estimate_sld(const ReadoutModel& m, const ProtocolConfig& c, double theta, Rng& rng) {
  const double ref = c.reference();
  const SldForm l = build_sld(m.factor(ref), m.effective_generator);
  const DenseOperator pi_plus = optimal_projectors(l).first;
  auto p_plus = [&](double t) {
    const StateVector f = m.factor(t);
    return std::clamp(f.amplitudes().dot(pi_plus.matrix() * f.amplitudes()).real(), 0.0, 1.0);
  };
  const double n_eff = double(c.shots) * double(m.replicas);
  const double sigma_m = 1.0 / std::sqrt(c.ensemble_molecules);
  const double p_true = p_plus(theta);
  double p_hat;
  double sigma_p;
  if (c.readout == Readout::projective) {
    std::binomial_distribution<std::uint64_t> bin(static_cast<std::uint64_t>(n_eff), p_true);
    p_hat = double(bin(rng)) / n_eff;
    sigma_p = std::sqrt(std::max(p_hat * (1.0 - p_hat), 1.0 / n_eff) / n_eff);
  } else {
    // Mean of shot readouts of <pi_+ - pi_->; noise averages over the shots.
    std::normal_distribution<double> noise(0.0, sigma_m / std::sqrt(n_eff));
    const double mval = 2.0 * p_true - 1.0 + (c.ensemble_noise ? noise(rng) : 0.0);
    p_hat = 0.5 * (1.0 + mval);
    sigma_p = 0.5 * sigma_m / std::sqrt(n_eff);
  }
  // p_+ is monotone within a quarter period of the reference.
  const double w = 0.49 * std::numbers::pi / std::sqrt(l.qfi());
  double lo = ref - w, hi = ref + w;
  const bool increasing = p_plus(hi) > p_plus(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((p_plus(mid) < p_hat) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  GridEstimate e;
  e.theta = theta;
  e.theta_hat = 0.5 * (lo + hi);
  const double h = 1e-6;
  const double slope = (p_plus(e.theta_hat + h) - p_plus(e.theta_hat - h)) / (2.0 * h);
  e.sigma_theta = sigma_p / std::max(std::abs(slope), 1e-300);
  return e;
}

}  // namespace detail

/// Simulates the protocol at theta_true and at every grid point.
inline EstimationResult run_protocol(const ProtocolConfig& c) {
  c.validate();
  const ReadoutModel m = detail::build_model(c);
  if (!(m.qfi > 0.0)) throw DegenerateProtocol("protocol has zero quantum Fisher information");
  EstimatorKind kind = c.estimator;
  const bool quad_ok = detail::z_rate(m.effective_generator).has_value() &&
                       std::abs(detail::bloch(m.factor(c.reference())).template head<2>().norm() - 1.0) < 1e-9;
  if (kind == EstimatorKind::automatic) kind = quad_ok ? EstimatorKind::quadrature : EstimatorKind::sld_projector;
  if (kind == EstimatorKind::quadrature && !quad_ok) {
    throw PreconditionError("quadrature estimator needs one equatorial informative qubit with a Z generator");
  }
  auto estimate = [&](double theta, Rng& rng) {
    return kind == EstimatorKind::quadrature ? detail::estimate_quadrature(m, c, theta, rng)
                                             : detail::estimate_sld(m, c, theta, rng);
  };
  EstimationResult r;
  r.theta_true = c.theta_true;
  r.estimator = estimator_name(kind);
  r.k = m.effective_generator.n_qubits();
  r.qfi_theoretical = m.qfi;
  r.crb = 1.0 / std::sqrt(double(c.shots) * m.copies * m.qfi);
  Rng main = make_rng(c.seed, {c.n_qubits, 0});
  const GridEstimate top = estimate(c.theta_true, main);
  r.theta_hat = top.theta_hat;
  r.sigma_theta = top.sigma_theta;
  for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
    Rng rng = make_rng(c.seed, {c.n_qubits, i + 1});
    r.per_grid_estimates.push_back(estimate(c.theta_grid[i] * kDegree, rng));
  }
  return r;
}

// ----- Scaling sweep -----

struct SweepRow {
  std::size_t n = 0;
  double theta_deg = 0.0, theta_hat_deg = 0.0, sigma_deg = 0.0, crb_deg = 0.0, hl_deg = 0.0, sql_deg = 0.0;
};

struct SweepSummary {
  std::size_t n = 0;
  double sigma_mean_deg = 0.0;
  double crb_deg = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> per_n;
  double slope = 0.0;  // least-squares slope of log sigma_mean against log n
  std::string protocol;

  std::string to_csv() const {
    std::ostringstream o;
    o << "n,theta_deg,theta_hat_deg,sigma_deg,crb_deg,hl_deg,sql_deg\n";
    for (const auto& r : rows) {
      o << r.n << ',' << detail::format_double(r.theta_deg) << ',' << detail::format_double(r.theta_hat_deg) << ','
        << detail::format_double(r.sigma_deg) << ',' << detail::format_double(r.crb_deg) << ','
        << detail::format_double(r.hl_deg) << ',' << detail::format_double(r.sql_deg) << '\n';
    }
    return o.str();
  }
};

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("slope fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw PreconditionError("slope fit needs distinct n values");
  return sxy / sxx;
}

inline std::vector<std::size_t> default_sweep_sizes() { return {1, 3, 5, 7, 9, 11}; }

/// Runs the template at each n and fits the sensitivity scaling. The
/// Heisenberg and standard-quantum-limit columns include the ensemble copies.
inline SweepResult scaling_sweep(const std::vector<std::size_t>& n_list, const ProtocolConfig& tmpl) {
  if (n_list.empty()) throw PreconditionError("scaling_sweep: empty n list");
  SweepResult out;
  out.protocol = protocol_name(tmpl.protocol);
  std::vector<double> xs, ys;
  for (std::size_t n : n_list) {
    ProtocolConfig c = tmpl;
    c.n_qubits = n;
    const EstimationResult r = run_protocol(c);
    const double copies = c.readout == Readout::ensemble ? c.ensemble_molecules : 1.0;
    const double budget = double(c.shots) * copies;
    SweepSummary s{n, 0.0, r.crb / kDegree};
    for (const auto& g : r.per_grid_estimates) {
      out.rows.push_back({n, g.theta / kDegree, g.theta_hat / kDegree, g.sigma_theta / kDegree, r.crb / kDegree,
                          1.0 / (double(n) * std::sqrt(budget)) / kDegree, 1.0 / std::sqrt(double(n) * budget) / kDegree});
      s.sigma_mean_deg += g.sigma_theta / kDegree;
    }
    s.sigma_mean_deg /= double(r.per_grid_estimates.size());
    out.per_n.push_back(s);
    xs.push_back(double(n));
    ys.push_back(s.sigma_mean_deg);
  }
  if (xs.size() >= 2) out.slope = loglog_slope(xs, ys);
  return out;
}

// ----- Local readout -----

/// QFI of a mixed state from rho and its theta-derivative.
inline double mixed_state_qfi(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& rho_dot, double cutoff = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const Eigen::MatrixXcd d = es.eigenvectors().adjoint() * rho_dot * es.eigenvectors();
  const auto& lam = es.eigenvalues();
  double f = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    for (Eigen::Index j = 0; j < lam.size(); ++j) {
      const double s = lam(i) + lam(j);
      if (s > cutoff) f += 2.0 * std::norm(d(i, j)) / s;
    }
  }
  return f;
}

/// Best Fisher information obtainable by measuring only `qubits` of
/// exp(-i theta G)|psi> at theta = 0: the QFI of their reduced state.
inline double local_readout_qfi(const StateVector& psi, const PauliSumOperator& g,
                                const std::vector<std::size_t>& qubits) {
  const Eigen::VectorXcd a = psi.amplitudes();
  const Eigen::VectorXcd ga = apply_pauli_sum(g, a);
  // d/dtheta of the reduced state: tr_rest(-i(G|psi><psi| - |psi><psi|G)).
  const std::size_t n = psi.n_qubits();
  const auto order = detail::informative_first(n, qubits);
  const StateVector pa = permute_qubits(psi, order);
  const double gnorm = ga.norm();
  if (gnorm == 0.0) return 0.0;
  const StateVector pgn = permute_qubits(StateVector(n, ga / gnorm), order);
  const Eigen::VectorXcd pg_amps = gnorm * pgn.amplitudes();
  const Eigen::Index rows = Eigen::Index{1} << qubits.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(psi.dim()) / rows;
  Eigen::Map<const Eigen::MatrixXcd> ma(pa.amplitudes().data(), rows, cols);
  Eigen::Map<const Eigen::MatrixXcd> mg(pg_amps.data(), rows, cols);
  const Eigen::MatrixXcd rho = ma * ma.adjoint();
  const Eigen::MatrixXcd cross = mg * ma.adjoint();
  const Eigen::MatrixXcd rho_dot = cplx(0, -1) * (cross - cross.adjoint());
  return mixed_state_qfi(rho, rho_dot);
}

// ----- Collective Cliffords on the GHZ phase state -----

/// (|0..0> + e^{-i n theta}|1..1>)/sqrt(2).
inline StateVector ghz_phase_state(std::size_t n, double theta) {
  detail::check_state_cap(n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  v(0) = 1.0 / std::sqrt(2.0);
  v(v.size() - 1) = std::polar(1.0 / std::sqrt(2.0), -double(n) * theta);
  return StateVector(n, std::move(v));
}

enum class PhaseFormKind { equatorial, meridian };

/// Closed form of u^{(x) n} acting on the GHZ phase state, up to global phase.
/// equatorial: (|0..0> + e^{-i(sign n theta - n k pi/2)}|1..1>)/sqrt(2).
/// meridian: 2^{-(n+1)/2} sum_x [1 + (-1)^{|x|} e^{-i(n theta - n k pi/2)}] e^{i alpha |x|}|x>.
struct CliffordPhaseForm {
  PhaseFormKind kind = PhaseFormKind::equatorial;
  int sign = 1;
  int quarter_turns = 0;
  double alpha = 0.0;

  std::string kind_name() const { return kind == PhaseFormKind::equatorial ? "equatorial" : "meridian"; }
};

namespace detail {

inline int quarter_turns_of(cplx ratio) {
  const double a = std::arg(ratio);
  const int k = static_cast<int>(std::lround(a / (std::numbers::pi / 2)));
  return ((k % 4) + 4) % 4;
}

}  // namespace detail

inline CliffordPhaseForm classify_collective_clifford(const SingleQubitClifford& u) {
  const Eigen::Matrix2cd& m = u.matrix;
  CliffordPhaseForm f;
  const char zimg = u.image('Z').axis(0);
  if (zimg == 'Z') {
    f.kind = PhaseFormKind::equatorial;
    if (std::abs(m(0, 0)) > 0.5) {  // |0> -> |0>
      f.sign = 1;
      f.quarter_turns = detail::quarter_turns_of(m(1, 1) / m(0, 0));
    } else {  // |0> -> |1>
      f.sign = -1;
      f.quarter_turns = detail::quarter_turns_of(m(1, 0) / m(0, 1));
    }
  } else {
    f.kind = PhaseFormKind::meridian;
    f.sign = 1;
    f.alpha = std::arg(m(1, 0) / m(0, 0));
    f.quarter_turns = detail::quarter_turns_of(m(0, 1) / m(0, 0));
  }
  return f;
}

inline CliffordPhaseForm classify_collective_clifford(std::size_t index) {
  return classify_collective_clifford(single_qubit_cliffords().at(index));
}

inline StateVector predicted_collective_output(const CliffordPhaseForm& f, std::size_t n, double theta) {
  detail::check_state_cap(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  const double shift = double(n) * f.quarter_turns * std::numbers::pi / 2.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  if (f.kind == PhaseFormKind::equatorial) {
    v(0) = 1.0 / std::sqrt(2.0);
    v(d - 1) = std::polar(1.0 / std::sqrt(2.0), -(f.sign * double(n) * theta - shift));
  } else {
    const cplx e = std::polar(1.0, -(double(n) * theta - shift));
    const double norm = std::pow(2.0, -(double(n) + 1.0) / 2.0);
    for (Eigen::Index x = 0; x < d; ++x) {
      const int w = std::popcount(static_cast<std::uint64_t>(x));
      v(x) = norm * (1.0 + ((w & 1) ? -1.0 : 1.0) * e) * std::polar(1.0, f.alpha * w);
    }
  }
  return StateVector(n, std::move(v), true);
}

}  // namespace cliffordlens
