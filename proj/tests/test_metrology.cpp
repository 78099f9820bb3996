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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cliffordlens/metrology.hpp"
#include "oracle.hpp"

namespace cl = cliffordlens;
using cplx = std::complex<double>;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double overlap2(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

Eigen::MatrixXcd collective_oracle(const Eigen::Matrix2cd& u, std::size_t n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (std::size_t q = 0; q < n; ++q) m = oracle::embed1(u, q, n) * m;
  return m;
}

cl::ProtocolConfig noiseless(std::size_t n, cl::Protocol p = cl::Protocol::ramsey_ghz) {
  cl::ProtocolConfig c;
  c.n_qubits = n;
  c.protocol = p;
  c.readout = cl::Readout::ensemble;
  c.ensemble_noise = false;
  return c;
}

}  // namespace

TEST(ProtocolConfig, Defaults) {
  const cl::ProtocolConfig c;
  ASSERT_EQ(c.theta_grid.size(), 7u);
  EXPECT_NEAR(c.theta_grid.front(), 9.4, 1e-12);
  EXPECT_NEAR(c.theta_grid.back(), 10.6, 1e-12);
  EXPECT_NEAR(c.reference(), 10.0 * kDeg, 1e-12);
  EXPECT_EQ(c.ensemble_molecules, 1e15);
  EXPECT_EQ(c.phase_sign, -1);
  EXPECT_NO_THROW(c.validate());
}

TEST(ProtocolConfig, Validation) {
  cl::ProtocolConfig c;
  c.shots = 0;
  EXPECT_THROW(c.validate(), cl::PreconditionError);
  c = {};
  c.theta_grid.clear();
  EXPECT_THROW(c.validate(), cl::PreconditionError);
  c = {};
  c.theta_true = NAN;
  EXPECT_THROW(c.validate(), cl::PreconditionError);
  c = {};
  c.phase_sign = 0;
  EXPECT_THROW(c.validate(), cl::PreconditionError);
  c = {};
  c.n_qubits = 13;
  EXPECT_THROW(c.validate(), cl::CapExceeded);
  c = {};
  c.protocol = cl::Protocol::surface_code;
  c.n_qubits = 6;
  EXPECT_THROW(c.validate(), cl::PreconditionError);
  c = {};
  c.protocol = cl::Protocol::magic_k;
  c.k = 0;
  EXPECT_THROW(c.validate(), cl::PreconditionError);
  c = {};
  c.protocol = cl::Protocol::custom;
  EXPECT_THROW(c.validate(), cl::PreconditionError);
}

TEST(ProtocolConfig, NamesRoundTrip) {
  for (auto p : {cl::Protocol::ramsey_ghz, cl::Protocol::surface_code, cl::Protocol::magic_k, cl::Protocol::custom,
                 cl::Protocol::independent}) {
    EXPECT_EQ(cl::parse_protocol(cl::protocol_name(p)), p);
  }
  EXPECT_EQ(cl::parse_readout("projective"), cl::Readout::projective);
  EXPECT_EQ(cl::parse_estimator("sld_projector"), cl::EstimatorKind::sld_projector);
  EXPECT_THROW(cl::parse_protocol("nmr"), cl::ParseError);
  EXPECT_THROW(cl::parse_readout("x"), cl::ParseError);
  EXPECT_THROW(cl::parse_estimator("x"), cl::ParseError);
}

TEST(GhzPhaseState, MatchesNegativeCollectiveEvolution) {
  for (std::size_t n : {1u, 3u, 5u}) {
    auto g = cl::PauliSumOperator::collective(n, 'Z');
    g *= -1.0;
    const auto evolved = cl::evolve_phase(cl::StateVector::ghz(n), g, 0.37);
    EXPECT_NEAR(overlap2(evolved.amplitudes(), cl::ghz_phase_state(n, 0.37).amplitudes()), 1.0, 1e-14);
  }
  const auto s = cl::ghz_phase_state(3, 0.1);
  EXPECT_NEAR(std::arg(s[7] / s[0]), -0.3, 1e-14);
}

TEST(Classify, Examples) {
  const auto id = cl::classify_collective_clifford(cl::single_qubit_clifford_index("I"));
  EXPECT_EQ(id.kind, cl::PhaseFormKind::equatorial);
  EXPECT_EQ(id.sign, 1);
  EXPECT_EQ(id.quarter_turns, 0);
  const auto s = cl::classify_collective_clifford(cl::single_qubit_clifford_index("S"));
  EXPECT_EQ(s.kind, cl::PhaseFormKind::equatorial);
  EXPECT_EQ(s.quarter_turns, 1);
  const auto h = cl::classify_collective_clifford(cl::single_qubit_clifford_index("H"));
  EXPECT_EQ(h.kind, cl::PhaseFormKind::meridian);
}

// H^{(x)3} on the GHZ phase state: amplitude of |x> is
// 2^{-2}[1 + (-1)^{|x|} e^{-3i theta}].
TEST(Classify, HadamardParityForm) {
  const double theta = 0.23;
  const Eigen::VectorXcd out = collective_oracle(oracle::gate2('H'), 3) * cl::ghz_phase_state(3, theta).amplitudes();
  for (int x = 0; x < 8; ++x) {
    const int w = __builtin_popcount(x);
    const cplx want = 0.25 * (1.0 + (w % 2 ? -1.0 : 1.0) * std::polar(1.0, -3 * theta));
    EXPECT_NEAR(std::abs(out(x) - want), 0.0, 1e-14) << x;
  }
}

TEST(Classify, AllCliffordsMatchClosedForm) {
  int equatorial = 0;
  const auto& table = cl::single_qubit_cliffords();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto f = cl::classify_collective_clifford(i);
    const bool keeps_z = table[i].image('Z').axis(0) == 'Z';
    EXPECT_EQ(f.kind == cl::PhaseFormKind::equatorial, keeps_z) << table[i].label();
    equatorial += keeps_z;
    for (std::size_t n : {1u, 3u, 5u}) {
      for (double theta : {0.0, 10.0 * kDeg, -0.7, 2.9}) {
        const Eigen::VectorXcd dense = collective_oracle(table[i].matrix, n) * cl::ghz_phase_state(n, theta).amplitudes();
        const auto pred = cl::predicted_collective_output(f, n, theta);
        EXPECT_GE(overlap2(dense, pred.amplitudes()), 1.0 - 1e-10) << table[i].label() << " n=" << n;
      }
    }
  }
  EXPECT_EQ(equatorial, 8);
}

TEST(RunProtocol, SingleQubitMeetsCramerRao) {
  cl::ProtocolConfig c;
  c.n_qubits = 1;
  c.shots = 10000;
  c.readout = cl::Readout::projective;
  c.estimator = cl::EstimatorKind::sld_projector;
  const auto r = cl::run_protocol(c);
  EXPECT_NEAR(r.crb, 0.01, 1e-15);
  EXPECT_NEAR(r.sigma_theta, 0.01, 0.001);
  EXPECT_LT(std::abs(r.theta_hat - 10 * kDeg), 5 * r.sigma_theta);
  EXPECT_EQ(r.estimator, "sld_projector");
}

TEST(RunProtocol, QuadratureSingleQubit) {
  cl::ProtocolConfig c;
  c.n_qubits = 1;
  c.readout = cl::Readout::projective;
  const auto r = cl::run_protocol(c);
  EXPECT_EQ(r.estimator, "quadrature");
  EXPECT_LT(std::abs(r.theta_hat - 10 * kDeg), 5 * r.sigma_theta);
  // Random Pauli bases use a third of the shots per quadrature.
  EXPECT_GT(r.sigma_theta, r.crb);
  EXPECT_LT(r.sigma_theta, 2.0 * r.crb);
}

TEST(RunProtocol, NoiselessEnsembleIsExact) {
  for (int sign : {-1, 1}) {
    auto c = noiseless(3);
    c.phase_sign = sign;
    const auto r = cl::run_protocol(c);
    EXPECT_NEAR(r.theta_hat, 10 * kDeg, 1e-8);
    for (const auto& g : r.per_grid_estimates) EXPECT_NEAR(g.theta_hat, g.theta, 1e-10);
    EXPECT_NEAR(r.qfi_theoretical, 9.0, 1e-12);
    EXPECT_NEAR(r.crb, 1.0 / std::sqrt(1e4 * 1e15 * 9.0), 1e-20);
  }
}

TEST(RunProtocol, NullPhase) {
  cl::ProtocolConfig c;
  c.n_qubits = 5;
  c.theta_true = 0.0;
  c.readout = cl::Readout::projective;
  const auto r = cl::run_protocol(c);
  EXPECT_LT(std::abs(r.theta_hat), 3 * r.sigma_theta);
}

TEST(RunProtocol, NoisyEnsembleWithinErrorBars) {
  cl::ProtocolConfig c;
  c.n_qubits = 5;
  c.ensemble_molecules = 1e6;
  const auto r = cl::run_protocol(c);
  EXPECT_LT(std::abs(r.theta_hat - 10 * kDeg), 5 * r.sigma_theta);
}

TEST(RunProtocol, OtherProtocols) {
  auto sc = noiseless(8, cl::Protocol::surface_code);
  const auto rs = cl::run_protocol(sc);
  EXPECT_EQ(rs.estimator, "quadrature");
  EXPECT_NEAR(rs.qfi_theoretical, 4.0, 1e-10);
  EXPECT_NEAR(rs.theta_hat, 10 * kDeg, 1e-10);

  auto mk = noiseless(5, cl::Protocol::magic_k);
  mk.k = 2;
  const auto rm = cl::run_protocol(mk);
  EXPECT_EQ(rm.estimator, "sld_projector");
  EXPECT_EQ(rm.k, 2u);
  EXPECT_NEAR(rm.theta_hat, 10 * kDeg, 1e-9);

  auto cu = noiseless(3, cl::Protocol::custom);
  cu.custom_state = cl::StateVector::ghz(3);
  cu.custom_generator = cl::PauliSumOperator::collective(3, 'Z');
  cu.custom_circuit = cl::ramsey_lens(3).circuit;
  cu.custom_informative = {0};
  const auto rc = cl::run_protocol(cu);
  const auto rr = cl::run_protocol(noiseless(3));
  EXPECT_NEAR(rc.theta_hat, rr.theta_hat, 1e-12);
  EXPECT_NEAR(rc.sigma_theta, rr.sigma_theta, 1e-20);
}

TEST(RunProtocol, Errors) {
  auto cu = noiseless(3, cl::Protocol::custom);
  cu.custom_state = cl::StateVector::ghz(3);
  cu.custom_generator = cl::PauliSumOperator::collective(3, 'Z');
  cu.custom_circuit = cl::CliffordCircuit(3);
  cu.custom_informative = {0};
  EXPECT_THROW(cl::run_protocol(cu), cl::PreconditionError);
  cu.custom_state = cl::StateVector::zero(3);
  cu.custom_informative = {0, 1, 2};
  EXPECT_THROW(cl::run_protocol(cu), cl::DegenerateProtocol);
  auto big = noiseless(13);
  EXPECT_THROW(cl::run_protocol(big), cl::CapExceeded);
  auto mk = noiseless(4, cl::Protocol::magic_k);
  mk.k = 2;
  mk.estimator = cl::EstimatorKind::quadrature;
  EXPECT_THROW(cl::run_protocol(mk), cl::PreconditionError);
}

TEST(RunProtocol, NeverBeatsCramerRao) {
  std::uint64_t seed = 100;
  for (auto p : {cl::Protocol::ramsey_ghz, cl::Protocol::independent}) {
    for (auto ro : {cl::Readout::ensemble, cl::Readout::projective}) {
      for (auto est : {cl::EstimatorKind::quadrature, cl::EstimatorKind::sld_projector}) {
        for (std::size_t n : {1u, 3u, 6u}) {
          cl::ProtocolConfig c;
          c.protocol = p;
          c.n_qubits = n;
          c.readout = ro;
          c.estimator = est;
          c.shots = 2000;
          c.seed = seed++;
          const auto r = cl::run_protocol(c);
          EXPECT_GE(r.sigma_theta, 0.9 * r.crb);
          for (const auto& g : r.per_grid_estimates) EXPECT_GE(g.sigma_theta, 0.9 * r.crb);
        }
      }
    }
  }
}

TEST(RunProtocol, ConsistentAsShotsGrow) {
  std::vector<double> medians;
  for (std::size_t shots : {100u, 1000u, 10000u}) {
    std::vector<double> err;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      cl::ProtocolConfig c;
      c.n_qubits = 3;
      c.shots = shots;
      c.seed = seed;
      c.readout = cl::Readout::projective;
      c.theta_grid = {10.0};
      err.push_back(std::abs(cl::run_protocol(c).theta_hat - c.theta_true));
    }
    std::nth_element(err.begin(), err.begin() + 25, err.end());
    medians.push_back(err[25]);
  }
  EXPECT_GT(medians[0], medians[1]);
  EXPECT_GT(medians[1], medians[2]);
}

TEST(Acquire, RecordsShape) {
  auto rng = cl::make_rng(1, {});
  const auto bits = cl::acquire_qubit_records(cl::StateVector::plus(1), 50, cl::Readout::projective, 0.0, rng);
  ASSERT_EQ(bits.size(), 50u);
  EXPECT_TRUE(bits[0].has_bits());
  const auto vals = cl::acquire_qubit_records(cl::StateVector::plus(1), 50, cl::Readout::ensemble, 0.0, rng);
  for (const auto& r : vals) EXPECT_LE(std::abs(r.value()), 1.0 + 1e-12);
  EXPECT_THROW(cl::acquire_qubit_records(cl::StateVector::plus(2), 5, cl::Readout::ensemble, 0.0, rng),
               cl::DimensionError);
  EXPECT_THROW(cl::quadrature_from_records({}, 0.1), cl::PreconditionError);
}

TEST(LocalReadout, MixedQfiOfPureStateIsFourVariance) {
  auto rng = cl::make_rng(2, {});
  const auto psi = cl::StateVector::random(2, rng);
  const auto g = cl::PauliSumOperator::parse("0.5*ZI + 0.3*XY");
  const Eigen::VectorXcd v = psi.amplitudes();
  Eigen::MatrixXcd gm = 0.5 * oracle::word_matrix("ZI") + 0.3 * oracle::word_matrix("XY");
  const Eigen::MatrixXcd rho = v * v.adjoint();
  const Eigen::MatrixXcd rho_dot = cplx(0, -1) * (gm * rho - rho * gm);
  const double mean = (v.adjoint() * gm * v)(0, 0).real();
  const double var = (v.adjoint() * gm * gm * v)(0, 0).real() - mean * mean;
  EXPECT_NEAR(cl::mixed_state_qfi(rho, rho_dot), 4 * var, 1e-10);
  EXPECT_NEAR(cl::local_readout_qfi(psi, g, {0, 1}), 4 * var, 1e-10);
}

// The lens leaves the QFI unchanged but is what makes it readable from a
// single qubit.
TEST(LocalReadout, LensMakesSingleQubitReadoutOptimal) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto g = cl::PauliSumOperator::collective(n, 'Z');
    const auto ghz = cl::StateVector::ghz(n);
    const auto lens = cl::ramsey_lens(n);
    const auto lensed = cl::apply_circuit(ghz, lens.circuit);
    const auto lensed_g = cl::conjugate_pauli_sum(lens.circuit, g);
    EXPECT_NEAR(cl::qfi(ghz, g), cl::qfi(lensed, lensed_g), 1e-10);
    EXPECT_NEAR(cl::local_readout_qfi(ghz, g, {0}), 0.0, 1e-10);
    EXPECT_NEAR(cl::local_readout_qfi(lensed, lensed_g, {0}), double(n * n), 1e-9);
  }
}

TEST(ScalingSweep, HeisenbergAndStandardLimit) {
  auto c = noiseless(1);
  c.shots = 3000;
  const auto hl = cl::scaling_sweep(cl::default_sweep_sizes(), c);
  EXPECT_NEAR(hl.slope, -1.0, 0.05);
  ASSERT_EQ(hl.rows.size(), 6u * 7u);
  c.protocol = cl::Protocol::independent;
  const auto sql = cl::scaling_sweep(cl::default_sweep_sizes(), c);
  EXPECT_NEAR(sql.slope, -0.5, 0.1);
}

TEST(ScalingSweep, SingleQubitRowMatchesCramerRao) {
  cl::ProtocolConfig c;
  c.readout = cl::Readout::projective;
  c.estimator = cl::EstimatorKind::sld_projector;
  c.shots = 10000;
  const auto s = cl::scaling_sweep({1}, c);
  EXPECT_NEAR(s.per_n[0].sigma_mean_deg, s.per_n[0].crb_deg, 0.1 * s.per_n[0].crb_deg);
  EXPECT_NEAR(s.rows[0].hl_deg, s.rows[0].sql_deg, 1e-12);
}

TEST(ScalingSweep, CsvAndErrors) {
  auto c = noiseless(1);
  c.theta_grid = {10.0};
  const auto s = cl::scaling_sweep({1, 3}, c);
  const std::string csv = s.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,theta_deg,theta_hat_deg,sigma_deg,crb_deg,hl_deg,sql_deg");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_THROW(cl::scaling_sweep({}, c), cl::PreconditionError);
  EXPECT_THROW(cl::loglog_slope({1.0}, {1.0}), cl::PreconditionError);
  EXPECT_NEAR(cl::loglog_slope({1, 2, 4}, {1, 0.5, 0.25}), -1.0, 1e-14);
}
