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

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cliffordlens/clifford.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/lensing.hpp"
#include "cliffordlens/metrology.hpp"
#include "cliffordlens/shadows.hpp"
#include "cliffordlens/sld.hpp"

namespace cliffordlens {

using json = nlohmann::json;

inline json to_json(const QfiReport& r) {
  json hist = json::object();
  for (const auto& [w, v] : r.weight_histogram) hist[std::to_string(w)] = v;
  return {{"qfi", r.qfi},
          {"eigenvalues", {r.eigenvalues.first, r.eigenvalues.second}},
          {"max_weight", r.max_pauli_weight},
          {"histogram", hist},
          {"locality_bound_clifford", r.locality_bound_clifford},
          {"locality_bound_pauli", r.locality_bound_pauli}};
}

inline json to_json(const LensResult& r) {
  return {{"circuit", r.circuit.str()},
          {"k", r.k},
          {"informative_qubits", r.informative_qubits},
          {"residual", r.residual},
          {"verified", r.verified},
          {"effective_generator", r.effective_generator.str()},
          {"generator_residual", r.generator_residual},
          {"aux_fidelity_min", r.aux_fidelity_min},
          {"theta_grid", r.theta_grid},
          {"tolerance", r.tolerance}};
}

inline json to_json(const ShadowEstimate& e) {
  return {{"estimate", e.estimate},
          {"std_error", e.std_error},
          {"single_shot_variance", e.single_shot_variance},
          {"records", e.records}};
}

inline json to_json(const SampleComplexityQuote& q) {
  return {{"k", q.k},
          {"op_norm", q.op_norm},
          {"variance", q.variance},
          {"epsilon", q.epsilon},
          {"delta", q.delta},
          {"eta", q.eta},
          {"bound_hoeffding", q.bound_hoeffding},
          {"bound_variance_scaled", q.bound_variance_scaled},
          {"bound_variance_scaled_4_2k", q.bound_variance_scaled_4_2k},
          {"clifford_bound", q.clifford_bound}};
}

/// Degrees on the outside, as in the sweep CSV.
inline json to_json(const EstimationResult& r) {
  json grid = json::array();
  for (const auto& g : r.per_grid_estimates) {
    grid.push_back({{"theta_deg", g.theta / kDegree},
                    {"theta_hat_deg", g.theta_hat / kDegree},
                    {"sigma_deg", g.sigma_theta / kDegree}});
  }
  return {{"theta_true_deg", r.theta_true / kDegree},
          {"theta_hat_deg", r.theta_hat / kDegree},
          {"sigma_deg", r.sigma_theta / kDegree},
          {"crb_deg", r.crb / kDegree},
          {"qfi", r.qfi_theoretical},
          {"estimator", r.estimator},
          {"k", r.k},
          {"grid", grid}};
}

inline json to_json(const SweepResult& s) {
  json per_n = json::array();
  for (const auto& p : s.per_n) {
    per_n.push_back({{"n", p.n}, {"sigma_mean_deg", p.sigma_mean_deg}, {"crb_deg", p.crb_deg}});
  }
  return {{"protocol", s.protocol}, {"slope", s.slope}, {"per_n", per_n}};
}

// ----- Shadow records as JSON lines -----

inline json to_json(const ShadowRecord& r) {
  json labels = json::array();
  for (std::size_t u : r.unitaries) labels.push_back(single_qubit_cliffords().at(u).label());
  json out = {{"unitaries", labels}};
  if (r.has_bits()) {
    out["outcome"] = r.bits();
  } else {
    out["outcome"] = r.value();
  }
  return out;
}

inline ShadowRecord shadow_record_from_json(const json& j) {
  if (!j.is_object() || !j.contains("unitaries") || !j.contains("outcome")) {
    throw ParseError("shadow record needs 'unitaries' and 'outcome'");
  }
  ShadowRecord r;
  for (const auto& l : j.at("unitaries")) {
    if (!l.is_string()) throw ParseError("unitary labels must be strings");
    r.unitaries.push_back(single_qubit_clifford_index(l.get<std::string>()));
  }
  const auto& o = j.at("outcome");
  if (o.is_string()) {
    const auto bits = o.get<std::string>();
    if (bits.size() != r.unitaries.size() || bits.find_first_not_of("01") != std::string::npos) {
      throw ParseError("bit-string outcome must have one 0/1 per unitary");
    }
    r.outcome = bits;
  } else if (o.is_number()) {
    r.outcome = o.get<double>();
  } else {
    throw ParseError("outcome must be a bit string or a number");
  }
  return r;
}

/// Header line, then one record per line.
inline void write_shadow_jsonl(std::ostream& out, const json& header, const std::vector<ShadowRecord>& records) {
  out << header.dump() << '\n';
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline std::pair<json, std::vector<ShadowRecord>> read_shadow_jsonl(std::istream& in) {
  std::string line;
  json header;
  std::vector<ShadowRecord> records;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON line: " + line);
    if (first) {
      header = std::move(j);
      first = false;
    } else {
      records.push_back(shadow_record_from_json(j));
    }
  }
  if (first) throw ParseError("empty shadow file");
  return {header, records};
}

}  // namespace cliffordlens
