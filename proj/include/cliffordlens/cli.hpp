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
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliffordlens/lensing.hpp"
#include "cliffordlens/metrology.hpp"
#include "cliffordlens/serialize.hpp"
#include "cliffordlens/shadows.hpp"
#include "cliffordlens/sld.hpp"

namespace cliffordlens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCompute = 2;

/// Thrown for bad flags, unreadable config files and malformed values.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Flat configuration keys and their defaults. Angles are in degrees.
inline json default_config(const std::string& subcommand) {
  json c = {{"protocol", "ramsey_ghz"},
            {"n", 3},
            {"k", 1},
            {"theta_deg", 10.0},
            {"grid_deg", default_grid_degrees()},
            {"reference_deg", nullptr},
            {"shots", 10000},
            {"ensemble_molecules", 1e15},
            {"ensemble_noise", true},
            {"seed", 1},
            {"readout", "ensemble"},
            {"estimator", "auto"},
            {"phase_sign", -1},
            {"state", "ghz"},
            {"generator", nullptr},
            {"circuit", nullptr},
            {"informative", {0}},
            {"records", 1000},
            {"observable", nullptr},
            {"kind", nullptr},
            {"ensemble", "clifford"},
            {"lens", false},
            {"code", "repetition"},
            {"verify", false},
            {"op_norm", 1.0},
            {"variance", 1.0},
            {"epsilon", 0.1},
            {"delta", 0.05},
            {"eta", 0.1},
            {"trace_l2", 0.0}};
  if (subcommand == "scaling") c["n"] = default_sweep_sizes();
  return c;
}

namespace detail {

template <class T>
T get(const json& cfg, const std::string& key) {
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

inline std::size_t get_size(const json& cfg, const std::string& key) {
  const auto& v = cfg.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw UsageError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline std::vector<std::size_t> get_sizes(const json& cfg, const std::string& key) {
  const auto& v = cfg.at(key);
  if (v.is_number_integer()) return {get_size(cfg, key)};
  std::vector<std::size_t> out;
  if (!v.is_array()) throw UsageError("config key '" + key + "' must be an integer or a list");
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw UsageError("bad entry in '" + key + "'");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

// "1,3,5" or "[1,3,5]" or "7".
inline json parse_list(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() != '[') t = "[" + t + "]";
  json j = json::parse(t, nullptr, false);
  if (j.is_discarded() || !j.is_array()) throw UsageError("cannot parse list '" + text + "'");
  return j;
}

// --set values are JSON when they parse as JSON, strings otherwise.
inline json parse_value(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) return text;
  return j;
}

inline void merge(json& cfg, const json& extra, std::set<std::string>& explicit_keys, const std::string& where) {
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    if (!cfg.contains(it.key())) throw UsageError("unknown config key '" + it.key() + "' in " + where);
    cfg[it.key()] = it.value();
    explicit_keys.insert(it.key());
  }
}

inline std::string circuit_text(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ';', '\n');
  return t;
}

}  // namespace detail

/// ProtocolConfig from the flat keys (degrees converted to radians).
inline ProtocolConfig protocol_config(const json& cfg) {
  ProtocolConfig c;
  c.protocol = parse_protocol(detail::get<std::string>(cfg, "protocol"));
  c.n_qubits = detail::get_size(cfg, "n");
  c.k = detail::get_size(cfg, "k");
  c.theta_true = detail::get<double>(cfg, "theta_deg") * kDegree;
  c.theta_grid = detail::get<std::vector<double>>(cfg, "grid_deg");
  if (!cfg.at("reference_deg").is_null()) c.reference_theta = detail::get<double>(cfg, "reference_deg") * kDegree;
  c.shots = detail::get_size(cfg, "shots");
  c.ensemble_molecules = detail::get<double>(cfg, "ensemble_molecules");
  c.ensemble_noise = detail::get<bool>(cfg, "ensemble_noise");
  c.seed = detail::get<std::uint64_t>(cfg, "seed");
  c.readout = parse_readout(detail::get<std::string>(cfg, "readout"));
  c.estimator = parse_estimator(detail::get<std::string>(cfg, "estimator"));
  c.phase_sign = detail::get<int>(cfg, "phase_sign");
  if (c.protocol == Protocol::custom) {
    const std::size_t n = c.n_qubits;
    const std::string state = detail::get<std::string>(cfg, "state");
    if (state == "ghz") c.custom_state = StateVector::ghz(n);
    else if (state == "plus") c.custom_state = StateVector::plus(n);
    else if (state == "zero") c.custom_state = StateVector::zero(n);
    else throw UsageError("state must be one of ghz, plus, zero");
    c.custom_generator = cfg.at("generator").is_null() ? PauliSumOperator::collective(n, 'Z')
                                                        : PauliSumOperator::parse(detail::get<std::string>(cfg, "generator"));
    c.custom_circuit = cfg.at("circuit").is_null()
                           ? CliffordCircuit(n)
                           : CliffordCircuit::parse(detail::circuit_text(detail::get<std::string>(cfg, "circuit")), n);
    c.custom_informative = detail::get<std::vector<std::size_t>>(cfg, "informative");
  }
  return c;
}

/// Probe state and generator (including the phase sign) of a protocol.
inline std::pair<StateVector, PauliSumOperator> probe(const ProtocolConfig& c) {
  c.validate();
  const std::size_t n = c.n_qubits;
  std::pair<StateVector, PauliSumOperator> out;
  switch (c.protocol) {
    case Protocol::ramsey_ghz: out = {StateVector::ghz(n), PauliSumOperator::collective(n, 'Z')}; break;
    case Protocol::surface_code: out = {surface_code_ghz_state(n / 4), surface_code_generator(n / 4)}; break;
    case Protocol::magic_k: out = {magic_k_state(n, c.k), PauliSumOperator::collective(n, 'Z')}; break;
    case Protocol::independent: out = {StateVector::plus(n), PauliSumOperator::collective(n, 'Z')}; break;
    case Protocol::custom: out = {*c.custom_state, *c.custom_generator}; break;
  }
  out.second *= double(c.phase_sign);
  return out;
}

/// Lens of a protocol verified on `grid` (radians).
inline LensResult protocol_lens(const ProtocolConfig& c, const std::vector<double>& grid) {
  const auto [psi, g] = probe(c);
  const std::size_t n = c.n_qubits;
  switch (c.protocol) {
    case Protocol::ramsey_ghz: return verify_lens(psi, g, cliffordlens::detail::cnot_cascade(n), {0}, grid);
    case Protocol::surface_code:
      return verify_lens(psi, g, cliffordlens::detail::surface_ghz_encoder(n / 4).inverse(), {0}, grid);
    case Protocol::magic_k: {
      std::vector<std::size_t> inf(c.k);
      for (std::size_t i = 0; i < c.k; ++i) inf[i] = i;
      return verify_lens(psi, g, cliffordlens::detail::cnot_cascade(n).inverse(), inf, grid);
    }
    case Protocol::custom: return verify_lens(psi, g, *c.custom_circuit, c.custom_informative, grid);
    case Protocol::independent: break;
  }
  throw PreconditionError("the independent protocol has no lens");
}

namespace detail {

struct Invocation {
  std::string subcommand;
  json config;
  std::set<std::string> explicit_keys;
  std::optional<std::string> output;
  std::optional<std::string> summary;
  std::optional<std::string> input;
};

inline std::vector<double> lens_grid(const Invocation& inv) {
  if (!inv.explicit_keys.count("grid_deg")) return default_theta_grid();
  std::vector<double> g = get<std::vector<double>>(inv.config, "grid_deg");
  for (double& t : g) t *= kDegree;
  return g;
}

inline void emit(const Invocation& inv, std::ostream& out, const std::string& text) {
  if (!inv.output) {
    out << text;
    return;
  }
  std::ofstream f(*inv.output);
  if (!f) throw UsageError("cannot write output file '" + *inv.output + "'");
  f << text;
}

inline std::string dump(json j) { return j.dump(2) + "\n"; }

inline int cmd_qfi(const Invocation& inv, std::ostream& out, std::ostream&) {
  const auto [psi, g] = probe(protocol_config(inv.config));
  json j = to_json(pauli_weight_profile(build_sld(psi, g)));
  j["config"] = inv.config;
  emit(inv, out, dump(j));
  return kExitOk;
}

inline int cmd_sld(const Invocation& inv, std::ostream& out, std::ostream&) {
  const auto [psi, g] = probe(protocol_config(inv.config));
  const SldForm l = build_sld(psi, g);
  const auto ev = l.eigenvalues();
  json j = {{"sld", sld_pauli_sum(l).str()},
            {"eigenvalues", {ev.first, ev.second}},
            {"qfi", l.qfi()},
            {"variance", l.var_g},
            {"config", inv.config}};
  emit(inv, out, dump(j));
  return kExitOk;
}

inline int cmd_lens(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const LensResult r = protocol_lens(protocol_config(inv.config), lens_grid(inv));
  json j = to_json(r);
  j["config"] = inv.config;
  emit(inv, out, dump(j));
  if (get<bool>(inv.config, "verify") && !r.verified) {
    err << "lens verification failed: residual " << r.residual << "\n";
    return kExitCompute;
  }
  return kExitOk;
}

inline int cmd_shadow(const Invocation& inv, std::ostream& out, std::ostream&) {
  const json& cfg = inv.config;
  const std::string kind = cfg.at("kind").is_null() ? "pauli" : get<std::string>(cfg, "kind");
  std::optional<PauliSumOperator> obs;
  if (!cfg.at("observable").is_null()) obs = PauliSumOperator::parse(get<std::string>(cfg, "observable"));
  if (inv.input) {
    if (!obs) throw UsageError("--input needs --observable");
    std::ifstream f(*inv.input);
    if (!f) throw UsageError("cannot read shadow file '" + *inv.input + "'");
    const auto [header, records] = read_shadow_jsonl(f);
    json j = to_json(pauli_shadow_estimate(records, *obs));
    j["header"] = header;
    j["config"] = cfg;
    emit(inv, out, dump(j));
    return kExitOk;
  }
  const ProtocolConfig c = protocol_config(cfg);
  const std::size_t count = get_size(cfg, "records");
  if (count == 0) throw UsageError("records must be positive");
  Rng rng = make_rng(c.seed, {c.n_qubits, 7});
  std::vector<ShadowRecord> records;
  std::size_t width = c.n_qubits;
  if (kind == "pauli") {
    const auto [psi, g] = probe(c);
    StateVector state = evolve_phase(psi, g, c.theta_true);
    if (get<bool>(cfg, "lens")) state = apply_circuit(state, protocol_lens(c, lens_grid(inv)).circuit);
    for (std::size_t i = 0; i < count; ++i) records.push_back(pauli_shadow_sample(state, rng));
    if (obs) {
      if (obs->n_qubits() != state.n_qubits()) throw UsageError("observable size does not match the register");
      json j = to_json(pauli_shadow_estimate(records, *obs));
      j["exact"] = expectation(state, *obs);
      j["config"] = cfg;
      emit(inv, out, dump(j));
      return kExitOk;
    }
  } else if (kind == "ensemble") {
    if (obs) throw UsageError("--observable applies to pauli shadows");
    const LensResult lens = protocol_lens(c, lens_grid(inv));
    if (lens.k != 1) throw PreconditionError("ensemble shadows read one informative qubit; this lens has k = " +
                                             std::to_string(lens.k));
    const double sigma = c.ensemble_noise ? 1.0 / std::sqrt(c.ensemble_molecules) : 0.0;
    records = acquire_qubit_records(lens.informative_factor(c.theta_true), count, Readout::ensemble, sigma, rng);
    width = 1;
  } else {
    throw UsageError("shadow kind must be pauli or ensemble");
  }
  std::ostringstream os;
  write_shadow_jsonl(os, {{"seed", c.seed}, {"n_qubits", width}, {"kind", kind}, {"config", cfg}}, records);
  emit(inv, out, os.str());
  return kExitOk;
}

inline int cmd_channel(const Invocation& inv, std::ostream& out, std::ostream&) {
  const json& cfg = inv.config;
  const std::string kind = cfg.at("kind").is_null() ? "ensemble" : get<std::string>(cfg, "kind");
  json j;
  if (kind == "ensemble") {
    const auto o = PauliSumOperator::parse(cfg.at("observable").is_null() ? "Z" : get<std::string>(cfg, "observable"));
    const DenseOperator od = DenseOperator::from_pauli_sum(o);
    const std::size_t d = std::size_t{1} << o.n_qubits();
    const std::string ens = get<std::string>(cfg, "ensemble");
    UnitaryEnsemble group;
    if (ens == "clifford") group = clifford_ensemble(d);
    else if (ens == "local") group = local_clifford_ensemble(o.n_qubits());
    else throw UsageError("ensemble must be clifford or local");
    const auto coeffs = ensemble_channel_coeffs(od, d);
    const double res = design_residual(od, group);
    j = {{"c_identity", coeffs.c_identity},
         {"c_state", coeffs.c_state},
         {"dimension", coeffs.dimension},
         {"ensemble", group.name},
         {"ensemble_size", group.unitaries.size()},
         {"design_residual", res},
         {"is_design", res <= 1e-6}};
  } else if (kind == "collective") {
    const std::size_t n = get_size(cfg, "n");
    j = {{"lambda1", collective_channel_eigenvalue(1, n)},
         {"lambda1_closed_form", collective_lambda1_closed_form(n)},
         {"lambda1_trace_normalized", collective_lambda1_trace_normalized(n)}};
    if (n >= 2) j["lambda2"] = collective_channel_eigenvalue(2, n);
    if (n <= kMaxMoment2Qubits) {
      const DenseOperator m2 = collective_channel_moment2(n);
      j["moment2_residual"] = (m2.matrix() - collective_moment2_target(n).matrix()).cwiseAbs().maxCoeff();
      j["moment2_identity_component"] = identity_component(m2);
    }
  } else if (kind == "sample_complexity") {
    j = to_json(sample_complexity(get_size(cfg, "k"), get<double>(cfg, "op_norm"), get<double>(cfg, "variance"),
                                  get<double>(cfg, "epsilon"), get<double>(cfg, "delta"), get<double>(cfg, "eta"),
                                  get<double>(cfg, "trace_l2")));
  } else {
    throw UsageError("channel kind must be ensemble, collective or sample_complexity");
  }
  j["config"] = cfg;
  emit(inv, out, dump(j));
  return kExitOk;
}

inline int cmd_scaling(const Invocation& inv, std::ostream& out, std::ostream&) {
  json cfg = inv.config;
  const auto sizes = get_sizes(cfg, "n");
  json single = cfg;
  single["n"] = sizes.empty() ? 1 : sizes.front();
  const SweepResult s = scaling_sweep(sizes, protocol_config(single));
  emit(inv, out, s.to_csv());
  if (inv.summary) {
    json j = to_json(s);
    j["config"] = cfg;
    std::ofstream f(*inv.summary);
    if (!f) throw UsageError("cannot write summary file '" + *inv.summary + "'");
    f << dump(j);
  }
  return kExitOk;
}

inline int cmd_kickback(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const json& cfg = inv.config;
  const std::size_t n = get_size(cfg, "n");
  const std::string code_name = get<std::string>(cfg, "code");
  StabilizerCodeSpec code;
  if (code_name == "repetition") {
    code = repetition_code(n);
  } else if (code_name == "surface") {
    if (n % 4 != 0 || n == 0) throw UsageError("surface code needs a positive multiple of 4 physical qubits");
    code = surface_code_ghz(n / 4);
  } else {
    throw UsageError("code must be repetition or surface");
  }
  CliffordCircuit circuit(n);
  const std::string which = cfg.at("circuit").is_null() ? "decoder" : get<std::string>(cfg, "circuit");
  if (which == "decoder") circuit = synthesize_decoder(code);
  else if (which == "identity") circuit = CliffordCircuit(n);
  else circuit = CliffordCircuit::parse(circuit_text(which), n);
  const bool passed = verify_kickback(circuit, code);
  json j = {{"passed", passed}, {"circuit", circuit.str()}, {"config", cfg}};
  emit(inv, out, dump(j));
  if (!passed) {
    err << "kickback verification failed\n";
    return kExitCompute;
  }
  return kExitOk;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out` (or --output), diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clifford lensing and shadow metrology toolkit", "cliffordlens"};
  app.require_subcommand(1);

  struct Flags {
    std::string config, output, summary, input;
    std::vector<std::string> sets;
    std::string protocol, n, grid, readout, estimator, observable, kind, code, circuit, ensemble;
    long long k = 0, shots = 0, records = 0, phase_sign = 0;
    unsigned long long seed = 0;
    double theta = 0, molecules = 0, reference = 0;
    bool verify = false, lens = false, no_noise = false;
  } f;

  struct Mapping {
    CLI::Option* opt;
    std::string key;
    std::function<json()> value;
  };
  std::vector<Mapping> mappings;
  std::vector<std::pair<std::string, CLI::App*>> subs;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", f.config, "JSON file with flat configuration keys");
    s->add_option("-o,--output", f.output, "Write data here instead of standard output");
    s->add_option("--set", f.sets, "Override a config key (key=value, repeatable)");
    mappings.push_back({s->add_option("--seed", f.seed, "Random seed"), "seed", [&] { return json(f.seed); }});
    mappings.push_back({s->add_option("--protocol", f.protocol, "ramsey_ghz, surface_code, magic_k, custom, independent"),
                        "protocol", [&] { return json(f.protocol); }});
    mappings.push_back({s->add_option("--n", f.n, "Qubit count (a list for scaling)"), "n", [&] {
                          json l = detail::parse_list(f.n);
                          return l.size() == 1 ? l[0] : l;
                        }});
    mappings.push_back({s->add_option("--k", f.k, "Informative qubits for magic_k"), "k", [&] { return json(f.k); }});
    mappings.push_back({s->add_option("--theta", f.theta, "Phase in degrees"), "theta_deg", [&] { return json(f.theta); }});
    mappings.push_back({s->add_option("--grid", f.grid, "Theta grid in degrees, comma separated"), "grid_deg",
                        [&] { return detail::parse_list(f.grid); }});
    mappings.push_back({s->add_option("--reference", f.reference, "Reference phase in degrees"), "reference_deg",
                        [&] { return json(f.reference); }});
    mappings.push_back({s->add_option("--shots", f.shots, "Shots per estimate"), "shots", [&] { return json(f.shots); }});
    mappings.push_back({s->add_option("--readout", f.readout, "ensemble or projective"), "readout",
                        [&] { return json(f.readout); }});
    mappings.push_back({s->add_option("--estimator", f.estimator, "auto, quadrature or sld_projector"), "estimator",
                        [&] { return json(f.estimator); }});
    mappings.push_back({s->add_option("--molecules", f.molecules, "Ensemble size per shot"), "ensemble_molecules",
                        [&] { return json(f.molecules); }});
    mappings.push_back({s->add_flag("--no-noise", f.no_noise, "Noiseless ensemble readout"), "ensemble_noise",
                        [&] { return json(false); }});
    mappings.push_back({s->add_option("--phase-sign", f.phase_sign, "-1 or +1"), "phase_sign",
                        [&] { return json(f.phase_sign); }});
    subs.emplace_back(s->get_name(), s);
    return s;
  };

  common(app.add_subcommand("qfi", "QFI report of a protocol's probe"));
  common(app.add_subcommand("sld", "SLD of a protocol's probe as a Pauli sum"));
  auto* lens = common(app.add_subcommand("lens", "Construct and verify a Clifford lens"));
  mappings.push_back({lens->add_flag("--verify", f.verify, "Exit with status 2 unless the lens verifies"), "verify",
                      [&] { return json(true); }});
  auto* shadow = common(app.add_subcommand("shadow", "Generate or evaluate shadow records"));
  mappings.push_back({shadow->add_option("--records", f.records, "Number of records"), "records",
                      [&] { return json(f.records); }});
  mappings.push_back({shadow->add_option("--observable", f.observable, "Pauli sum to estimate"), "observable",
                      [&] { return json(f.observable); }});
  mappings.push_back({shadow->add_option("--kind", f.kind, "pauli or ensemble"), "kind", [&] { return json(f.kind); }});
  mappings.push_back({shadow->add_flag("--lens", f.lens, "Apply the protocol lens before sampling"), "lens",
                      [&] { return json(true); }});
  shadow->add_option("--input", f.input, "Estimate from an existing JSON-lines file");
  auto* channel = common(app.add_subcommand("channel", "Shadow channel coefficients and bounds"));
  mappings.push_back({channel->add_option("--observable", f.observable, "Traceless Pauli sum"), "observable",
                      [&] { return json(f.observable); }});
  mappings.push_back({channel->add_option("--kind", f.kind, "ensemble, collective or sample_complexity"), "kind",
                      [&] { return json(f.kind); }});
  mappings.push_back({channel->add_option("--ensemble", f.ensemble, "clifford or local"), "ensemble",
                      [&] { return json(f.ensemble); }});
  auto* scaling = common(app.add_subcommand("scaling", "Sensitivity sweep over n (CSV)"));
  scaling->add_option("--summary", f.summary, "Write the JSON summary here");
  auto* kick = common(app.add_subcommand("kickback-verify", "Check deterministic phase kickback for a code"));
  mappings.push_back({kick->add_option("--code", f.code, "repetition or surface"), "code", [&] { return json(f.code); }});
  mappings.push_back({kick->add_option("--circuit", f.circuit, "decoder, identity or circuit text (';' separated)"),
                      "circuit", [&] { return json(f.circuit); }});
  // --circuit on the custom protocol.
  for (auto* s : {app.get_subcommand("qfi"), app.get_subcommand("sld"), lens, shadow, scaling}) {
    mappings.push_back({s->add_option("--circuit", f.circuit, "Circuit text for the custom protocol"), "circuit",
                        [&] { return json(f.circuit); }});
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  detail::Invocation inv;
  inv.subcommand = app.get_subcommands().front()->get_name();
  try {
    inv.config = default_config(inv.subcommand);
    if (!f.config.empty()) {
      std::ifstream in(f.config);
      if (!in) throw UsageError("cannot read config file '" + f.config + "'");
      json file = json::parse(in, nullptr, false);
      if (file.is_discarded() || !file.is_object()) throw UsageError("config file is not a JSON object");
      detail::merge(inv.config, file, inv.explicit_keys, f.config);
    }
    for (const auto& kv : f.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
      detail::merge(inv.config, json{{kv.substr(0, eq), detail::parse_value(kv.substr(eq + 1))}}, inv.explicit_keys,
                    "--set");
    }
    for (const auto& m : mappings) {
      if (m.opt->count() > 0) {
        inv.config[m.key] = m.value();
        inv.explicit_keys.insert(m.key);
      }
    }
    if (!f.output.empty()) inv.output = f.output;
    if (!f.summary.empty()) inv.summary = f.summary;
    if (!f.input.empty()) inv.input = f.input;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (inv.subcommand == "qfi") return detail::cmd_qfi(inv, out, err);
    if (inv.subcommand == "sld") return detail::cmd_sld(inv, out, err);
    if (inv.subcommand == "lens") return detail::cmd_lens(inv, out, err);
    if (inv.subcommand == "shadow") return detail::cmd_shadow(inv, out, err);
    if (inv.subcommand == "channel") return detail::cmd_channel(inv, out, err);
    if (inv.subcommand == "scaling") return detail::cmd_scaling(inv, out, err);
    return detail::cmd_kickback(inv, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}

}  // namespace cliffordlens::cli
