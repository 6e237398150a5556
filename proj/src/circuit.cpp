// Copyright 2026 The HQC Authors
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

#include "hqc/circuit.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hqc {

namespace {

std::string at(const std::string &where, const char *field) { return where + "." + field; }
std::string at(const std::string &where, size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

const char *param_name(Gate::Kind k) {
  switch (k) {
    case Gate::Kind::Displace: return "alpha";
    case Gate::Kind::Squeeze: return "xi";
    case Gate::Kind::Phase: return "phi";
    case Gate::Kind::Shear: return "s";
    default: return nullptr;
  }
}

Gate::Kind parse_gate_kind(const Json &j, const std::string &where) {
  if (!j.is_string()) throw ValidationError(where + ": gate kind must be a string");
  const std::string s = j.get<std::string>();
  for (Gate::Kind k : {Gate::Kind::Passive, Gate::Kind::Displace, Gate::Kind::Squeeze,
                       Gate::Kind::Shear, Gate::Kind::Phase, Gate::Kind::Create}) {
    if (s == gate_kind_name(k)) return k;
  }
  throw ValidationError(where + ": unknown gate kind '" + s + "'");
}

int parse_int(const Json &j, const std::string &where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<int>();
}

AffineParam parse_param(const Json &j, const std::string &where) {
  AffineParam p;
  if (!j.is_object()) {
    p.constant = parse_complex(j, where);
    return p;
  }
  if (j.contains("const")) p.constant = parse_complex(j["const"], at(where, "const"));
  if (j.contains("terms")) {
    const Json &ts = j["terms"];
    if (!ts.is_array()) throw ValidationError(at(where, "terms") + ": expected a list");
    for (size_t i = 0; i < ts.size(); ++i) {
      const std::string w = at(at(where, "terms"), i);
      AffineParam::Term t;
      const Json &ref = require(ts[i], "ref", w);
      if (!ref.is_string()) throw ValidationError(at(w, "ref") + ": expected a string");
      t.ref = ref.get<std::string>();
      if (ts[i].contains("index")) t.index = parse_int(ts[i]["index"], at(w, "index"));
      if (ts[i].contains("coef")) t.coef = parse_complex(ts[i]["coef"], at(w, "coef"));
      p.terms.push_back(t);
    }
  }
  return p;
}

Json complex_compact(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return complex_to_json(z);
}

Json param_to_json(const AffineParam &p) {
  if (!p.adaptive()) return complex_compact(p.constant);
  Json j = Json::object();
  j["const"] = complex_compact(p.constant);
  Json ts = Json::array();
  for (const auto &t : p.terms) {
    ts.push_back(Json{{"ref", t.ref}, {"index", t.index}, {"coef", complex_compact(t.coef)}});
  }
  j["terms"] = ts;
  return j;
}

GateDecl parse_gate(const Json &j, const std::string &where) {
  GateDecl g;
  g.kind = parse_gate_kind(require(j, "kind", where), at(where, "kind"));
  if (g.kind == Gate::Kind::Passive) {
    g.U = parse_cmatrix(require(j, "U", where), at(where, "U"));
  } else {
    g.mode = parse_int(require(j, "mode", where), at(where, "mode"));
  }
  if (const char *name = param_name(g.kind)) {
    g.param = parse_param(require(j, name, where), at(where, name));
  }
  if (j.contains("t")) {
    if (!j["t"].is_number()) throw ValidationError(at(where, "t") + ": expected a number");
    g.t = j["t"].get<double>();
  }
  return g;
}

Json gate_to_json(const GateDecl &g) {
  Json j = Json::object();
  j["kind"] = gate_kind_name(g.kind);
  if (g.kind == Gate::Kind::Passive) {
    j["U"] = cmatrix_to_json(g.U);
  } else {
    j["mode"] = g.mode;
  }
  if (const char *name = param_name(g.kind)) j[name] = param_to_json(g.param);
  if (g.t != 1.0) j["t"] = g.t;
  return j;
}

MeasureKind parse_measure_kind(const Json &j, const std::string &where) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  for (MeasureKind k : {MeasureKind::Continuous, MeasureKind::Discrete, MeasureKind::Homodyne}) {
    if (s == measure_kind_name(k)) return k;
  }
  throw ValidationError(where + ": measurement kind must be continuous, discrete or homodyne");
}

std::map<MultiIndex, cplx> parse_amps(const Json &j, const std::string &where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty list");
  std::map<MultiIndex, cplx> amps;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string w = at(where, i);
    MultiIndex n = parse_index(require(j[i], "n", w), at(w, "n"));
    amps[n] += parse_complex(require(j[i], "amp", w), at(w, "amp"));
  }
  return amps;
}

Json amps_to_json(const std::map<MultiIndex, cplx> &amps) {
  Json out = Json::array();
  for (auto &[n, c] : amps) out.push_back(Json{{"n", n}, {"amp", complex_compact(c)}});
  return out;
}

PrepSpec parse_prep(const Json &j, const std::string &where, const std::string &base_dir) {
  PrepSpec p;
  const std::string kind = require(j, "kind", where).is_string()
                               ? j["kind"].get<std::string>()
                               : std::string();
  if (kind == "vacuum") {
    p.kind = PrepSpec::Kind::Vacuum;
  } else if (kind == "fock") {
    p.kind = PrepSpec::Kind::Fock;
    p.pattern = parse_index(require(j, "pattern", where), at(where, "pattern"));
  } else if (kind == "superposition") {
    p.kind = PrepSpec::Kind::Superposition;
    p.amps = parse_amps(require(j, "amps", where), at(where, "amps"));
  } else if (kind == "file") {
    p.kind = PrepSpec::Kind::Superposition;
    const Json &path = require(j, "path", where);
    if (!path.is_string()) throw ValidationError(at(where, "path") + ": expected a string");
    p.source = path.get<std::string>();
    std::filesystem::path full = std::filesystem::path(base_dir) / p.source;
    Json f = load_json_file(full.string());
    p.amps = parse_amps(require(f, "amps", full.string()), full.string() + ".amps");
  } else if (kind == "state") {
    p.kind = PrepSpec::Kind::State;
    p.state = state_from_json(j, where);
  } else if (kind == "gaussian" || kind == "photon_added") {
    p.kind = kind == "gaussian" ? PrepSpec::Kind::Gaussian : PrepSpec::Kind::PhotonAdded;
    const Json &steps = require(j, kind == "gaussian" ? "gates" : "steps", where);
    if (!steps.is_array()) throw ValidationError(where + ": expected a gate list");
    for (size_t i = 0; i < steps.size(); ++i) {
      const std::string w = at(at(where, kind == "gaussian" ? "gates" : "steps"), i);
      GateDecl g = parse_gate(steps[i], w);
      if (g.adaptive()) throw ValidationError(w + ": preparation gates cannot be adaptive");
      if (g.kind == Gate::Kind::Create && p.kind == PrepSpec::Kind::Gaussian) {
        throw ValidationError(w + ": creation operator in a Gaussian preparation");
      }
      p.steps.push_back(g);
    }
  } else {
    throw ValidationError(at(where, "kind") + ": unknown preparation kind '" + kind + "'");
  }
  return p;
}

Json prep_to_json(const PrepSpec &p) {
  Json j = Json::object();
  switch (p.kind) {
    case PrepSpec::Kind::Vacuum: j["kind"] = "vacuum"; break;
    case PrepSpec::Kind::Fock:
      j["kind"] = "fock";
      j["pattern"] = p.pattern;
      break;
    case PrepSpec::Kind::Superposition:
      if (!p.source.empty()) {
        j["kind"] = "file";
        j["path"] = p.source;
      } else {
        j["kind"] = "superposition";
        j["amps"] = amps_to_json(p.amps);
      }
      break;
    case PrepSpec::Kind::State: j = state_to_json(*p.state); break;
    case PrepSpec::Kind::Gaussian:
    case PrepSpec::Kind::PhotonAdded: {
      const bool gauss = p.kind == PrepSpec::Kind::Gaussian;
      j["kind"] = gauss ? "gaussian" : "photon_added";
      Json steps = Json::array();
      for (const auto &g : p.steps) steps.push_back(gate_to_json(g));
      j[gauss ? "gates" : "steps"] = steps;
      break;
    }
  }
  return j;
}

void check_mode(int k, int m, const std::string &where) {
  if (k < 0 || k >= m) throw ValidationError(where + ": mode " + std::to_string(k) + " out of range");
}

void validate_gate(const GateDecl &g, int m, const std::string &where) {
  if (g.kind == Gate::Kind::Passive) {
    if (g.U.rows() != m || g.U.cols() != m) throw ValidationError(at(where, "U") + ": must be m x m");
    if (!is_unitary(g.U)) throw ValidationError(at(where, "U") + ": not unitary");
  } else {
    check_mode(g.mode, m, at(where, "mode"));
  }
  if (!std::isfinite(g.t)) throw ValidationError(at(where, "t") + ": not finite");
}

}  // namespace

const char *measure_kind_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::Continuous: return "continuous";
    case MeasureKind::Discrete: return "discrete";
    case MeasureKind::Homodyne: return "homodyne";
  }
  return "?";
}

cplx resolve(const AffineParam &p, const OutcomeRecord &rec) {
  cplx v = p.constant;
  for (const auto &t : p.terms) {
    auto it = rec.find(t.ref);
    if (it == rec.end() || t.index < 0 || t.index >= static_cast<int>(it->second.size())) {
      throw ValidationError("adaptive parameter references missing outcome " + t.ref);
    }
    v += t.coef * it->second[t.index];
  }
  return v;
}

Json state_to_json(const StellarState &s) {
  Json j = Json::object();
  j["kind"] = "state";
  Json poly = Json::array();
  for (auto &[n, c] : s.poly().terms()) poly.push_back(Json{{"n", n}, {"c", complex_compact(c)}});
  j["poly"] = poly;
  j["A"] = cmatrix_to_json(s.gauss().A);
  j["B"] = cvector_to_json(s.gauss().B);
  j["C"] = complex_to_json(s.gauss().C);
  return j;
}

StellarState state_from_json(const Json &j, const std::string &where) {
  const Json &poly = require(j, "poly", where);
  if (!poly.is_array() || poly.empty()) throw ValidationError(at(where, "poly") + ": expected terms");
  int m = -1;
  Poly::Map terms;
  for (size_t i = 0; i < poly.size(); ++i) {
    const std::string w = at(at(where, "poly"), i);
    MultiIndex n = parse_index(require(poly[i], "n", w), at(w, "n"));
    if (m < 0) m = static_cast<int>(n.size());
    if (static_cast<int>(n.size()) != m || m == 0) throw ValidationError(w + ": index length mismatch");
    terms[n] += parse_complex(require(poly[i], "c", w), at(w, "c"));
  }
  GaussPart g = GaussPart::zero(m);
  if (j.contains("A")) g.A = parse_cmatrix(j["A"], at(where, "A"));
  if (j.contains("B")) g.B = parse_cvector(j["B"], at(where, "B"));
  if (j.contains("C")) g.C = parse_complex(j["C"], at(where, "C"));
  if (g.A.rows() != m || g.A.cols() != m || g.B.size() != m) {
    throw ValidationError(where + ": Gaussian data does not match the mode count");
  }
  Poly P(m);
  for (auto &[n, c] : terms) P.add_term(n, c);
  if (P.is_zero()) throw ValidationError(at(where, "poly") + ": zero polynomial");
  return StellarState(P, g);
}

CircuitSpec parse_circuit(const std::string &text, const std::string &source,
                          const std::string &base_dir) {
  Json j = parse_json_text(text, source);
  const std::string w = source;
  const Json &schema = require(j, "schema", w);
  if (!schema.is_string() || schema.get<std::string>() != kCircuitSchema) {
    throw ValidationError(w + ".schema: expected \"" + kCircuitSchema + "\"");
  }
  CircuitSpec spec;
  spec.modes = parse_int(require(j, "modes", w), at(w, "modes"));
  if (j.contains("rank_preserving")) {
    if (!j["rank_preserving"].is_boolean()) {
      throw ValidationError(at(w, "rank_preserving") + ": expected a boolean");
    }
    spec.rank_preserving = j["rank_preserving"].get<bool>();
  }
  spec.prep = j.contains("prep") ? parse_prep(j["prep"], at(w, "prep"), base_dir) : PrepSpec{};
  if (j.contains("gates")) {
    const Json &gs = j["gates"];
    if (!gs.is_array()) throw ValidationError(at(w, "gates") + ": expected a list");
    for (size_t i = 0; i < gs.size(); ++i) spec.gates.push_back(parse_gate(gs[i], at(at(w, "gates"), i)));
  }
  if (j.contains("measurements")) {
    const Json &ms = j["measurements"];
    if (!ms.is_array()) throw ValidationError(at(w, "measurements") + ": expected a list");
    for (size_t i = 0; i < ms.size(); ++i) {
      const std::string mw = at(at(w, "measurements"), i);
      MeasureDecl m;
      m.kind = parse_measure_kind(require(ms[i], "kind", mw), at(mw, "kind"));
      m.modes = parse_index(require(ms[i], "modes", mw), at(mw, "modes"));
      m.bind = ms[i].contains("bind") && ms[i]["bind"].is_string() ? ms[i]["bind"].get<std::string>()
                                                                   : "m" + std::to_string(i);
      m.after = ms[i].contains("after") ? parse_int(ms[i]["after"], at(mw, "after"))
                                        : static_cast<int>(spec.gates.size());
      spec.measurements.push_back(m);
    }
  }
  // Unknown top-level fields are schema violations.
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"schema", "modes", "rank_preserving", "prep", "gates",
                                             "measurements"};
    if (!known.count(it.key())) throw ValidationError(w + ": unknown field '" + it.key() + "'");
  }
  validate_circuit(spec);
  return spec;
}

CircuitSpec load_circuit(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_circuit(ss.str(), path, dir.empty() ? "." : dir);
}

void validate_circuit(const CircuitSpec &spec) {
  const int m = spec.modes;
  const std::string w = "circuit";
  if (m < 1 || m > 10) throw ValidationError(w + ".modes: must be between 1 and 10");
  const PrepSpec &p = spec.prep;
  switch (p.kind) {
    case PrepSpec::Kind::Fock:
      if (static_cast<int>(p.pattern.size()) != m) throw ValidationError(w + ".prep.pattern: length must equal modes");
      break;
    case PrepSpec::Kind::Superposition:
      for (auto &[n, c] : p.amps) {
        if (static_cast<int>(n.size()) != m) throw ValidationError(w + ".prep.amps: index length must equal modes");
      }
      break;
    case PrepSpec::Kind::State:
      if (p.state->modes() != m) throw ValidationError(w + ".prep: state mode count mismatch");
      break;
    case PrepSpec::Kind::Gaussian:
    case PrepSpec::Kind::PhotonAdded:
      for (size_t i = 0; i < p.steps.size(); ++i) validate_gate(p.steps[i], m, at(w + ".prep.steps", i));
      break;
    case PrepSpec::Kind::Vacuum: break;
  }

  std::map<std::string, const MeasureDecl *> binds;
  std::vector<int> measured_at(m, -1);  // gate count at which the mode was measured
  int last_after = 0;
  for (size_t i = 0; i < spec.measurements.size(); ++i) {
    const MeasureDecl &md = spec.measurements[i];
    const std::string mw = at(w + ".measurements", i);
    if (md.modes.empty()) throw ValidationError(mw + ".modes: empty");
    if (md.after < last_after || md.after > static_cast<int>(spec.gates.size())) {
      throw ValidationError(mw + ".after: measurements must be ordered and within the gate list");
    }
    last_after = md.after;
    for (int k : md.modes) {
      check_mode(k, m, mw + ".modes");
      if (measured_at[k] >= 0) throw ValidationError(mw + ".modes: mode " + std::to_string(k) + " measured twice");
      measured_at[k] = md.after;
    }
    if (md.bind.empty() || binds.count(md.bind)) throw ValidationError(mw + ".bind: empty or duplicate name");
    binds[md.bind] = &md;
  }

  for (size_t i = 0; i < spec.gates.size(); ++i) {
    const GateDecl &g = spec.gates[i];
    const std::string gw = at(w + ".gates", i);
    validate_gate(g, m, gw);
    if (g.kind == Gate::Kind::Create && spec.rank_preserving) {
      throw ValidationError(gw + ": creation operator in a rank-preserving circuit");
    }
    for (int k = 0; k < m; ++k) {
      if (measured_at[k] < 0 || measured_at[k] > static_cast<int>(i)) continue;
      bool touches = g.kind == Gate::Kind::Passive
                         ? (g.U.row(k).cwiseAbs().sum() - std::abs(g.U(k, k)) > 1e-12 ||
                            g.U.col(k).cwiseAbs().sum() - std::abs(g.U(k, k)) > 1e-12 ||
                            std::abs(g.U(k, k) - 1.0) > 1e-12)
                         : g.mode == k;
      if (touches) throw ValidationError(gw + ": acts on already measured mode " + std::to_string(k));
    }
    for (const auto &t : g.param.terms) {
      auto it = binds.find(t.ref);
      if (it == binds.end()) throw ValidationError(gw + ": dangling adaptive reference '" + t.ref + "'");
      if (it->second->after > static_cast<int>(i)) {
        throw ValidationError(gw + ": references later measurement '" + t.ref + "'");
      }
      if (t.index < 0 || t.index >= static_cast<int>(it->second->modes.size())) {
        throw ValidationError(gw + ": outcome index out of range for '" + t.ref + "'");
      }
    }
  }
}

Json circuit_to_json(const CircuitSpec &spec) {
  Json j = Json::object();
  j["schema"] = kCircuitSchema;
  j["modes"] = spec.modes;
  j["rank_preserving"] = spec.rank_preserving;
  j["prep"] = prep_to_json(spec.prep);
  Json gates = Json::array();
  for (const auto &g : spec.gates) gates.push_back(gate_to_json(g));
  j["gates"] = gates;
  Json ms = Json::array();
  for (const auto &m : spec.measurements) {
    ms.push_back(Json{{"kind", measure_kind_name(m.kind)}, {"modes", m.modes}, {"bind", m.bind},
                      {"after", m.after}});
  }
  j["measurements"] = ms;
  return j;
}

std::string serialize_circuit(const CircuitSpec &spec) { return dump_json(circuit_to_json(spec)); }

StellarState prepare_input(const CircuitSpec &spec) {
  const int m = spec.modes;
  const PrepSpec &p = spec.prep;
  switch (p.kind) {
    case PrepSpec::Kind::Vacuum: return StellarState::vacuum(m);
    case PrepSpec::Kind::Fock: return from_fock_superposition({{p.pattern, 1.0}}, m);
    case PrepSpec::Kind::Superposition: return normalized(from_fock_superposition(p.amps, m));
    case PrepSpec::Kind::State: return normalized(*p.state);
    case PrepSpec::Kind::Gaussian:
    case PrepSpec::Kind::PhotonAdded: {
      StellarState s = StellarState::vacuum(m);
      for (const auto &g : p.steps) s = apply_gate(s, concrete_gate(g, m, {}));
      return p.kind == PrepSpec::Kind::Gaussian ? s : normalized(s);
    }
  }
  throw ValidationError("unknown preparation");
}

Gate concrete_gate(const GateDecl &g, int modes, const OutcomeRecord &rec) {
  const cplx v = resolve(g.param, rec) * g.t;
  switch (g.kind) {
    case Gate::Kind::Passive: return Gate::passive(g.U);
    case Gate::Kind::Displace: return Gate::displace_mode(modes, g.mode, v);
    case Gate::Kind::Squeeze: return Gate::squeeze(g.mode, v);
    case Gate::Kind::Phase: return Gate::phase(g.mode, v.real());
    case Gate::Kind::Shear: return Gate::shear(g.mode, v.real());
    case Gate::Kind::Create: return Gate::create(g.mode);
  }
  throw ValidationError("unknown gate kind");
}

}  // namespace hqc
