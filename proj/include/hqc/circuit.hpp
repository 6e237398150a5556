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

#pragma once

#include <map>
#include <optional>
#include <string>

#include "hqc/json_io.hpp"
#include "hqc/multimode.hpp"

namespace hqc {

constexpr const char *kCircuitSchema = "hqc-circuit/1";

// Affine expression const + sum coef * outcome[ref][index]. Discrete
// outcomes enter as integers, continuous ones as complex values.
struct AffineParam {
  struct Term {
    std::string ref;
    int index = 0;
    cplx coef = 1.0;
  };
  cplx constant = 0.0;
  std::vector<Term> terms;
  bool adaptive() const { return !terms.empty(); }
};

using OutcomeRecord = std::map<std::string, std::vector<cplx>>;
cplx resolve(const AffineParam &p, const OutcomeRecord &rec);

struct GateDecl {
  Gate::Kind kind = Gate::Kind::Phase;
  int mode = 0;
  CMat U;             // passive, over all circuit modes
  AffineParam param;  // alpha, xi, phi or s; phi and s use the real part
  double t = 1.0;     // drive time
  bool adaptive() const { return param.adaptive(); }
};

enum class MeasureKind { Continuous, Discrete, Homodyne };
const char *measure_kind_name(MeasureKind k);

struct MeasureDecl {
  MeasureKind kind = MeasureKind::Discrete;
  std::vector<int> modes;
  std::string bind;
  int after = 0;  // number of gates applied before this measurement
};

struct PrepSpec {
  enum class Kind { Vacuum, Fock, Superposition, State, Gaussian, PhotonAdded };
  Kind kind = Kind::Vacuum;
  MultiIndex pattern;
  std::map<MultiIndex, cplx> amps;
  std::optional<StellarState> state;
  std::vector<GateDecl> steps;  // gaussian and photon-added builders
  std::string source;  // file path when loaded from a file
};

struct CircuitSpec {
  int modes = 1;
  bool rank_preserving = true;
  PrepSpec prep;
  std::vector<GateDecl> gates;
  std::vector<MeasureDecl> measurements;
};

// `base_dir` resolves relative file references in the prep block.
CircuitSpec parse_circuit(const std::string &text, const std::string &source = "<circuit>",
                          const std::string &base_dir = ".");
CircuitSpec load_circuit(const std::string &path);
Json circuit_to_json(const CircuitSpec &spec);
std::string serialize_circuit(const CircuitSpec &spec);
void validate_circuit(const CircuitSpec &spec);

StellarState prepare_input(const CircuitSpec &spec);

// Concrete gate with adaptive parameters resolved; `t` is folded in.
Gate concrete_gate(const GateDecl &g, int modes, const OutcomeRecord &rec);

Json state_to_json(const StellarState &s);
StellarState state_from_json(const Json &j, const std::string &where);

}  // namespace hqc
