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

#include <optional>
#include <string>

#include "hqc/circuit.hpp"
#include "hqc/sampling.hpp"

namespace hqc {

struct OutcomeRow {
  int shot = 0;
  std::string bind;
  int mode = 0;
  MeasureKind kind = MeasureKind::Discrete;
  cplx value = 0.0;
};

struct ShotSummary {
  int modes_left = 0;
  int rank = 0;
  double norm = 0.0;
};

struct RunResult {
  uint64_t seed = 0;
  int shots = 0;
  std::vector<OutcomeRow> rows;                  // sorted by shot, then measurement order
  std::vector<std::optional<ShotSummary>> finals;  // filled when requested
  RejectionStats stats;
  double seconds = 0.0;
};

RunResult run_circuit(const CircuitSpec &spec, const SamplerConfig &cfg,
                      bool final_summary = false);

// Preparation followed by every gate, ignoring measurements. Gates must
// not be adaptive.
StellarState evolve_circuit_state(const CircuitSpec &spec);

std::string run_result_csv(const RunResult &r);
Json run_result_json(const RunResult &r);
// Histogram of outcomes per (bind, mode): continuous values on a bins x bins
// grid over [-6, 6]^2 (edges clamp), discrete values per photon number.
std::string binned_csv(const RunResult &r, int bins);

}  // namespace hqc
