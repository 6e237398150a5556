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

#include <string>

#include "hqc/json_io.hpp"

namespace hqc {

enum class Architecture { CoherentCV, GaussianDV, FockCV, FockDV };

constexpr double kTable3Tolerance = 1e-10;
constexpr int kTable3OracleCutoff = 30;

const char *architecture_name(Architecture a);
Architecture parse_architecture(const std::string &s);
std::vector<Architecture> all_architectures();

struct Table3Check {
  std::string label;
  double efficient = 0.0;
  double brute = 0.0;
  double diff() const { return std::abs(efficient - brute); }
};

struct Table3Report {
  Architecture arch = Architecture::FockDV;
  int modes = 0;
  int photons = 0;
  std::vector<Table3Check> checks;
  double max_diff = 0.0;
  bool pass = false;
  double seconds_efficient = 0.0;
  double seconds_brute = 0.0;
};

// Runs one built-in instance: the efficient route against brute force
// (permanents or the Fock oracle at cutoff 30).
Table3Report table3_demo(Architecture a, int modes = 3, int photons = 2);
Json table3_to_json(const Table3Report &r);

// Haar-random unitary from a seeded Philox stream (QR with phase fix).
CMat haar_unitary(int m, uint64_t seed);

}  // namespace hqc
