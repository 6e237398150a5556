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

#include "hqc/fock.hpp"
#include "hqc/multimode.hpp"
#include "hqc/single_mode.hpp"

namespace hqc {

// Brute-force Fock-space reference. Single-mode generators are exponentiated
// on a padded space and only the top-left block is used.
constexpr int kOraclePad = 150;

FockArray fock_from_amplitudes(const std::map<MultiIndex, cplx> &amps, int modes, int cutoff);
FockArray fock_vacuum(int modes, int cutoff);

// Generator t * (-iH) in the Fock basis {|0>, ..., |size-1>}.
CMat single_mode_generator(const Hamiltonian1M &H, double t, int size);
CMat single_mode_gate(Gate::Kind kind, cplx param, int size);

// Applies a size x size single-mode matrix to mode k fiber by fiber.
FockArray oracle_apply_single(const FockArray &x, int k, const CMat &M);

FockArray oracle_apply(const FockArray &x, const Gate &g, int pad = kOraclePad);
FockArray oracle_apply_all(const FockArray &x, const std::vector<Gate> &gates,
                           int pad = kOraclePad);
FockArray oracle_evolve_1m(const FockArray &x, const Hamiltonian1M &H, double t,
                           int pad = kOraclePad);

}  // namespace hqc
