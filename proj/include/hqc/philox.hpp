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

#include <array>
#include <cstdint>

#include "hqc/common.hpp"

namespace hqc {

using Philox4x32Ctr = std::array<uint32_t, 4>;
using Philox4x32Key = std::array<uint32_t, 2>;

// Philox4x32-10 block function.
Philox4x32Ctr philox4x32(Philox4x32Ctr ctr, Philox4x32Key key);

// Counter-based stream for one shot: key = seed, counter = (block, shot).
// Independent of thread scheduling by construction.
class ShotRng {
 public:
  ShotRng(uint64_t seed, uint64_t shot);

  uint32_t next_u32();
  uint64_t next_u64();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();

 private:
  Philox4x32Key key_;
  uint64_t shot_;
  uint64_t block_ = 0;
  Philox4x32Ctr buf_{};
  int used_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hqc
