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

#include "hqc/common.hpp"

namespace hqc {

constexpr int kMaxPermanentSize = 20;

// Ryser's formula in Gray-code order, single pass. Serial reference.
cplx permanent(const CMat &M);

// Same sum split into a fixed number of Gray-code chunks, evaluated with
// OpenMP and reduced in chunk order, so the result does not depend on the
// thread count.
cplx permanent_parallel(const CMat &M, int chunks = 64);

// Probability of output occupation `out` for input occupation `in` through
// the passive linear map U (a_k^dag -> sum_j U_kj a_j^dag).
double boson_sampling_prob(const CMat &U, const MultiIndex &in, const MultiIndex &out);

}  // namespace hqc
