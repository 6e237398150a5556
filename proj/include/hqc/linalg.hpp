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

// A = W diag(sigma) W^T with W unitary and sigma >= 0 in descending order.
struct Takagi {
  CMat W;
  RVec sigma;
};
Takagi takagi(const CMat &A);

bool is_unitary(const CMat &U, double tol = 1e-10);

// Two-mode factor acting on modes (p, q): the 2x2 block M.
struct TwoModeFactor {
  int p;
  int q;
  Eigen::Matrix2cd M;
};
// U = F_1 ... F_L diag(phases), each F embedded as the identity elsewhere.
struct GivensDecomposition {
  std::vector<TwoModeFactor> factors;
  CVec phases;
};
GivensDecomposition givens_decompose(const CMat &U);

// Minimal-cost assignment: result[i] is the column assigned to row i.
std::vector<int> min_cost_assignment(const RMat &cost);

// cos(w t) and sin(w t)/w as entire functions of w2 = w^2.
cplx cos_sqrt(cplx w2, double t);
cplx sinc_sqrt(cplx w2, double t);

std::vector<cplx> eigenvalues(const CMat &M);

}  // namespace hqc
