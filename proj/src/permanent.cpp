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

#include "hqc/permanent.hpp"

#include <omp.h>

#include <bit>
#include <cmath>

namespace hqc {

namespace {

void check_size(const CMat &M) {
  if (M.rows() != M.cols()) throw ValidationError("permanent needs a square matrix");
  if (M.rows() > kMaxPermanentSize) throw ValidationError("permanent size exceeds 20");
}

// Signed Ryser partial sum over Gray-code steps [begin, end), begin >= 1.
cplx ryser_range(const CMat &M, uint64_t begin, uint64_t end) {
  const int n = static_cast<int>(M.rows());
  CVec rows = CVec::Zero(n);
  uint64_t gray = (begin - 1) ^ ((begin - 1) >> 1);
  for (int j = 0; j < n; ++j) {
    if (gray >> j & 1) rows += M.col(j);
  }
  cplx sum = 0.0;
  for (uint64_t k = begin; k < end; ++k) {
    const int j = std::countr_zero(k);
    const uint64_t bit = uint64_t{1} << j;
    if (gray & bit) {
      rows -= M.col(j);
    } else {
      rows += M.col(j);
    }
    gray ^= bit;
    cplx prod = rows.prod();
    sum += (std::popcount(gray) & 1) ? -prod : prod;
  }
  return sum;
}

}  // namespace

cplx permanent(const CMat &M) {
  check_size(M);
  const int n = static_cast<int>(M.rows());
  if (n == 0) return 1.0;
  cplx s = ryser_range(M, 1, uint64_t{1} << n);
  return (n & 1) ? -s : s;
}

cplx permanent_parallel(const CMat &M, int chunks) {
  check_size(M);
  const int n = static_cast<int>(M.rows());
  if (n == 0) return 1.0;
  if (chunks < 1) throw ValidationError("chunk count must be positive");
  const uint64_t total = (uint64_t{1} << n) - 1;
  const uint64_t nchunk = std::min<uint64_t>(chunks, total);
  std::vector<cplx> part(nchunk);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < static_cast<long>(nchunk); ++c) {
    const uint64_t b = 1 + total * c / nchunk;
    const uint64_t e = 1 + total * (c + 1) / nchunk;
    part[c] = ryser_range(M, b, e);
  }
  cplx s = 0.0;
  for (const cplx &p : part) s += p;
  return (n & 1) ? -s : s;
}

double boson_sampling_prob(const CMat &U, const MultiIndex &in, const MultiIndex &out) {
  const int m = static_cast<int>(U.rows());
  if (static_cast<int>(in.size()) != m || static_cast<int>(out.size()) != m) {
    throw ValidationError("occupation pattern length does not match the mode count");
  }
  if (total_degree(in) != total_degree(out)) throw ValidationError("photon-number mismatch");
  std::vector<int> r, c;
  double lognorm = 0.0;
  for (int k = 0; k < m; ++k) {
    if (in[k] < 0 || out[k] < 0) throw ValidationError("negative occupation");
    for (int i = 0; i < in[k]; ++i) r.push_back(k);
    for (int i = 0; i < out[k]; ++i) c.push_back(k);
  }
  lognorm = log_factorial(in) + log_factorial(out);
  const int n = static_cast<int>(r.size());
  CMat S(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) S(i, j) = U(r[i], c[j]);
  }
  return std::norm(permanent(S)) * std::exp(-lognorm);
}

}  // namespace hqc
