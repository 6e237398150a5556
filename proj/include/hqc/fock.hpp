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

#include <cstdint>
#include <memory>
#include <unordered_map>

#include "hqc/common.hpp"

namespace hqc {

// Graded enumeration of all multi-indices with |n| <= cutoff.
//
// Shell s (indices of total degree s) occupies [shell_begin(s),
// shell_begin(s+1)). Bases are cached and shared; use fock_basis().
class FockBasis {
 public:
  FockBasis(int modes, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  size_t size() const { return indices_.size(); }
  const MultiIndex &at(size_t i) const { return indices_[i]; }
  size_t shell_begin(int s) const { return shell_start_[s]; }
  size_t shell_end(int s) const { return shell_start_[s + 1]; }
  // Position of n, or npos when |n| > cutoff.
  size_t find(const MultiIndex &n) const;
  static constexpr size_t npos = static_cast<size_t>(-1);

 private:
  static uint64_t key(const MultiIndex &n);
  int modes_;
  int cutoff_;
  std::vector<MultiIndex> indices_;
  std::vector<size_t> shell_start_;
  std::unordered_map<uint64_t, uint32_t> lookup_;
};

// Largest cutoff a basis on `modes` modes accepts.
int max_fock_cutoff(int modes);

// Shared immutable basis; thread-safe.
std::shared_ptr<const FockBasis> fock_basis(int modes, int cutoff);

// Truncated Fock amplitudes psi_n for |n| <= cutoff.
struct FockArray {
  int modes = 1;
  int cutoff = 0;
  std::shared_ptr<const FockBasis> basis;
  std::vector<cplx> amp;
  // Estimated weight outside the truncation, relative to the full norm.
  double truncation_loss = 0.0;

  static FockArray zeros(int modes, int cutoff);
  cplx get(const MultiIndex &n) const;
  void set(const MultiIndex &n, cplx v);
  double captured_norm() const;
  // Same amplitudes on a smaller total-degree cutoff.
  FockArray truncated(int new_cutoff) const;
};

// <x|y> summed over the common support.
cplx fock_inner(const FockArray &x, const FockArray &y);
// |<x|y>|^2 / (|x|^2 |y|^2).
double fock_overlap(const FockArray &x, const FockArray &y);

// CSV: one row per index, columns n_0..n_{m-1},re,im.
std::string fock_to_csv(const FockArray &a);

}  // namespace hqc
