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

#include "hqc/fock.hpp"

#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>

namespace hqc {

namespace {

// Appends all compositions of s into `modes` parts, first mode varying slowest.
void compositions(int modes, int s, MultiIndex &cur, int pos, std::vector<MultiIndex> &out) {
  if (pos == modes - 1) {
    cur[pos] = s;
    out.push_back(cur);
    return;
  }
  for (int k = s; k >= 0; --k) {
    cur[pos] = k;
    compositions(modes, s - k, cur, pos + 1, out);
  }
}

}  // namespace

int max_fock_cutoff(int modes) {
  switch (modes) {
    case 1: return 20000;
    case 2: return 2000;
    case 3: return 300;
    default: return 63;
  }
}

FockBasis::FockBasis(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1 || modes > 10) throw ValidationError("Fock basis supports 1..10 modes");
  if (cutoff < 0 || cutoff > max_fock_cutoff(modes)) {
    throw ValidationError("Fock cutoff " + std::to_string(cutoff) + " out of range for " +
                          std::to_string(modes) + " modes (max " + std::to_string(max_fock_cutoff(modes)) + ")");
  }
  MultiIndex cur(modes, 0);
  for (int s = 0; s <= cutoff; ++s) {
    shell_start_.push_back(indices_.size());
    compositions(modes, s, cur, 0, indices_);
  }
  shell_start_.push_back(indices_.size());
  lookup_.reserve(indices_.size());
  for (size_t i = 0; i < indices_.size(); ++i) {
    lookup_.emplace(key(indices_[i]), static_cast<uint32_t>(i));
  }
}

uint64_t FockBasis::key(const MultiIndex &n) {
  if (n.size() == 1) return static_cast<uint64_t>(n[0]);
  uint64_t k = 0;
  const size_t bits = 64 / n.size();
  for (size_t i = 0; i < n.size(); ++i) k |= static_cast<uint64_t>(n[i]) << (bits * i);
  return k;
}

size_t FockBasis::find(const MultiIndex &n) const {
  if (static_cast<int>(n.size()) != modes_) return npos;
  int s = 0;
  for (int k : n) {
    if (k < 0) return npos;
    s += k;
  }
  if (s > cutoff_) return npos;
  auto it = lookup_.find(key(n));
  return it == lookup_.end() ? npos : it->second;
}

std::shared_ptr<const FockBasis> fock_basis(int modes, int cutoff) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FockBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[{modes, cutoff}];
  if (!slot) slot = std::make_shared<const FockBasis>(modes, cutoff);
  return slot;
}

FockArray FockArray::zeros(int modes, int cutoff) {
  FockArray a;
  a.modes = modes;
  a.cutoff = cutoff;
  a.basis = fock_basis(modes, cutoff);
  a.amp.assign(a.basis->size(), cplx(0.0));
  return a;
}

cplx FockArray::get(const MultiIndex &n) const {
  size_t i = basis->find(n);
  return i == FockBasis::npos ? cplx(0.0) : amp[i];
}

void FockArray::set(const MultiIndex &n, cplx v) {
  size_t i = basis->find(n);
  if (i == FockBasis::npos) throw ValidationError("index outside Fock truncation");
  amp[i] = v;
}

double FockArray::captured_norm() const {
  double s = 0.0;
  for (auto &v : amp) s += std::norm(v);
  return s;
}

FockArray FockArray::truncated(int new_cutoff) const {
  if (new_cutoff >= cutoff) return *this;
  FockArray r = zeros(modes, new_cutoff);
  std::copy(amp.begin(), amp.begin() + r.amp.size(), r.amp.begin());
  r.truncation_loss = truncation_loss;
  return r;
}

cplx fock_inner(const FockArray &x, const FockArray &y) {
  if (x.modes != y.modes) throw ValidationError("mode count mismatch");
  size_t n = std::min(x.amp.size(), y.amp.size());
  cplx s = 0.0;
  // Both bases share the graded ordering, so prefixes coincide.
  for (size_t i = 0; i < n; ++i) s += std::conj(x.amp[i]) * y.amp[i];
  return s;
}

double fock_overlap(const FockArray &x, const FockArray &y) {
  cplx ip = fock_inner(x, y);
  int c = std::min(x.cutoff, y.cutoff);
  double nx = x.truncated(c).captured_norm();
  double ny = y.truncated(c).captured_norm();
  return std::norm(ip) / (nx * ny);
}

std::string fock_to_csv(const FockArray &a) {
  std::ostringstream os;
  for (int k = 0; k < a.modes; ++k) os << "n" << k << ",";
  os << "re,im\n";
  char buf[64];
  for (size_t i = 0; i < a.amp.size(); ++i) {
    for (int k : a.basis->at(i)) os << k << ",";
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a.amp[i].real(), a.amp[i].imag());
    os << buf;
  }
  return os.str();
}

}  // namespace hqc
