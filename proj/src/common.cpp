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

#include "hqc/common.hpp"

#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

namespace hqc {

int total_degree(const MultiIndex &n) {
  return std::accumulate(n.begin(), n.end(), 0);
}

double log_factorial(const MultiIndex &n) {
  double s = 0.0;
  for (int k : n) s += std::lgamma(k + 1.0);
  return s;
}

void warn(const std::string &msg) { spdlog::warn("{}", msg); }

}  // namespace hqc
