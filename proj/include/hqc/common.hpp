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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hqc {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// One non-negative occupation per mode.
using MultiIndex = std::vector<int>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Singular values of A must stay below 1 - kAdmissibilityMargin.
inline constexpr double kAdmissibilityMargin = 1e-6;
// Coefficients below this fraction of the largest one are dropped.
inline constexpr double kPruneRelative = 1e-14;
// Pairwise zero distance below which the zero-based routes are refused.
inline constexpr double kCollide = 1e-6;
// Shell mass below which the Fock expansion stops.
inline constexpr double kTailTolerance = 1e-12;
inline constexpr int kDefaultCeiling = 60;
// Tolerance on norm_squared == 1 for operations that need normalized input.
inline constexpr double kNormTolerance = 1e-8;

// Malformed input: bad shapes, inadmissible parameters, schema violations.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric routine could not meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int total_degree(const MultiIndex &n);

// log(n!) summed over modes.
double log_factorial(const MultiIndex &n);

// Emits a diagnostic on the warning channel (stderr).
void warn(const std::string &msg);

}  // namespace hqc
