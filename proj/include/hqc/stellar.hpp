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

#include "hqc/common.hpp"
#include "hqc/fock.hpp"
#include "hqc/poly.hpp"

namespace hqc {

// Exponent data of exp(-1/2 z^T A z + B^T z + C).
struct GaussPart {
  CMat A;
  CVec B;
  cplx C = 0.0;

  static GaussPart zero(int modes);
  int modes() const { return static_cast<int>(B.size()); }
};

double max_singular_value(const CMat &A);

// Throws ValidationError unless every singular value of A is below
// 1 - kAdmissibilityMargin.
void check_admissible(const CMat &A);

// F(z) = P(z) exp(-1/2 z^T A z + B^T z + C), stored unnormalized.
class StellarState {
 public:
  StellarState(Poly poly, GaussPart gauss);

  static StellarState vacuum(int modes);

  int modes() const { return modes_; }
  const Poly &poly() const { return poly_; }
  const GaussPart &gauss() const { return gauss_; }

  // Copy with C shifted by dc (rescaling and global phase).
  StellarState scaled(cplx dc) const;

 private:
  int modes_;
  Poly poly_;
  GaussPart gauss_;
};

StellarState from_fock_superposition(const std::map<MultiIndex, cplx> &amps, int modes);

cplx evaluate(const StellarState &s, const CVec &z);

// e^{-|alpha|^2} |F(alpha^*)|^2 / pi^m; throws if s is not normalized.
double husimi_density(const StellarState &s, const CVec &alpha);
// Same formula without the normalization check.
double husimi_unnormalized(const StellarState &s, const CVec &alpha);

struct NormResult {
  double value = 0.0;
  int cutoff = 0;
  bool converged = true;
};

// ||F||^2 by Fock expansion with adaptive cutoff (tail mass < kTailTolerance).
double norm_squared(const StellarState &s, int ceiling = kDefaultCeiling);
NormResult norm_squared_detail(const StellarState &s, int ceiling = kDefaultCeiling);

// Closed Gaussian integral for ||exp(-1/2 z^T A z + B^T z + C)||^2.
double gaussian_norm_squared(const GaussPart &g);

StellarState normalized(const StellarState &s, int ceiling = kDefaultCeiling);

// <s1|s2>, conjugate-linear in s1.
cplx inner_product(const StellarState &s1, const StellarState &s2,
                   int ceiling = kDefaultCeiling);

// |<s1|s2>|^2 / (<s1|s1><s2|s2>).
double normalized_overlap(const StellarState &s1, const StellarState &s2,
                          int ceiling = kDefaultCeiling);

StellarState from_zeros(const std::vector<cplx> &zeros, cplx a, cplx b, cplx c);

// Roots of the single-mode polynomial part, with multiplicity.
std::vector<cplx> zeros_of(const StellarState &s);

int stellar_rank(const StellarState &s);

StellarState tensor(const StellarState &s1, const StellarState &s2);

// Amplitudes psi_n = sqrt(n!) [z^n] F for |n| <= cutoff.
FockArray to_fock_array(const StellarState &s, int cutoff, int ceiling = kDefaultCeiling);
// Amplitudes only, no truncation-loss estimate.
FockArray fock_expand(const StellarState &s, int cutoff);

// Gaussian part of the Husimi density of s as a normal law over
// x = (Re alpha_1..m, Im alpha_1..m): mean mu, covariance Sigma.
struct HusimiGaussian {
  RVec mu;
  RMat Sigma;
};
HusimiGaussian husimi_gaussian(const GaussPart &g);

}  // namespace hqc
