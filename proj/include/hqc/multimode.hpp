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

#include "hqc/linalg.hpp"
#include "hqc/stellar.hpp"

namespace hqc {

// One primitive gate given by its operator parameter:
//   displace  D(beta)  = exp(beta a^dag - beta^* a) per mode (vector beta)
//   squeeze   S(xi)    = exp(1/2 (xi a^dag^2 - xi^* a^2)) on `mode`
//   shear     P(s)     = exp(i s q^2), q = (a + a^dag)/sqrt(2), on `mode`
//   phase     R(phi)   = exp(i phi a^dag a) on `mode`
//   passive   U        with U a_k^dag U^dag = sum_j U_kj a_j^dag
//   create    a^dag on `mode` (not Gaussian; allowed only where stated)
struct Gate {
  enum class Kind { Passive, Displace, Squeeze, Shear, Phase, Create };
  Kind kind = Kind::Phase;
  int mode = 0;
  CMat U;
  CVec beta;
  cplx param = 0.0;

  static Gate passive(const CMat &U);
  static Gate displace(const CVec &beta);
  static Gate displace_mode(int modes, int k, cplx alpha);
  static Gate squeeze(int k, cplx xi);
  static Gate shear(int k, double s);
  static Gate phase(int k, double phi);
  static Gate create(int k);

  bool gaussian() const { return kind != Kind::Create; }
};

const char *gate_kind_name(Gate::Kind k);

// Drive-to-operator conversion for U = exp(-i H t) with
//   H_D = i(alpha a^dag - alpha^* a), H_S = (i/2)(xi a^dag^2 - xi^* a^2),
//   H_R = -phi a^dag a, H_P = -s q^2:
// the result is D(alpha t), S(xi t), R(phi t), P(s t).
Gate gate_from_drive(Gate::Kind kind, int modes, int k, cplx drive, double t);

using GaussianUnitarySpec = std::vector<Gate>;

// Phase and squeezing such that P(s) = exp(i phi/2) R(phi) S(xi).
struct ShearFactors {
  double phi;
  cplx xi;
};
ShearFactors shear_factors(double s);

StellarState apply_passive(const StellarState &s, const CMat &U);
StellarState apply_displace(const StellarState &s, const CVec &beta);
StellarState apply_squeeze_mode(const StellarState &s, int k, cplx xi);
StellarState apply_phase_mode(const StellarState &s, int k, double phi);
StellarState apply_shear_mode(const StellarState &s, int k, double sh);
StellarState apply_create(const StellarState &s, int k);
StellarState apply_gate(const StellarState &s, const Gate &g);
StellarState apply_gaussian(const StellarState &s, const GaussianUnitarySpec &spec);

// Q with P(X_k) G' = Q G', where X_k = cz z_k + cd d/dz_k and G' has data
// (A', B'). Horner in z_k; the other variables ride along as coefficients.
Poly apply_mode_operator(const Poly &P, int k, cplx cz, cplx cd, const CMat &A, const CVec &B);

// State = P(a^dag) G|0> up to a global prefactor, with G = U S(xi) D(beta)
// applied as the gate program [displace beta, squeeze per mode, passive U].
struct NormalDecomposition {
  Poly P;
  GaussianUnitarySpec spec;
  CVec beta;
  CVec xi;
  CMat U;
};
NormalDecomposition decompose_normal(const StellarState &s);
// P(a^dag) G|0> for a decomposition.
StellarState reconstruct(const NormalDecomposition &d);
GaussianUnitarySpec inverse_spec(const GaussianUnitarySpec &spec);

// The unique core state C with G|C> = state (G from decompose_normal).
StellarState core_state_of(const StellarState &s);

struct SchmidtForm {
  std::vector<int> I;
  std::vector<int> J;
  int rank = 0;
  std::vector<double> coefficients;  // descending
  std::vector<Poly> left;            // polynomials in the I variables
  std::vector<Poly> right;           // polynomials in the J variables
  std::map<std::pair<int, int>, cplx> cross_terms;  // lambda_ij = -A_ij
  GaussPart gauss_I;
  GaussPart gauss_J;
  bool separable = false;
};
SchmidtForm schmidt_form(const StellarState &s, const std::vector<int> &I);
bool is_separable(const StellarState &s, const std::vector<int> &I);

}  // namespace hqc
