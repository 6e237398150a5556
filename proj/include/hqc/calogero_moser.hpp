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

#include <functional>

#include "hqc/common.hpp"

namespace hqc {

// Classical n-body Calogero-Moser data with complex positions.
// H = 1/2 sum (p_k^2 + omega^2 q_k^2) + 1/2 g^2 sum_{k != j} (q_k - q_j)^{-2}.
struct CMSystem {
  CVec q0;
  CVec p0;
  cplx g = 0.0;
  cplx omega = 0.0;

  int size() const { return static_cast<int>(q0.size()); }
  cplx omega2() const { return omega * omega; }
};

enum class CMRegime { Isolated, Harmonic, Hyperbolic, Complex };
// Dispatch on the real sign of omega^2.
CMRegime cm_regime(cplx omega2);

double min_pairwise_distance(const CVec &q);
void check_cm_system(const CMSystem &sys);

// Lambda(t) = Q0 cos(omega t) + L0 sin(omega t)/omega.
CMat cm_lambda(const CVec &q0, const CVec &p0, cplx g, cplx omega2, double t);

struct CMPoint {
  CVec q;
  CVec p;
};

// Eigenvalue route along a time grid, labels kept continuous from t = 0.
// `times` may contain negative and positive values in any order.
std::vector<CMPoint> cm_trajectory(const CMSystem &sys, const std::vector<double> &times);
CVec cm_solve(const CMSystem &sys, double t);
CMPoint cm_solve_point(const CMSystem &sys, double t);

// Tracks the eigenvalues of a matrix path M(t) continuously from t = 0,
// starting from the labels `start`; refines steps so that no eigenvalue
// moves by more than half the smallest gap.
std::vector<CVec> track_eigenvalues(const std::function<CMat(double)> &M, const CVec &start,
                                    const std::vector<double> &times);

// RK4 on q'' = -omega^2 q + 2 g^2 sum (q_k - q_j)^{-3} with nominal step dt,
// subdivided near close approaches.
std::vector<CMPoint> cm_ode_trajectory(const CMSystem &sys, const std::vector<double> &times,
                                       double dt);
CVec cm_ode(const CMSystem &sys, double t, double dt);

struct LaxPair {
  CMat L;
  CMat M;
};
LaxPair lax_matrices(const CVec &q, const CVec &p, cplx g);
// (L + i omega Q)(L - i omega Q); its spectrum is conserved for every omega
// and reduces to L^2 when omega = 0.
CMat lax_shifted_product(const CVec &q, const CVec &p, cplx g, cplx omega);

cplx cm_energy(const CVec &q, const CVec &p, cplx g, cplx omega2);
// Sum of the moduli of the energy terms; the scale for relative drift.
double cm_energy_scale(const CVec &q, const CVec &p, cplx g, cplx omega2);

struct Scattering {
  std::vector<int> sigma;  // outgoing trajectory k continues incoming sigma[k]
  CVec p_minus, p_plus;
  CVec q_minus, q_plus;
  double T = 0.0;
  double residual = 0.0;
};
Scattering scattering_permutation(const CMSystem &sys, double T);

// Length of the longest cycle of the permutation.
int longest_cycle(const std::vector<int> &perm);

}  // namespace hqc
