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

#include <array>
#include <string>

#include "hqc/multimode.hpp"
#include "hqc/stellar.hpp"

namespace hqc {

// Single-mode state written as exp(c) * prod_k (z - zeros_k) * exp(-a z^2/2 + b z).
struct ZeroForm {
  std::vector<cplx> zeros;
  cplx a = 0.0;
  cplx b = 0.0;
  cplx c = 0.0;
};
ZeroForm to_zero_form(const StellarState &s);
StellarState from_zero_form(const ZeroForm &z);

enum class Regime { Parabolic, Elliptic, Hyperbolic };

// H = H^D_alpha + H^S_xi + H^R_phi + offset. The gate for time t is exp(-iHt).
struct Hamiltonian1M {
  cplx alpha = 0.0;
  cplx xi = 0.0;
  double phi = 0.0;
  double offset = 0.0;

  Regime regime(double tol = 1e-12) const;
  double omega2() const { return phi * phi - std::norm(xi); }
  cplx coupling() const { return kI * std::conj(xi); }
  // Constant force in the zero equations.
  cplx force() const { return std::conj(xi) * alpha - kI * phi * std::conj(alpha); }
};

// Hamiltonian whose time-t gate is the given primitive with drive `drive`.
Hamiltonian1M hamiltonian_of(Gate::Kind kind, cplx drive);

StellarState evolve_displacement(const StellarState &s, cplx alpha, double t);
StellarState evolve_phaseshift(const StellarState &s, double phi, double t);
StellarState evolve_shearing(const StellarState &s, double sh, double t);
StellarState evolve_squeezing(const StellarState &s, cplx xi, double t);
StellarState evolve_closed_form(const StellarState &s, Gate::Kind kind, cplx drive, double t);

StellarState direct_apply_D(const StellarState &s, cplx alpha);
StellarState direct_apply_R(const StellarState &s, double phi);
StellarState direct_apply_S(const StellarState &s, cplx xi);
StellarState direct_apply_P(const StellarState &s, double sh);

std::vector<cplx> initial_velocities(const std::vector<cplx> &zeros, cplx a, cplx b,
                                     const Hamiltonian1M &H);

struct ZeroTrajectory {
  std::vector<double> times;
  CMat zeros;  // rank x times
  std::vector<std::array<cplx, 3>> gauss_path;

  ZeroForm at(size_t i) const;
};

// RK4 on the coupled (a, b, c, zeros) system with nominal step dt, subdivided
// near close approaches. Every `record_stride`-th nominal step is stored, plus
// the endpoint.
ZeroTrajectory ode_evolve(const StellarState &s, const Hamiltonian1M &H, double t, double dt,
                          int record_stride = 1);
StellarState ode_final_state(const StellarState &s, const Hamiltonian1M &H, double t, double dt);

// Eigenvalue route on a time grid, with assignment-tracked zeros.
ZeroTrajectory closed_form_trajectory(const StellarState &s, const Hamiltonian1M &H,
                                      const std::vector<double> &times);

std::string trajectory_csv(const ZeroTrajectory &tr);

}  // namespace hqc
