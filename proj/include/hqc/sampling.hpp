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
#include <map>
#include <optional>

#include "hqc/philox.hpp"
#include "hqc/stellar.hpp"

namespace hqc {

struct SamplerConfig {
  uint64_t seed = 0;
  int shots = 1000;
  double rejection_safety = 1.5;
  int cutoff = 0;  // discrete path; 0 selects the adaptive norm cutoff
  double homodyne_r = 3.0;
};

struct ContinuousOutcome {
  CVec alphas;
  double density_value = 0.0;
};

struct DiscreteOutcome {
  MultiIndex ns;
};

struct RejectionStats {
  long proposals = 0;
  long accepted = 0;
  long envelope_violations = 0;
  double acceptance_rate() const { return proposals ? double(accepted) / proposals : 0.0; }
  void merge(const RejectionStats &o);
};

constexpr double kMinAcceptance = 1e-3;

std::map<MultiIndex, double> fock_probabilities(const StellarState &s, int cutoff,
                                                double *captured = nullptr);

// <alpha| psi> for all modes at once: exp(-|alpha|^2/2) F(alpha*).
cplx coherent_amplitude(const StellarState &s, const CVec &alphas);
// Unnormalized conditional state of the unmeasured modes.
StellarState project_coherent(const StellarState &s, const std::vector<int> &modes,
                              const CVec &alphas);
// Outcome density |<alpha|psi>|^2 / pi^k, marginal over the other modes.
double coherent_marginal(const StellarState &s, const std::vector<int> &modes,
                         const CVec &alphas);
// (1/sqrt(n!)) d^n F / dz_k^n at z_k = 0, on the remaining modes.
StellarState project_fock(const StellarState &s, int k, int n);

// Throws ValidationError unless norm_squared(s) = 1 to 1e-8.
void require_normalized(const StellarState &s);

// Rejection sampler for the heterodyne outcome of one mode of a normalized
// state. The envelope is built once at construction.
class ModeSampler {
 public:
  ModeSampler(const StellarState &s, int k, double safety = 1.5);
  cplx draw(ShotRng &rng, RejectionStats &stats, double *density = nullptr) const;
  double density(cplx alpha) const;
  double envelope() const { return M_; }

 private:
  double proposal_pdf(const Eigen::Vector2d &u) const;
  StellarState state_;
  int k_;
  Eigen::Vector2d mu_;
  Eigen::Matrix2d L_;
  double detL_;
  double M_;
};

// Joint distribution of the measured modes, as a cumulative table.
struct DiscreteTable {
  std::vector<MultiIndex> outcomes;
  std::vector<double> cdf;
  double captured = 0.0;
  int cutoff = 0;
};
DiscreteTable build_discrete_table(const StellarState &s, const std::vector<int> &modes,
                                   int cutoff = 0);

struct MeasureResult {
  std::vector<cplx> values;  // complex outcomes, photon numbers, or quadratures
  double weight = 0.0;       // density or probability of the outcome
  std::optional<StellarState> post;
};

MeasureResult measure_continuous(const StellarState &s, const std::vector<int> &modes,
                                 ShotRng &rng, RejectionStats &stats, double safety = 1.5,
                                 const ModeSampler *first = nullptr);
MeasureResult measure_discrete(const StellarState &s, const std::vector<int> &modes,
                               ShotRng &rng, const DiscreteTable *table = nullptr,
                               int cutoff = 0);
// Squeeze each measured mode by r along the real axis, then heterodyne;
// values are the rescaled quadratures sqrt(2) exp(-r) Re(alpha).
MeasureResult measure_homodyne(const StellarState &s, const std::vector<int> &modes,
                               ShotRng &rng, RejectionStats &stats, double r = 3.0,
                               double safety = 1.5);
double homodyne_excess_variance(double r);

std::vector<ContinuousOutcome> sample_continuous(const StellarState &s,
                                                 const std::vector<int> &modes,
                                                 const SamplerConfig &cfg,
                                                 RejectionStats *stats = nullptr);
std::vector<DiscreteOutcome> sample_discrete(const StellarState &s, const std::vector<int> &modes,
                                             const SamplerConfig &cfg);

// One-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf);
double kolmogorov_pvalue(double D, size_t n);

}  // namespace hqc
