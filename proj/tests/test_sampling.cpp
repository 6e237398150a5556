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

#include <gtest/gtest.h>

#include "hqc/fock_oracle.hpp"
#include "hqc/multimode.hpp"
#include "hqc/permanent.hpp"
#include "hqc/sampling.hpp"
#include "oracles.hpp"

using namespace hqc;

namespace {

StellarState coherent(cplx alpha) {
  return apply_displace(StellarState::vacuum(1), CVec::Constant(1, alpha));
}

CVec vec1(cplx z) { return CVec::Constant(1, z); }

double total_variation_top(const std::map<MultiIndex, double> &p, const std::map<MultiIndex, long> &counts,
                           long shots, int k) {
  std::vector<std::pair<double, MultiIndex>> order;
  for (auto &[n, v] : p) order.push_back({v, n});
  std::sort(order.rbegin(), order.rend());
  double tv = 0.0;
  for (int i = 0; i < k && i < int(order.size()); ++i) {
    auto it = counts.find(order[i].second);
    const double emp = it == counts.end() ? 0.0 : double(it->second) / shots;
    tv += std::abs(emp - order[i].first);
  }
  return 0.5 * tv;
}

}  // namespace

TEST(Sampling, FockProbabilityExamples) {
  auto v = fock_probabilities(StellarState::vacuum(2), 5);
  EXPECT_NEAR(v[MultiIndex({0, 0})], 1.0, 1e-15);
  double captured = 0.0;
  auto c = fock_probabilities(coherent(1.0), 30, &captured);
  for (int n = 0; n <= 30; ++n) EXPECT_NEAR(c[MultiIndex{n}], std::exp(-1.0 - std::lgamma(n + 1.0)), 1e-15);
  EXPECT_NEAR(captured, 1.0, 1e-12);
  auto sq = fock_probabilities(apply_squeeze_mode(StellarState::vacuum(1), 0, 0.5), 30);
  for (int n = 1; n <= 29; n += 2) EXPECT_EQ(sq[MultiIndex{n}], 0.0);
}

TEST(Sampling, CoherentProjectionExamples) {
  StellarState pair = from_fock_superposition({{{1, 1}, 1.0}}, 2);
  const cplx a(0.4, -0.7);
  StellarState p = project_coherent(pair, {0}, vec1(a));
  EXPECT_EQ(stellar_rank(p), 1);
  // alpha^* z_2 times exp(-|alpha|^2/2).
  EXPECT_NEAR(std::abs(evaluate(p, vec1(1.3)) - std::conj(a) * 1.3 * std::exp(-0.5 * std::norm(a))), 0.0, 1e-15);

  CVec both(2);
  both << a, cplx(0.1, 0.2);
  const cplx amp = coherent_amplitude(pair, both);
  EXPECT_NEAR(std::abs(amp - std::conj(both[0]) * std::conj(both[1]) * std::exp(-0.5 * both.squaredNorm())), 0.0, 1e-15);
  EXPECT_THROW(project_coherent(pair, {0, 1}, both), ValidationError);

  StellarState g = apply_gaussian(StellarState::vacuum(2), {Gate::squeeze(0, 0.5), Gate::passive(oracle::beam_splitter())});
  EXPECT_EQ(stellar_rank(project_coherent(g, {1}, vec1(0.3))), 0);
}

TEST(Sampling, CoherentProjectionMatchesFockContraction) {
  oracle::Rand r(71);
  StellarState s = oracle::random_multimode(r, 2, 2, 0.4);
  const cplx a = r.disk(1.0);
  StellarState p = project_coherent(s, {0}, vec1(a));
  // <alpha|_0 psi> = sum_n conj(<n|alpha>) psi_{n, k}.
  FockArray x = to_fock_array(s, 40);
  CVec want = CVec::Zero(20);
  for (size_t i = 0; i < x.basis->size(); ++i) {
    const MultiIndex &n = x.basis->at(i);
    if (n[1] >= 20) continue;
    const cplx coh = std::exp(-0.5 * std::norm(a) - 0.5 * std::lgamma(n[0] + 1.0)) * std::pow(std::conj(a), n[0]);
    want[n[1]] += coh * x.amp[i];
  }
  FockArray got = to_fock_array(p, 19);
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(std::abs(got.get({k}) - want[k]), 0.0, 1e-10);
}

TEST(Sampling, FockProjectionExamples) {
  StellarState pair = from_fock_superposition({{{1, 1}, 1.0}}, 2);
  StellarState p = project_fock(pair, 1, 1);
  EXPECT_EQ(p.modes(), 1);
  EXPECT_NEAR(std::abs(evaluate(p, vec1(0.8)) - 0.8), 0.0, 1e-15);
  // <0|_2 z1 z2 vanishes identically; there is no state to return.
  EXPECT_THROW(project_fock(pair, 1, 0), ValidationError);

  GaussPart g = GaussPart::zero(2);
  g.A(0, 1) = g.A(1, 0) = -0.3;
  StellarState tms(Poly::constant(2, 1.0), g);
  StellarState t2 = project_fock(tms, 1, 2);
  EXPECT_EQ(stellar_rank(t2), 2);
  // The Fock contraction <2|_1 psi> has amplitudes psi_{k,2}.
  FockArray x = to_fock_array(tms, 30);
  FockArray got = to_fock_array(t2, 20);
  for (int k = 0; k <= 20; ++k) EXPECT_NEAR(std::abs(got.get({k}) - x.get({k, 2})), 0.0, 1e-14);
}

TEST(Sampling, ProjectionsBoundTheRank) {
  oracle::Rand r(72);
  for (int trial = 0; trial < 20; ++trial) {
    const int rank = r.integer(0, 3);
    StellarState s = oracle::random_multimode(r, 3, rank, 0.6);
    EXPECT_LE(stellar_rank(project_coherent(s, {r.integer(0, 2)}, vec1(r.disk(1.5)))), rank);
    const int n = r.integer(0, 3);
    StellarState f = project_fock(s, r.integer(0, 2), n);
    if (!f.poly().is_zero()) EXPECT_LE(stellar_rank(f), rank + n);
  }
}

TEST(Sampling, CoherentMarginalIntegratesOtherModes) {
  oracle::Rand r(73);
  StellarState s = oracle::random_multimode(r, 2, 2, 0.4);
  const cplx a = r.disk(1.0);
  const double I = oracle::trapezoid(2, 8.0, 0.08, [&](const std::vector<double> &x) {
    CVec al(2);
    al << a, cplx(x[0], x[1]);
    return husimi_unnormalized(s, al);
  });
  EXPECT_NEAR(coherent_marginal(s, {0}, vec1(a)), I, 1e-9);
}

TEST(Sampling, DiscreteExamples) {
  SamplerConfig cfg;
  cfg.seed = 5;
  cfg.shots = 1000;
  for (auto &o : sample_discrete(StellarState::vacuum(2), {0, 1}, cfg)) EXPECT_EQ(o.ns, MultiIndex({0, 0}));

  cfg.shots = 100000;
  double mean = 0.0;
  for (auto &o : sample_discrete(coherent(1.0), {0}, cfg)) mean += o.ns[0];
  EXPECT_NEAR(mean / cfg.shots, 1.0, 0.02);

  StellarState hom = apply_passive(from_fock_superposition({{{1, 1}, 1.0}}, 2), oracle::beam_splitter());
  cfg.shots = 10000;
  for (auto &o : sample_discrete(hom, {0, 1}, cfg)) EXPECT_NE(o.ns, MultiIndex({1, 1}));
}

TEST(Sampling, DiscreteMatchesFockProbabilities) {
  oracle::Rand r(74);
  StellarState s = oracle::random_multimode(r, 2, 2, 0.4);
  SamplerConfig cfg;
  cfg.seed = 99;
  cfg.shots = 100000;
  std::map<MultiIndex, long> counts;
  for (auto &o : sample_discrete(s, {0, 1}, cfg)) counts[o.ns]++;
  const double tv = total_variation_top(fock_probabilities(s, 40), counts, cfg.shots, 20);
  EXPECT_LE(tv, 4 * std::sqrt(20.0 / cfg.shots));
}

TEST(Sampling, DiscreteMarginalOfOneMode) {
  oracle::Rand r(75);
  StellarState s = oracle::random_multimode(r, 2, 1, 0.3);
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.shots = 100000;
  std::map<MultiIndex, long> counts;
  for (auto &o : sample_discrete(s, {1}, cfg)) counts[o.ns]++;
  std::map<MultiIndex, double> marg;
  for (auto &[n, p] : fock_probabilities(s, 40)) marg[{n[1]}] += p;
  EXPECT_LE(total_variation_top(marg, counts, cfg.shots, 20), 4 * std::sqrt(20.0 / cfg.shots));
}

TEST(Sampling, ContinuousVacuumMoments) {
  SamplerConfig cfg;
  cfg.seed = 17;
  cfg.shots = 100000;
  RejectionStats st;
  auto out = sample_continuous(StellarState::vacuum(1), {0}, cfg, &st);
  cplx m1 = 0.0;
  double m2 = 0.0;
  for (auto &o : out) {
    m1 += o.alphas[0];
    m2 += std::norm(o.alphas[0]);
    EXPECT_GE(o.density_value, 0.0);
  }
  m1 /= double(cfg.shots);
  m2 /= cfg.shots;
  // Standard errors: sqrt(1/2 / N) per component, 1/sqrt(N) for |alpha|^2.
  EXPECT_LT(std::abs(m1.real()), 3 * std::sqrt(0.5 / cfg.shots));
  EXPECT_LT(std::abs(m1.imag()), 3 * std::sqrt(0.5 / cfg.shots));
  EXPECT_LT(std::abs(m2 - 1.0), 3 / std::sqrt(double(cfg.shots)));
  EXPECT_GT(st.acceptance_rate(), kMinAcceptance);
  EXPECT_EQ(st.envelope_violations, 0);
}

TEST(Sampling, ContinuousKolmogorovSmirnov) {
  struct Case {
    StellarState s;
    std::function<double(cplx)> rho;
  };
  const cplx beta(0.8, -0.5);
  std::vector<Case> cases{
      {StellarState::vacuum(1), [](cplx a) { return std::exp(-std::norm(a)) / kPi; }},
      {coherent(beta), [beta](cplx a) { return std::exp(-std::norm(a - beta)) / kPi; }},
      {from_zeros({0.0}, 0.0, 0.0, 0.0), [](cplx a) { return std::norm(a) * std::exp(-std::norm(a)) / kPi; }},
      {normalized(from_zeros({0.5, cplx(-0.3, 0.6)}, 0.2, 0.3, 0.0)), nullptr}};
  cases[3].rho = [s = cases[3].s](cplx a) { return husimi_unnormalized(s, vec1(a)); };
  SamplerConfig cfg;
  cfg.seed = 2026;
  cfg.shots = 20000;
  for (size_t i = 0; i < cases.size(); ++i) {
    auto out = sample_continuous(cases[i].s, {0}, cfg);
    oracle::TabulatedCdf re(cases[i].rho);
    oracle::TabulatedCdf im([&](cplx a) { return cases[i].rho(cplx(a.imag(), a.real())); });
    EXPECT_NEAR(re.total(), 1.0, 1e-6);
    std::vector<double> xr, xi;
    for (auto &o : out) {
      xr.push_back(o.alphas[0].real());
      xi.push_back(o.alphas[0].imag());
    }
    EXPECT_GT(kolmogorov_pvalue(ks_statistic(xr, re), xr.size()), 0.01) << "case " << i;
    EXPECT_GT(kolmogorov_pvalue(ks_statistic(xi, im), xi.size()), 0.01) << "case " << i;
  }
}

TEST(Sampling, FockOneRadialLaw) {
  SamplerConfig cfg;
  cfg.seed = 8;
  cfg.shots = 20000;
  auto out = sample_continuous(from_zeros({0.0}, 0.0, 0.0, 0.0), {0}, cfg);
  std::vector<double> u;
  for (auto &o : out) u.push_back(std::norm(o.alphas[0]));
  const double D = ks_statistic(u, [](double x) { return x <= 0 ? 0.0 : 1 - (1 + x) * std::exp(-x); });
  EXPECT_GT(kolmogorov_pvalue(D, u.size()), 0.01);
}

TEST(Sampling, ContinuousChainReproducesMarginals) {
  oracle::Rand r(76);
  StellarState s = oracle::random_multimode(r, 2, 1, 0.3);
  SamplerConfig cfg;
  cfg.seed = 44;
  cfg.shots = 4000;
  auto out = sample_continuous(s, {0, 1}, cfg);
  for (int k = 0; k < 2; ++k) {
    oracle::TabulatedCdf re([&](cplx a) { return coherent_marginal(s, {k}, vec1(a)); }, 7.0, 700, 120);
    std::vector<double> x;
    for (auto &o : out) x.push_back(o.alphas[k].real());
    EXPECT_GT(kolmogorov_pvalue(ks_statistic(x, re), x.size()), 0.01) << "mode " << k;
  }
}

TEST(Sampling, SamplesAreReproducible) {
  StellarState s = normalized(from_zeros({0.4}, 0.1, 0.2, 0.0));
  SamplerConfig cfg;
  cfg.seed = 123;
  cfg.shots = 500;
  auto a = sample_continuous(s, {0}, cfg), b = sample_continuous(s, {0}, cfg);
  for (int i = 0; i < cfg.shots; ++i) EXPECT_EQ(a[i].alphas[0], b[i].alphas[0]);
  cfg.seed = 124;
  auto c = sample_continuous(s, {0}, cfg);
  EXPECT_NE(a[0].alphas[0], c[0].alphas[0]);
}

TEST(Sampling, HomodyneQuadratureVariance) {
  // Vacuum quadrature x = sqrt(2) Re(alpha) after squeezing has variance
  // 1/2 plus the finite-squeezing excess.
  SamplerConfig cfg;
  cfg.seed = 9;
  RejectionStats st;
  double s2 = 0.0;
  const int shots = 20000;
  for (int i = 0; i < shots; ++i) {
    ShotRng rng(cfg.seed, i);
    MeasureResult m = measure_homodyne(StellarState::vacuum(1), {0}, rng, st);
    s2 += std::norm(m.values[0]);
  }
  const double var = s2 / shots;
  const double want = 0.5 + homodyne_excess_variance(3.0);
  EXPECT_NEAR(var, want, 4 * want * std::sqrt(2.0 / shots));
  EXPECT_GT(homodyne_excess_variance(3.0), 0.0);
  EXPECT_LT(homodyne_excess_variance(3.0), 1e-2);
}

TEST(Sampling, UnnormalizedInputIsRejected) {
  SamplerConfig cfg;
  cfg.shots = 10;
  EXPECT_THROW(sample_continuous(StellarState::vacuum(1).scaled(1.0), {0}, cfg), ValidationError);
}

TEST(Sampling, BosonSamplingRoutesAgree) {
  oracle::Rand r(77);
  for (int m = 2; m <= 5; ++m) {
    CMat U = r.unitary(m);
    const int photons = std::min(3, m);
    MultiIndex in(m, 0);
    for (int k = 0; k < photons; ++k) in[k] = 1;
    Poly P = Poly::monomial(in);
    StellarState out = apply_passive(StellarState(P, GaussPart::zero(m)), U);
    FockArray stellar = to_fock_array(out, photons);
    FockArray oracle_out = oracle_apply(to_fock_array(StellarState(P, GaussPart::zero(m)), photons), Gate::passive(U));
    for (size_t i = stellar.basis->shell_begin(photons); i < stellar.basis->shell_end(photons); ++i) {
      const MultiIndex &n = stellar.basis->at(i);
      const double perm = boson_sampling_prob(U, in, n);
      EXPECT_NEAR(perm, std::norm(stellar.amp[i]), 1e-10);
      EXPECT_NEAR(perm, std::norm(oracle_out.amp[i]), 1e-10);
    }
  }
}

TEST(Sampling, ChainAndTableAgreeOnPostStates) {
  oracle::Rand r(78);
  StellarState s = oracle::random_multimode(r, 3, 2, 0.3);
  ShotRng rng(1, 0);
  MeasureResult m = measure_discrete(s, {0}, rng);
  ASSERT_TRUE(m.post.has_value());
  EXPECT_EQ(m.post->modes(), 2);
  EXPECT_NEAR(norm_squared(*m.post), 1.0, 1e-9);
  RejectionStats st;
  MeasureResult c = measure_continuous(s, {2}, rng, st);
  ASSERT_TRUE(c.post.has_value());
  EXPECT_NEAR(norm_squared(*c.post), 1.0, 1e-9);
  EXPECT_LE(stellar_rank(*c.post), 2);
}
