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

#include "hqc/stellar.hpp"
#include "oracles.hpp"

using namespace hqc;

namespace {

StellarState coherent(cplx alpha) {
  GaussPart g = GaussPart::zero(1);
  g.B[0] = alpha;
  g.C = -0.5 * std::norm(alpha);
  return StellarState(Poly::constant(1, 1.0), g);
}

CVec vec1(cplx z) {
  CVec v(1);
  v[0] = z;
  return v;
}

// Smallest achievable max distance between two root lists.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  std::vector<int> p(b.size());
  std::iota(p.begin(), p.end(), 0);
  double best = 1e300;
  do {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[p[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace

TEST(Stellar, FockSuperpositionExamples) {
  StellarState vac = from_fock_superposition({{{0}, 1.0}}, 1);
  EXPECT_EQ(stellar_rank(vac), 0);
  EXPECT_NEAR(std::abs(evaluate(vac, vec1(cplx(0.3, 2.0))) - 1.0), 0.0, 1e-15);

  StellarState two = from_fock_superposition({{{2}, 1.0}}, 1);
  EXPECT_EQ(stellar_rank(two), 2);
  EXPECT_NEAR(std::abs(evaluate(two, vec1(2.0)) - 2.0 * std::sqrt(2.0)), 0.0, 1e-14);

  StellarState pair = from_fock_superposition({{{1, 1}, 1.0}}, 2);
  CVec z(2);
  z << cplx(0.5, 1.0), cplx(-2.0, 0.25);
  EXPECT_NEAR(std::abs(evaluate(pair, z) - z[0] * z[1]), 0.0, 1e-14);

  StellarState mixed = from_fock_superposition({{{2, 0}, 1.0}, {{0, 1}, 1.0}}, 2);
  EXPECT_EQ(stellar_rank(mixed), 2);
}

TEST(Stellar, FockSuperpositionRejectsBadInput) {
  EXPECT_THROW(from_fock_superposition({}, 1), ValidationError);
  EXPECT_THROW(from_fock_superposition({{{1, 0}, 1.0}}, 1), ValidationError);
}

TEST(Stellar, CoherentStateEvaluation) {
  EXPECT_NEAR(std::abs(evaluate(coherent(1.0), vec1(1.0)) - std::exp(0.5)), 0.0, 1e-14);
  EXPECT_NEAR(norm_squared(coherent(1.0)), 1.0, 1e-12);
}

TEST(Stellar, HusimiExamples) {
  StellarState vac = StellarState::vacuum(1);
  EXPECT_NEAR(husimi_density(vac, vec1(0.0)), 1.0 / kPi, 1e-15);
  const cplx a(0.7, -1.1);
  EXPECT_NEAR(husimi_density(vac, vec1(a)), std::exp(-std::norm(a)) / kPi, 1e-15);
  StellarState one = from_zeros({0.0}, 0.0, 0.0, 0.0);
  EXPECT_NEAR(husimi_density(one, vec1(1.0)), std::exp(-1.0) / kPi, 1e-15);
}

TEST(Stellar, HusimiRejectsUnnormalizedState) {
  StellarState s = StellarState::vacuum(1).scaled(0.5);
  EXPECT_THROW(husimi_density(s, vec1(0.0)), ValidationError);
}

TEST(Stellar, HusimiIsConjugateEvaluation) {
  oracle::Rand r(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = r.integer(1, 2);
    StellarState s = oracle::random_multimode(r, m, r.integer(0, 3), 0.5);
    CVec a(m);
    for (int k = 0; k < m; ++k) a[k] = r.disk(2.0);
    const double want = std::exp(-a.squaredNorm()) * std::norm(evaluate(s, a.conjugate())) / std::pow(kPi, m);
    EXPECT_NEAR(husimi_density(s, a), want, 1e-13 * (1 + want));
  }
}

TEST(Stellar, HusimiIntegratesToOneSingleMode) {
  oracle::Rand r(22);
  for (int trial = 0; trial < 6; ++trial) {
    StellarState s = oracle::random_single_mode(r, r.integer(0, 3));
    const double I = oracle::trapezoid(2, 9.0, 0.05, [&](const std::vector<double> &x) {
      return husimi_unnormalized(s, vec1(cplx(x[0], x[1])));
    });
    EXPECT_NEAR(I, 1.0, 1e-6);
  }
}

TEST(Stellar, HusimiIntegratesToOneTwoModes) {
  oracle::Rand r(23);
  for (int trial = 0; trial < 2; ++trial) {
    StellarState s = oracle::random_multimode(r, 2, r.integer(1, 3), 0.4);
    const double I = oracle::trapezoid(4, 7.6, 0.4, [&](const std::vector<double> &x) {
      CVec a(2);
      a << cplx(x[0], x[1]), cplx(x[2], x[3]);
      return husimi_unnormalized(s, a);
    });
    EXPECT_NEAR(I, 1.0, 1e-6);
  }
}

TEST(Stellar, NormExamples) {
  EXPECT_NEAR(norm_squared(StellarState::vacuum(2)), 1.0, 1e-15);
  StellarState z = from_zeros({0.0}, 0.0, 0.0, 0.0);
  EXPECT_NEAR(norm_squared(z), 1.0, 1e-14);
  StellarState s = from_zeros({0.3, cplx(0, 1)}, 0.2, cplx(0.1, 0.4), 0.0);
  EXPECT_NEAR(norm_squared(s.scaled(1.0)) / norm_squared(s), std::exp(2.0), 1e-10);
}

TEST(Stellar, NormMatchesGaussianClosedForm) {
  oracle::Rand r(24);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = r.integer(1, 3);
    StellarState s = oracle::random_multimode(r, m, 0, 0.8).scaled(r.disk(0.5));
    // Rank zero: the polynomial is a constant multiplying the Gaussian.
    const double expect = std::norm(s.poly().coeff(MultiIndex(m, 0))) * gaussian_norm_squared(s.gauss());
    EXPECT_NEAR(norm_squared(s), expect, 1e-10 * expect);
  }
}

TEST(Stellar, NormMatchesIndependentSeries) {
  oracle::Rand r(25);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> zeros;
    for (int k = 0; k < 3; ++k) zeros.push_back(r.disk(1.5));
    const cplx a = r.disk(0.6), b = r.disk(1.0);
    StellarState s = from_zeros(zeros, a, b, 0.0);
    std::vector<cplx> poly = s.poly().terms().empty() ? std::vector<cplx>{} : std::vector<cplx>(4);
    for (int k = 0; k <= 3; ++k) poly[k] = s.poly().coeff({k});
    CVec psi = oracle::single_mode_amplitudes(poly, a, b, 0.0, 200);
    EXPECT_NEAR(norm_squared(s), psi.squaredNorm(), 1e-10 * psi.squaredNorm());
    FockArray f = to_fock_array(s, 30);
    for (int n = 0; n <= 30; ++n) EXPECT_NEAR(std::abs(f.get({n}) - psi[n]), 0.0, 1e-11 * std::sqrt(psi.squaredNorm()));
  }
}

TEST(Stellar, InnerProductExamples) {
  for (int n = 0; n < 4; ++n) {
    for (int k = 0; k < 4; ++k) {
      StellarState a = from_fock_superposition({{{n}, 1.0}}, 1);
      StellarState b = from_fock_superposition({{{k}, 1.0}}, 1);
      EXPECT_NEAR(std::abs(inner_product(a, b) - (n == k ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  }
  StellarState one = from_fock_superposition({{{1}, 1.0}}, 1);
  EXPECT_NEAR(std::abs(inner_product(one, coherent(1.0)) - std::exp(-0.5)), 0.0, 1e-13);
  StellarState s = from_zeros({0.2, -0.4}, 0.3, 0.5, 0.1);
  EXPECT_NEAR(std::abs(inner_product(s, s) - norm_squared(s)), 0.0, 1e-12 * norm_squared(s));
}

TEST(Stellar, InnerProductIsConjugateLinearInFirstArgument) {
  StellarState a = from_zeros({0.5}, 0.1, 0.2, 0.0), b = from_zeros({-0.3, 0.2}, 0.0, 0.4, 0.0);
  const cplx lam(0.3, 0.8);
  const cplx ip = inner_product(a.scaled(std::log(lam)), b);
  EXPECT_NEAR(std::abs(ip - std::conj(lam) * inner_product(a, b)), 0.0, 1e-12);
  EXPECT_THROW(inner_product(a, StellarState::vacuum(2)), ValidationError);
}

TEST(Stellar, FromZerosExamples) {
  StellarState v = from_zeros({}, 0.0, 0.0, 0.0);
  EXPECT_EQ(stellar_rank(v), 0);
  StellarState z = from_zeros({0.0}, 0.0, 0.0, 0.0);
  EXPECT_EQ(z.poly().coeff({1}), cplx(1.0));
  StellarState q = from_zeros({1.0, -1.0}, 0.0, 0.0, 0.0);
  EXPECT_NEAR(std::abs(q.poly().coeff({0}) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q.poly().coeff({1})), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q.poly().coeff({2}) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(from_zeros({0.0}, 1.0, 0.0, 0.0), ValidationError);
}

TEST(Stellar, ZerosOfExamples) {
  StellarState z = from_zeros({0.0}, 0.2, 0.1, 0.0);
  auto r = zeros_of(z);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(std::abs(r[0]), 0.0, 1e-14);
  r = zeros_of(from_zeros({cplx(2, 1), -3.0}, 0.0, 0.0, 0.0));
  EXPECT_LT(multiset_distance(r, {cplx(2, 1), -3.0}), 1e-12);
  StellarState p(Poly(1, {{{0}, 1.0}, {{2}, 1.0}}), GaussPart::zero(1));
  r = zeros_of(p);
  EXPECT_LT(multiset_distance(r, {cplx(0, 1), cplx(0, -1)}), 1e-12);
  for (cplx x : r) EXPECT_LT(std::abs(evaluate(p, vec1(x))), 1e-12);
  EXPECT_THROW(zeros_of(StellarState::vacuum(1)), ValidationError);
  EXPECT_THROW(zeros_of(from_fock_superposition({{{1, 0}, 1.0}}, 2)), ValidationError);
}

TEST(Stellar, ZerosRoundTrip) {
  oracle::Rand r(26);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = r.integer(1, 8);
    std::vector<cplx> roots;
    for (int k = 0; k < n; ++k) roots.push_back(r.disk(3.0));
    auto got = zeros_of(from_zeros(roots, r.disk(0.5), r.disk(1.0), 0.0));
    ASSERT_EQ(got.size(), roots.size());
    EXPECT_LT(multiset_distance(got, roots), 1e-9) << "trial " << trial;
  }
}

TEST(Stellar, TensorExamplesAndAdditivity) {
  StellarState vv = tensor(StellarState::vacuum(1), StellarState::vacuum(1));
  EXPECT_EQ(vv.modes(), 2);
  EXPECT_EQ(stellar_rank(vv), 0);
  StellarState one = from_fock_superposition({{{1}, 1.0}}, 1);
  StellarState oo = tensor(one, one);
  EXPECT_EQ(stellar_rank(oo), 2);
  EXPECT_EQ(oo.poly().coeff({1, 1}), cplx(1.0));

  oracle::Rand r(27);
  for (int trial = 0; trial < 20; ++trial) {
    const int m1 = r.integer(1, 2), m2 = r.integer(1, 2);
    const int r1 = r.integer(0, 3), r2 = r.integer(0, 3);
    StellarState a = oracle::random_multimode(r, m1, r1, 0.6).scaled(r.disk(0.3));
    StellarState b = oracle::random_multimode(r, m2, r2, 0.6).scaled(r.disk(0.3));
    StellarState t = tensor(a, b);
    EXPECT_EQ(stellar_rank(t), r1 + r2);
    const double want = norm_squared(a) * norm_squared(b);
    EXPECT_NEAR(norm_squared(t), want, 1e-9 * want);
  }
  StellarState r2 = from_zeros({0.1, 0.2}, 0.0, 0.0, 0.0), r3 = from_zeros({0.1, 0.2, 0.3}, 0.0, 0.0, 0.0);
  EXPECT_EQ(stellar_rank(tensor(r2, r3)), 5);
}

TEST(Stellar, FockArrayExamples) {
  FockArray v = to_fock_array(StellarState::vacuum(1), 3);
  EXPECT_EQ(v.get({0}), cplx(1.0));
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(v.get({n}), cplx(0.0));

  GaussPart g = GaussPart::zero(1);
  g.A(0, 0) = std::tanh(0.5);
  FockArray sq = to_fock_array(StellarState(Poly::constant(1, 1.0), g), 30);
  for (int n = 1; n <= 30; n += 2) EXPECT_EQ(sq.get({n}), cplx(0.0));

  FockArray c = to_fock_array(coherent(1.0), 20);
  for (int n = 0; n <= 20; ++n) {
    EXPECT_NEAR(std::abs(c.get({n}) - std::exp(-0.5 - 0.5 * std::lgamma(n + 1.0))), 0.0, 1e-15);
  }
}

TEST(Stellar, FockArrayReproducesCoreAmplitudes) {
  oracle::Rand r(28);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = r.integer(1, 3);
    std::map<MultiIndex, cplx> amps;
    auto basis = fock_basis(m, 6);
    for (int k = 0; k < 5; ++k) amps[basis->at(r.integer(0, int(basis->size()) - 1))] = r.gauss();
    StellarState s = from_fock_superposition(amps, m);
    FockArray f = to_fock_array(s, 25);
    for (size_t i = 0; i < f.basis->size(); ++i) {
      auto it = amps.find(f.basis->at(i));
      const cplx want = it == amps.end() ? cplx(0.0) : it->second;
      EXPECT_NEAR(std::abs(f.amp[i] - want), 0.0, 1e-12);
    }
  }
}

TEST(Stellar, TruncationLossIsReported) {
  GaussPart g = GaussPart::zero(1);
  g.B[0] = 3.0;
  g.C = -4.5;
  StellarState s(Poly::constant(1, 1.0), g);
  FockArray f = to_fock_array(s, 5);
  EXPECT_NEAR(f.truncation_loss, 1.0 - f.captured_norm(), 1e-12);
  EXPECT_GT(f.truncation_loss, 0.1);
}

TEST(Stellar, AdmissibilityIsEnforced) {
  GaussPart g = GaussPart::zero(1);
  g.A(0, 0) = 1.0;
  EXPECT_THROW(StellarState(Poly::constant(1, 1.0), g), ValidationError);
}
