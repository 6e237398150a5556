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
#include <omp.h>

#include "hqc/permanent.hpp"
#include "hqc/philox.hpp"
#include "hqc/table3.hpp"
#include "oracles.hpp"

using namespace hqc;

TEST(Philox, KnownAnswerVectors) {
  // Reference vectors of the Philox4x32-10 block function.
  struct Kat {
    Philox4x32Ctr ctr;
    Philox4x32Key key;
    Philox4x32Ctr out;
  };
  const Kat kats[] = {
      {{0, 0, 0, 0}, {0, 0}, {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}},
      {{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
       {0xffffffffu, 0xffffffffu},
       {0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}},
      {{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
       {0xa4093822u, 0x299f31d0u},
       {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}},
  };
  for (const Kat &k : kats) EXPECT_EQ(philox4x32(k.ctr, k.key), k.out);
}

TEST(Philox, StreamsDependOnlyOnSeedAndShot) {
  ShotRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(Philox, UniformAndNormalMoments) {
  ShotRng r(1, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0, g = 0.0, g2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
    const double z = r.normal();
    g += z;
    g2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(s2 / n - std::pow(s / n, 2), 1.0 / 12, 1e-3);
  EXPECT_NEAR(g / n, 0.0, 4 / std::sqrt(double(n)));
  EXPECT_NEAR(g2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(Permanent, Examples) {
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(std::abs(permanent(CMat::Identity(n, n)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(permanent(oracle::beam_splitter())), 0.0, 1e-16);
  EXPECT_EQ(permanent(CMat(0, 0)), cplx(1.0));
}

TEST(Permanent, MatchesBruteForce) {
  oracle::Rand r(81);
  for (int n = 1; n <= 8; ++n) {
    CMat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = r.gauss();
    const cplx want = oracle::permanent_brute(M);
    EXPECT_NEAR(std::abs(permanent(M) - want), 0.0, 1e-12 * std::max(1.0, std::abs(want)));
    EXPECT_NEAR(std::abs(permanent_parallel(M) - want), 0.0, 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST(Permanent, ParallelIsThreadCountIndependent) {
  oracle::Rand r(82);
  CMat M(14, 14);
  for (int i = 0; i < 14; ++i)
    for (int j = 0; j < 14; ++j) M(i, j) = r.gauss() / 4.0;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const cplx one = permanent_parallel(M);
  omp_set_num_threads(4);
  const cplx four = permanent_parallel(M);
  omp_set_num_threads(saved);
  EXPECT_EQ(one, four);
  EXPECT_NEAR(std::abs(one - permanent(M)), 0.0, 1e-10 * std::abs(one));
}

TEST(Permanent, RejectsOversizeAndNonSquare) {
  EXPECT_THROW(permanent(CMat::Zero(kMaxPermanentSize + 1, kMaxPermanentSize + 1)), ValidationError);
  EXPECT_THROW(permanent(CMat::Zero(2, 3)), ValidationError);
}

TEST(BosonSampling, Examples) {
  CMat I = CMat::Identity(3, 3);
  EXPECT_NEAR(boson_sampling_prob(I, {1, 0, 1}, {1, 0, 1}), 1.0, 1e-15);
  CMat H = oracle::beam_splitter();
  EXPECT_LE(boson_sampling_prob(H, {1, 1}, {1, 1}), 1e-12);
  EXPECT_NEAR(boson_sampling_prob(H, {1, 1}, {2, 0}), 0.5, 1e-15);
  EXPECT_NEAR(boson_sampling_prob(H, {1, 1}, {0, 2}), 0.5, 1e-15);
  EXPECT_THROW(boson_sampling_prob(H, {1, 1}, {1, 0}), ValidationError);
}

TEST(BosonSampling, ProbabilitiesSumToOne) {
  for (int m = 2; m <= 4; ++m) {
    CMat U = haar_unitary(m, 7 + m);
    MultiIndex in(m, 0);
    in[0] = in[m - 1] = 1;
    auto basis = fock_basis(m, 2);
    double sum = 0.0;
    for (size_t i = basis->shell_begin(2); i < basis->shell_end(2); ++i) sum += boson_sampling_prob(U, in, basis->at(i));
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(HaarUnitary, IsUnitaryAndSeeded) {
  CMat a = haar_unitary(4, 1), b = haar_unitary(4, 1), c = haar_unitary(4, 2);
  EXPECT_LT((a.adjoint() * a - CMat::Identity(4, 4)).norm(), 1e-13);
  EXPECT_EQ((a - b).norm(), 0.0);
  EXPECT_GT((a - c).norm(), 0.1);
}
