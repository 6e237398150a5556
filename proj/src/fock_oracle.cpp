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

#include "hqc/fock_oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace hqc {

FockArray fock_from_amplitudes(const std::map<MultiIndex, cplx> &amps, int modes, int cutoff) {
  FockArray x = FockArray::zeros(modes, cutoff);
  for (auto &[n, c] : amps) {
    if (static_cast<int>(n.size()) != modes) throw ValidationError("index length mismatch");
    if (total_degree(n) > cutoff) throw ValidationError("amplitude above the oracle cutoff");
    x.set(n, c);
  }
  return x;
}

FockArray fock_vacuum(int modes, int cutoff) {
  return fock_from_amplitudes({{MultiIndex(modes, 0), 1.0}}, modes, cutoff);
}

CMat single_mode_generator(const Hamiltonian1M &H, double t, int size) {
  CMat G = CMat::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    G(n, n) += kI * (H.phi * n - H.offset);
    if (n + 1 < size) {
      const double s1 = std::sqrt(n + 1.0);
      G(n + 1, n) += H.alpha * s1;             // alpha a^dagger
      G(n, n + 1) -= std::conj(H.alpha) * s1;  // -alpha* a
    }
    if (n + 2 < size) {
      const double s2 = std::sqrt((n + 1.0) * (n + 2.0));
      G(n + 2, n) += 0.5 * H.xi * s2;
      G(n, n + 2) -= 0.5 * std::conj(H.xi) * s2;
    }
  }
  return G * t;
}

CMat single_mode_gate(Gate::Kind kind, cplx param, int size) {
  if (kind == Gate::Kind::Phase) {
    CMat D = CMat::Zero(size, size);
    for (int n = 0; n < size; ++n) D(n, n) = std::polar(1.0, param.real() * n);
    return D;
  }
  return single_mode_generator(hamiltonian_of(kind, param), 1.0, size).exp();
}

FockArray oracle_apply_single(const FockArray &x, int k, const CMat &M) {
  const int N = x.cutoff;
  if (M.rows() < N + 1) throw ValidationError("gate matrix smaller than the cutoff");
  FockArray y = FockArray::zeros(x.modes, N);
  const FockBasis &B = *x.basis;
  CVec in, out;
  for (size_t i = 0; i < B.size(); ++i) {
    const MultiIndex &n = B.at(i);
    if (n[k] != 0) continue;
    const int len = N - total_degree(n) + 1;
    in.resize(len);
    MultiIndex m = n;
    std::vector<size_t> pos(len);
    for (int j = 0; j < len; ++j) {
      m[k] = j;
      pos[j] = B.find(m);
      in[j] = x.amp[pos[j]];
    }
    out = M.topLeftCorner(len, len) * in;
    for (int j = 0; j < len; ++j) y.amp[pos[j]] = out[j];
  }
  y.truncation_loss = x.truncation_loss + std::max(0.0, x.captured_norm() - y.captured_norm());
  return y;
}

namespace {

FockArray apply_two_mode(const FockArray &x, int p, int q, const Eigen::Matrix2cd &M) {
  const Eigen::Matrix2cd X = Eigen::Matrix2cd(M.transpose()).log();
  const int N = x.cutoff;
  const FockBasis &B = *x.basis;
  // exp of sum_ij X_ij a_i^dag a_j on the block n_p + n_q = T.
  std::vector<CMat> blocks(N + 1);
  for (int T = 0; T <= N; ++T) {
    CMat K = CMat::Zero(T + 1, T + 1);
    for (int j = 0; j <= T; ++j) {  // |j, T-j>
      K(j, j) += X(0, 0) * double(j) + X(1, 1) * double(T - j);
      if (j < T) K(j + 1, j) += X(0, 1) * std::sqrt((j + 1.0) * (T - j));
      if (j > 0) K(j - 1, j) += X(1, 0) * std::sqrt(double(j) * (T - j + 1.0));
    }
    blocks[T] = K.exp();
  }
  FockArray y = FockArray::zeros(x.modes, N);
  CVec in;
  for (size_t i = 0; i < B.size(); ++i) {
    const MultiIndex &n = B.at(i);
    if (n[p] != 0 || n[q] != 0) continue;
    const int rest = total_degree(n);
    for (int T = 0; T + rest <= N; ++T) {
      MultiIndex m = n;
      std::vector<size_t> pos(T + 1);
      in.resize(T + 1);
      for (int j = 0; j <= T; ++j) {
        m[p] = j;
        m[q] = T - j;
        pos[j] = B.find(m);
        in[j] = x.amp[pos[j]];
      }
      CVec out = blocks[T] * in;
      for (int j = 0; j <= T; ++j) y.amp[pos[j]] = out[j];
    }
  }
  y.truncation_loss = x.truncation_loss;
  return y;
}

FockArray oracle_passive(const FockArray &x, const CMat &U) {
  if (U.rows() != x.modes || !is_unitary(U)) throw ValidationError("bad passive matrix");
  GivensDecomposition d = givens_decompose(U);
  FockArray y = x;
  for (const TwoModeFactor &f : d.factors) y = apply_two_mode(y, f.p, f.q, f.M);
  const FockBasis &B = *y.basis;
  for (size_t i = 0; i < B.size(); ++i) {
    cplx ph = 1.0;
    for (int k = 0; k < y.modes; ++k) ph *= std::pow(d.phases[k], B.at(i)[k]);
    y.amp[i] *= ph;
  }
  return y;
}

FockArray oracle_create(const FockArray &x, int k) {
  FockArray y = FockArray::zeros(x.modes, x.cutoff);
  const FockBasis &B = *x.basis;
  for (size_t i = 0; i < B.size(); ++i) {
    MultiIndex n = B.at(i);
    const cplx a = x.amp[i];
    n[k] += 1;
    const size_t j = B.find(n);
    if (j == FockBasis::npos) {
      y.truncation_loss += std::norm(a) * n[k];
      continue;
    }
    y.amp[j] = a * std::sqrt(double(n[k]));
  }
  y.truncation_loss += x.truncation_loss;
  return y;
}

}  // namespace

FockArray oracle_apply(const FockArray &x, const Gate &g, int pad) {
  const int size = x.cutoff + 1 + pad;
  switch (g.kind) {
    case Gate::Kind::Passive: return oracle_passive(x, g.U);
    case Gate::Kind::Create: return oracle_create(x, g.mode);
    case Gate::Kind::Displace: {
      if (g.beta.size() != x.modes) throw ValidationError("displacement vector has wrong length");
      FockArray y = x;
      for (int k = 0; k < x.modes; ++k) {
        if (g.beta[k] != cplx(0.0)) {
          y = oracle_apply_single(y, k, single_mode_gate(Gate::Kind::Displace, g.beta[k], size));
        }
      }
      return y;
    }
    default:
      if (g.mode < 0 || g.mode >= x.modes) throw ValidationError("mode index out of range");
      return oracle_apply_single(x, g.mode, single_mode_gate(g.kind, g.param, size));
  }
}

FockArray oracle_apply_all(const FockArray &x, const std::vector<Gate> &gates, int pad) {
  FockArray y = x;
  for (const Gate &g : gates) y = oracle_apply(y, g, pad);
  return y;
}

FockArray oracle_evolve_1m(const FockArray &x, const Hamiltonian1M &H, double t, int pad) {
  if (x.modes != 1) throw ValidationError("single-mode oracle on a multimode array");
  return oracle_apply_single(x, 0, single_mode_generator(H, t, x.cutoff + 1 + pad).exp());
}

}  // namespace hqc
