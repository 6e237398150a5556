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

#include "hqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hqc {

Takagi takagi(const CMat &A) {
  const int m = static_cast<int>(A.rows());
  if (A.cwiseAbs().maxCoeff() < 1e-15) return {CMat::Identity(m, m), RVec::Zero(m)};
  RMat R = A.real(), I = A.imag();
  RMat M(2 * m, 2 * m);
  M << R, I, I, -R;
  Eigen::SelfAdjointEigenSolver<RMat> es(M);
  // Eigenvalues come in +-sigma pairs; the top m eigenvectors (x, y) give
  // columns w = x + i y with A conj(w) = sigma w.
  Takagi t;
  t.W = CMat::Zero(m, m);
  t.sigma = RVec::Zero(m);
  std::vector<CVec> cols;
  std::vector<double> vals;
  for (int j = 2 * m - 1; j >= 0 && static_cast<int>(cols.size()) < m; --j) {
    CVec w(m);
    for (int i = 0; i < m; ++i) w[i] = cplx(es.eigenvectors()(i, j), es.eigenvectors()(m + i, j));
    // Greedy complex Gram-Schmidt; needed when sigma = 0 is degenerate.
    for (auto &c : cols) w -= c.dot(w) * c;
    double nw = w.norm();
    if (nw < 1e-6) continue;
    cols.push_back(w / nw);
    vals.push_back(std::max(es.eigenvalues()(j), 0.0));
  }
  if (static_cast<int>(cols.size()) != m) throw NumericError("Takagi factorization failed");
  for (int j = 0; j < m; ++j) {
    t.W.col(j) = cols[j];
    t.sigma[j] = vals[j];
  }
  // Re-read sigma from the factorization so that A = W S W^T holds exactly
  // in phase: sigma_j = w_j^dagger A conj(w_j).
  for (int j = 0; j < m; ++j) {
    cplx s = t.W.col(j).dot(A * t.W.col(j).conjugate());
    if (std::abs(s) > 0) {
      // Absorb any residual phase into the column.
      cplx ph = std::sqrt(s / std::abs(s));
      t.W.col(j) *= ph;
      t.sigma[j] = std::abs(s);
    } else {
      t.sigma[j] = 0.0;
    }
  }
  return t;
}

bool is_unitary(const CMat &U, double tol) {
  if (U.rows() != U.cols()) return false;
  return (U.adjoint() * U - CMat::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() <= tol;
}

GivensDecomposition givens_decompose(const CMat &U) {
  const int m = static_cast<int>(U.rows());
  CMat X = U;
  std::vector<TwoModeFactor> left;
  // Zero the sub-diagonal column by column: G_L ... G_1 U = D.
  for (int c = 0; c < m; ++c) {
    for (int r = m - 1; r > c; --r) {
      cplx a = X(r - 1, c), b = X(r, c);
      double nrm = std::hypot(std::abs(a), std::abs(b));
      if (std::abs(b) == 0.0) continue;
      Eigen::Matrix2cd G;
      G << std::conj(a) / nrm, std::conj(b) / nrm, -b / nrm, a / nrm;
      Eigen::MatrixXcd rows(2, m);
      rows.row(0) = X.row(r - 1);
      rows.row(1) = X.row(r);
      rows = (G * rows).eval();
      X.row(r - 1) = rows.row(0);
      X.row(r) = rows.row(1);
      left.push_back({r - 1, r, G});
    }
  }
  GivensDecomposition d;
  d.phases = X.diagonal();
  // U = G_1^dagger ... G_L^dagger D
  for (auto &f : left) d.factors.push_back({f.p, f.q, f.M.adjoint()});
  return d;
}

std::vector<int> min_cost_assignment(const RMat &cost) {
  // Hungarian algorithm (potentials form), O(n^3).
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> res(n);
  for (int j = 1; j <= n; ++j) res[p[j] - 1] = j - 1;
  return res;
}

cplx cos_sqrt(cplx w2, double t) {
  cplx x = w2 * t * t;
  if (std::abs(x) < 1e-3) {
    // 1 - x/2 + x^2/24 - x^3/720
    return 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0;
  }
  cplx w = std::sqrt(w2);
  return std::cos(w * t);
}

cplx sinc_sqrt(cplx w2, double t) {
  cplx x = w2 * t * t;
  if (std::abs(x) < 1e-3) {
    // t (1 - x/6 + x^2/120 - x^3/5040)
    return t * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0);
  }
  cplx w = std::sqrt(w2);
  return std::sin(w * t) / w;
}

std::vector<cplx> eigenvalues(const CMat &M) {
  if (M.rows() == 1) return {M(0, 0)};
  Eigen::ComplexEigenSolver<CMat> es(M, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver failed");
  return std::vector<cplx>(es.eigenvalues().data(), es.eigenvalues().data() + M.rows());
}

}  // namespace hqc
