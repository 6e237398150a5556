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

#include "hqc/stellar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqc {

GaussPart GaussPart::zero(int modes) {
  GaussPart g;
  g.A = CMat::Zero(modes, modes);
  g.B = CVec::Zero(modes);
  g.C = 0.0;
  return g;
}

double max_singular_value(const CMat &A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(A);
  return svd.singularValues()(0);
}

void check_admissible(const CMat &A) {
  double s = max_singular_value(A);
  if (!(s < 1.0 - kAdmissibilityMargin)) {
    std::ostringstream os;
    os << "inadmissible Gaussian part: largest singular value of A is " << s;
    throw ValidationError(os.str());
  }
}

StellarState::StellarState(Poly poly, GaussPart gauss)
    : modes_(poly.modes()), poly_(std::move(poly)), gauss_(std::move(gauss)) {
  if (gauss_.A.rows() != modes_ || gauss_.A.cols() != modes_ || gauss_.B.size() != modes_) {
    throw ValidationError("Gaussian part shape does not match mode count");
  }
  if (poly_.is_zero()) throw ValidationError("zero polynomial is not a state");
  gauss_.A = (0.5 * (gauss_.A + gauss_.A.transpose())).eval();
  check_admissible(gauss_.A);
}

StellarState StellarState::vacuum(int modes) {
  return StellarState(Poly::constant(modes, 1.0), GaussPart::zero(modes));
}

StellarState StellarState::scaled(cplx dc) const {
  GaussPart g = gauss_;
  g.C += dc;
  return StellarState(poly_, g);
}

StellarState from_fock_superposition(const std::map<MultiIndex, cplx> &amps, int modes) {
  if (amps.empty()) throw ValidationError("empty amplitude map");
  Poly p(modes);
  for (auto &[n, a] : amps) {
    if (static_cast<int>(n.size()) != modes) {
      throw ValidationError("amplitude index length does not match mode count");
    }
    p.add_term(n, a * std::exp(-0.5 * log_factorial(n)));
  }
  if (p.is_zero()) throw ValidationError("all amplitudes are zero");
  return StellarState(p, GaussPart::zero(modes));
}

static cplx gauss_exponent(const GaussPart &g, const CVec &z) {
  return -0.5 * (z.transpose() * g.A * z).value() + (g.B.transpose() * z).value() + g.C;
}

cplx evaluate(const StellarState &s, const CVec &z) {
  if (z.size() != s.modes()) throw ValidationError("evaluation point has wrong dimension");
  return s.poly().evaluate(z) * std::exp(gauss_exponent(s.gauss(), z));
}

double husimi_unnormalized(const StellarState &s, const CVec &alpha) {
  if (alpha.size() != s.modes()) throw ValidationError("alpha has wrong dimension");
  CVec z = alpha.conjugate();
  cplx e = gauss_exponent(s.gauss(), z);
  cplx p = s.poly().evaluate(z);
  double log_q = 2.0 * e.real() - alpha.squaredNorm() - s.modes() * std::log(kPi);
  return std::norm(p) * std::exp(log_q);
}

double husimi_density(const StellarState &s, const CVec &alpha) {
  double n = norm_squared(s);
  if (std::abs(n - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "husimi_density needs a normalized state, norm_squared = " << n;
    throw ValidationError(os.str());
  }
  return husimi_unnormalized(s, alpha);
}

FockArray fock_expand(const StellarState &s, int cutoff) {
  const int m = s.modes();
  FockArray out = FockArray::zeros(m, cutoff);
  const FockBasis &basis = *out.basis;
  const CMat &A = s.gauss().A;
  const CVec &B = s.gauss().B;

  // Gaussian amplitudes g_n = sqrt(n!) [z^n] exp(-1/2 z^T A z + B^T z).
  std::vector<cplx> g(basis.size());
  g[0] = 1.0;
  MultiIndex nk(m), nj(m);
  for (size_t i = 1; i < basis.size(); ++i) {
    const MultiIndex &n = basis.at(i);
    int k = 0;
    while (n[k] == 0) ++k;
    nk = n;
    nk[k] -= 1;
    double sk = std::sqrt(static_cast<double>(n[k]));
    cplx v = B[k] * g[basis.find(nk)];
    for (int j = 0; j < m; ++j) {
      if (nk[j] == 0 || A(k, j) == cplx(0.0)) continue;
      nj = nk;
      nj[j] -= 1;
      v -= A(k, j) * g[basis.find(nj)] * std::sqrt(static_cast<double>(nk[j]));
    }
    g[i] = v / sk;
  }

  const cplx eC = std::exp(s.gauss().C);
  MultiIndex d(m);
  for (size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex &n = basis.at(i);
    double lf = log_factorial(n);
    cplx v = 0.0;
    for (auto &[p, c] : s.poly().terms()) {
      bool ok = true;
      for (int k = 0; k < m; ++k) {
        d[k] = n[k] - p[k];
        if (d[k] < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      size_t j = basis.find(d);
      v += c * g[j] * std::exp(0.5 * (lf - log_factorial(d)));
    }
    out.amp[i] = v * eC;
  }
  return out;
}

namespace {

// Index of the shell at which the expansion may stop, or -1.
int stop_shell(const FockArray &a, int degree) {
  std::vector<double> shell(a.cutoff + 1, 0.0);
  for (int s = 0; s <= a.cutoff; ++s) {
    for (size_t i = a.basis->shell_begin(s); i < a.basis->shell_end(s); ++i) {
      shell[s] += std::norm(a.amp[i]);
    }
  }
  double total = 0.0;
  for (int s = 0; s <= a.cutoff; ++s) {
    total += shell[s];
    if (s < std::max(degree + 2, 3)) continue;
    double pair = shell[s] + shell[s - 1];
    double prev = shell[s - 2] + shell[s - 3];
    if (pair < kTailTolerance * total && pair <= prev) return s;
  }
  return -1;
}

// Few-mode expansions are cheap, so they get a larger budget than the
// default; strongly squeezed states (|a| near 1) need it.
int max_cutoff_for(int modes, int ceiling) {
  switch (modes) {
    case 1: return std::max(ceiling, 20000);
    case 2: return std::max(ceiling, 200);
    case 3: return std::max(ceiling, 80);
    default: return std::min(ceiling, 63);
  }
}

}  // namespace

NormResult norm_squared_detail(const StellarState &s, int ceiling) {
  const int deg = std::max(stellar_rank(s), 0);
  const int top = max_cutoff_for(s.modes(), ceiling);
  int c = std::min(top, std::max(deg + 12, 20));
  while (true) {
    FockArray a = fock_expand(s, c);
    int st = stop_shell(a, deg);
    if (st >= 0 || c >= top) {
      NormResult r;
      r.value = a.captured_norm();
      r.cutoff = c;
      r.converged = st >= 0;
      if (!r.converged) {
        std::ostringstream os;
        os << "Fock expansion hit the cutoff ceiling " << top << " before the tail bound";
        warn(os.str());
      }
      return r;
    }
    c = std::min(top, c + c / 2 + 8);
  }
}

double norm_squared(const StellarState &s, int ceiling) {
  return norm_squared_detail(s, ceiling).value;
}

double gaussian_norm_squared(const GaussPart &g) {
  const int m = g.modes();
  RMat K(2 * m, 2 * m);
  RMat R = g.A.real(), I = g.A.imag();
  RMat Id = RMat::Identity(m, m);
  K << Id + R, I, I, Id - R;
  K *= 2.0;
  RVec h(2 * m);
  h << g.B.real(), g.B.imag();
  h *= 2.0;
  Eigen::LLT<RMat> llt(K);
  if (llt.info() != Eigen::Success) throw ValidationError("Gaussian part is not normalizable");
  double logdet = 0.0;
  for (int i = 0; i < 2 * m; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  double quad = h.dot(llt.solve(h));
  return std::exp(2.0 * g.C.real() + m * std::log(2.0) - 0.5 * logdet + 0.5 * quad);
}

StellarState normalized(const StellarState &s, int ceiling) {
  double n = norm_squared(s, ceiling);
  return s.scaled(-0.5 * std::log(n));
}

cplx inner_product(const StellarState &s1, const StellarState &s2, int ceiling) {
  if (s1.modes() != s2.modes()) throw ValidationError("mode count mismatch");
  int c = std::max(norm_squared_detail(s1, ceiling).cutoff, norm_squared_detail(s2, ceiling).cutoff);
  return fock_inner(fock_expand(s1, c), fock_expand(s2, c));
}

double normalized_overlap(const StellarState &s1, const StellarState &s2, int ceiling) {
  if (s1.modes() != s2.modes()) throw ValidationError("mode count mismatch");
  int c = std::max(norm_squared_detail(s1, ceiling).cutoff, norm_squared_detail(s2, ceiling).cutoff);
  return fock_overlap(fock_expand(s1, c), fock_expand(s2, c));
}

StellarState from_zeros(const std::vector<cplx> &zeros, cplx a, cplx b, cplx c) {
  if (!(std::abs(a) < 1.0 - kAdmissibilityMargin)) {
    throw ValidationError("inadmissible quadratic coefficient a");
  }
  std::vector<cplx> coef{1.0};
  for (cplx r : zeros) {
    std::vector<cplx> next(coef.size() + 1, 0.0);
    for (size_t j = 0; j < coef.size(); ++j) {
      next[j + 1] += coef[j];
      next[j] -= r * coef[j];
    }
    coef = std::move(next);
  }
  Poly p(1);
  for (size_t j = 0; j < coef.size(); ++j) p.add_term({static_cast<int>(j)}, coef[j]);
  GaussPart g = GaussPart::zero(1);
  g.A(0, 0) = a;
  g.B(0) = b;
  g.C = c;
  return StellarState(p, g);
}

std::vector<cplx> zeros_of(const StellarState &s) {
  if (s.modes() != 1) throw ValidationError("zeros_of needs a single-mode state");
  const int n = stellar_rank(s);
  if (n < 1) throw ValidationError("rank-0 state has no zeros");
  std::vector<cplx> c(n + 1);
  for (int j = 0; j <= n; ++j) c[j] = s.poly().coeff({j});
  CMat comp = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int j = 0; j < n; ++j) comp(j, n - 1) = -c[j] / c[n];
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  // Newton polish on the original coefficients.
  for (cplx &r : roots) {
    for (int it = 0; it < 3; ++it) {
      cplx p = c[n], dp = 0.0;
      for (int j = n - 1; j >= 0; --j) {
        dp = dp * r + p;
        p = p * r + c[j];
      }
      if (dp == cplx(0.0)) break;
      cplx step = p / dp;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-6 * (1.0 + std::abs(r))) break;
      r -= step;
    }
  }
  return roots;
}

int stellar_rank(const StellarState &s) { return std::max(s.poly().degree(), 0); }

StellarState tensor(const StellarState &s1, const StellarState &s2) {
  const int m1 = s1.modes(), m2 = s2.modes();
  GaussPart g = GaussPart::zero(m1 + m2);
  g.A.topLeftCorner(m1, m1) = s1.gauss().A;
  g.A.bottomRightCorner(m2, m2) = s2.gauss().A;
  g.B.head(m1) = s1.gauss().B;
  g.B.tail(m2) = s2.gauss().B;
  g.C = s1.gauss().C + s2.gauss().C;
  return StellarState(s1.poly().tensor(s2.poly()), g);
}

FockArray to_fock_array(const StellarState &s, int cutoff, int ceiling) {
  if (cutoff < 0) throw ValidationError("negative cutoff");
  FockArray a = fock_expand(s, cutoff);
  NormResult n = norm_squared_detail(s, std::max(ceiling, cutoff));
  double full = std::max(n.value, a.captured_norm());
  a.truncation_loss = full > 0 ? 1.0 - a.captured_norm() / full : 0.0;
  if (a.truncation_loss > 1e-8) {
    std::ostringstream os;
    os << "cutoff " << cutoff << " leaves truncation loss " << a.truncation_loss;
    warn(os.str());
  }
  return a;
}

HusimiGaussian husimi_gaussian(const GaussPart &g) {
  const int m = g.modes();
  RMat K(2 * m, 2 * m);
  RMat R = g.A.real(), I = g.A.imag();
  RMat Id = RMat::Identity(m, m);
  K << Id + R, I, I, Id - R;
  K *= 2.0;
  RVec h(2 * m);
  h << g.B.real(), g.B.imag();
  h *= 2.0;
  HusimiGaussian out;
  out.Sigma = K.inverse();
  out.Sigma = (0.5 * (out.Sigma + out.Sigma.transpose())).eval();
  out.mu = out.Sigma * h;
  return out;
}

}  // namespace hqc
