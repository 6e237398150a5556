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

#include "hqc/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hqc {

Gate Gate::passive(const CMat &U) {
  Gate g;
  g.kind = Kind::Passive;
  g.U = U;
  return g;
}

Gate Gate::displace(const CVec &beta) {
  Gate g;
  g.kind = Kind::Displace;
  g.beta = beta;
  return g;
}

Gate Gate::displace_mode(int modes, int k, cplx alpha) {
  CVec b = CVec::Zero(modes);
  b[k] = alpha;
  Gate g = displace(b);
  g.mode = k;
  return g;
}

Gate Gate::squeeze(int k, cplx xi) {
  Gate g;
  g.kind = Kind::Squeeze;
  g.mode = k;
  g.param = xi;
  return g;
}

Gate Gate::shear(int k, double s) {
  Gate g;
  g.kind = Kind::Shear;
  g.mode = k;
  g.param = s;
  return g;
}

Gate Gate::phase(int k, double phi) {
  Gate g;
  g.kind = Kind::Phase;
  g.mode = k;
  g.param = phi;
  return g;
}

Gate Gate::create(int k) {
  Gate g;
  g.kind = Kind::Create;
  g.mode = k;
  return g;
}

const char *gate_kind_name(Gate::Kind k) {
  switch (k) {
    case Gate::Kind::Passive: return "passive";
    case Gate::Kind::Displace: return "displace";
    case Gate::Kind::Squeeze: return "squeeze";
    case Gate::Kind::Shear: return "shear";
    case Gate::Kind::Phase: return "phase";
    case Gate::Kind::Create: return "create";
  }
  return "?";
}

Gate gate_from_drive(Gate::Kind kind, int modes, int k, cplx drive, double t) {
  switch (kind) {
    case Gate::Kind::Displace: return Gate::displace_mode(modes, k, drive * t);
    case Gate::Kind::Squeeze: return Gate::squeeze(k, drive * t);
    case Gate::Kind::Phase: return Gate::phase(k, drive.real() * t);
    case Gate::Kind::Shear: return Gate::shear(k, drive.real() * t);
    default: throw ValidationError("gate kind has no drive form");
  }
}

ShearFactors shear_factors(double s) {
  const double arg = std::arg(cplx(1.0, s));
  const double r = std::asinh(s);
  const double theta = 0.5 * kPi - arg;
  return {arg, std::polar(r, theta)};
}

static void check_mode(const StellarState &s, int k) {
  if (k < 0 || k >= s.modes()) throw ValidationError("mode index out of range");
}

StellarState apply_passive(const StellarState &s, const CMat &U) {
  if (U.rows() != s.modes() || !is_unitary(U)) {
    throw ValidationError("passive gate needs an m x m unitary matrix");
  }
  GaussPart g = s.gauss();
  g.A = U.transpose() * g.A * U;
  g.B = U.transpose() * g.B;
  return StellarState(s.poly().substitute_linear(U), g);
}

StellarState apply_displace(const StellarState &s, const CVec &beta) {
  if (beta.size() != s.modes()) throw ValidationError("displacement vector has wrong length");
  const CVec w = beta.conjugate();
  GaussPart g = s.gauss();
  const CVec Aw = g.A * w;
  g.C += -0.5 * (w.transpose() * Aw).value() -
         (g.B.transpose() * w).value() - 0.5 * beta.squaredNorm();
  g.B = g.B + Aw + beta;
  return StellarState(s.poly().shift(w), g);
}

Poly apply_mode_operator(const Poly &P, int k, cplx cz, cplx cd, const CMat &A, const CVec &B) {
  const int m = P.modes();
  // L = B_k - sum_j A_kj z_j, so that d/dz_k G = L G.
  Poly L = Poly::constant(m, B[k]);
  for (int j = 0; j < m; ++j) {
    if (A(k, j) != cplx(0.0)) L += Poly::variable(m, j) * (-A(k, j));
  }
  const int d = P.degree_in(k);
  if (d < 0) return P;
  Poly Q = P.slice(k, d);
  for (int j = d - 1; j >= 0; --j) {
    Poly XQ = Q.times_variable(k) * cz + (Q.derivative(k) + Q * L) * cd;
    Q = XQ + P.slice(k, j);
  }
  return Q.prune();
}

StellarState apply_squeeze_mode(const StellarState &s, int k, cplx xi) {
  check_mode(s, k);
  if (xi == cplx(0.0)) return s;
  const int m = s.modes();
  const double r = std::abs(xi);
  const double theta = std::arg(xi);
  const cplx eth = std::polar(1.0, theta);
  const GaussPart &g0 = s.gauss();
  // Section closed form on z_k at unit time.
  const cplx A0 = std::atanh(g0.A(k, k) / eth);
  const cplx chA = std::cosh(A0), chAr = std::cosh(A0 - r);
  const cplx kappa = chA / chAr;
  const cplx mu = 0.5 / eth * chA * chA * (std::tanh(A0) - std::tanh(A0 - r));

  GaussPart g = g0;
  g.A(k, k) = eth * std::tanh(A0 - r);
  for (int i = 0; i < m; ++i) {
    if (i == k) continue;
    for (int j = 0; j < m; ++j) {
      if (j == k) continue;
      g.A(i, j) = g0.A(i, j) + 2.0 * mu * g0.A(k, i) * g0.A(k, j);
    }
    g.A(k, i) = kappa * g0.A(k, i);
    g.A(i, k) = kappa * g0.A(i, k);
    g.B[i] = g0.B[i] + 2.0 * mu * g0.B[k] * g0.A(k, i);
  }
  g.B[k] = kappa * g0.B[k];
  g.C = g0.C + 0.5 * (std::log(chA) - std::log(chAr)) - mu * g0.B[k] * g0.B[k];

  Poly Q = apply_mode_operator(s.poly(), k, std::cosh(r), -std::sinh(r) / eth, g.A, g.B);
  return StellarState(Q, g);
}

StellarState apply_phase_mode(const StellarState &s, int k, double phi) {
  check_mode(s, k);
  const cplx e = std::polar(1.0, phi);
  GaussPart g = s.gauss();
  for (int j = 0; j < s.modes(); ++j) {
    g.A(k, j) *= e;
    g.A(j, k) *= e;
  }
  g.B[k] *= e;
  return StellarState(s.poly().scale_variable(k, e), g);
}

StellarState apply_shear_mode(const StellarState &s, int k, double sh) {
  check_mode(s, k);
  if (sh == 0.0) return s;
  ShearFactors f = shear_factors(sh);
  StellarState t = apply_phase_mode(apply_squeeze_mode(s, k, f.xi), k, f.phi);
  return t.scaled(0.5 * kI * f.phi);
}

StellarState apply_create(const StellarState &s, int k) {
  check_mode(s, k);
  return StellarState(s.poly().times_variable(k), s.gauss());
}

StellarState apply_gate(const StellarState &s, const Gate &g) {
  switch (g.kind) {
    case Gate::Kind::Passive: return apply_passive(s, g.U);
    case Gate::Kind::Displace: return apply_displace(s, g.beta);
    case Gate::Kind::Squeeze: return apply_squeeze_mode(s, g.mode, g.param);
    case Gate::Kind::Shear: return apply_shear_mode(s, g.mode, g.param.real());
    case Gate::Kind::Phase: return apply_phase_mode(s, g.mode, g.param.real());
    case Gate::Kind::Create: return apply_create(s, g.mode);
  }
  throw ValidationError("unknown gate kind");
}

StellarState apply_gaussian(const StellarState &s, const GaussianUnitarySpec &spec) {
  StellarState cur = s;
  for (const Gate &g : spec) {
    if (!g.gaussian()) throw ValidationError("creation operator in a Gaussian gate program");
    cur = apply_gate(cur, g);
  }
  return cur;
}

NormalDecomposition decompose_normal(const StellarState &s) {
  const int m = s.modes();
  NormalDecomposition d{s.poly(), {}, CVec::Zero(m), CVec::Zero(m), CMat::Identity(m, m)};
  Takagi tk = takagi(s.gauss().A);
  d.U = tk.W.transpose();
  CVec b = tk.W.adjoint() * s.gauss().B;
  for (int j = 0; j < m; ++j) {
    double sig = std::min(tk.sigma[j], 1.0 - kAdmissibilityMargin);
    d.xi[j] = -std::atanh(sig);
    d.beta[j] = b[j] / std::sqrt(1.0 - sig * sig);
  }
  d.spec.push_back(Gate::displace(d.beta));
  for (int j = 0; j < m; ++j) {
    if (d.xi[j] != cplx(0.0)) d.spec.push_back(Gate::squeeze(j, d.xi[j]));
  }
  d.spec.push_back(Gate::passive(d.U));
  return d;
}

StellarState reconstruct(const NormalDecomposition &d) {
  const int m = d.P.modes();
  StellarState g = apply_gaussian(StellarState::vacuum(m), d.spec);
  return StellarState(d.P * g.poly(), g.gauss());
}

GaussianUnitarySpec inverse_spec(const GaussianUnitarySpec &spec) {
  GaussianUnitarySpec inv;
  for (auto it = spec.rbegin(); it != spec.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case Gate::Kind::Passive: g.U = it->U.adjoint(); break;
      case Gate::Kind::Displace: g.beta = -it->beta; break;
      case Gate::Kind::Squeeze:
      case Gate::Kind::Shear:
      case Gate::Kind::Phase: g.param = -it->param; break;
      case Gate::Kind::Create: throw ValidationError("creation operator has no inverse");
    }
    inv.push_back(g);
  }
  return inv;
}

StellarState core_state_of(const StellarState &s) {
  NormalDecomposition d = decompose_normal(s);
  StellarState c = apply_gaussian(s, inverse_spec(d.spec));
  GaussPart g = c.gauss();
  const double resid = std::max(g.A.cwiseAbs().maxCoeff(), g.B.cwiseAbs().maxCoeff());
  if (resid > 1e-8) {
    std::ostringstream os;
    os << "core state retains a Gaussian residue of " << resid;
    throw NumericError(os.str());
  }
  // Fold the constant into the polynomial so the core form is exact.
  Poly P = c.poly() * std::exp(g.C);
  return StellarState(P, GaussPart::zero(s.modes()));
}

SchmidtForm schmidt_form(const StellarState &s, const std::vector<int> &I) {
  const int m = s.modes();
  SchmidtForm f;
  std::vector<int> side(m, 1);
  for (int i : I) {
    if (i < 0 || i >= m || side[i] == 0) throw ValidationError("invalid partition");
    side[i] = 0;
  }
  for (int k = 0; k < m; ++k) (side[k] == 0 ? f.I : f.J).push_back(k);
  if (f.I.empty() || f.J.empty()) throw ValidationError("partition sides must be non-empty");
  const int mi = static_cast<int>(f.I.size()), mj = static_cast<int>(f.J.size());

  std::map<MultiIndex, int> rows, cols;
  auto split = [&](const MultiIndex &n, MultiIndex &a, MultiIndex &b) {
    a.resize(mi);
    b.resize(mj);
    for (int i = 0; i < mi; ++i) a[i] = n[f.I[i]];
    for (int j = 0; j < mj; ++j) b[j] = n[f.J[j]];
  };
  MultiIndex a, b;
  for (auto &[n, c] : s.poly().terms()) {
    split(n, a, b);
    rows.emplace(a, 0);
    cols.emplace(b, 0);
  }
  int idx = 0;
  for (auto &kv : rows) kv.second = idx++;
  idx = 0;
  for (auto &kv : cols) kv.second = idx++;
  CMat M = CMat::Zero(rows.size(), cols.size());
  for (auto &[n, c] : s.poly().terms()) {
    split(n, a, b);
    M(rows[a], cols[b]) = c;
  }
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec &sv = svd.singularValues();
  const double cut = 1e-10 * sv(0);
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cut) break;
    f.coefficients.push_back(sv(i));
    Poly l(mi), rr(mj);
    for (auto &[key, r] : rows) l.add_term(key, svd.matrixU()(r, i));
    for (auto &[key, c] : cols) rr.add_term(key, std::conj(svd.matrixV()(c, i)));
    f.left.push_back(l.prune());
    f.right.push_back(rr.prune());
  }
  f.rank = static_cast<int>(f.coefficients.size());

  const GaussPart &g = s.gauss();
  bool cross = false;
  for (int i : f.I) {
    for (int j : f.J) {
      if (g.A(i, j) != cplx(0.0)) f.cross_terms[{i, j}] = -g.A(i, j);
      if (std::abs(g.A(i, j)) > 1e-12) cross = true;
    }
  }
  f.gauss_I = GaussPart::zero(mi);
  f.gauss_J = GaussPart::zero(mj);
  for (int i = 0; i < mi; ++i) {
    f.gauss_I.B[i] = g.B[f.I[i]];
    for (int k = 0; k < mi; ++k) f.gauss_I.A(i, k) = g.A(f.I[i], f.I[k]);
  }
  for (int j = 0; j < mj; ++j) {
    f.gauss_J.B[j] = g.B[f.J[j]];
    for (int k = 0; k < mj; ++k) f.gauss_J.A(j, k) = g.A(f.J[j], f.J[k]);
  }
  f.gauss_I.C = g.C;
  f.separable = f.rank == 1 && !cross;
  return f;
}

bool is_separable(const StellarState &s, const std::vector<int> &I) {
  return schmidt_form(s, I).separable;
}

}  // namespace hqc
