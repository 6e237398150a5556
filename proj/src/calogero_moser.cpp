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

#include "hqc/calogero_moser.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hqc/linalg.hpp"

namespace hqc {

CMRegime cm_regime(cplx omega2) {
  const double tol = 1e-14;
  if (std::abs(omega2) <= tol) return CMRegime::Isolated;
  if (std::abs(omega2.imag()) > tol * std::max(1.0, std::abs(omega2))) return CMRegime::Complex;
  return omega2.real() > 0 ? CMRegime::Harmonic : CMRegime::Hyperbolic;
}

double min_pairwise_distance(const CVec &q) {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < q.size(); ++i) {
    for (int j = i + 1; j < q.size(); ++j) d = std::min(d, std::abs(q[i] - q[j]));
  }
  return d;
}

void check_cm_system(const CMSystem &sys) {
  if (sys.size() < 1) throw ValidationError("CM system needs at least one particle");
  if (sys.p0.size() != sys.q0.size()) throw ValidationError("q0 and p0 lengths differ");
  if (min_pairwise_distance(sys.q0) < kCollide) {
    throw ValidationError("initial positions closer than the collision threshold");
  }
}

static CMat initial_lax(const CVec &q0, const CVec &p0, cplx g) {
  const int n = static_cast<int>(q0.size());
  CMat L(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) L(j, k) = j == k ? p0[j] : kI * g / (q0[j] - q0[k]);
  }
  return L;
}

CMat cm_lambda(const CVec &q0, const CVec &p0, cplx g, cplx omega2, double t) {
  CMat Lam = cos_sqrt(omega2, t) * CMat(q0.asDiagonal());
  Lam += sinc_sqrt(omega2, t) * initial_lax(q0, p0, g);
  return Lam;
}

std::vector<CVec> track_eigenvalues(const std::function<CMat(double)> &M, const CVec &start,
                                    const std::vector<double> &times) {
  const int n = static_cast<int>(start.size());
  std::vector<CVec> out(times.size());

  // Moves `cur` from t0 to t1, refining the step when the assignment is
  // not clearly separated.
  auto advance = [&](CVec &cur, double t0, double t1) {
    std::vector<std::pair<double, int>> stack{{t1, 0}};
    double tc = t0;
    while (!stack.empty()) {
      auto [tn, depth] = stack.back();
      std::vector<cplx> ev = eigenvalues(M(tn));
      RMat cost(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) cost(i, j) = std::norm(ev[j] - cur[i]);
      }
      std::vector<int> asg = min_cost_assignment(cost);
      double move = 0.0;
      for (int i = 0; i < n; ++i) move = std::max(move, std::abs(ev[asg[i]] - cur[i]));
      double gap = n > 1 ? min_pairwise_distance(cur) : std::numeric_limits<double>::infinity();
      if (move < 0.5 * gap || depth > 50) {
        if (depth > 50) warn("eigenvalue tracking could not separate a near-collision");
        for (int i = 0; i < n; ++i) cur[i] = ev[asg[i]];
        tc = tn;
        stack.pop_back();
      } else {
        stack.back().second = depth + 1;
        stack.push_back({0.5 * (tc + tn), depth + 1});
      }
    }
  };

  std::vector<size_t> order(times.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<size_t> pos, neg;
  for (size_t i : order) (times[i] >= 0 ? pos : neg).push_back(i);
  std::sort(pos.begin(), pos.end(), [&](size_t a, size_t b) { return times[a] < times[b]; });
  std::sort(neg.begin(), neg.end(), [&](size_t a, size_t b) { return times[a] > times[b]; });
  for (auto *branch : {&pos, &neg}) {
    CVec cur = start;
    double tc = 0.0;
    for (size_t i : *branch) {
      if (times[i] != tc) advance(cur, tc, times[i]);
      tc = times[i];
      out[i] = cur;
    }
  }
  return out;
}

std::vector<CMPoint> cm_trajectory(const CMSystem &sys, const std::vector<double> &times) {
  check_cm_system(sys);
  const int n = sys.size();
  const cplx w2 = sys.omega2();
  auto lam = [&](double t) { return cm_lambda(sys.q0, sys.p0, sys.g, w2, t); };
  std::vector<CVec> qs = track_eigenvalues(lam, sys.q0, times);
  CMat L0 = initial_lax(sys.q0, sys.p0, sys.g);
  CMat Q0 = sys.q0.asDiagonal();
  std::vector<CMPoint> out(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    double t = times[i];
    CMat Lam = lam(t);
    // d/dt Lambda = -omega^2 S Q0 + C L0
    CMat dLam = -w2 * sinc_sqrt(w2, t) * Q0 + cos_sqrt(w2, t) * L0;
    Eigen::ComplexEigenSolver<CMat> es(Lam);
    CMat V = es.eigenvectors();
    CMat D = V.partialPivLu().solve(dLam * V);
    RMat cost(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) cost(a, b) = std::norm(es.eigenvalues()[b] - qs[i][a]);
    }
    std::vector<int> asg = min_cost_assignment(cost);
    out[i].q = qs[i];
    out[i].p.resize(n);
    for (int a = 0; a < n; ++a) out[i].p[a] = D(asg[a], asg[a]);
  }
  return out;
}

CVec cm_solve(const CMSystem &sys, double t) { return cm_trajectory(sys, {t})[0].q; }

CMPoint cm_solve_point(const CMSystem &sys, double t) { return cm_trajectory(sys, {t})[0]; }

namespace {

void cm_rhs(const CVec &q, const CVec &p, cplx g, cplx w2, CVec &dq, CVec &dp) {
  const int n = static_cast<int>(q.size());
  dq = p;
  dp = -w2 * q;
  const cplx g2 = 2.0 * g * g;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      cplx d = q[k] - q[j];
      dp[k] += g2 / (d * d * d);
    }
  }
}

void rk4_step(CVec &q, CVec &p, cplx g, cplx w2, double h) {
  CVec k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
  cm_rhs(q, p, g, w2, k1q, k1p);
  cm_rhs(q + 0.5 * h * k1q, p + 0.5 * h * k1p, g, w2, k2q, k2p);
  cm_rhs(q + 0.5 * h * k2q, p + 0.5 * h * k2p, g, w2, k3q, k3p);
  cm_rhs(q + h * k3q, p + h * k3p, g, w2, k4q, k4p);
  q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
}

}  // namespace

std::vector<CMPoint> cm_ode_trajectory(const CMSystem &sys, const std::vector<double> &times,
                                       double dt) {
  check_cm_system(sys);
  if (!(dt > 0)) throw ValidationError("dt must be positive");
  const cplx w2 = sys.omega2();
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < times.size(); ++i) (times[i] >= 0 ? pos : neg).push_back(i);
  std::sort(pos.begin(), pos.end(), [&](size_t a, size_t b) { return times[a] < times[b]; });
  std::sort(neg.begin(), neg.end(), [&](size_t a, size_t b) { return times[a] > times[b]; });
  std::vector<CMPoint> out(times.size());
  for (auto *branch : {&pos, &neg}) {
    CVec q = sys.q0, p = sys.p0;
    double tc = 0.0;
    for (size_t i : *branch) {
      double span = times[i] - tc;
      int steps = static_cast<int>(std::ceil(std::abs(span) / dt - 1e-9));
      double h = steps ? span / steps : 0.0;
      for (int s = 0; s < steps; ++s) {
        // Close approaches shorten the local time scale like d^2; refine the
        // nominal step accordingly.
        int sub = 1;
        if (sys.size() > 1) {
          const double d = min_pairwise_distance(q);
          sub = static_cast<int>(std::min(4096.0, std::ceil(std::pow(0.5 / d, 2))));
          sub = std::max(sub, 1);
        }
        for (int k = 0; k < sub; ++k) rk4_step(q, p, sys.g, w2, h / sub);
        if (!q.allFinite() || !p.allFinite()) throw NumericError("CM integration diverged");
        if (sys.size() > 1 && min_pairwise_distance(q) < kCollide) {
          std::ostringstream os;
          os << "CM collision near t = " << tc + (s + 1) * h;
          throw NumericError(os.str());
        }
      }
      tc = times[i];
      out[i] = {q, p};
    }
  }
  return out;
}

CVec cm_ode(const CMSystem &sys, double t, double dt) { return cm_ode_trajectory(sys, {t}, dt)[0].q; }

LaxPair lax_matrices(const CVec &q, const CVec &p, cplx g) {
  const int n = static_cast<int>(q.size());
  if (p.size() != n) throw ValidationError("q and p lengths differ");
  if (n > 1 && min_pairwise_distance(q) < kCollide) throw ValidationError("coincident positions");
  LaxPair lp;
  lp.L = initial_lax(q, p, g);
  lp.M = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        cplx s = 0.0;
        for (int l = 0; l < n; ++l) {
          if (l != j) s += 1.0 / ((q[j] - q[l]) * (q[j] - q[l]));
        }
        lp.M(j, k) = g * s;
      } else {
        lp.M(j, k) = -g / ((q[j] - q[k]) * (q[j] - q[k]));
      }
    }
  }
  return lp;
}

CMat lax_shifted_product(const CVec &q, const CVec &p, cplx g, cplx omega) {
  CMat L = lax_matrices(q, p, g).L;
  CMat Q = q.asDiagonal();
  return (L + kI * omega * Q) * (L - kI * omega * Q);
}

cplx cm_energy(const CVec &q, const CVec &p, cplx g, cplx omega2) {
  const int n = static_cast<int>(q.size());
  cplx h = 0.0;
  for (int k = 0; k < n; ++k) {
    h += 0.5 * (p[k] * p[k] + omega2 * q[k] * q[k]);
    for (int j = 0; j < n; ++j) {
      if (j != k) h += 0.5 * g * g / ((q[k] - q[j]) * (q[k] - q[j]));
    }
  }
  return h;
}

double cm_energy_scale(const CVec &q, const CVec &p, cplx g, cplx omega2) {
  const int n = static_cast<int>(q.size());
  double h = 0.0;
  for (int k = 0; k < n; ++k) {
    h += 0.5 * (std::norm(p[k]) + std::abs(omega2) * std::norm(q[k]));
    for (int j = 0; j < n; ++j) {
      if (j != k) h += 0.5 * std::norm(g) / std::norm(q[k] - q[j]);
    }
  }
  return h;
}

namespace {

// Least-squares fit of y(t) = slope t + offset + c / t. The 1/t term is the
// leading correction from the inverse-square tail, so the offset converges
// like 1/T^2 rather than 1/T.
void asymptote_fit(const std::vector<double> &t, const std::vector<cplx> &y, cplx &slope,
                   cplx &offset, double &resid) {
  const int n = static_cast<int>(t.size());
  RMat X(n, 3);
  CVec Y(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = t[i];
    X(i, 1) = 1.0;
    X(i, 2) = 1.0 / t[i];
    Y[i] = y[i];
  }
  const CMat Xc = X.cast<cplx>();
  const CVec c = Xc.colPivHouseholderQr().solve(Y);
  slope = c[0];
  offset = c[1];
  resid = (Xc * c - Y).cwiseAbs().maxCoeff();
}

}  // namespace

Scattering scattering_permutation(const CMSystem &sys, double T) {
  check_cm_system(sys);
  if (cm_regime(sys.omega2()) != CMRegime::Isolated) {
    throw ValidationError("scattering needs the isolated regime (omega = 0)");
  }
  const int n = sys.size();
  const int samples = 21;
  double pmax = 1.0;
  {
    std::vector<cplx> ev = eigenvalues(initial_lax(sys.q0, sys.p0, sys.g));
    for (cplx v : ev) pmax = std::max(pmax, std::abs(v));
  }
  Scattering sc;
  for (int attempt = 0; attempt < 40; ++attempt, T *= 2.0) {
    std::vector<double> times;
    for (int i = 0; i < samples; ++i) times.push_back(T * (0.8 + 0.2 * i / (samples - 1)));
    for (int i = 0; i < samples; ++i) times.push_back(-T * (0.8 + 0.2 * i / (samples - 1)));
    std::vector<CMPoint> tr = cm_trajectory(sys, times);
    std::vector<double> tp(times.begin(), times.begin() + samples);
    std::vector<double> tn(times.begin() + samples, times.end());
    sc.p_plus.resize(n);
    sc.q_plus.resize(n);
    sc.p_minus.resize(n);
    sc.q_minus.resize(n);
    double resid = 0.0;
    for (int k = 0; k < n; ++k) {
      std::vector<cplx> yp, yn;
      for (int i = 0; i < samples; ++i) yp.push_back(tr[i].q[k]);
      for (int i = 0; i < samples; ++i) yn.push_back(tr[samples + i].q[k]);
      double r1, r2;
      asymptote_fit(tp, yp, sc.p_plus[k], sc.q_plus[k], r1);
      asymptote_fit(tn, yn, sc.p_minus[k], sc.q_minus[k], r2);
      resid = std::max({resid, r1, r2});
    }
    double pot = 0.0;
    for (const CMPoint *pt : {&tr[samples - 1], &tr[2 * samples - 1]}) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j != k) s += std::norm(sys.g) / std::norm(pt->q[k] - pt->q[j]);
        }
        pot = std::max(pot, s);
      }
    }
    sc.T = T;
    sc.residual = resid;
    if (resid <= 1e-4 * pmax * T && pot <= 1e-8 * pmax * pmax) break;
    if (attempt == 39) throw NumericError("scattering fit did not converge");
  }
  RMat cost(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      cost(k, j) = std::norm(sc.p_plus[k] - sc.p_minus[j]) + std::norm(sc.q_plus[k] - sc.q_minus[j]);
    }
  }
  sc.sigma = min_cost_assignment(cost);
  return sc;
}

int longest_cycle(const std::vector<int> &perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    best = std::max(best, len);
  }
  return best;
}

}  // namespace hqc
