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

#include "hqc/table3.hpp"

#include <chrono>
#include <functional>

#include "hqc/fock_oracle.hpp"
#include "hqc/multimode.hpp"
#include "hqc/permanent.hpp"
#include "hqc/philox.hpp"
#include "hqc/sampling.hpp"

namespace hqc {

const char *architecture_name(Architecture a) {
  switch (a) {
    case Architecture::CoherentCV: return "coherent-in/CV-out";
    case Architecture::GaussianDV: return "gaussian-in/DV-out";
    case Architecture::FockCV: return "fock-in/CV-out";
    case Architecture::FockDV: return "fock-in/DV-out";
  }
  return "?";
}

Architecture parse_architecture(const std::string &s) {
  for (Architecture a : all_architectures()) {
    if (s == architecture_name(a)) return a;
  }
  throw ValidationError("unknown architecture '" + s + "'");
}

std::vector<Architecture> all_architectures() {
  return {Architecture::CoherentCV, Architecture::GaussianDV, Architecture::FockCV,
          Architecture::FockDV};
}

CMat haar_unitary(int m, uint64_t seed) {
  ShotRng rng(seed, 0);
  CMat Z(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) Z(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<CMat> qr(Z);
  CMat Q = qr.householderQ();
  CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) Q.col(j) *= R(j, j) / std::abs(R(j, j));
  return Q;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// All occupation patterns of m modes with total n.
void patterns(int m, int n, MultiIndex &cur, int k, std::vector<MultiIndex> &out) {
  if (k == m - 1) {
    cur[k] = n;
    out.push_back(cur);
    return;
  }
  for (int j = n; j >= 0; --j) {
    cur[k] = j;
    patterns(m, n - j, cur, k + 1, out);
  }
}

std::vector<MultiIndex> patterns(int m, int n) {
  std::vector<MultiIndex> out;
  MultiIndex cur(m, 0);
  patterns(m, n, cur, 0, out);
  return out;
}

// Heterodyne density of a Fock array at alpha: |<alpha|psi>|^2 / pi^m.
double oracle_husimi(const FockArray &x, const CVec &alpha) {
  cplx amp = 0.0;
  for (size_t i = 0; i < x.amp.size(); ++i) {
    if (x.amp[i] == cplx(0.0)) continue;
    const MultiIndex &n = x.basis->at(i);
    cplx t = x.amp[i];
    for (int k = 0; k < x.modes; ++k) {
      t *= std::pow(std::conj(alpha[k]), n[k]) / std::exp(0.5 * std::lgamma(n[k] + 1.0));
    }
    amp += t;
  }
  return std::norm(amp) * std::exp(-alpha.squaredNorm()) / std::pow(kPi, x.modes);
}

std::vector<CVec> probe_points(int m) {
  std::vector<CVec> pts;
  for (int p = 0; p < 3; ++p) {
    CVec a(m);
    for (int k = 0; k < m; ++k) a[k] = std::polar(0.3 + 0.25 * p, 0.7 * k + 1.1 * p);
    pts.push_back(a);
  }
  return pts;
}

std::string label_of(const char *what, const MultiIndex &n) {
  std::string s = std::string(what) + "(";
  for (size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

}  // namespace

Table3Report table3_demo(Architecture arch, int m, int photons) {
  if (m < 2 || m > 5) throw ValidationError("table3 instances need 2 <= modes <= 5");
  if (photons < 1 || photons > 3 || photons > m) {
    throw ValidationError("table3 instances need 1 <= photons <= min(3, modes)");
  }
  Table3Report rep;
  rep.arch = arch;
  rep.modes = m;
  rep.photons = photons;
  const CMat U = haar_unitary(m, 20260 + m);
  const int N = kTable3OracleCutoff;
  std::vector<double> eff, brute;
  std::vector<std::string> labels;

  auto t_eff = Clock::now();
  double s_eff = 0.0, s_brute = 0.0;

  switch (arch) {
    case Architecture::CoherentCV: {
      CVec beta(m);
      for (int k = 0; k < m; ++k) beta[k] = std::polar(0.5 + 0.1 * k, 0.9 * k);
      // Coherent products stay coherent products: beta' = U^T beta.
      t_eff = Clock::now();
      const CVec out = U.transpose() * beta;
      for (const CVec &a : probe_points(m)) {
        eff.push_back(std::exp(-(a - out).squaredNorm()) / std::pow(kPi, m));
        labels.push_back("density");
      }
      for (int n = 0; n <= photons; ++n) {
        for (const MultiIndex &pat : patterns(m, n)) {
          double p = 1.0;
          for (int k = 0; k < m; ++k) {
            const double mu = std::norm(out[k]);
            p *= std::exp(-mu + pat[k] * std::log(mu) - std::lgamma(pat[k] + 1.0));
          }
          eff.push_back(p);
          labels.push_back(label_of("poisson", pat));
        }
      }
      s_eff = seconds_since(t_eff);
      auto t = Clock::now();
      FockArray x = oracle_apply_all(fock_vacuum(m, N), {Gate::displace(beta), Gate::passive(U)});
      for (const CVec &a : probe_points(m)) brute.push_back(oracle_husimi(x, a));
      for (int n = 0; n <= photons; ++n) {
        for (const MultiIndex &pat : patterns(m, n)) brute.push_back(std::norm(x.get(pat)));
      }
      s_brute = seconds_since(t);
      break;
    }
    case Architecture::GaussianDV: {
      std::vector<Gate> gates;
      for (int k = 0; k < m; ++k) gates.push_back(Gate::squeeze(k, std::polar(0.45 - 0.1 * k, 0.5 * k)));
      gates.push_back(Gate::passive(U));
      t_eff = Clock::now();
      StellarState s = apply_gaussian(StellarState::vacuum(m), gates);
      FockArray f = fock_expand(s, 2 * photons);
      for (int n = 0; n <= 2 * photons; n += 1) {
        for (const MultiIndex &pat : patterns(m, n)) {
          eff.push_back(std::norm(f.get(pat)));
          labels.push_back(label_of("prob", pat));
        }
      }
      // Gaussian heterodyne density in closed form.
      HusimiGaussian hg = husimi_gaussian(s.gauss());
      const double norm = gaussian_norm_squared(s.gauss());
      Eigen::LLT<RMat> llt(hg.Sigma);
      double logdet = 0.0;
      for (int i = 0; i < 2 * m; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
      for (const CVec &a : probe_points(m)) {
        RVec x(2 * m);
        x << a.real(), a.imag();
        RVec d = x - hg.mu;
        eff.push_back(norm * std::exp(-0.5 * d.dot(llt.solve(d)) - 0.5 * logdet) /
                      std::pow(2.0 * kPi, m));
        labels.push_back("gaussian-density");
      }
      s_eff = seconds_since(t_eff);
      auto t = Clock::now();
      FockArray x = oracle_apply_all(fock_vacuum(m, N), gates);
      for (int n = 0; n <= 2 * photons; n += 1) {
        for (const MultiIndex &pat : patterns(m, n)) brute.push_back(std::norm(x.get(pat)));
      }
      for (const CVec &a : probe_points(m)) brute.push_back(oracle_husimi(x, a));
      s_brute = seconds_since(t);
      break;
    }
    case Architecture::FockCV:
    case Architecture::FockDV: {
      MultiIndex in(m, 0);
      for (int k = 0; k < photons; ++k) in[k] = 1;
      t_eff = Clock::now();
      if (arch == Architecture::FockCV) {
        StellarState s = apply_passive(from_fock_superposition({{in, 1.0}}, m), U);
        for (const CVec &a : probe_points(m)) {
          eff.push_back(husimi_unnormalized(s, a));
          labels.push_back("density");
        }
      } else {
        for (const MultiIndex &pat : patterns(m, photons)) {
          eff.push_back(boson_sampling_prob(U, in, pat));
          labels.push_back(label_of("perm", pat));
        }
      }
      s_eff = seconds_since(t_eff);
      auto t = Clock::now();
      FockArray x = oracle_apply(fock_from_amplitudes({{in, 1.0}}, m, N), Gate::passive(U));
      if (arch == Architecture::FockCV) {
        for (const CVec &a : probe_points(m)) brute.push_back(oracle_husimi(x, a));
      } else {
        for (const MultiIndex &pat : patterns(m, photons)) brute.push_back(std::norm(x.get(pat)));
      }
      s_brute = seconds_since(t);
      break;
    }
  }
  rep.seconds_efficient = s_eff;
  rep.seconds_brute = s_brute;
  for (size_t i = 0; i < eff.size(); ++i) {
    rep.checks.push_back({labels[i], eff[i], brute[i]});
    rep.max_diff = std::max(rep.max_diff, rep.checks.back().diff());
  }
  rep.pass = rep.max_diff <= kTable3Tolerance;
  return rep;
}

Json table3_to_json(const Table3Report &r) {
  Json checks = Json::array();
  for (const auto &c : r.checks) {
    checks.push_back(Json{{"label", c.label}, {"efficient", c.efficient}, {"brute", c.brute},
                          {"abs_diff", c.diff()}});
  }
  return Json{{"architecture", architecture_name(r.arch)},
              {"modes", r.modes},
              {"photons", r.photons},
              {"tolerance", kTable3Tolerance},
              {"max_abs_diff", r.max_diff},
              {"pass", r.pass},
              {"checks", checks}};
}

}  // namespace hqc
