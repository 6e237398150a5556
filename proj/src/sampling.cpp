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

#include "hqc/sampling.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hqc/multimode.hpp"

namespace hqc {

void RejectionStats::merge(const RejectionStats &o) {
  proposals += o.proposals;
  accepted += o.accepted;
  envelope_violations += o.envelope_violations;
}

std::map<MultiIndex, double> fock_probabilities(const StellarState &s, int cutoff,
                                                double *captured) {
  FockArray a = to_fock_array(s, cutoff);
  std::map<MultiIndex, double> out;
  double total = 0.0;
  for (size_t i = 0; i < a.amp.size(); ++i) {
    const double p = std::norm(a.amp[i]);
    if (p > 0.0) out[a.basis->at(i)] = p;
    total += p;
  }
  if (captured) *captured = total;
  return out;
}

namespace {

std::vector<int> complement(int m, const std::vector<int> &modes) {
  std::vector<char> hit(m, 0);
  for (int k : modes) {
    if (k < 0 || k >= m || hit[k]) throw ValidationError("invalid or repeated measured mode");
    hit[k] = 1;
  }
  std::vector<int> keep;
  for (int k = 0; k < m; ++k) {
    if (!hit[k]) keep.push_back(k);
  }
  return keep;
}

struct Section {
  Poly P;
  GaussPart g;
};

Section coherent_section(const StellarState &s, const std::vector<int> &modes, const CVec &alphas) {
  if (static_cast<int>(modes.size()) != alphas.size()) {
    throw ValidationError("outcome vector does not match the mode list");
  }
  std::vector<int> keep = complement(s.modes(), modes);
  if (keep.empty()) throw ValidationError("projection of every mode; use coherent_amplitude");
  const GaussPart &g0 = s.gauss();
  const CVec w = alphas.conjugate();
  const int r = static_cast<int>(keep.size()), k = static_cast<int>(modes.size());
  GaussPart g = GaussPart::zero(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) g.A(i, j) = g0.A(keep[i], keep[j]);
    cplx b = g0.B[keep[i]];
    for (int j = 0; j < k; ++j) b -= g0.A(keep[i], modes[j]) * w[j];
    g.B[i] = b;
  }
  cplx c = g0.C - 0.5 * alphas.squaredNorm();
  for (int i = 0; i < k; ++i) {
    c += g0.B[modes[i]] * w[i];
    for (int j = 0; j < k; ++j) c -= 0.5 * w[i] * g0.A(modes[i], modes[j]) * w[j];
  }
  g.C = c;
  return {s.poly().restrict(modes, w), g};
}

}  // namespace

cplx coherent_amplitude(const StellarState &s, const CVec &alphas) {
  return evaluate(s, alphas.conjugate()) * std::exp(-0.5 * alphas.squaredNorm());
}

StellarState project_coherent(const StellarState &s, const std::vector<int> &modes,
                              const CVec &alphas) {
  Section sec = coherent_section(s, modes, alphas);
  if (sec.P.is_zero()) throw ValidationError("coherent projection vanishes identically");
  return StellarState(sec.P, sec.g);
}

double coherent_marginal(const StellarState &s, const std::vector<int> &modes,
                         const CVec &alphas) {
  const double pik = std::pow(kPi, static_cast<double>(modes.size()));
  if (static_cast<int>(modes.size()) == s.modes()) {
    complement(s.modes(), modes);
    CVec full = CVec::Zero(s.modes());
    for (size_t i = 0; i < modes.size(); ++i) full[modes[i]] = alphas[i];
    return std::norm(coherent_amplitude(s, full)) / pik;
  }
  Section sec = coherent_section(s, modes, alphas);
  if (sec.P.is_zero()) return 0.0;
  return norm_squared(StellarState(sec.P, sec.g)) / pik;
}

StellarState project_fock(const StellarState &s, int k, int n) {
  const int m = s.modes();
  if (k < 0 || k >= m) throw ValidationError("mode index out of range");
  if (n < 0) throw ValidationError("negative photon number");
  if (m == 1) throw ValidationError("projection of the last mode leaves no state");
  const GaussPart &g0 = s.gauss();
  // d/dz_k (Q G) = (dQ/dz_k + Q L) G with L = B_k - sum_j A_kj z_j.
  Poly L = Poly::constant(m, g0.B[k]);
  for (int j = 0; j < m; ++j) {
    if (g0.A(k, j) != cplx(0.0)) L += Poly::variable(m, j) * (-g0.A(k, j));
  }
  Poly Q = s.poly();
  for (int i = 0; i < n; ++i) Q = (Q.derivative(k) + Q * L).prune();
  CVec zero = CVec::Zero(1);
  Poly R = Q.restrict({k}, zero) * std::exp(-0.5 * std::lgamma(n + 1.0));
  if (R.is_zero()) throw ValidationError("zero-probability Fock outcome");
  std::vector<int> keep = complement(m, {k});
  GaussPart g = GaussPart::zero(m - 1);
  for (int i = 0; i < m - 1; ++i) {
    for (int j = 0; j < m - 1; ++j) g.A(i, j) = g0.A(keep[i], keep[j]);
    g.B[i] = g0.B[keep[i]];
  }
  g.C = g0.C;
  return StellarState(R, g);
}

void require_normalized(const StellarState &s) {
  const double n = norm_squared(s);
  if (std::abs(n - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "sampler needs a normalized state, norm_squared = " << n;
    throw ValidationError(os.str());
  }
}

ModeSampler::ModeSampler(const StellarState &s, int k, double safety) : state_(s), k_(k) {
  if (k < 0 || k >= s.modes()) throw ValidationError("mode index out of range");
  if (!(safety > 1.0)) throw ValidationError("rejection safety factor must exceed 1");
  const int m = s.modes();
  HusimiGaussian hg = husimi_gaussian(s.gauss());
  mu_ << hg.mu[k], hg.mu[m + k];
  Eigen::Matrix2d cov;
  cov << hg.Sigma(k, k), hg.Sigma(k, m + k), hg.Sigma(m + k, k), hg.Sigma(m + k, m + k);
  // Doubling the Gaussian-part covariance keeps the polynomial tails inside.
  cov *= 2.0;
  L_ = cov.llt().matrixL();
  detL_ = L_(0, 0) * L_(1, 1);

  double best = 0.0;
  auto probe = [&](double u0, double u1) {
    Eigen::Vector2d u(u0, u1);
    Eigen::Vector2d x = mu_ + L_ * u;
    best = std::max(best, density(cplx(x[0], x[1])) / proposal_pdf(u));
  };
  constexpr int kGrid = 41;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) probe(-5.0 + 10.0 * i / (kGrid - 1), -5.0 + 10.0 * j / (kGrid - 1));
  }
  // Tail scan beyond the grid.
  for (double rad : {5.5, 6.0, 7.0, 8.0, 10.0, 12.0}) {
    for (int a = 0; a < 64; ++a) {
      const double th = 2.0 * kPi * a / 64.0;
      probe(rad * std::cos(th), rad * std::sin(th));
    }
  }
  M_ = safety * best;
  if (!(M_ > 0.0) || !std::isfinite(M_)) throw NumericError("rejection envelope is degenerate");
  if (M_ > 1.0 / kMinAcceptance) {
    std::ostringstream os;
    os << "rejection envelope " << M_ << " implies acceptance below " << kMinAcceptance;
    throw NumericError(os.str());
  }
}

double ModeSampler::proposal_pdf(const Eigen::Vector2d &u) const {
  return std::exp(-0.5 * u.squaredNorm()) / (2.0 * kPi * detL_);
}

double ModeSampler::density(cplx alpha) const {
  CVec a(1);
  a[0] = alpha;
  if (state_.modes() == 1) return husimi_unnormalized(state_, a);
  return coherent_marginal(state_, {k_}, a);
}

cplx ModeSampler::draw(ShotRng &rng, RejectionStats &stats, double *dens) const {
  long local = 0;
  while (true) {
    Eigen::Vector2d u(rng.normal(), rng.normal());
    Eigen::Vector2d x = mu_ + L_ * u;
    const cplx alpha(x[0], x[1]);
    const double q = proposal_pdf(u);
    const double t = density(alpha);
    ++stats.proposals;
    ++local;
    if (t > M_ * q) ++stats.envelope_violations;
    if (rng.uniform() * M_ * q < t) {
      ++stats.accepted;
      if (dens) *dens = t;
      return alpha;
    }
    if (local > 100000) {
      throw NumericError("rejection sampler acceptance fell below the abort threshold");
    }
  }
}

DiscreteTable build_discrete_table(const StellarState &s, const std::vector<int> &modes,
                                   int cutoff) {
  complement(s.modes(), modes);
  if (modes.empty()) throw ValidationError("no measured modes");
  DiscreteTable t;
  t.cutoff = cutoff > 0 ? cutoff : norm_squared_detail(s).cutoff;
  FockArray a = to_fock_array(s, t.cutoff);
  if (a.truncation_loss > kNormTolerance) {
    std::ostringstream os;
    os << "discrete sampling cutoff " << t.cutoff << " loses " << a.truncation_loss
       << " of the norm";
    throw NumericError(os.str());
  }
  std::map<MultiIndex, double> marg;
  MultiIndex key(modes.size());
  for (size_t i = 0; i < a.amp.size(); ++i) {
    const double p = std::norm(a.amp[i]);
    if (p == 0.0) continue;
    for (size_t j = 0; j < modes.size(); ++j) key[j] = a.basis->at(i)[modes[j]];
    marg[key] += p;
  }
  double acc = 0.0;
  for (auto &[n, p] : marg) {
    acc += p;
    t.outcomes.push_back(n);
    t.cdf.push_back(acc);
  }
  t.captured = acc;
  return t;
}

MeasureResult measure_continuous(const StellarState &s, const std::vector<int> &modes,
                                 ShotRng &rng, RejectionStats &stats, double safety,
                                 const ModeSampler *first) {
  complement(s.modes(), modes);
  std::vector<int> alive(s.modes());
  for (int k = 0; k < s.modes(); ++k) alive[k] = k;
  MeasureResult res;
  res.weight = 1.0;
  StellarState cur = s;
  bool empty = false;
  for (size_t i = 0; i < modes.size(); ++i) {
    const int kk = static_cast<int>(std::find(alive.begin(), alive.end(), modes[i]) - alive.begin());
    double dens = 0.0;
    cplx alpha;
    if (i == 0 && first) {
      alpha = first->draw(rng, stats, &dens);
    } else {
      alpha = ModeSampler(cur, kk, safety).draw(rng, stats, &dens);
    }
    res.values.push_back(alpha);
    res.weight *= dens;
    if (cur.modes() == 1) {
      empty = true;
      break;
    }
    CVec a(1);
    a[0] = alpha;
    cur = normalized(project_coherent(cur, {kk}, a));
    alive.erase(alive.begin() + kk);
  }
  if (!empty) res.post = cur;
  return res;
}

MeasureResult measure_discrete(const StellarState &s, const std::vector<int> &modes,
                               ShotRng &rng, const DiscreteTable *table, int cutoff) {
  DiscreteTable own;
  if (!table) {
    own = build_discrete_table(s, modes, cutoff);
    table = &own;
  }
  const double u = rng.uniform() * table->captured;
  size_t idx = std::lower_bound(table->cdf.begin(), table->cdf.end(), u) - table->cdf.begin();
  idx = std::min(idx, table->cdf.size() - 1);
  const MultiIndex &ns = table->outcomes[idx];
  MeasureResult res;
  for (int n : ns) res.values.push_back(static_cast<double>(n));
  const double lo = idx ? table->cdf[idx - 1] : 0.0;
  res.weight = (table->cdf[idx] - lo) / table->captured;
  if (static_cast<int>(modes.size()) < s.modes()) {
    std::vector<std::pair<int, int>> order;
    for (size_t j = 0; j < modes.size(); ++j) order.emplace_back(modes[j], ns[j]);
    std::sort(order.rbegin(), order.rend());
    StellarState cur = s;
    for (auto [k, n] : order) cur = project_fock(cur, k, n);
    res.post = normalized(cur);
  }
  return res;
}

MeasureResult measure_homodyne(const StellarState &s, const std::vector<int> &modes,
                               ShotRng &rng, RejectionStats &stats, double r, double safety) {
  if (!(r > 0.0)) throw ValidationError("homodyne squeezing must be positive");
  StellarState cur = s;
  for (int k : modes) cur = apply_squeeze_mode(cur, k, r);
  MeasureResult res = measure_continuous(cur, modes, rng, stats, safety);
  for (cplx &v : res.values) v = std::sqrt(2.0) * std::exp(-r) * v.real();
  return res;
}

double homodyne_excess_variance(double r) { return 0.5 * std::exp(-2.0 * r); }

std::vector<ContinuousOutcome> sample_continuous(const StellarState &s,
                                                 const std::vector<int> &modes,
                                                 const SamplerConfig &cfg, RejectionStats *stats) {
  if (cfg.shots < 1) throw ValidationError("shots must be positive");
  if (modes.empty()) throw ValidationError("no measured modes");
  complement(s.modes(), modes);
  require_normalized(s);
  StellarState ns = normalized(s);
  ModeSampler first(ns, modes[0], cfg.rejection_safety);
  std::vector<ContinuousOutcome> out(cfg.shots);
  RejectionStats total;
  std::string error;
#pragma omp parallel
  {
    RejectionStats local;
#pragma omp for schedule(static)
    for (int shot = 0; shot < cfg.shots; ++shot) {
      try {
        ShotRng rng(cfg.seed, shot);
        MeasureResult r = measure_continuous(ns, modes, rng, local, cfg.rejection_safety, &first);
        out[shot].alphas = Eigen::Map<CVec>(r.values.data(), r.values.size());
        out[shot].density_value = r.weight;
      } catch (const std::exception &e) {
#pragma omp critical
        if (error.empty()) error = e.what();
      }
    }
#pragma omp critical
    total.merge(local);
  }
  if (!error.empty()) throw NumericError(error);
  if (total.acceptance_rate() < kMinAcceptance) {
    throw NumericError("rejection acceptance rate below 1e-3");
  }
  if (stats) *stats = total;
  return out;
}

std::vector<DiscreteOutcome> sample_discrete(const StellarState &s, const std::vector<int> &modes,
                                             const SamplerConfig &cfg) {
  if (cfg.shots < 1) throw ValidationError("shots must be positive");
  require_normalized(s);
  StellarState ns = normalized(s);
  DiscreteTable table = build_discrete_table(ns, modes, cfg.cutoff);
  std::vector<DiscreteOutcome> out(cfg.shots);
#pragma omp parallel for schedule(static)
  for (int shot = 0; shot < cfg.shots; ++shot) {
    ShotRng rng(cfg.seed, shot);
    const double u = rng.uniform() * table.captured;
    size_t idx = std::lower_bound(table.cdf.begin(), table.cdf.end(), u) - table.cdf.begin();
    out[shot].ns = table.outcomes[std::min(idx, table.cdf.size() - 1)];
  }
  return out;
}

double ks_statistic(std::vector<double> x, const std::function<double(double)> &cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double kolmogorov_pvalue(double D, size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lam = (sn + 0.12 + 0.11 / sn) * D;
  if (lam < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * ((j & 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lam * lam);
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace hqc
