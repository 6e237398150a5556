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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance <hqc-cli> <data-dir> [criterion...]

#include <omp.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hqc/calogero_moser.hpp"
#include "hqc/circuit.hpp"
#include "hqc/fock_oracle.hpp"
#include "hqc/linalg.hpp"
#include "hqc/multimode.hpp"
#include "hqc/permanent.hpp"
#include "hqc/runtime.hpp"
#include "hqc/sampling.hpp"
#include "hqc/single_mode.hpp"
#include "hqc/table3.hpp"
#include "oracles.hpp"

using namespace hqc;

namespace {

// Tolerances and budgets, pinned.
constexpr double kShearRouteTol = 1e-6;
constexpr double kShearMomentumTol = 1e-6;
constexpr double kShearSeconds = 5.0;
constexpr double kShearScatterTime = 200.0;
constexpr int kShearSteps = 601;

constexpr int kRouteStates = 100;
constexpr double kRouteOverlapLoss = 1e-8;
constexpr double kRouteSeconds = 60.0;

constexpr int kOracleCases = 200;
constexpr int kOracleCutoff = 40;
constexpr double kOracleOverlapLoss = 1e-8;
constexpr double kOracleSeconds = 300.0;

constexpr int kRankApplications = 1000;

constexpr int kCmInstances = 50;
constexpr double kCmSpectrumTol = 1e-6;
constexpr double kCmEnergyTol = 1e-8;
constexpr double kCmRouteTol = 1e-6;
constexpr double kCmOdeStep = 1e-4;

constexpr double kHomProbTol = 1e-12;
constexpr int kHomShots = 10000;

constexpr int kKsShots = 100000;
constexpr double kKsMinP = 0.01;
constexpr int kTvShots = 100000;
constexpr int kTvTop = 20;

constexpr int kSeparabilityCases = 200;
constexpr int kSeparabilityCutoff = 50;
constexpr double kPurityTol = 1e-8;

constexpr int kHusimiStates = 20;
constexpr double kHusimiTol = 1e-6;

constexpr int kDeterminismThreads = 4;

std::string g_cli, g_data;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double multiset_distance(const std::vector<cplx> &a, const std::vector<cplx> &b) {
  if (a.size() != b.size()) return 1e300;
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

std::vector<cplx> to_vec(const CVec &v) { return {v.data(), v.data() + v.size()}; }

std::vector<cplx> column(const CMat &M, int j) { return to_vec(M.col(j)); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

// 1. Zero trajectories of {0, i/2, -i/2} under a unit shear.
Verdict shear_zeros() {
  const auto t0 = Clock::now();
  const std::vector<cplx> z0{0.0, cplx(0, 0.5), cplx(0, -0.5)};
  StellarState s = from_zeros(z0, 0.0, 0.0, 0.0);
  const Hamiltonian1M H = hamiltonian_of(Gate::Kind::Shear, 1.0);
  std::vector<double> times(kShearSteps);
  for (int i = 0; i < kShearSteps; ++i) times[i] = -3.0 + 6.0 * i / (kShearSteps - 1);
  ZeroTrajectory closed = closed_form_trajectory(s, H, times);
  // The integrator records every 10 steps of 1e-3, i.e. on the same 0.01 grid.
  ZeroTrajectory fwd = ode_evolve(s, H, 3.0, 1e-3, 10);
  ZeroTrajectory bwd = ode_evolve(s, H, -3.0, 1e-3, 10);
  double worst = 0.0;
  int matched = 0;
  for (const ZeroTrajectory *o : {&fwd, &bwd}) {
    for (size_t j = 0; j < o->times.size(); ++j) {
      const int i = static_cast<int>(std::lround((o->times[j] + 3.0) * 100.0));
      if (i < 0 || i >= kShearSteps || std::abs(times[i] - o->times[j]) > 1e-9) continue;
      worst = std::max(worst, multiset_distance(column(closed.zeros, i), column(o->zeros, j)));
      ++matched;
    }
  }
  // Both halves include t = 0.
  const bool routes = matched == kShearSteps + 1 && worst <= kShearRouteTol;

  auto v = initial_velocities(z0, 0.0, 0.0, H);
  CMSystem cm;
  cm.q0 = CVec::Map(z0.data(), 3);
  cm.p0 = CVec::Map(v.data(), 3);
  cm.g = H.coupling();
  cm.omega = 0.0;
  Scattering sc = scattering_permutation(cm, kShearScatterTime);
  int nontrivial = 0;
  std::vector<bool> seen(3, false);
  for (int k = 0; k < 3; ++k) {
    if (seen[k]) continue;
    int len = 0;
    for (int j = k; !seen[j]; j = sc.sigma[j]) seen[j] = true, ++len;
    nontrivial += len > 1;
  }
  const double dp = multiset_distance(to_vec(sc.p_plus), to_vec(sc.p_minus));
  const bool cycle = nontrivial == 1;
  const double secs = since(t0);
  std::ostringstream os;
  os << "route max " << worst << " over " << matched << " samples; sigma = (" << sc.sigma[0] << ","
     << sc.sigma[1] << "," << sc.sigma[2] << "), longest cycle " << longest_cycle(sc.sigma)
     << "; |p+ - p-| " << dp << "; " << secs << " s";
  return {routes && cycle && dp <= kShearMomentumTol && secs < kShearSeconds, os.str()};
}

StellarState direct_route(const StellarState &s, Gate::Kind k, cplx p) {
  switch (k) {
    case Gate::Kind::Displace: return direct_apply_D(s, p);
    case Gate::Kind::Squeeze: return direct_apply_S(s, p);
    case Gate::Kind::Phase: return direct_apply_R(s, p.real());
    default: return direct_apply_P(s, p.real());
  }
}

// 2. Closed-form, direct-action and ODE routes.
Verdict three_routes() {
  const auto t0 = Clock::now();
  oracle::Rand r(1001);
  double worst = 0.0;
  int fails = 0;
  for (int i = 0; i < kRouteStates; ++i) {
    StellarState s = oracle::random_single_mode(r, r.integer(0, 4));
    for (Gate::Kind k : {Gate::Kind::Displace, Gate::Kind::Phase, Gate::Kind::Squeeze, Gate::Kind::Shear}) {
      const cplx drive = (k == Gate::Kind::Displace || k == Gate::Kind::Squeeze) ? r.disk(1.0)
                                                                                 : cplx(r.uni(-1.0, 1.0));
      const double t = r.uni(-1.5, 1.5);
      StellarState a = evolve_closed_form(s, k, drive, t);
      StellarState b = direct_route(s, k, drive * t);
      StellarState c = ode_final_state(s, hamiltonian_of(k, drive), t, 1e-3);
      const double loss = std::max({1.0 - normalized_overlap(a, b), 1.0 - normalized_overlap(a, c),
                                    1.0 - normalized_overlap(b, c)});
      worst = std::max(worst, loss);
      fails += loss > kRouteOverlapLoss;
    }
  }
  const double secs = since(t0);
  std::ostringstream os;
  os << 4 * kRouteStates << " evolutions, worst 1 - overlap " << worst << ", " << fails << " failures; "
     << secs << " s";
  return {fails == 0 && secs < kRouteSeconds, os.str()};
}

// 3. Stellar evolution against truncated Fock matrices.
Verdict fock_oracle() {
  const auto t0 = Clock::now();
  oracle::Rand r(1002);
  double worst = 0.0;
  int fails = 0, tail = 0;
  std::ostringstream bad;
  for (int i = 0; i < kOracleCases; ++i) {
    const int m = r.integer(1, 3);
    Poly P(m);
    auto basis = fock_basis(m, r.integer(0, 3));
    for (size_t j = 0; j < basis->size(); ++j) P.add_term(basis->at(j), r.gauss());
    StellarState s(P, GaussPart::zero(m));
    std::vector<Gate> gates;
    const int len = r.integer(1, 6);
    for (int g = 0; g < len; ++g) gates.push_back(oracle::random_gate(r, m, 1.0));
    FockArray o = oracle_apply_all(to_fock_array(s, kOracleCutoff), gates);
    for (const Gate &g : gates) s = apply_gate(s, g);
    const FockArray f = to_fock_array(s, kOracleCutoff);
    const double loss = 1.0 - fock_overlap(o, f);
    worst = std::max(worst, loss);
    if (loss > kOracleOverlapLoss) {
      if (fails < 5) bad << " case " << i << " (m=" << m << ", 1-ov=" << loss << ")";
      ++fails;
      // Tail mass past the cutoff, in the exact output or accumulated by the oracle.
      tail += std::max(f.truncation_loss, o.truncation_loss) > kOracleOverlapLoss;
    }
  }
  const double secs = since(t0);
  std::ostringstream os;
  os << kOracleCases << " cases at cutoff " << kOracleCutoff << ", worst 1 - overlap " << worst << ", "
     << fails << " failures (" << tail << " with tail mass above tolerance)" << bad.str() << "; " << secs
     << " s";
  return {fails == 0 && secs < kOracleSeconds, os.str()};
}

// 4. Gaussian gates never change the stellar rank.
Verdict rank_invariance() {
  oracle::Rand r(1003);
  int changed = 0, applied = 0;
  while (applied < kRankApplications) {
    const int m = r.integer(1, 3);
    const int rank = r.integer(0, 4);
    StellarState s = oracle::random_multimode(r, m, rank, 0.6);
    for (int g = 0; g < 5 && applied < kRankApplications; ++g, ++applied) {
      s = apply_gate(s, oracle::random_gate(r, m, 0.5));
      changed += stellar_rank(s) != rank;
    }
  }
  std::ostringstream os;
  os << applied << " applications, " << changed << " rank changes";
  return {changed == 0, os.str()};
}

CMSystem random_cm(oracle::Rand &r, int n, CMRegime regime) {
  CMSystem s;
  s.q0.resize(n);
  s.p0.resize(n);
  for (int k = 0; k < n;) {
    const cplx q = r.disk(3.0);
    bool ok = true;
    for (int j = 0; j < k; ++j) ok = ok && std::abs(q - s.q0[j]) > 0.8;
    if (!ok) continue;
    s.q0[k] = q;
    s.p0[k++] = r.disk(0.5);
  }
  s.g = r.disk(0.5);
  if (regime == CMRegime::Harmonic) s.omega = r.uni(0.4, 1.2);
  if (regime == CMRegime::Hyperbolic) s.omega = cplx(0, r.uni(0.2, 0.6));
  return s;
}

// 5. Lax spectrum and energy along trajectories; eigenvalue vs ODE route.
Verdict calogero_moser() {
  oracle::Rand r(1004);
  const CMRegime regimes[] = {CMRegime::Isolated, CMRegime::Harmonic, CMRegime::Hyperbolic};
  const std::vector<double> times{-3.0, -1.5, -0.5, 0.0, 0.7, 1.5, 3.0};
  double wspec = 0.0, wenergy = 0.0, wroute = 0.0;
  double route_spec[2] = {0.0, 0.0}, route_energy[2] = {0.0, 0.0};  // eigenvalue, ODE
  for (int i = 0; i < kCmInstances; ++i) {
    CMSystem s = random_cm(r, r.integer(2, 6), regimes[i % 3]);
    std::vector<CMPoint> eig = cm_trajectory(s, times);
    std::vector<CMPoint> ode = cm_ode_trajectory(s, times, kCmOdeStep);
    const auto spec0 = eigenvalues(lax_shifted_product(s.q0, s.p0, s.g, s.omega));
    const auto l0 = eigenvalues(lax_matrices(s.q0, s.p0, s.g).L);
    double sscale = 0.0;
    for (cplx v : spec0) sscale = std::max(sscale, std::abs(v));
    const cplx e0 = cm_energy(s.q0, s.p0, s.g, s.omega2());
    const double escale = cm_energy_scale(s.q0, s.p0, s.g, s.omega2());
    const double qscale = std::max(1.0, s.q0.cwiseAbs().maxCoeff());
    for (size_t k = 0; k < times.size(); ++k) {
      wroute = std::max(wroute, (eig[k].q - ode[k].q).cwiseAbs().maxCoeff() / qscale);
      for (int route = 0; route < 2; ++route) {
        const CMPoint *pt = route == 0 ? &eig[k] : &ode[k];
        const auto sp = eigenvalues(lax_shifted_product(pt->q, pt->p, s.g, s.omega));
        double ds = multiset_distance(sp, spec0) / sscale;
        if (s.omega == cplx(0.0)) {
          const auto l = eigenvalues(lax_matrices(pt->q, pt->p, s.g).L);
          ds = std::max(ds, multiset_distance(l, l0) / std::max(sscale, 1e-300));
        }
        const double de = std::abs(cm_energy(pt->q, pt->p, s.g, s.omega2()) - e0) / escale;
        route_spec[route] = std::max(route_spec[route], ds);
        route_energy[route] = std::max(route_energy[route], de);
        wspec = std::max(wspec, ds);
        wenergy = std::max(wenergy, de);
      }
    }
  }
  std::ostringstream os;
  os << kCmInstances << " instances; spectrum " << wspec << ", energy " << wenergy << ", routes " << wroute
     << " (relative); eigenvalue route " << route_spec[0] << "/" << route_energy[0] << ", ODE route "
     << route_spec[1] << "/" << route_energy[1];
  return {wspec <= kCmSpectrumTol && wenergy <= kCmEnergyTol && wroute <= kCmRouteTol, os.str()};
}

// 6. Hong-Ou-Mandel null.
Verdict hom() {
  const double p = boson_sampling_prob(oracle::beam_splitter(), {1, 1}, {1, 1});
  SamplerConfig cfg;
  cfg.shots = kHomShots;
  cfg.seed = 6;
  RunResult res = run_circuit(load_circuit(g_data + "/hom.json"), cfg);
  int coincidences = 0;
  for (size_t i = 0; i + 1 < res.rows.size(); i += 2) {
    coincidences += res.rows[i].value == cplx(1.0) && res.rows[i + 1].value == cplx(1.0);
  }
  std::ostringstream os;
  os << "P(1,1) = " << p << ", " << coincidences << " coincidences in " << kHomShots << " shots";
  return {p <= kHomProbTol && coincidences == 0 && res.rows.size() == 2u * kHomShots, os.str()};
}

// 7. Efficient route against brute force for each architecture.
Verdict table3() {
  bool ok = true;
  std::ostringstream os;
  for (Architecture a : all_architectures()) {
    Table3Report rep = table3_demo(a);
    ok = ok && rep.pass && rep.max_diff <= kTable3Tolerance && !rep.checks.empty() && rep.modes <= 5 &&
         rep.photons <= 3;
    os << architecture_name(a) << " " << rep.max_diff << "; ";
  }
  return {ok, os.str()};
}

double tv_top(const std::map<MultiIndex, double> &p, const std::map<MultiIndex, long> &counts, long shots) {
  std::vector<std::pair<double, MultiIndex>> order;
  for (auto &[n, v] : p) order.push_back({v, n});
  std::sort(order.rbegin(), order.rend());
  double tv = 0.0;
  for (int i = 0; i < kTvTop && i < static_cast<int>(order.size()); ++i) {
    auto it = counts.find(order[i].second);
    tv += std::abs((it == counts.end() ? 0.0 : double(it->second) / shots) - order[i].first);
  }
  return 0.5 * tv;
}

// 8. Heterodyne KS tests and discrete total variation.
Verdict sampling() {
  const cplx beta(0.8, -0.5);
  struct Case {
    const char *name;
    StellarState s;
    std::function<double(cplx)> rho;
  };
  std::vector<Case> cases{
      {"vacuum", StellarState::vacuum(1), [](cplx a) { return std::exp(-std::norm(a)) / kPi; }},
      {"coherent", apply_displace(StellarState::vacuum(1), CVec::Constant(1, beta)),
       [beta](cplx a) { return std::exp(-std::norm(a - beta)) / kPi; }},
      {"fock1", from_zeros({0.0}, 0.0, 0.0, 0.0),
       [](cplx a) { return std::norm(a) * std::exp(-std::norm(a)) / kPi; }}};
  SamplerConfig cfg;
  cfg.seed = 8;
  cfg.shots = kKsShots;
  bool ok = true;
  std::ostringstream os;
  for (const Case &c : cases) {
    auto out = sample_continuous(c.s, {0}, cfg);
    oracle::TabulatedCdf re(c.rho);
    oracle::TabulatedCdf im([&](cplx a) { return c.rho(cplx(a.imag(), a.real())); });
    std::vector<double> xr, xi;
    for (auto &o : out) xr.push_back(o.alphas[0].real()), xi.push_back(o.alphas[0].imag());
    const double pr = kolmogorov_pvalue(ks_statistic(xr, re), xr.size());
    const double pi = kolmogorov_pvalue(ks_statistic(xi, im), xi.size());
    ok = ok && pr > kKsMinP && pi > kKsMinP;
    os << c.name << " p=" << pr << "/" << pi << "; ";
  }
  oracle::Rand r(1008);
  const double bound = 4.0 * std::sqrt(double(kTvTop) / kTvShots);
  std::vector<StellarState> discrete{oracle::random_multimode(r, 2, 2, 0.4), cases[1].s,
                                     oracle::random_multimode(r, 1, 3, 0.5)};
  for (const StellarState &s : discrete) {
    std::vector<int> modes(s.modes());
    std::iota(modes.begin(), modes.end(), 0);
    SamplerConfig dc;
    dc.seed = 9;
    dc.shots = kTvShots;
    std::map<MultiIndex, long> counts;
    for (auto &o : sample_discrete(s, modes, dc)) counts[o.ns]++;
    const double tv = tv_top(fock_probabilities(s, 40), counts, kTvShots);
    ok = ok && tv <= bound;
    os << "TV " << tv << " ";
  }
  os << "(bound " << bound << ")";
  return {ok, os.str()};
}

// 9. Separability verdict against reduced purity.
Verdict separability() {
  oracle::Rand r(1009);
  int disagree = 0;
  int separable = 0;
  for (int i = 0; i < kSeparabilityCases; ++i) {
    oracle::SeparabilityCase c = oracle::separability_case(r, i);
    StellarState s = c.input;
    for (const Gate &g : c.gates) s = apply_gate(s, g);
    FockArray x = oracle_apply_all(to_fock_array(c.input, kSeparabilityCutoff), c.gates);
    const bool pure = oracle::reduced_purity(x) >= 1.0 - kPurityTol;
    const bool sep = is_separable(s, {0});
    disagree += pure != sep;
    separable += sep;
  }
  std::ostringstream os;
  os << kSeparabilityCases << " cases (" << separable << " separable), " << disagree << " disagreements";
  return {disagree == 0, os.str()};
}

// 10. Husimi normalization by quadrature.
Verdict husimi() {
  oracle::Rand r(1010);
  double worst = 0.0;
  for (int i = 0; i < kHusimiStates; ++i) {
    const int m = 1 + i % 2;
    const int rank = r.integer(0, 3);
    double I;
    if (m == 1) {
      StellarState s = oracle::random_single_mode(r, rank);
      I = oracle::trapezoid(2, 9.0, 0.05, [&](const std::vector<double> &x) {
        return husimi_unnormalized(s, CVec::Constant(1, cplx(x[0], x[1])));
      });
    } else {
      StellarState s = oracle::random_multimode(r, 2, rank, 0.4);
      I = oracle::trapezoid(4, 7.6, 0.4, [&](const std::vector<double> &x) {
        CVec a(2);
        a << cplx(x[0], x[1]), cplx(x[2], x[3]);
        return husimi_unnormalized(s, a);
      });
    }
    worst = std::max(worst, std::abs(I - 1.0));
  }
  std::ostringstream os;
  os << kHusimiStates << " states, max |integral - 1| = " << worst;
  return {worst <= kHusimiTol, os.str()};
}

std::pair<std::string, int> run_cli(const std::string &args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return {"", -1};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  return {out, WIFEXITED(st) ? WEXITSTATUS(st) : -1};
}

// 11. CLI output bytes under 1 and N threads.
Verdict determinism() {
  const std::string d = g_data + "/";
  const std::vector<std::string> commands{
      "run " + d + "hom.json --shots 1000 --seed 7",
      "run " + d + "hom.json --shots 1000 --seed 7 --format csv",
      "run " + d + "adaptive.json --shots 400 --seed 3 --format csv",
      "run " + d + "adaptive.json --shots 400 --seed 3 --bins 6",
      "run " + d + "photon_added.json --shots 300 --seed 11 --final",
      "run " + d + "boson_sampling.json --shots 2000 --seed 5",
      "run " + d + "gkp.json --shots 2000 --seed 2",
      "sample " + d + "photon_added.json --kind continuous --shots 200 --seed 4",
      "sample " + d + "boson_sampling.json --kind discrete --shots 2000 --seed 4",
      "sample " + d + "photon_added.json --kind homodyne --modes 0 --shots 200 --seed 4",
      "prob " + d + "boson_sampling.json --outcome 1,1,0",
      "rank " + d + "photon_added.json",
      "schmidt " + d + "photon_added.json --partition 0",
      "decompose " + d + "photon_added.json",
      "cm-trace " + d + "shear_zeros.json",
      "cm-trace " + d + "cm_scatter.json",
      "evolve " + d + "shear_zeros.json --route ode",
      "table3 --arch all",
  };
  int mismatches = 0, errors = 0;
  std::ostringstream bad;
  for (const std::string &c : commands) {
    auto [a, ca] = run_cli(c + " --threads 1");
    auto [b, cb] = run_cli(c + " --threads " + std::to_string(kDeterminismThreads));
    auto [e, ce] = run_cli(c + " --threads " + std::to_string(kDeterminismThreads));
    if (ca != 0 || cb != 0 || ce != 0 || a.empty()) {
      ++errors;
      bad << " [exit " << ca << "/" << cb << ": " << c << "]";
    } else if (a != b || b != e) {
      ++mismatches;
      bad << " [differs: " << c << "]";
    }
  }
  std::ostringstream os;
  os << commands.size() << " commands at 1 and " << kDeterminismThreads << " threads, " << mismatches
     << " mismatches, " << errors << " errors" << bad.str();
  return {mismatches == 0 && errors == 0, os.str()};
}

}  // namespace

int main(int argc, char **argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <hqc-cli> <data-dir> [criterion...]\n";
    return 2;
  }
  g_cli = argv[1];
  g_data = argv[2];
  const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
      {"zero trajectories under shear", shear_zeros},
      {"three-route equivalence", three_routes},
      {"Fock oracle fidelity", fock_oracle},
      {"rank invariance", rank_invariance},
      {"Calogero-Moser conservation", calogero_moser},
      {"HOM null", hom},
      {"architecture dual routes", table3},
      {"sampling statistics", sampling},
      {"entanglement verdicts", separability},
      {"Husimi normalization", husimi},
      {"CLI determinism", determinism},
  };
  std::vector<bool> selected(criteria.size(), argc == 3);
  for (int a = 3; a < argc; ++a) {
    const int k = std::atoi(argv[a]);
    if (k >= 1 && k <= static_cast<int>(criteria.size())) selected[k - 1] = true;
  }
  int failed = 0, ran = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    ++ran;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << v.detail
              << " [" << since(t0) << " s]" << std::endl;
  }
  std::cout << ran - failed << "/" << ran << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
