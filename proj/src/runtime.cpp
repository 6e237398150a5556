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

#include "hqc/runtime.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <sstream>

namespace hqc {

namespace {

struct Live {
  StellarState s;
  std::vector<int> alive;  // original mode index at each position
  bool consumed = false;

  int pos(int k) const {
    auto it = std::find(alive.begin(), alive.end(), k);
    if (it == alive.end()) throw ValidationError("mode " + std::to_string(k) + " is no longer live");
    return static_cast<int>(it - alive.begin());
  }
};

void apply_decl(Live &L, const GateDecl &d, int modes, const OutcomeRecord &rec, bool rank_check) {
  if (L.consumed) throw ValidationError("gate after every mode was measured");
  Gate g = concrete_gate(d, modes, rec);
  const int m = L.s.modes();
  if (g.kind == Gate::Kind::Passive) {
    CMat U(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) U(i, j) = g.U(L.alive[i], L.alive[j]);
    }
    g.U = U;
  } else if (g.kind == Gate::Kind::Displace) {
    const int p = L.pos(d.mode);
    g = Gate::displace_mode(m, p, g.beta[d.mode]);
  } else {
    g.mode = L.pos(d.mode);
  }
  const int before = stellar_rank(L.s);
  L.s = apply_gate(L.s, g);
  if (rank_check && stellar_rank(L.s) != before) {
    throw NumericError("stellar rank changed under a Gaussian gate");
  }
}

// Shared first-measurement data for the shot-independent prefix.
struct PrefixCache {
  std::optional<StellarState> state;   // state the first measurement acts on
  std::optional<ModeSampler> sampler;  // continuous and homodyne
  std::optional<DiscreteTable> table;  // discrete
};

void measure(Live &L, const MeasureDecl &md, const SamplerConfig &cfg, ShotRng &rng,
             RejectionStats &stats, const PrefixCache *cache, bool rank_preserving,
             OutcomeRecord &rec, std::vector<OutcomeRow> &rows, int shot) {
  std::vector<int> pos;
  for (int k : md.modes) pos.push_back(L.pos(k));
  const int before = stellar_rank(L.s);
  MeasureResult r;
  switch (md.kind) {
    case MeasureKind::Continuous:
      r = measure_continuous(L.s, pos, rng, stats, cfg.rejection_safety,
                             cache && cache->sampler ? &*cache->sampler : nullptr);
      break;
    case MeasureKind::Homodyne: {
      if (cache && cache->state) {
        r = measure_continuous(*cache->state, pos, rng, stats, cfg.rejection_safety,
                               cache->sampler ? &*cache->sampler : nullptr);
      } else {
        StellarState sq = L.s;
        for (int p : pos) sq = apply_squeeze_mode(sq, p, cfg.homodyne_r);
        r = measure_continuous(sq, pos, rng, stats, cfg.rejection_safety);
      }
      for (cplx &v : r.values) v = std::sqrt(2.0) * std::exp(-cfg.homodyne_r) * v.real();
      break;
    }
    case MeasureKind::Discrete:
      r = measure_discrete(L.s, pos, rng, cache && cache->table ? &*cache->table : nullptr,
                           cfg.cutoff);
      break;
  }
  for (size_t i = 0; i < md.modes.size(); ++i) {
    rows.push_back({shot, md.bind, md.modes[i], md.kind, r.values[i]});
  }
  rec[md.bind] = r.values;
  if (r.post) {
    if (rank_preserving && md.kind != MeasureKind::Discrete && stellar_rank(*r.post) > before) {
      throw NumericError("stellar rank increased under a Gaussian measurement");
    }
    L.s = *r.post;
    std::vector<int> keep;
    for (int k : L.alive) {
      if (std::find(md.modes.begin(), md.modes.end(), k) == md.modes.end()) keep.push_back(k);
    }
    L.alive = keep;
  } else {
    L.alive.clear();
    L.consumed = true;
  }
}

}  // namespace

StellarState evolve_circuit_state(const CircuitSpec &spec) {
  Live L{prepare_input(spec), {}};
  for (int k = 0; k < spec.modes; ++k) L.alive.push_back(k);
  for (const auto &g : spec.gates) {
    if (g.adaptive()) throw ValidationError("adaptive gate in a measurement-free evaluation");
    apply_decl(L, g, spec.modes, {}, spec.rank_preserving);
  }
  return L.s;
}

RunResult run_circuit(const CircuitSpec &spec, const SamplerConfig &cfg, bool final_summary) {
  validate_circuit(spec);
  if (cfg.shots < 1) throw ValidationError("shots must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const int G = static_cast<int>(spec.gates.size());
  const auto &ms = spec.measurements;

  // Shot-independent prefix: everything before the first measurement.
  const int first_after = ms.empty() ? G : ms.front().after;
  Live prefix{prepare_input(spec), {}};
  for (int k = 0; k < spec.modes; ++k) prefix.alive.push_back(k);
  for (int i = 0; i < first_after; ++i) {
    apply_decl(prefix, spec.gates[i], spec.modes, {}, spec.rank_preserving);
  }
  PrefixCache cache;
  if (!ms.empty()) {
    const MeasureDecl &m0 = ms.front();
    const int p0 = prefix.pos(m0.modes.front());
    std::vector<int> pos;
    for (int k : m0.modes) pos.push_back(prefix.pos(k));
    if (m0.kind == MeasureKind::Continuous) {
      cache.sampler.emplace(prefix.s, p0, cfg.rejection_safety);
    } else if (m0.kind == MeasureKind::Homodyne) {
      StellarState sq = prefix.s;
      for (int p : pos) sq = apply_squeeze_mode(sq, p, cfg.homodyne_r);
      cache.state = sq;
      cache.sampler.emplace(sq, p0, cfg.rejection_safety);
    } else {
      cache.table = build_discrete_table(prefix.s, pos, cfg.cutoff);
    }
  }

  std::vector<std::vector<OutcomeRow>> rows(cfg.shots);
  std::vector<RejectionStats> stats(cfg.shots);
  std::vector<std::optional<ShotSummary>> finals(final_summary ? cfg.shots : 0);
  std::vector<std::exception_ptr> errors(cfg.shots);

#pragma omp parallel for schedule(dynamic, 8)
  for (int shot = 0; shot < cfg.shots; ++shot) {
    try {
      ShotRng rng(cfg.seed, shot);
      Live L = prefix;
      OutcomeRecord rec;
      size_t mi = 0;
      for (int i = first_after; i <= G; ++i) {
        while (mi < ms.size() && ms[mi].after == i) {
          measure(L, ms[mi], cfg, rng, stats[shot], mi == 0 ? &cache : nullptr,
                  spec.rank_preserving, rec, rows[shot], shot);
          ++mi;
        }
        if (i < G) apply_decl(L, spec.gates[i], spec.modes, rec, spec.rank_preserving);
      }
      if (final_summary && !L.consumed) {
        finals[shot] = ShotSummary{L.s.modes(), stellar_rank(L.s), norm_squared(L.s)};
      }
    } catch (...) {
      errors[shot] = std::current_exception();
    }
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunResult res;
  res.seed = cfg.seed;
  res.shots = cfg.shots;
  for (int s = 0; s < cfg.shots; ++s) {
    res.rows.insert(res.rows.end(), rows[s].begin(), rows[s].end());
    res.stats.merge(stats[s]);
  }
  res.finals = std::move(finals);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string run_result_csv(const RunResult &r) {
  std::ostringstream os;
  os << "shot,bind,mode,kind,re,im\n";
  for (const auto &row : r.rows) {
    os << row.shot << ',' << row.bind << ',' << row.mode << ',' << measure_kind_name(row.kind)
       << ',' << fmt17(row.value.real()) << ',' << fmt17(row.value.imag()) << '\n';
  }
  return os.str();
}

Json run_result_json(const RunResult &r) {
  Json j = Json::object();
  j["schema"] = "hqc-result/1";
  j["seed"] = r.seed;
  j["shots"] = r.shots;
  j["rejection"] = Json{{"proposals", r.stats.proposals},
                        {"accepted", r.stats.accepted},
                        {"envelope_violations", r.stats.envelope_violations}};
  Json recs = Json::array();
  for (const auto &row : r.rows) {
    recs.push_back(Json{{"shot", row.shot},
                        {"bind", row.bind},
                        {"mode", row.mode},
                        {"kind", measure_kind_name(row.kind)},
                        {"value", complex_to_json(row.value)}});
  }
  j["records"] = recs;
  if (!r.finals.empty()) {
    Json fin = Json::array();
    for (size_t s = 0; s < r.finals.size(); ++s) {
      if (!r.finals[s]) continue;
      fin.push_back(Json{{"shot", s},
                         {"modes_left", r.finals[s]->modes_left},
                         {"rank", r.finals[s]->rank},
                         {"norm", r.finals[s]->norm}});
    }
    j["final"] = fin;
  }
  return j;
}

std::string binned_csv(const RunResult &r, int bins) {
  if (bins < 1) throw ValidationError("bins must be positive");
  std::map<std::tuple<std::string, int, std::string, int, int>, long> counts;
  const double lo = -6.0, width = 12.0 / bins;
  auto bin = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - lo) / width)), 0, bins - 1); };
  for (const auto &row : r.rows) {
    const std::string kind = measure_kind_name(row.kind);
    if (row.kind == MeasureKind::Discrete) {
      counts[{row.bind, row.mode, kind, static_cast<int>(row.value.real()), 0}]++;
    } else {
      counts[{row.bind, row.mode, kind, bin(row.value.real()), bin(row.value.imag())}]++;
    }
  }
  std::ostringstream os;
  os << "bind,mode,kind,bin_re,bin_im,count\n";
  for (auto &[k, c] : counts) {
    os << std::get<0>(k) << ',' << std::get<1>(k) << ',' << std::get<2>(k) << ',' << std::get<3>(k)
       << ',' << std::get<4>(k) << ',' << c << '\n';
  }
  return os.str();
}

}  // namespace hqc
