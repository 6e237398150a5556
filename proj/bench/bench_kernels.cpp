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


// Serial reference kernels against their OpenMP counterparts. Thread-count
// arguments of 0 mean the OpenMP runtime default.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "hqc/circuit.hpp"
#include "hqc/permanent.hpp"
#include "hqc/runtime.hpp"
#include "hqc/sampling.hpp"
#include "hqc/table3.hpp"

using namespace hqc;

namespace {

void set_threads(int n) { omp_set_num_threads(n > 0 ? n : omp_get_num_procs()); }

void BM_PermanentSerial(benchmark::State &st) {
  const CMat U = haar_unitary(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(permanent(U));
}

void BM_PermanentParallel(benchmark::State &st) {
  set_threads(static_cast<int>(st.range(1)));
  const CMat U = haar_unitary(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(permanent_parallel(U));
  set_threads(0);
}

StellarState bench_state() {
  StellarState s = from_zeros({cplx(0.4, 0.2), cplx(-0.5, 0.3)}, 0.2, 0.1, 0.0);
  return normalized(s);
}

void BM_SampleContinuous(benchmark::State &st) {
  set_threads(static_cast<int>(st.range(0)));
  const StellarState s = bench_state();
  SamplerConfig cfg;
  cfg.shots = 20000;
  for (auto _ : st) benchmark::DoNotOptimize(sample_continuous(s, {0}, cfg));
  st.SetItemsProcessed(st.iterations() * cfg.shots);
  set_threads(0);
}

void BM_SampleDiscrete(benchmark::State &st) {
  set_threads(static_cast<int>(st.range(0)));
  const StellarState s = bench_state();
  SamplerConfig cfg;
  cfg.shots = 100000;
  for (auto _ : st) benchmark::DoNotOptimize(sample_discrete(s, {0}, cfg));
  st.SetItemsProcessed(st.iterations() * cfg.shots);
  set_threads(0);
}

void BM_RunCircuit(benchmark::State &st) {
  set_threads(static_cast<int>(st.range(0)));
  const CircuitSpec spec = parse_circuit(R"({"schema": "hqc-circuit/1", "modes": 2,
    "prep": {"kind": "fock", "pattern": [1, 1]},
    "gates": [{"kind": "squeeze", "mode": 0, "xi": 0.3},
              {"kind": "passive", "U": [[0.6, 0.8], [-0.8, 0.6]]}],
    "measurements": [{"kind": "continuous", "modes": [0], "bind": "a"},
                     {"kind": "discrete", "modes": [1], "bind": "n"}]})");
  SamplerConfig cfg;
  cfg.shots = 2000;
  for (auto _ : st) benchmark::DoNotOptimize(run_circuit(spec, cfg));
  st.SetItemsProcessed(st.iterations() * cfg.shots);
  set_threads(0);
}

}  // namespace

BENCHMARK(BM_PermanentSerial)->DenseRange(8, 18, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermanentParallel)->ArgsProduct({{8, 10, 12, 14, 16, 18}, {1, 0}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleContinuous)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleDiscrete)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunCircuit)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
