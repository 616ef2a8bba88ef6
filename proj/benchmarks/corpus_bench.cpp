// Copyright 2026 The viewbench Authors
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

#include <benchmark/benchmark.h>

#include "viewbench/corpus.hpp"

namespace {

using namespace viewbench;

void BM_GenFixtures(benchmark::State& st) {
  const Scale s = paper_scale();
  for (auto _ : st) {
    benchmark::DoNotOptimize(gen_fixtures(s.n_scenes, s.n_paired, 0));
  }
}
BENCHMARK(BM_GenFixtures)->Unit(benchmark::kMillisecond);

void BM_BuildSamples(benchmark::State& st) {
  const Scale s = paper_scale();
  const TaskBank bank = load_task_bank();
  const auto scenes = gen_fixtures(s.n_scenes, s.n_paired, 0);
  for (auto _ : st) benchmark::DoNotOptimize(build_samples(scenes, bank, 0));
  st.counters["samples"] = 33216;
}
BENCHMARK(BM_BuildSamples)->Unit(benchmark::kMillisecond);

void BM_Split(benchmark::State& st) {
  const Scale s = st.range(0) ? paper_scale() : desk_scale();
  const TaskBank bank = load_task_bank();
  const auto scenes = gen_fixtures(s.n_scenes, s.n_paired, 0);
  const auto samples = build_samples(scenes, bank, 0);
  for (auto _ : st) benchmark::DoNotOptimize(make_split(samples, scenes, 0.1, 0));
}
BENCHMARK(BM_Split)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
