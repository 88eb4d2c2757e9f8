// Copyright 2026 The casimir-sphere Authors.
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

// Serial reference kernel against the OpenMP kernel on one stress-jump sample.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "casimir/stress.hpp"

using namespace casimir;

namespace {

MediaConfig media_for(int which) {
  return which == 0 ? MediaConfig::perfect_conductor() : MediaConfig::dielectric(2, 1, 1, 2);
}

detail::Probes probes(Real delta) {
  detail::Probes p;
  p.delta_in = delta;
  p.delta_out = delta;
  return p;
}

void BM_KernelSerial(benchmark::State& state) {
  const MediaConfig m = media_for(static_cast<int>(state.range(0)));
  const Real delta = Real(1) / static_cast<Real>(state.range(1));
  const StressOptions opt;
  for (auto _ : state) {
    auto r = detail::stress_kernel_serial(m, probes(delta), opt);
    benchmark::DoNotOptimize(r.value[detail::kComponents - 1]);
  }
}

void BM_KernelParallel(benchmark::State& state) {
  const MediaConfig m = media_for(static_cast<int>(state.range(0)));
  const Real delta = Real(1) / static_cast<Real>(state.range(1));
  const StressOptions opt;
  state.counters["threads"] = omp_get_max_threads();
  for (auto _ : state) {
    auto r = detail::stress_kernel_parallel(m, probes(delta), opt);
    benchmark::DoNotOptimize(r.value[detail::kComponents - 1]);
  }
}

}  // namespace

// args: media (0 conductor, 1 dielectric pair), 1/delta
BENCHMARK(BM_KernelSerial)->Args({0, 20})->Args({1, 20})->Args({1, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelParallel)->Args({0, 20})->Args({1, 20})->Args({1, 100})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
