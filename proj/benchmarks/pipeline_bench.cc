// Copyright 2026 The memqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "memqkd/experiment.h"
#include "memqkd/histogram.h"
#include "memqkd/keyrate.h"
#include "memqkd/rng.h"

namespace {

void BM_RunExperiment3(benchmark::State &state) {
    memqkd::RunConfig cfg = memqkd::preset_config(memqkd::Preset::experiment3);
    cfg.source.n_pulses = static_cast<std::uint64_t>(state.range(0));
    const auto workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        auto result = memqkd::run_experiment(cfg, workers);
        benchmark::DoNotOptimize(result.sifted);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperiment3)->Args({10000, 1})->Args({100000, 1})->Args({100000, 4})->Unit(benchmark::kMillisecond);

void BM_Poisson(benchmark::State &state) {
    memqkd::RandomStream rng(1);
    const double mean = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.poisson(mean));
    }
}
BENCHMARK(BM_Poisson)->Arg(16)->Arg(1000);

void BM_KeyRateMap(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto mu = memqkd::linear_axis(0.1, 3.0, n);
    const auto q = memqkd::linear_axis(0.0, 0.15, n);
    for (auto _ : state) {
        auto map = memqkd::key_rate_map(mu, q);
        benchmark::DoNotOptimize(map.rates.data());
    }
}
BENCHMARK(BM_KeyRateMap)->Arg(50)->Arg(200);

void BM_BinClicks(benchmark::State &state) {
    memqkd::RandomStream rng(3);
    std::vector<double> stamps(static_cast<std::size_t>(state.range(0)));
    for (auto &t : stamps) {
        t = 2000.0 * rng.uniform();
    }
    for (auto _ : state) {
        auto h = memqkd::bin_clicks(stamps, 10.0, {0.0, 2000.0});
        benchmark::DoNotOptimize(h.total());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BinClicks)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
