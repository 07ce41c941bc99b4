// Copyright 2026 The nullvalue Authors
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

#include <cmath>
#include <numbers>
#include <vector>

#include "nullvalue/experiment.h"
#include "nullvalue/measurement.h"
#include "nullvalue/null_value.h"
#include "nullvalue/single_copy.h"
#include "nullvalue/statistics.h"
#include "nullvalue/sweep.h"

using namespace nullvalue;

static void BM_make_povm(benchmark::State& state) {
  const PureState m = state_from_angles({0.7, 0.3});
  const PureState f = state_from_angles({1.1, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_povm(make_kraus(m, 0.1, 0.4), f));
  }
}
BENCHMARK(BM_make_povm);

static void BM_tree_probabilities(benchmark::State& state) {
  const KrausPair kraus = make_kraus(state_from_angles({0.7, 0.3}), 0.0, 0.4);
  const PureState f = state_from_angles({1.1, 0.2});
  const PureState psi = state_from_angles({0.4, 1.3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_probabilities(psi, kraus, f));
  }
}
BENCHMARK(BM_tree_probabilities);

static void BM_cap_quadrature(benchmark::State& state) {
  const CapPrior cap(std::numbers::pi / 4);
  const PovmTriple povm = gauge_povm(0.7, 1.1, 0.3, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cap.average(
        [&](double d1, double d2) { return povm.pi_inconclusive.expectation(cap_state(d1, d2)); }));
  }
}
BENCHMARK(BM_cap_quadrature);

static void BM_optimize_grid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CapPrior cap(std::numbers::pi / 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_orientations(0.1, cap, 0.0, {n, n}));
  }
}
BENCHMARK(BM_optimize_grid)->Arg(32)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_simulate_counts(benchmark::State& state) {
  const SchemeConfig cfg = lab_scheme(0.1, 0.15, SchemeB{});
  const PureState psi = state_from_angles({-0.05, 0.0});
  SimulationOptions opts;
  opts.model = state.range(0) ? NoiseModel::kBinomial : NoiseModel::kPoissonized;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_counts(psi, cfg, 11250, ++seed, opts));
  }
}
BENCHMARK(BM_simulate_counts)->Arg(0)->Arg(1);

static void BM_analytic_sweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_snr_sweep({}));
  }
}
BENCHMARK(BM_analytic_sweep);

static void BM_run_experiment(benchmark::State& state) {
  const ExperimentConfig cfg;
  const SchemeConfig scheme = experiment_scheme(cfg, SchemeB{});
  const std::vector<double> deltas = {0.02, 0.05};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg, scheme, deltas, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * 3 *
                          static_cast<std::int64_t>(cfg.photons_per_measurement));
}
BENCHMARK(BM_run_experiment)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
