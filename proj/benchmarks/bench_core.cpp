// Copyright 2026 The nnsieve Authors.
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

#include <random>
#include <vector>

#include "nnsieve/network.hpp"
#include "nnsieve/simlab.hpp"
#include "nnsieve/stats.hpp"
#include "nnsieve/trainer.hpp"

namespace {

using namespace nnsieve;

Dataset make_data(std::size_t n) {
  Scenario scenario;
  scenario.truth = TruthKind::kTrig;
  scenario.noise_sd = 0.7;
  scenario.n = n;
  return generate(scenario, 42);
}

Theta make_theta(std::size_t r) {
  TrainConfig config;
  config.seed = 7;
  return initialize(r, 1, config);
}

void BM_Eval(benchmark::State& state) {
  const Theta theta = make_theta(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> x = {0.3};
  for (auto _ : state) benchmark::DoNotOptimize(eval(theta, x));
}
BENCHMARK(BM_Eval)->Arg(2)->Arg(8)->Arg(32);

void BM_LossAndGrad(benchmark::State& state) {
  const Dataset data = make_data(static_cast<std::size_t>(state.range(0)));
  const Theta theta = make_theta(static_cast<std::size_t>(state.range(1)));
  Gradient g(theta.hidden_units(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(loss_and_grad(theta, data, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LossAndGrad)->Args({500, 2})->Args({2000, 6})->Args({500, 4});

// 500 subgradient iterations at the fixed two-unit setting.
void BM_FitSlice(benchmark::State& state) {
  const Dataset data = make_data(500);
  TrainConfig config;
  config.iterations = 500;
  config.alpha_step_rule = AlphaStepRule::kConstant;
  for (auto _ : state) benchmark::DoNotOptimize(fit(data, 2, 20.0, config).final_loss);
}
BENCHMARK(BM_FitSlice)->Unit(benchmark::kMillisecond);

void BM_ShapiroWilk(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> sample(static_cast<std::size_t>(state.range(0)));
  for (double& v : sample) v = normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(shapiro_wilk(sample).p_value);
}
BENCHMARK(BM_ShapiroWilk)->Arg(200)->Arg(5000);

void BM_KolmogorovSmirnov(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  std::vector<double> sample(static_cast<std::size_t>(state.range(0)));
  for (double& v : sample) v = normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ks_test_std_normal(sample).p_value);
}
BENCHMARK(BM_KolmogorovSmirnov)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
