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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nnsieve/errors.hpp"
#include "nnsieve/simlab.hpp"

namespace nnsieve {
namespace {

Scenario quick_scenario(TruthKind truth, std::size_t n, std::size_t replicates) {
  Scenario s;
  s.truth = truth;
  s.noise_sd = 0.5;
  s.n = n;
  s.schedule = SieveSchedule::normality();
  s.train.iterations = 300;
  s.replicates = replicates;
  s.master_seed = 42;
  return s;
}

TEST(TrueFunction, Values) {
  EXPECT_DOUBLE_EQ(true_function(TruthKind::kNeuralNet, 0.0), -1.0);
  EXPECT_EQ(true_function(TruthKind::kNonDifferentiable, 0.0), 0.0);
  EXPECT_NEAR(true_function(TruthKind::kNonDifferentiable, 1e-12), 0.0, 1e-6);
  EXPECT_NEAR(true_function(TruthKind::kNonDifferentiable, -1e-12), 0.0, 1e-6);
  EXPECT_DOUBLE_EQ(true_function(TruthKind::kNonDifferentiable, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(true_function(TruthKind::kNonDifferentiable, -2.0), 4.0);
  // cos(1) / 3
  EXPECT_NEAR(true_function(TruthKind::kTrig, 0.0), 0.18010076862271326, 1e-15);
}

TEST(TrueFunction, NetworkTruthMatchesParameters) {
  const Theta theta = true_network();
  for (double x = -4.0; x <= 4.0; x += 0.25) {
    EXPECT_DOUBLE_EQ(eval(theta, std::vector<double>{x}), true_function(TruthKind::kNeuralNet, x));
  }
}

TEST(TruthNames, RoundTrip) {
  for (TruthKind kind : kAllTruths) EXPECT_EQ(parse_truth(truth_name(kind)), kind);
  EXPECT_EQ(parse_truth("trig"), TruthKind::kTrig);
  EXPECT_THROW(parse_truth("sine"), InvalidInput);
}

TEST(Generate, NoiselessResponsesEqualTruth) {
  Scenario s = quick_scenario(TruthKind::kTrig, 64, 1);
  s.noise_sd = 0.0;
  const Dataset data = generate(s, 7);
  const auto f0 = data.f0_values();
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(data.y()[i], f0[i]);
    EXPECT_EQ(f0[i], true_function(TruthKind::kTrig, data.point(i)[0]));
  }
}

TEST(Generate, DeterministicPerSeed) {
  const Scenario s = quick_scenario(TruthKind::kNonDifferentiable, 100, 1);
  EXPECT_EQ(generate(s, 1), generate(s, 1));
  EXPECT_NE(generate(s, 1), generate(s, 2));
}

TEST(Generate, NoiseIsCentred) {
  Scenario s = quick_scenario(TruthKind::kNeuralNet, 100000, 1);
  s.noise_sd = 0.7;
  const Dataset data = generate(s, 2024);
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) sum += data.y()[i] - data.f0_values()[i];
  EXPECT_LT(std::abs(sum / 100000.0), 4.0 * 0.7 / std::sqrt(100000.0));
}

TEST(Seeds, CounterBasedSplit) {
  EXPECT_EQ(derive_seed(5, {1, 2}), derive_seed(5, {1, 2}));
  EXPECT_NE(derive_seed(5, {1, 2}), derive_seed(5, {2, 1}));
  EXPECT_NE(derive_seed(5, {1}), derive_seed(6, {1}));
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < 1000; ++r) seeds.push_back(replicate_seed(9, 200, r));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(MatchToReference, RecoversRelabelledNetwork) {
  const Theta truth = true_network();
  // Swap the units and flip the sign of the (new) second unit.
  const double a1 = truth.alpha()[0];
  const Theta relabelled(truth.alpha0() + a1, {truth.alpha()[1], -a1},
                         {truth.gamma0()[1], -truth.gamma0()[0]},
                         {{truth.gamma(1)[0]}, {-truth.gamma(0)[0]}});
  for (double x : {-3.0, -0.2, 0.0, 1.7}) {
    EXPECT_NEAR(eval(relabelled, std::vector<double>{x}), eval(truth, std::vector<double>{x}),
                1e-15);
  }
  const MatchedParameters matched = match_to_reference(relabelled, truth);
  EXPECT_LT(matched.max_distance, 1e-15);
  EXPECT_EQ(matched.theta, truth);
}

TEST(MatchToReference, PreservesTheFunction) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> values(3 * 3 + 1);
    for (auto& v : values) v = unif(rng);
    const Theta estimate = Theta::from_vector(3, 1, values);
    const Theta reference = Theta::from_vector(3, 1, std::vector<double>(10, 0.5));
    const MatchedParameters matched = match_to_reference(estimate, reference);
    double raw = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) raw = std::max(raw, std::abs(values[i] - 0.5));
    EXPECT_LE(matched.max_distance, raw);
    for (double x : {-2.0, 0.0, 3.0}) {
      EXPECT_NEAR(eval(matched.theta, std::vector<double>{x}), eval(estimate, std::vector<double>{x}),
                  1e-12);
    }
  }
  EXPECT_THROW(match_to_reference(Theta(3, 1), Theta(2, 1)), InvalidInput);
}

TEST(RunReplicate, ErrorAndLossIdentities) {
  const Scenario s = quick_scenario(TruthKind::kTrig, 80, 1);
  const ReplicateRecord record = run_replicate(s, 3);
  const Dataset data = generate(s, derive_seed(record.seed, {0}));
  const auto fhat = eval_all(record.theta_hat, data);
  const double dist = empirical_norm(fhat, data.f0_values());
  EXPECT_DOUBLE_EQ(record.err, dist * dist);
  EXPECT_DOUBLE_EQ(record.loss, empirical_loss(record.theta_hat, data));
  EXPECT_DOUBLE_EQ(record.t_known,
                   normality_statistic(fhat, data.f0_values(), s.noise_sd));
  EXPECT_DOUBLE_EQ(record.t_plugin,
                   normality_statistic(fhat, data.f0_values(), std::sqrt(record.loss)));
  EXPECT_EQ(record.hidden_units, dims(s.schedule, 80).hidden_units);
  EXPECT_GE(record.err, 0.0);
}

TEST(RunConsistency, WorkerCountDoesNotChangeResults) {
  std::vector<Scenario> scenarios;
  for (TruthKind kind : kAllTruths) scenarios.push_back(quick_scenario(kind, 40, 2));
  const auto serial = run_consistency(scenarios, 1);
  const auto threaded = run_consistency(scenarios, 4);
  ASSERT_EQ(serial.records.size(), 6u);
  ASSERT_EQ(threaded.records.size(), 6u);
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].theta_hat, threaded.records[i].theta_hat);
    EXPECT_EQ(serial.records[i].err, threaded.records[i].err);
    EXPECT_EQ(serial.records[i].truth, scenarios[i / 2].truth);
    EXPECT_EQ(serial.records[i].replicate, i % 2);
  }
  // Any replicate can be regenerated in isolation.
  const ReplicateRecord alone = run_replicate(scenarios[2], 1);
  EXPECT_EQ(alone.theta_hat, serial.records[5].theta_hat);
}

TEST(RunConsistency, TruthsShareCovariatesAndNoise) {
  const ReplicateRecord nn = run_replicate(quick_scenario(TruthKind::kNeuralNet, 30, 1), 0);
  const ReplicateRecord nd = run_replicate(quick_scenario(TruthKind::kNonDifferentiable, 30, 1), 0);
  EXPECT_EQ(nn.seed, nd.seed);
}

TEST(RunInconsistency, ReportsMatchedParameters) {
  Scenario s;
  s.truth = TruthKind::kNeuralNet;
  s.noise_sd = 0.1;
  s.n = 100;
  s.schedule = SieveSchedule::fixed(2);
  s.train.iterations = 200;
  s.train.alpha_step_rule = AlphaStepRule::kConstant;
  s.replicates = 3;
  const ExperimentReport report = run_inconsistency(s, 2);
  ASSERT_EQ(report.records.size(), 3u);
  ASSERT_TRUE(report.reference_theta.has_value());
  for (const auto& record : report.records) {
    ASSERT_TRUE(record.parameter_distance.has_value());
    EXPECT_GE(*record.parameter_distance, 0.0);
    const Dataset data = generate(s, derive_seed(record.seed, {0}));
    EXPECT_NEAR(empirical_loss(record.theta_hat, data), record.loss, 1e-12);
  }

  s.truth = TruthKind::kTrig;
  EXPECT_THROW(run_inconsistency(s), InvalidInput);
  s.truth = TruthKind::kNeuralNet;
  s.schedule = SieveSchedule::fixed(3);
  EXPECT_THROW(run_inconsistency(s), InvalidInput);
}

TEST(RunNormality, CellsSummarizeReplicates) {
  const std::vector<Scenario> scenarios = {quick_scenario(TruthKind::kNeuralNet, 30, 12),
                                           quick_scenario(TruthKind::kTrig, 50, 12)};
  const ExperimentReport report = run_normality(scenarios, 3);
  ASSERT_EQ(report.records.size(), 24u);
  ASSERT_EQ(report.cells.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto& cell = report.cells[c];
    EXPECT_EQ(cell.n, scenarios[c].n);
    ASSERT_EQ(cell.t_known.size(), 12u);
    EXPECT_EQ(cell.qq.size(), 12u);
    for (std::size_t r = 0; r < 12; ++r) {
      EXPECT_EQ(cell.t_known[r], report.records[c * 12 + r].t_known);
    }
    for (const auto* test : {&cell.ks, &cell.shapiro, &cell.ks_plugin, &cell.shapiro_plugin}) {
      EXPECT_GE(test->p_value, 0.0);
      EXPECT_LE(test->p_value, 1.0);
    }
  }
}

TEST(SummarizeNormality, InvariantUnderReplicateOrder) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> t(60);
  std::vector<double> plug(60);
  for (auto& v : t) v = normal(rng);
  for (auto& v : plug) v = normal(rng);
  const NormalityCell a = summarize_normality(TruthKind::kTrig, 10, t, plug);
  std::shuffle(t.begin(), t.end(), rng);
  std::shuffle(plug.begin(), plug.end(), rng);
  const NormalityCell b = summarize_normality(TruthKind::kTrig, 10, t, plug);
  EXPECT_DOUBLE_EQ(a.ks.statistic_value, b.ks.statistic_value);
  EXPECT_DOUBLE_EQ(a.ks.p_value, b.ks.p_value);
  EXPECT_DOUBLE_EQ(a.shapiro.statistic_value, b.shapiro.statistic_value);
  EXPECT_NEAR(a.mean, b.mean, 1e-14);
  EXPECT_NEAR(a.sd, b.sd, 1e-14);
  EXPECT_THROW(summarize_normality(TruthKind::kTrig, 10, {1.0, 2.0}, {1.0, 2.0}), InvalidInput);
}

TEST(NormalityStatistic, ExactFitGivesZero) {
  const std::vector<double> f0 = {0.1, -0.4, 2.0, 7.0};
  EXPECT_EQ(normality_statistic(f0, f0, 1.0), 0.0);
}

}  // namespace
}  // namespace nnsieve
