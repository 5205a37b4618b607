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

#ifndef NNSIEVE_SIMLAB_HPP_
#define NNSIEVE_SIMLAB_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nnsieve/network.hpp"
#include "nnsieve/sieve.hpp"
#include "nnsieve/stats.hpp"
#include "nnsieve/trainer.hpp"

namespace nnsieve {

enum class TruthKind {
  kNeuralNet,          // -1 + sigmoid(2x + 1) - sigmoid(-x + 1)
  kTrig,               // sin(pi x / 3) + cos(pi x / 4 + 1) / 3
  kNonDifferentiable,  // -2x for x <= 0, sqrt(x)(x - 1/4) for x > 0
};

inline constexpr std::array<TruthKind, 3> kAllTruths = {
    TruthKind::kNeuralNet, TruthKind::kTrig, TruthKind::kNonDifferentiable};

/// "NN", "TRIG", "ND".
std::string_view truth_name(TruthKind kind) noexcept;
/// Inverse of truth_name; also accepts lower case. Throws InvalidInput.
TruthKind parse_truth(std::string_view name);

double true_function(TruthKind kind, double x);

/// The two-unit network behind TruthKind::kNeuralNet.
Theta true_network();

struct Scenario {
  TruthKind truth = TruthKind::kNeuralNet;
  double noise_sd = 0.1;
  std::size_t n = 500;
  SieveSchedule schedule = SieveSchedule::consistency();
  TrainConfig train;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Counter-based seed split: a SplitMix64 chain over the master seed and the
/// keys, so any (master, keys) stream can be regenerated in isolation.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// Seed of replicate `replicate` at sample size `n`. Truth kinds share seeds,
/// so scenarios that differ only in f0 see the same covariates and noise.
std::uint64_t replicate_seed(std::uint64_t master, std::size_t n, std::size_t replicate);

/// x_i ~ N(0, 1), y_i = f0(x_i) + eps_i with eps_i ~ N(0, noise_sd^2).
Dataset generate(const Scenario& scenario, std::uint64_t seed);

/// Estimate expressed in the unit order and sign convention closest to a
/// reference network, and the max-norm distance that remains.
struct MatchedParameters {
  Theta theta;
  double max_distance;
};

/// Searches unit permutations and the sign flip
/// (alpha_j, gamma0_j, gamma_j, alpha_0) -> (-alpha_j, -gamma0_j, -gamma_j, alpha_0 + alpha_j),
/// both of which leave the network function unchanged. Limited to 8 units.
MatchedParameters match_to_reference(const Theta& estimate, const Theta& reference);

struct ReplicateRecord {
  TruthKind truth;
  std::size_t n;
  std::size_t replicate;
  std::uint64_t seed;
  std::size_t hidden_units;
  double alpha_bound;
  double err;       // ||fhat - f0||_n^2
  double loss;      // Q_n(fhat)
  double t_known;   // sum statistic standardized by the true noise sd
  double t_plugin;  // sum statistic standardized by sqrt(sigma_hat^2)
  Theta theta_hat;
  std::optional<double> parameter_distance;
};

struct NormalityCell {
  TruthKind truth;
  std::size_t n;
  std::vector<double> t_known;
  std::vector<double> t_plugin;
  TestReport ks;
  TestReport shapiro;
  TestReport ks_plugin;
  TestReport shapiro_plugin;
  std::vector<QQPoint> qq;
  double mean;
  double sd;
};

struct ExperimentReport {
  std::vector<ReplicateRecord> records;
  std::vector<NormalityCell> cells;
  std::optional<Theta> reference_theta;
};

/// Fits one replicate of a scenario end to end.
ReplicateRecord run_replicate(const Scenario& scenario, std::size_t replicate);

/// Fixed two-unit fits to data from the two-unit network truth, one per
/// replicate, with each estimate matched against the true parameters.
ExperimentReport run_inconsistency(const Scenario& scenario, std::size_t workers = 1);

/// One record per (scenario, replicate) in input order.
ExperimentReport run_consistency(std::span<const Scenario> scenarios, std::size_t workers = 1);

/// Replicated fits per scenario, summarized by normality tests and Q-Q
/// coordinates of the sum statistic.
ExperimentReport run_normality(std::span<const Scenario> scenarios, std::size_t workers = 1);

/// Normality summaries for a set of statistic values.
NormalityCell summarize_normality(TruthKind truth, std::size_t n, std::vector<double> t_known,
                                  std::vector<double> t_plugin);

}  // namespace nnsieve

#endif  // NNSIEVE_SIMLAB_HPP_
