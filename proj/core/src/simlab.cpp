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

#include "nnsieve/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "nnsieve/errors.hpp"

namespace nnsieve {

std::string_view truth_name(TruthKind kind) noexcept {
  switch (kind) {
    case TruthKind::kNeuralNet:
      return "NN";
    case TruthKind::kTrig:
      return "TRIG";
    case TruthKind::kNonDifferentiable:
      return "ND";
  }
  return "?";
}

TruthKind parse_truth(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (TruthKind kind : kAllTruths) {
    if (upper == truth_name(kind)) return kind;
  }
  throw InvalidInput("unknown truth kind '" + std::string(name) + "' (expected NN, TRIG or ND)");
}

double true_function(TruthKind kind, double x) {
  switch (kind) {
    case TruthKind::kNeuralNet:
      return -1.0 + sigmoid(2.0 * x + 1.0) - sigmoid(-x + 1.0);
    case TruthKind::kTrig:
      return std::sin(std::numbers::pi * x / 3.0) +
             std::cos(std::numbers::pi * x / 4.0 + 1.0) / 3.0;
    case TruthKind::kNonDifferentiable:
      return x <= 0.0 ? -2.0 * x : std::sqrt(x) * (x - 0.25);
  }
  throw InvalidInput("true_function: unknown truth kind");
}

Theta true_network() { return Theta(-1.0, {1.0, -1.0}, {1.0, 1.0}, {{2.0}, {-1.0}}); }

void Scenario::validate() const {
  if (!(noise_sd >= 0.0)) throw InvalidInput("Scenario: noise_sd must be >= 0");
  if (n == 0) throw InvalidInput("Scenario: n must be >= 1");
  if (replicates == 0) throw InvalidInput("Scenario: replicates must be >= 1");
  if (schedule.input_dim != 1) {
    throw InvalidInput("Scenario: simulations use one-dimensional covariates");
  }
  schedule.validate();
  train.validate();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs task(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t state = splitmix64(master);
  for (std::uint64_t key : keys) state = splitmix64(state ^ splitmix64(key));
  return state;
}

std::uint64_t replicate_seed(std::uint64_t master, std::size_t n, std::size_t replicate) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(replicate)});
}

Dataset generate(const Scenario& scenario, std::uint64_t seed) {
  scenario.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> standard(0.0, 1.0);
  std::vector<double> x(scenario.n);
  std::vector<double> f0(scenario.n);
  std::vector<double> y(scenario.n);
  for (auto& xi : x) xi = standard(rng);
  for (std::size_t i = 0; i < scenario.n; ++i) {
    f0[i] = true_function(scenario.truth, x[i]);
    y[i] = f0[i] + scenario.noise_sd * standard(rng);
  }
  return Dataset::univariate(std::move(x), std::move(y), std::move(f0));
}

MatchedParameters match_to_reference(const Theta& estimate, const Theta& reference) {
  const std::size_t r = reference.hidden_units();
  const std::size_t d = reference.input_dim();
  if (estimate.hidden_units() != r || estimate.input_dim() != d) {
    throw InvalidInput("match_to_reference: networks differ in shape");
  }
  if (r > 8) throw InvalidInput("match_to_reference: at most 8 hidden units supported");

  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  const std::vector<double> target = reference.to_vector();

  std::optional<MatchedParameters> best;
  Theta candidate(r, d);
  do {
    for (std::uint32_t signs = 0; signs < (1u << r); ++signs) {
      candidate.alpha0() = estimate.alpha0();
      for (std::size_t k = 0; k < r; ++k) {
        const std::size_t src = order[k];
        const bool flip = (signs >> k) & 1u;
        const double s = flip ? -1.0 : 1.0;
        if (flip) candidate.alpha0() += estimate.alpha()[src];
        candidate.alpha()[k] = s * estimate.alpha()[src];
        candidate.gamma0()[k] = s * estimate.gamma0()[src];
        const auto from = estimate.gamma(src);
        auto to = candidate.gamma(k);
        for (std::size_t i = 0; i < d; ++i) to[i] = s * from[i];
      }
      const std::vector<double> values = candidate.to_vector();
      double dist = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        dist = std::max(dist, std::abs(values[i] - target[i]));
      }
      if (!best || dist < best->max_distance) best = MatchedParameters{candidate, dist};
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

ReplicateRecord run_replicate(const Scenario& scenario, std::size_t replicate) {
  const std::uint64_t seed = replicate_seed(scenario.master_seed, scenario.n, replicate);
  const Dataset data = generate(scenario, derive_seed(seed, {0}));
  const SieveDims sieve = dims(scenario.schedule, scenario.n);

  TrainConfig train = scenario.train;
  train.seed = derive_seed(seed, {1});
  const FitResult fitted = fit(data, sieve.hidden_units, sieve.alpha_bound, train);

  const std::vector<double> fhat = eval_all(fitted.theta_hat, data);
  const auto f0 = data.f0_values();
  const auto y = data.y();
  std::vector<double> residuals(fhat.size());
  for (std::size_t i = 0; i < fhat.size(); ++i) residuals[i] = y[i] - fhat[i];

  const double dist = empirical_norm(fhat, f0);
  const double sigma_sq = sigma_hat_sq(residuals);
  const double known_sd = scenario.noise_sd > 0.0 ? scenario.noise_sd : 1.0;
  return ReplicateRecord{
      .truth = scenario.truth,
      .n = scenario.n,
      .replicate = replicate,
      .seed = seed,
      .hidden_units = sieve.hidden_units,
      .alpha_bound = sieve.alpha_bound,
      .err = dist * dist,
      .loss = fitted.final_loss,
      .t_known = normality_statistic(fhat, f0, known_sd),
      .t_plugin = sigma_sq > 0.0 ? normality_statistic(fhat, f0, std::sqrt(sigma_sq))
                                 : std::numeric_limits<double>::quiet_NaN(),
      .theta_hat = fitted.theta_hat,
      .parameter_distance = std::nullopt,
  };
}

namespace {

std::vector<ReplicateRecord> run_all(std::span<const Scenario> scenarios, std::size_t workers) {
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    scenarios[s].validate();
    for (std::size_t r = 0; r < scenarios[s].replicates; ++r) tasks.emplace_back(s, r);
  }
  std::vector<std::optional<ReplicateRecord>> slots(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    slots[i] = run_replicate(scenarios[tasks[i].first], tasks[i].second);
  });
  std::vector<ReplicateRecord> records;
  records.reserve(slots.size());
  for (auto& slot : slots) records.push_back(std::move(*slot));
  return records;
}

}  // namespace

ExperimentReport run_inconsistency(const Scenario& scenario, std::size_t workers) {
  if (scenario.truth != TruthKind::kNeuralNet) {
    throw InvalidInput("run_inconsistency: requires the two-unit network truth");
  }
  const Theta reference = true_network();
  if (dims(scenario.schedule, scenario.n).hidden_units != reference.hidden_units()) {
    throw InvalidInput("run_inconsistency: schedule must fix r at 2 hidden units");
  }
  ExperimentReport report;
  report.records = run_all(std::span(&scenario, 1), workers);
  for (auto& record : report.records) {
    MatchedParameters matched = match_to_reference(record.theta_hat, reference);
    record.theta_hat = std::move(matched.theta);
    record.parameter_distance = matched.max_distance;
  }
  report.reference_theta = reference;
  return report;
}

ExperimentReport run_consistency(std::span<const Scenario> scenarios, std::size_t workers) {
  ExperimentReport report;
  report.records = run_all(scenarios, workers);
  return report;
}

NormalityCell summarize_normality(TruthKind truth, std::size_t n, std::vector<double> t_known,
                                  std::vector<double> t_plugin) {
  if (t_known.size() < 3) {
    throw InvalidInput("summarize_normality: need at least 3 replicates");
  }
  const double count = static_cast<double>(t_known.size());
  const double mean = std::accumulate(t_known.begin(), t_known.end(), 0.0) / count;
  double ss = 0.0;
  for (double t : t_known) ss += (t - mean) * (t - mean);
  NormalityCell cell{
      .truth = truth,
      .n = n,
      .t_known = {},
      .t_plugin = {},
      .ks = ks_test_std_normal(t_known),
      .shapiro = shapiro_wilk(t_known),
      .ks_plugin = ks_test_std_normal(t_plugin),
      .shapiro_plugin = shapiro_wilk(t_plugin),
      .qq = qq_points(t_known),
      .mean = mean,
      .sd = std::sqrt(ss / (count - 1.0)),
  };
  cell.t_known = std::move(t_known);
  cell.t_plugin = std::move(t_plugin);
  return cell;
}

ExperimentReport run_normality(std::span<const Scenario> scenarios, std::size_t workers) {
  ExperimentReport report;
  report.records = run_all(scenarios, workers);
  std::size_t offset = 0;
  for (const Scenario& scenario : scenarios) {
    std::vector<double> t_known;
    std::vector<double> t_plugin;
    for (std::size_t r = 0; r < scenario.replicates; ++r) {
      t_known.push_back(report.records[offset + r].t_known);
      t_plugin.push_back(report.records[offset + r].t_plugin);
    }
    offset += scenario.replicates;
    report.cells.push_back(
        summarize_normality(scenario.truth, scenario.n, std::move(t_known), std::move(t_plugin)));
  }
  return report;
}

}  // namespace nnsieve
