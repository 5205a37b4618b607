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

#ifndef NNSIEVE_TRAINER_HPP_
#define NNSIEVE_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nnsieve/network.hpp"

namespace nnsieve {

enum class AlphaStepRule {
  // delta_k = alpha_step_scale / log(e + k)
  kDiminishing,
  // delta_k = alpha_step_scale
  kConstant,
};

struct TrainConfig {
  std::size_t iterations = 20000;
  double alpha_step_scale = 0.1;
  AlphaStepRule alpha_step_rule = AlphaStepRule::kDiminishing;
  double gamma_learning_rate = 0.1;
  // Initial parameters are drawn uniformly from [-init_scale, init_scale].
  double init_scale = 0.5;
  std::uint64_t seed = 0;
  // Stop once a feasible iterate changes the loss by at most eta_n. Zero runs
  // the full iteration budget.
  double eta_n = 0.0;

  void validate() const;
};

struct FitResult {
  Theta theta_hat;
  double final_loss;
  // Empirical loss of every iterate, starting with the initial parameters.
  std::vector<double> loss_trace;
  // Running minimum of the loss over feasible iterates.
  std::vector<double> best_loss_trace;
  bool feasible;
  std::size_t iterations_run;
  std::size_t best_iteration;
};

/// Nonsummable diminishing step size scale / log(e + k).
double step_size(std::uint64_t k, double scale);

/// Update direction for (alpha_0, ..., alpha_r). When sum |alpha_j| <= V_n this
/// is the loss gradient restricted to the output layer; otherwise it is the
/// subgradient sign(alpha) of the l1 constraint, taking 0 at alpha_j = 0.
std::vector<double> alpha_subgradient(const Theta& theta, const Dataset& data, double v_n);

/// Deterministic random start. When `alpha_bound` is given the output-layer
/// weights are shrunk, if needed, so that sum |alpha_j| <= alpha_bound.
Theta initialize(std::size_t hidden_units, std::size_t input_dim, const TrainConfig& config,
                 std::optional<double> alpha_bound = std::nullopt);

/// Least-squares fit over networks with r_n hidden units and
/// sum |alpha_j| <= V_n. The output layer moves by (sub)gradient steps with
/// step size delta_k, the hidden layer by plain gradient descent. The lowest-
/// loss feasible iterate seen along the way is returned.
///
/// Pass V_n = +infinity for an unconstrained fit.
FitResult fit(const Dataset& data, std::size_t r_n, double v_n, const TrainConfig& config);

}  // namespace nnsieve

#endif  // NNSIEVE_TRAINER_HPP_
