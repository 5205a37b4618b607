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

#include "nnsieve/trainer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "nnsieve/errors.hpp"

namespace nnsieve {

void TrainConfig::validate() const {
  if (iterations == 0) throw InvalidInput("TrainConfig: iterations must be >= 1");
  if (!(alpha_step_scale > 0.0)) throw InvalidInput("TrainConfig: alpha_step_scale must be > 0");
  if (!(gamma_learning_rate > 0.0)) {
    throw InvalidInput("TrainConfig: gamma_learning_rate must be > 0");
  }
  if (!(init_scale >= 0.0)) throw InvalidInput("TrainConfig: init_scale must be >= 0");
  if (!(eta_n >= 0.0)) throw InvalidInput("TrainConfig: eta_n must be >= 0");
}

double step_size(std::uint64_t k, double scale) {
  if (!(scale > 0.0)) throw InvalidInput("step_size: scale must be > 0");
  return scale / std::log(std::numbers::e + static_cast<double>(k));
}

namespace {

double sign_or_zero(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

std::vector<double> alpha_subgradient(const Theta& theta, const Dataset& data, double v_n) {
  std::vector<double> out(theta.hidden_units() + 1);
  if (theta.alpha_l1() <= v_n) {
    const Gradient g = grad(theta, data);
    out[0] = g.alpha0();
    for (std::size_t j = 0; j < theta.hidden_units(); ++j) out[j + 1] = g.alpha()[j];
  } else {
    out[0] = sign_or_zero(theta.alpha0());
    for (std::size_t j = 0; j < theta.hidden_units(); ++j) {
      out[j + 1] = sign_or_zero(theta.alpha()[j]);
    }
  }
  return out;
}

Theta initialize(std::size_t hidden_units, std::size_t input_dim, const TrainConfig& config,
                 std::optional<double> alpha_bound) {
  Theta theta(hidden_units, input_dim);
  if (config.init_scale == 0.0) return theta;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif(-config.init_scale, config.init_scale);
  theta.alpha0() = unif(rng);
  for (auto& a : theta.alpha()) a = unif(rng);
  for (auto& g : theta.gamma0()) g = unif(rng);
  for (auto& g : theta.gamma_flat()) g = unif(rng);
  if (alpha_bound) {
    const double l1 = theta.alpha_l1();
    if (l1 > *alpha_bound) {
      const double shrink = *alpha_bound / l1;
      theta.alpha0() *= shrink;
      for (auto& a : theta.alpha()) a *= shrink;
    }
  }
  return theta;
}

FitResult fit(const Dataset& data, std::size_t r_n, double v_n, const TrainConfig& config) {
  config.validate();
  if (r_n == 0) throw InvalidInput("fit: r_n must be >= 1");
  if (!(v_n > 4.0)) throw InvalidInput("fit: V_n must exceed 4, got " + std::to_string(v_n));

  Theta theta = initialize(r_n, data.input_dim(), config, v_n);
  Gradient g(r_n, data.input_dim());

  FitResult result{.theta_hat = theta,
                   .final_loss = std::numeric_limits<double>::infinity(),
                   .loss_trace = {},
                   .best_loss_trace = {},
                   .feasible = false,
                   .iterations_run = 0,
                   .best_iteration = 0};
  result.loss_trace.reserve(config.iterations + 1);
  result.best_loss_trace.reserve(config.iterations + 1);

  double previous_loss = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0;; ++k) {
    const double loss = loss_and_grad(theta, data, g);
    const bool feasible = theta.alpha_l1() <= v_n;
    result.loss_trace.push_back(loss);
    if (feasible && loss < result.final_loss) {
      result.theta_hat = theta;
      result.final_loss = loss;
      result.best_iteration = k;
      result.feasible = true;
    }
    result.best_loss_trace.push_back(result.final_loss);

    if (k == config.iterations) break;
    if (config.eta_n > 0.0 && feasible && k > 0 &&
        std::abs(loss - previous_loss) <= config.eta_n) {
      break;
    }
    previous_loss = loss;

    const double delta = config.alpha_step_rule == AlphaStepRule::kDiminishing
                             ? step_size(k, config.alpha_step_scale)
                             : config.alpha_step_scale;
    if (feasible) {
      theta.alpha0() -= delta * g.alpha0();
      for (std::size_t j = 0; j < r_n; ++j) theta.alpha()[j] -= delta * g.alpha()[j];
    } else {
      theta.alpha0() -= delta * sign_or_zero(theta.alpha0());
      for (auto& a : theta.alpha()) a -= delta * sign_or_zero(a);
    }
    const double lr = config.gamma_learning_rate;
    for (std::size_t j = 0; j < r_n; ++j) theta.gamma0()[j] -= lr * g.gamma0()[j];
    auto gamma = theta.gamma_flat();
    const auto g_gamma = g.gamma_flat();
    for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] -= lr * g_gamma[i];
    ++result.iterations_run;
  }

  if (!result.feasible) {
    // The start is feasible by construction, so this only happens when every
    // loss evaluated was NaN.
    throw InvariantViolation("fit: no feasible iterate with a finite loss");
  }
  return result;
}

}  // namespace nnsieve
