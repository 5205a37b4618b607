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

#include "nnsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nnsieve/errors.hpp"

namespace nnsieve {

SieveSchedule SieveSchedule::consistency(std::size_t input_dim) {
  return SieveSchedule{.r_scale = 1.0,
                       .r_exponent = 0.25,
                       .v_scale = 10.0,
                       .v_exponent = 0.25,
                       .m_constant = std::nullopt,
                       .input_dim = input_dim};
}

SieveSchedule SieveSchedule::normality(std::size_t input_dim) {
  return SieveSchedule{.r_scale = 1.0,
                       .r_exponent = 0.125,
                       .v_scale = 10.0,
                       .v_exponent = 0.1,
                       .m_constant = std::nullopt,
                       .input_dim = input_dim};
}

SieveSchedule SieveSchedule::fixed(std::size_t hidden_units, std::size_t input_dim) {
  return SieveSchedule{.r_scale = static_cast<double>(hidden_units),
                       .r_exponent = 0.0,
                       .v_scale = std::numeric_limits<double>::infinity(),
                       .v_exponent = 0.0,
                       .m_constant = std::nullopt,
                       .input_dim = input_dim};
}

void SieveSchedule::validate() const {
  if (input_dim == 0) throw InvalidInput("SieveSchedule: input_dim must be >= 1");
  if (!(r_scale > 0.0) || !std::isfinite(r_scale)) {
    throw InvalidInput("SieveSchedule: r_scale must be positive and finite");
  }
  if (!(r_exponent >= 0.0) || !(v_exponent >= 0.0)) {
    throw InvalidInput("SieveSchedule: growth exponents must be >= 0");
  }
  // V_1 = v_scale, and V_n is nondecreasing, so V_n > 4 everywhere iff v_scale > 4.
  if (!(v_scale > 4.0)) throw InvalidInput("SieveSchedule: v_scale must exceed 4");
  if (m_constant && !(*m_constant > 0.0)) {
    throw InvalidInput("SieveSchedule: M_n constant must be positive");
  }
}

SieveDims dims(const SieveSchedule& schedule, std::uint64_t n) {
  if (n == 0) throw InvalidInput("dims: n must be >= 1");
  const double nd = static_cast<double>(n);
  // pow can land a hair below an exact integer (e.g. 16^{1/4}); the relative
  // nudge keeps floor() on the intended side.
  const double r_raw = schedule.r_scale * std::pow(nd, schedule.r_exponent);
  const auto r = static_cast<std::size_t>(std::max(1.0, std::floor(r_raw * (1.0 + 1e-12))));
  const double v = schedule.v_scale * std::pow(nd, schedule.v_exponent);
  const double m = schedule.m_constant.value_or(std::max(10.0, v));
  return SieveDims{r, v, m, r * (schedule.input_dim + 2) + 1};
}

bool is_feasible(const Theta& theta, std::size_t r_n, double v_n, double m_n) noexcept {
  return theta.hidden_units() <= r_n && theta.alpha_l1() <= v_n &&
         theta.max_hidden_l1() <= m_n;
}

double log_covering_bound(const EntropyQuery& query, std::size_t r_n, double v_n,
                          std::size_t input_dim) {
  if (!(v_n > 4.0)) {
    throw DomainError("log_covering_bound: V_n must exceed 4, got " + std::to_string(v_n));
  }
  if (!(query.epsilon > 0.0)) throw InvalidInput("log_covering_bound: epsilon must be > 0");
  if (query.n == 0) throw InvalidInput("log_covering_bound: n must be >= 1");
  if (r_n == 0 || input_dim == 0) throw InvalidInput("log_covering_bound: r_n, d must be >= 1");
  const double p = static_cast<double>(r_n * (input_dim + 2) + 1);
  const double quarter = v_n / 4.0;
  return p * std::log(4.0 * std::numbers::e * p * quarter * quarter /
                      (query.epsilon * (quarter - 1.0)));
}

namespace {

void require_increasing(std::span<const std::uint64_t> n_grid) {
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] == 0) throw InvalidInput("n grid entries must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw InvalidInput("n grid must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<double> check_consistency_rate(const SieveSchedule& schedule,
                                           std::span<const std::uint64_t> n_grid) {
  require_increasing(n_grid);
  std::vector<double> ratios;
  ratios.reserve(n_grid.size());
  for (std::uint64_t n : n_grid) {
    const SieveDims s = dims(schedule, n);
    const double p = static_cast<double>(s.parameter_count);
    const double v = s.alpha_bound;
    ratios.push_back(p * v * v * std::log(v * p) / static_cast<double>(n));
  }
  return ratios;
}

std::vector<double> check_normality_rate(const SieveSchedule& schedule,
                                         std::span<const std::uint64_t> n_grid) {
  require_increasing(n_grid);
  std::vector<double> ratios;
  ratios.reserve(n_grid.size());
  const double d2 = static_cast<double>(schedule.input_dim + 2);
  for (std::uint64_t n : n_grid) {
    const SieveDims s = dims(schedule, n);
    const double width = static_cast<double>(s.hidden_units) * d2;
    ratios.push_back(width * s.alpha_bound * std::log(width * s.alpha_bound) /
                     std::pow(static_cast<double>(n), 0.25));
  }
  return ratios;
}

double normality_moment_ratio(std::uint64_t n, double rho_n, double v_n, double lambda) {
  if (!(lambda > 0.0)) throw InvalidInput("normality_moment_ratio: lambda must be > 0");
  if (!(rho_n > 0.0) || !(v_n > 0.0) || n == 0) {
    throw InvalidInput("normality_moment_ratio: n, rho_n and V_n must be positive");
  }
  return static_cast<double>(n) / (rho_n * rho_n) / std::pow(v_n, lambda);
}

double predicted_rate(const SieveSchedule& schedule, std::uint64_t n) {
  if (n < 2) throw InvalidInput("predicted_rate: n must be >= 2");
  const SieveDims s = dims(schedule, n);
  const double nd = static_cast<double>(n);
  return std::sqrt(static_cast<double>(s.hidden_units * (schedule.input_dim + 2)) *
                   std::log(nd) / nd);
}

}  // namespace nnsieve
