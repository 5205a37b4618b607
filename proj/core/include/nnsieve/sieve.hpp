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

#ifndef NNSIEVE_SIEVE_HPP_
#define NNSIEVE_SIEVE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nnsieve/network.hpp"

namespace nnsieve {

/// Sizes of the sieve space at one sample size.
struct SieveDims {
  std::size_t hidden_units;  // r_n
  double alpha_bound;        // V_n, bound on sum_{j=0}^{r} |alpha_j|
  double hidden_bound;       // M_n, bound on max_j ||(gamma0_j, gamma_j)||_1
  std::size_t parameter_count;  // r_n (d + 2) + 1

  friend bool operator==(const SieveDims&, const SieveDims&) = default;
};

/// Growth rules for the sieve:
///   r_n = max(1, floor(r_scale * n^r_exponent))
///   V_n = v_scale * n^v_exponent
///   M_n = m_constant if set, otherwise max(10, V_n).
/// A v_scale of +infinity describes an unconstrained output layer.
struct SieveSchedule {
  double r_scale = 1.0;
  double r_exponent = 0.25;
  double v_scale = 10.0;
  double v_exponent = 0.25;
  std::optional<double> m_constant;
  std::size_t input_dim = 1;

  /// r_n = n^{1/4}, V_n = 10 n^{1/4}: the growth used for the consistency study.
  static SieveSchedule consistency(std::size_t input_dim = 1);
  /// r_n = n^{1/8}, V_n = 10 n^{1/10}: slower growth for asymptotic normality.
  static SieveSchedule normality(std::size_t input_dim = 1);
  /// Constant r hidden units and no output-weight constraint.
  static SieveSchedule fixed(std::size_t hidden_units, std::size_t input_dim = 1);

  /// Throws InvalidInput unless every r_n >= 1, V_n > 4, M_n > 0 and all three
  /// are nondecreasing in n.
  void validate() const;

  friend bool operator==(const SieveSchedule&, const SieveSchedule&) = default;
};

SieveDims dims(const SieveSchedule& schedule, std::uint64_t n);

/// Membership in F_{r_n}: hidden-unit count, output-layer l1 bound, and
/// hidden-layer l1 bound all satisfied.
bool is_feasible(const Theta& theta, std::size_t r_n, double v_n, double m_n) noexcept;

struct EntropyQuery {
  double epsilon;
  std::uint64_t n;
};

/// Upper bound on log N(eps, F_{r_n}, ||.||_inf):
///   p log( 4e p (V/4)^2 / (eps (V/4 - 1)) ),  p = r_n (d + 2) + 1.
/// Throws DomainError for V_n <= 4 and InvalidInput for eps <= 0 or n == 0.
double log_covering_bound(const EntropyQuery& query, std::size_t r_n, double v_n,
                          std::size_t input_dim);

/// [r_n(d+2)+1] V_n^2 log(V_n [r_n(d+2)+1]) / n for each n. Tending to zero
/// is the uniform-law condition behind consistency.
std::vector<double> check_consistency_rate(const SieveSchedule& schedule,
                                           std::span<const std::uint64_t> n_grid);

/// r_n(d+2) V_n log[r_n V_n (d+2)] / n^{1/4} for each n: the growth condition
/// behind asymptotic normality of the sum statistic.
std::vector<double> check_normality_rate(const SieveSchedule& schedule,
                                         std::span<const std::uint64_t> n_grid);

/// Second normality condition n rho_n^{-2} / V_n^lambda, where rho_n is the
/// inverse convergence rate and lambda the noise moment order in
/// E|eps|^{2+lambda} < inf. There is no default for lambda.
double normality_moment_ratio(std::uint64_t n, double rho_n, double v_n, double lambda);

/// Stochastic part of the convergence rate, sqrt(r_n (d+2) log n / n).
/// Requires n >= 2.
double predicted_rate(const SieveSchedule& schedule, std::uint64_t n);

}  // namespace nnsieve

#endif  // NNSIEVE_SIEVE_HPP_
