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

#ifndef NNSIEVE_STATS_HPP_
#define NNSIEVE_STATS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nnsieve {

struct TestReport {
  double statistic_value;
  double p_value;
  std::string test_name;
};

/// Mean squared residual n^{-1} sum e_i^2, the plug-in noise variance.
double sigma_hat_sq(std::span<const double> residuals);

/// T_n = (sigma sqrt(n))^{-1} sum_i [fhat(x_i) - f0(x_i)].
/// sigma = 1 gives the unstandardized sum statistic.
double normality_statistic(std::span<const double> fhat_values,
                           std::span<const double> f0_values, double sigma);

/// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_sf(double lambda) noexcept;

/// One-sample Kolmogorov-Smirnov test against the fully specified N(0, 1).
/// D is exact; the p-value comes from the limiting Kolmogorov law evaluated at
/// Stephens' effective argument (sqrt(n) + 0.12 + 0.11/sqrt(n)) D.
TestReport ks_test_std_normal(std::span<const double> sample);

/// Royston's (1995, AS R94) approximations for the Shapiro-Wilk coefficients,
/// W statistic and p-value. Supports 3 <= n <= 5000; throws Unsupported
/// outside that range and DegenerateSample when all values coincide.
TestReport shapiro_wilk(std::span<const double> sample);

/// Antisymmetric Shapiro-Wilk weights for a sample of size n, ordered to
/// match the ascending order statistics. Unit length.
std::vector<double> shapiro_wilk_weights(std::size_t n);

struct QQPoint {
  double theoretical;
  double empirical;
};

/// Normal Q-Q coordinates (Phi^{-1}((i - 0.5)/n), x_(i)).
std::vector<QQPoint> qq_points(std::span<const double> sample);

}  // namespace nnsieve

#endif  // NNSIEVE_STATS_HPP_
