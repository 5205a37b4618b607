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

#include "nnsieve/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nnsieve/errors.hpp"
#include "nnsieve/normal.hpp"

namespace nnsieve {

double sigma_hat_sq(std::span<const double> residuals) {
  if (residuals.empty()) throw InvalidInput("sigma_hat_sq: empty residuals");
  double sum = 0.0;
  for (double e : residuals) sum += e * e;
  return sum / static_cast<double>(residuals.size());
}

double normality_statistic(std::span<const double> fhat_values,
                           std::span<const double> f0_values, double sigma) {
  if (fhat_values.empty()) throw InvalidInput("normality_statistic: empty input");
  if (fhat_values.size() != f0_values.size()) {
    throw InvalidInput("normality_statistic: length mismatch");
  }
  if (!(sigma > 0.0)) throw InvalidInput("normality_statistic: sigma must be > 0");
  double sum = 0.0;
  for (std::size_t i = 0; i < fhat_values.size(); ++i) sum += fhat_values[i] - f0_values[i];
  return sum / (sigma * std::sqrt(static_cast<double>(fhat_values.size())));
}

double kolmogorov_sf(double lambda) noexcept {
  if (!(lambda > 0.0)) return 1.0;
  double p;
  if (lambda < 1.18) {
    // Jacobi-theta form converges fast for small arguments.
    const double w = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * w);
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    p = 1.0 - cdf;
  } else {
    p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      p += sign * term;
      if (term < 1e-300) break;
      sign = -sign;
    }
    p *= 2.0;
  }
  return std::clamp(p, 0.0, 1.0);
}

TestReport ks_test_std_normal(std::span<const double> sample) {
  if (sample.empty()) throw InvalidInput("ks_test_std_normal: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - cdf;
    const double below = cdf - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  const double root_n = std::sqrt(n);
  const double lambda = (root_n + 0.12 + 0.11 / root_n) * d;
  return TestReport{d, kolmogorov_sf(lambda), "kolmogorov_smirnov"};
}

std::vector<QQPoint> qq_points(std::span<const double> sample) {
  if (sample.empty()) throw InvalidInput("qq_points: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<QQPoint> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back({normal_quantile((static_cast<double>(i) + 0.5) / n), sorted[i]});
  }
  return out;
}

}  // namespace nnsieve
