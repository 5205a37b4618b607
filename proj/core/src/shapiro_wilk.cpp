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

// Shapiro-Wilk W test following Royston's algorithm AS R94 (Applied
// Statistics 44, 1995): polynomial approximations to the extreme
// coefficients, Blom-type scores for the rest, and a normalizing transform of
// log(1 - W) for the p-value.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nnsieve/errors.hpp"
#include "nnsieve/normal.hpp"
#include "nnsieve/stats.hpp"

namespace nnsieve {

namespace {

constexpr std::size_t kMinSize = 3;
constexpr std::size_t kMaxSize = 5000;

constexpr std::array<double, 6> kC1 = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr std::array<double, 6> kC2 = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr std::array<double, 4> kC3 = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr std::array<double, 4> kC4 = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr std::array<double, 4> kC5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr std::array<double, 3> kC6 = {-0.4803, -0.082676, 0.0030302};
constexpr std::array<double, 2> kG = {-2.273, 0.459};

// c[0] + c[1] x + c[2] x^2 + ...
template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

void require_supported_size(std::size_t n) {
  if (n < kMinSize || n > kMaxSize) {
    throw Unsupported("shapiro_wilk: sample size must be in [3, 5000], got " +
                      std::to_string(n));
  }
}

// Upper-half coefficients a_1 >= a_2 >= ... > 0 (a_1 pairs with the extremes).
std::vector<double> half_weights(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }
  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

  std::size_t first_scored;
  double fac;
  if (n > 5) {
    first_scored = 2;
    const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    first_scored = 1;
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first_scored; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

double p_value(double w, std::size_t n) {
  if (n == 3) {
    // Exact null distribution for three observations.
    const double p = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
    return std::clamp(p, 0.0, 1.0);
  }
  const double an = static_cast<double>(n);
  double y = std::log1p(-w);
  double mean;
  double sd;
  if (n <= 11) {
    const double gamma = poly(kG, an);
    if (y >= gamma) return 1e-99;
    y = -std::log(gamma - y);
    mean = poly(kC3, an);
    sd = std::exp(poly(kC4, an));
  } else {
    const double ln = std::log(an);
    mean = poly(kC5, ln);
    sd = std::exp(poly(kC6, ln));
  }
  return std::clamp(normal_sf((y - mean) / sd), 0.0, 1.0);
}

}  // namespace

std::vector<double> shapiro_wilk_weights(std::size_t n) {
  require_supported_size(n);
  const auto half = half_weights(n);
  std::vector<double> full(n, 0.0);
  for (std::size_t i = 0; i < half.size(); ++i) {
    full[n - 1 - i] = half[i];
    full[i] = -half[i];
  }
  return full;
}

TestReport shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  require_supported_size(n);
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 1e-19 * std::max(1.0, std::abs(x.front())))) {
    throw DegenerateSample("shapiro_wilk: all observations are identical");
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  const auto a = shapiro_wilk_weights(n);
  double numerator = 0.0;
  double ss = 0.0;
  double a_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double centered = (x[i] - mean) / range;
    numerator += a[i] * centered;
    ss += centered * centered;
    a_sq += a[i] * a[i];
  }
  const double w = std::min(1.0, numerator * numerator / (a_sq * ss));
  return TestReport{w, p_value(w, n), "shapiro_wilk"};
}

}  // namespace nnsieve
