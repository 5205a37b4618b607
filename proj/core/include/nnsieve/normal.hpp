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

#ifndef NNSIEVE_NORMAL_HPP_
#define NNSIEVE_NORMAL_HPP_

namespace nnsieve {

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Standard normal CDF Phi(x), from the complementary error function.
double normal_cdf(double x) noexcept;

/// Upper tail 1 - Phi(x) without cancellation for large x.
double normal_sf(double x) noexcept;

/// Phi^{-1}(p). Returns -inf / +inf at p = 0 / 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

}  // namespace nnsieve

#endif  // NNSIEVE_NORMAL_HPP_
