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

#ifndef NNSIEVE_NETWORK_HPP_
#define NNSIEVE_NETWORK_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nnsieve {

/// Logistic sigmoid 1/(1+e^{-z}), evaluated without overflow for any finite z.
double sigmoid(double z) noexcept;

/// Parameters of a single-hidden-layer sigmoid network
///
///   f(x) = alpha0 + sum_j alpha_j * sigmoid(gamma_j . x + gamma0_j)
///
/// with r hidden units and input dimension d. The hidden weight vectors are
/// stored row-major, one row of length d per unit.
class Theta {
 public:
  /// All-zero parameters.
  Theta(std::size_t hidden_units, std::size_t input_dim);
  Theta(double alpha0, std::vector<double> alpha, std::vector<double> gamma0,
        std::vector<std::vector<double>> gamma);

  std::size_t hidden_units() const noexcept { return alpha_.size(); }
  std::size_t input_dim() const noexcept { return input_dim_; }
  /// r(d+2)+1.
  std::size_t parameter_count() const noexcept;

  double alpha0() const noexcept { return alpha0_; }
  double& alpha0() noexcept { return alpha0_; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  std::span<double> alpha() noexcept { return alpha_; }
  std::span<const double> gamma0() const noexcept { return gamma0_; }
  std::span<double> gamma0() noexcept { return gamma0_; }
  std::span<const double> gamma(std::size_t unit) const;
  std::span<double> gamma(std::size_t unit);
  std::span<const double> gamma_flat() const noexcept { return gamma_; }
  std::span<double> gamma_flat() noexcept { return gamma_; }

  /// sum_{j=0}^{r} |alpha_j|, including the output bias.
  double alpha_l1() const noexcept;
  /// max_j (|gamma0_j| + sum_i |gamma_ij|).
  double max_hidden_l1() const noexcept;

  /// Flat layout: alpha0, alpha_1..r, gamma0_1..r, gamma_1 .. gamma_r.
  std::vector<double> to_vector() const;
  static Theta from_vector(std::size_t hidden_units, std::size_t input_dim,
                           std::span<const double> values);

  friend bool operator==(const Theta&, const Theta&) = default;

 private:
  std::size_t input_dim_;
  double alpha0_ = 0.0;
  std::vector<double> alpha_;
  std::vector<double> gamma0_;
  std::vector<double> gamma_;
};

/// Derivative of the empirical loss with respect to each parameter, laid out
/// like the parameters themselves.
using Gradient = Theta;

/// Fixed design points x_1..x_n in R^d with responses and, for simulated
/// data, the noiseless regression function at each design point.
class Dataset {
 public:
  Dataset(std::size_t input_dim, std::vector<double> x_flat,
          std::vector<double> y,
          std::optional<std::vector<double>> f0_values = std::nullopt);

  static Dataset univariate(
      std::vector<double> x, std::vector<double> y,
      std::optional<std::vector<double>> f0_values = std::nullopt);

  std::size_t size() const noexcept { return y_.size(); }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::span<const double> point(std::size_t i) const;
  std::span<const double> x_flat() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  bool has_f0() const noexcept { return f0_.has_value(); }
  /// Throws InvalidInput when the dataset carries no true-function values.
  std::span<const double> f0_values() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t input_dim_;
  std::vector<double> x_;
  std::vector<double> y_;
  std::optional<std::vector<double>> f0_;
};

double eval(const Theta& theta, std::span<const double> x);

/// Network output at every design point of `data`.
std::vector<double> eval_all(const Theta& theta, const Dataset& data);

/// Empirical squared-error loss n^{-1} sum_i (y_i - f(x_i))^2.
double empirical_loss(const Theta& theta, const Dataset& data);

/// Exact gradient of the empirical loss (backpropagation).
Gradient grad(const Theta& theta, const Dataset& data);

/// Loss and gradient in one pass. `out` must have the shape of `theta`; it is
/// overwritten. Returns the loss.
double loss_and_grad(const Theta& theta, const Dataset& data, Gradient& out);

/// ||f||_n = sqrt(n^{-1} sum f_i^2).
double empirical_norm(std::span<const double> f);
/// ||f - g||_n.
double empirical_norm(std::span<const double> f, std::span<const double> g);
/// <f, g>_n = n^{-1} sum f_i g_i.
double inner_product(std::span<const double> f, std::span<const double> g);

/// Total variation int |f'(x)| dx of a d = 1 network, by adaptive
/// Gauss-Kronrod quadrature over the region where some unit's sigmoid
/// argument lies in [-40, 40]. Throws Unsupported for d != 1.
double total_variation(const Theta& theta);

}  // namespace nnsieve

#endif  // NNSIEVE_NETWORK_HPP_
