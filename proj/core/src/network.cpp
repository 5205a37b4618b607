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

#include "nnsieve/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "nnsieve/errors.hpp"

namespace nnsieve {

double sigmoid(double z) noexcept {
  const double e = std::exp(-std::abs(z));
  return z >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
}

// ---------------------------------------------------------------------------
// Theta

Theta::Theta(std::size_t hidden_units, std::size_t input_dim)
    : input_dim_(input_dim),
      alpha_(hidden_units, 0.0),
      gamma0_(hidden_units, 0.0),
      gamma_(hidden_units * input_dim, 0.0) {
  if (hidden_units == 0) throw InvalidInput("Theta: need at least one hidden unit");
  if (input_dim == 0) throw InvalidInput("Theta: input dimension must be >= 1");
}

Theta::Theta(double alpha0, std::vector<double> alpha, std::vector<double> gamma0,
             std::vector<std::vector<double>> gamma)
    : input_dim_(gamma.empty() ? 0 : gamma.front().size()),
      alpha0_(alpha0),
      alpha_(std::move(alpha)),
      gamma0_(std::move(gamma0)) {
  const std::size_t r = alpha_.size();
  if (r == 0) throw InvalidInput("Theta: need at least one hidden unit");
  if (gamma0_.size() != r || gamma.size() != r) {
    throw InvalidInput("Theta: alpha, gamma0 and gamma must have " +
                       std::to_string(r) + " hidden units");
  }
  if (input_dim_ == 0) throw InvalidInput("Theta: input dimension must be >= 1");
  gamma_.reserve(r * input_dim_);
  for (const auto& row : gamma) {
    if (row.size() != input_dim_) {
      throw InvalidInput("Theta: every hidden weight vector needs length " +
                         std::to_string(input_dim_));
    }
    gamma_.insert(gamma_.end(), row.begin(), row.end());
  }
}

std::size_t Theta::parameter_count() const noexcept {
  return hidden_units() * (input_dim_ + 2) + 1;
}

std::span<const double> Theta::gamma(std::size_t unit) const {
  if (unit >= hidden_units()) throw InvalidInput("Theta::gamma: unit out of range");
  return std::span<const double>(gamma_).subspan(unit * input_dim_, input_dim_);
}

std::span<double> Theta::gamma(std::size_t unit) {
  if (unit >= hidden_units()) throw InvalidInput("Theta::gamma: unit out of range");
  return std::span<double>(gamma_).subspan(unit * input_dim_, input_dim_);
}

double Theta::alpha_l1() const noexcept {
  double sum = std::abs(alpha0_);
  for (double a : alpha_) sum += std::abs(a);
  return sum;
}

double Theta::max_hidden_l1() const noexcept {
  double worst = 0.0;
  for (std::size_t j = 0; j < hidden_units(); ++j) {
    double s = std::abs(gamma0_[j]);
    for (std::size_t i = 0; i < input_dim_; ++i) s += std::abs(gamma_[j * input_dim_ + i]);
    worst = std::max(worst, s);
  }
  return worst;
}

std::vector<double> Theta::to_vector() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  out.push_back(alpha0_);
  out.insert(out.end(), alpha_.begin(), alpha_.end());
  out.insert(out.end(), gamma0_.begin(), gamma0_.end());
  out.insert(out.end(), gamma_.begin(), gamma_.end());
  return out;
}

Theta Theta::from_vector(std::size_t hidden_units, std::size_t input_dim,
                         std::span<const double> values) {
  Theta theta(hidden_units, input_dim);
  if (values.size() != theta.parameter_count()) {
    throw InvalidInput("Theta::from_vector: expected " +
                       std::to_string(theta.parameter_count()) + " values, got " +
                       std::to_string(values.size()));
  }
  auto it = values.begin();
  theta.alpha0_ = *it++;
  for (auto& a : theta.alpha_) a = *it++;
  for (auto& g : theta.gamma0_) g = *it++;
  for (auto& g : theta.gamma_) g = *it++;
  return theta;
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::size_t input_dim, std::vector<double> x_flat,
                 std::vector<double> y, std::optional<std::vector<double>> f0_values)
    : input_dim_(input_dim), x_(std::move(x_flat)), y_(std::move(y)), f0_(std::move(f0_values)) {
  if (input_dim_ == 0) throw InvalidInput("Dataset: input dimension must be >= 1");
  if (y_.empty()) throw InvalidInput("Dataset: need at least one observation");
  if (x_.size() != y_.size() * input_dim_) {
    throw InvalidInput("Dataset: " + std::to_string(y_.size()) + " responses but " +
                       std::to_string(x_.size()) + " covariate values for d = " +
                       std::to_string(input_dim_));
  }
  if (f0_ && f0_->size() != y_.size()) {
    throw InvalidInput("Dataset: f0_values length differs from y");
  }
}

Dataset Dataset::univariate(std::vector<double> x, std::vector<double> y,
                            std::optional<std::vector<double>> f0_values) {
  return Dataset(1, std::move(x), std::move(y), std::move(f0_values));
}

std::span<const double> Dataset::point(std::size_t i) const {
  if (i >= size()) throw InvalidInput("Dataset::point: index out of range");
  return std::span<const double>(x_).subspan(i * input_dim_, input_dim_);
}

std::span<const double> Dataset::f0_values() const {
  if (!f0_) throw InvalidInput("Dataset: no true-function values attached");
  return *f0_;
}

// ---------------------------------------------------------------------------
// Evaluation and gradients

namespace {

void require_matching_dims(const Theta& theta, std::size_t d) {
  if (theta.input_dim() != d) {
    throw InvalidInput("dimension mismatch: network expects d = " +
                       std::to_string(theta.input_dim()) + ", got " + std::to_string(d));
  }
}

double unit_argument(const Theta& theta, std::size_t j, const double* x) {
  const std::size_t d = theta.input_dim();
  const double* g = theta.gamma_flat().data() + j * d;
  double z = theta.gamma0()[j];
  for (std::size_t i = 0; i < d; ++i) z += g[i] * x[i];
  return z;
}

double eval_unchecked(const Theta& theta, const double* x) {
  double f = theta.alpha0();
  const auto alpha = theta.alpha();
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    f += alpha[j] * sigmoid(unit_argument(theta, j, x));
  }
  return f;
}

}  // namespace

double eval(const Theta& theta, std::span<const double> x) {
  require_matching_dims(theta, x.size());
  return eval_unchecked(theta, x.data());
}

std::vector<double> eval_all(const Theta& theta, const Dataset& data) {
  require_matching_dims(theta, data.input_dim());
  std::vector<double> out(data.size());
  const double* x = data.x_flat().data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = eval_unchecked(theta, x + i * data.input_dim());
  }
  return out;
}

double empirical_loss(const Theta& theta, const Dataset& data) {
  const auto fitted = eval_all(theta, data);
  const auto y = data.y();
  double sum = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) {
    const double res = y[i] - fitted[i];
    sum += res * res;
  }
  return sum / static_cast<double>(data.size());
}

double loss_and_grad(const Theta& theta, const Dataset& data, Gradient& out) {
  require_matching_dims(theta, data.input_dim());
  const std::size_t r = theta.hidden_units();
  const std::size_t d = theta.input_dim();
  if (out.hidden_units() != r || out.input_dim() != d) out = Gradient(r, d);

  double g_alpha0 = 0.0;
  auto g_alpha = out.alpha();
  auto g_gamma0 = out.gamma0();
  auto g_gamma = out.gamma_flat();
  std::fill(g_alpha.begin(), g_alpha.end(), 0.0);
  std::fill(g_gamma0.begin(), g_gamma0.end(), 0.0);
  std::fill(g_gamma.begin(), g_gamma.end(), 0.0);

  const auto alpha = theta.alpha();
  const auto y = data.y();
  const double* xs = data.x_flat().data();

  std::vector<double> act(r);
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double* x = xs + i * d;
    double f = theta.alpha0();
    for (std::size_t j = 0; j < r; ++j) {
      act[j] = sigmoid(unit_argument(theta, j, x));
      f += alpha[j] * act[j];
    }
    const double res = y[i] - f;
    loss += res * res;
    // dQ/df_i = -2 res / n; the 1/n and -2 are applied once at the end.
    g_alpha0 += res;
    for (std::size_t j = 0; j < r; ++j) {
      g_alpha[j] += res * act[j];
      const double back = res * alpha[j] * act[j] * (1.0 - act[j]);
      g_gamma0[j] += back;
      double* gg = g_gamma.data() + j * d;
      for (std::size_t k = 0; k < d; ++k) gg[k] += back * x[k];
    }
  }
  const double scale = -2.0 / static_cast<double>(data.size());
  out.alpha0() = g_alpha0 * scale;
  for (auto& v : g_alpha) v *= scale;
  for (auto& v : g_gamma0) v *= scale;
  for (auto& v : g_gamma) v *= scale;
  return loss / static_cast<double>(data.size());
}

Gradient grad(const Theta& theta, const Dataset& data) {
  Gradient g(theta.hidden_units(), theta.input_dim());
  loss_and_grad(theta, data, g);
  return g;
}

// ---------------------------------------------------------------------------
// Empirical pseudo-norm

namespace {

void require_nonempty(std::span<const double> f, const char* what) {
  if (f.empty()) throw InvalidInput(std::string(what) + ": empty sequence");
}

}  // namespace

double inner_product(std::span<const double> f, std::span<const double> g) {
  require_nonempty(f, "inner_product");
  if (f.size() != g.size()) throw InvalidInput("inner_product: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum / static_cast<double>(f.size());
}

double empirical_norm(std::span<const double> f) {
  require_nonempty(f, "empirical_norm");
  return std::sqrt(inner_product(f, f));
}

double empirical_norm(std::span<const double> f, std::span<const double> g) {
  require_nonempty(f, "empirical_norm");
  if (f.size() != g.size()) throw InvalidInput("empirical_norm: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double diff = f[i] - g[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / static_cast<double>(f.size()));
}

// ---------------------------------------------------------------------------
// Total variation

namespace {

// 15-point Kronrod rule with its embedded 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
  double value;
  double error;
};

RuleResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[k];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[k] * sum;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, int depth) {
  const RuleResult whole = gauss_kronrod_15(f, a, b);
  if (whole.error <= tol || depth >= 40) return whole.value;
  const double mid = 0.5 * (a + b);
  return adaptive_integrate(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_integrate(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double total_variation(const Theta& theta) {
  if (theta.input_dim() != 1) {
    throw Unsupported("total_variation: only d = 1 networks are supported");
  }
  const auto alpha = theta.alpha();
  const auto gamma0 = theta.gamma0();
  const auto gamma = theta.gamma_flat();

  // Outside |gamma_j x + gamma0_j| <= 40 a unit's remaining sigmoid mass is
  // below 1e-17, so each active unit contributes a window and the window
  // endpoints, together with the unit centres, become breakpoints.
  constexpr double kWindow = 40.0;
  std::vector<double> breaks;
  double mass = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0.0 || gamma[j] == 0.0) continue;
    mass += std::abs(alpha[j]);
    const double center = -gamma0[j] / gamma[j];
    const double scale = 1.0 / std::abs(gamma[j]);
    for (double u : {-kWindow, -8.0, -2.0, 0.0, 2.0, 8.0, kWindow}) {
      breaks.push_back(center + u * scale);
    }
  }
  if (breaks.empty()) return 0.0;
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const std::function<double(double)> abs_derivative = [&](double x) {
    double deriv = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0.0 || gamma[j] == 0.0) continue;
      const double s = sigmoid(gamma[j] * x + gamma0[j]);
      deriv += alpha[j] * gamma[j] * s * (1.0 - s);
    }
    return std::abs(deriv);
  };

  const double tol = 1e-12 * std::max(1.0, mass);
  const double per_piece = tol / static_cast<double>(breaks.size());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    total += adaptive_integrate(abs_derivative, breaks[k], breaks[k + 1], per_piece, 0);
  }
  return total;
}

}  // namespace nnsieve
