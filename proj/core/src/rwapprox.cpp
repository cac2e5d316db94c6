// Copyright 2026 rwpost authors.
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

#include "rwpost/rwapprox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "rwpost/errors.hpp"
#include "rwpost/parallel.hpp"

namespace rwpost {

RwEcdf::RwEcdf(std::vector<double> sorted_draws)
    : values_(std::move(sorted_draws)) {
  if (values_.empty()) throw UsageError("empty ECDF");
  if (!std::is_sorted(values_.begin(), values_.end())) {
    throw UsageError("ECDF draws must be sorted ascending");
  }
}

double RwEcdf::value(double y) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), y);
  return double(it - values_.begin()) / double(values_.size());
}

double RwEcdf::left_limit(double y) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), y);
  return double(it - values_.begin()) / double(values_.size());
}

void RwEcdf::write_csv(std::ostream& os) const {
  char buf[40];
  for (const double v : values_) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    os << buf;
  }
}

WeightVector sample_weights(std::size_t n, RngStream& stream) {
  if (n == 0) throw UsageError("sample_weights requires n >= 1");
  WeightVector w;
  w.v.resize(n);
  double total = 0.0;
  for (auto& z : w.v) {
    z = stream.next_gamma4(2.0);
    total += z;
  }
  const double inv = 1.0 / total;
  for (auto& z : w.v) z *= inv;
  return w;
}

namespace {

double hbar(const ScoreStats& stats) {
  const double n = double(stats.alphas.size());
  return std::sqrt(stats.s2 / (n * (4.0 * n + 1.0)));
}

}  // namespace

double rw_statistic(const ScoreStats& stats, const WeightVector& w) {
  if (w.size() != stats.alphas.size()) {
    throw UsageError("weight vector length does not match sample size");
  }
  if (!(stats.s2 > 0.0)) {
    throw DegenerateScoreError("s2 = 0; weighted statistic undefined");
  }
  double h = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    h += (stats.alphas[j] - stats.alpha_bar) * w.v[j];
  }
  return h / hbar(stats);
}

RwCoefficients rw_coefficients(const MleFit& fit, const ScoreStats& stats,
                               const PriorValue& prior_at_fit) {
  if (!(prior_at_fit.density > 0.0)) {
    throw PriorSupportError("prior density vanishes at theta_hat");
  }
  if (!(fit.b_squared > 0.0)) {
    throw CurvatureError("b_squared must be positive");
  }
  const std::size_t n = stats.alphas.size();
  const double b = std::sqrt(fit.b_squared);
  const double b3 = b * b * b;
  const double nu_ratio = prior_at_fit.deriv / prior_at_fit.density;
  const double skew_term = std::sqrt(double(n)) * stats.r_n / 6.0;

  RwCoefficients c;
  c.n = n;
  c.beta_n = -2.0 * stats.a_n / b3 - nu_ratio / b - skew_term;
  c.beta_n_prime = -stats.a_n / b3 + skew_term;
  return c;
}

double omega_transform(double t, const RwCoefficients& coeffs) {
  const double sqrt_n = std::sqrt(double(coeffs.n));
  const double s = t - coeffs.beta_n / sqrt_n;
  const double c = coeffs.beta_n_prime / sqrt_n;
  return s - c * s * s + c * c * s * s * s / 3.0;
}

double omega_inverse(double y, const RwCoefficients& coeffs) {
  const double sqrt_n = std::sqrt(double(coeffs.n));
  const double c = coeffs.beta_n_prime / sqrt_n;

  double s;
  if (std::fabs(c) < 1e-8) {
    // The cubic is numerically linear here.
    s = y + c * y * y;
  } else {
    const double u = 3.0 * c * y;
    if (std::fabs(u) < 0.5) {
      // 1 - cbrt(1-u) without cancellation.
      s = -std::expm1(std::log1p(-u) / 3.0) / c;
    } else {
      s = (1.0 - std::cbrt(1.0 - u)) / c;
    }
  }
  return s + coeffs.beta_n / sqrt_n;
}

std::vector<double> rw_raw_draws(const ScoreStats& stats, std::size_t B,
                                 const RngStream& stream, int threads) {
  if (B == 0) throw UsageError("rw_raw_draws requires B >= 1");
  if (!(stats.s2 > 0.0)) {
    throw DegenerateScoreError("s2 = 0; weighted statistic undefined");
  }
  const std::size_t n = stats.alphas.size();
  std::vector<double> centered(n);
  for (std::size_t j = 0; j < n; ++j) {
    centered[j] = stats.alphas[j] - stats.alpha_bar;
  }
  const double inv_hbar = 1.0 / hbar(stats);

  std::vector<double> draws(B);
  parallel_for(B, threads, [&](std::size_t i) {
    RngStream sub = stream.substream(i);
    double z_sum = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double z = sub.next_gamma4(2.0);
      z_sum += z;
      weighted += centered[j] * z;
    }
    draws[i] = weighted / z_sum * inv_hbar;
  });
  std::sort(draws.begin(), draws.end());
  return draws;
}

RwEcdf rw_posterior_ecdf(const ParametricModel& model,
                         const DataSample& sample, const Prior& prior,
                         const MleFit& fit, const ScoreStats& stats,
                         std::size_t B, const RngStream& stream,
                         int threads) {
  (void)model;
  (void)sample;
  const RwCoefficients coeffs =
      rw_coefficients(fit, stats, prior_eval(prior, fit.theta_hat));
  std::vector<double> draws = rw_raw_draws(stats, B, stream, threads);
  // omega is non-decreasing, so the sorted order survives the map.
  for (auto& t : draws) t = omega_transform(t, coeffs);
  return RwEcdf(std::move(draws));
}

}  // namespace rwpost
