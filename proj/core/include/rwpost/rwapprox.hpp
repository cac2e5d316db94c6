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

#ifndef RWPOST_RWAPPROX_HPP_
#define RWPOST_RWAPPROX_HPP_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rwpost/inference.hpp"
#include "rwpost/model.hpp"
#include "rwpost/rng.hpp"

namespace rwpost {

// Random weights on the simplex: Dirichlet(4,...,4), realized by
// normalizing i.i.d. Gamma(shape 4, rate 2) variates.
struct WeightVector {
  std::vector<double> v;

  std::size_t size() const { return v.size(); }
};

// Coefficients of the cubic correction map. With b = sqrt(b_squared):
//   beta_n       = -2 a_n / b^3 - (nu'/nu)(theta_hat) / b - sqrt(n) r_n / 6
//   beta_n_prime = -  a_n / b^3                           + sqrt(n) r_n / 6
struct RwCoefficients {
  double beta_n = 0.0;
  double beta_n_prime = 0.0;
  std::size_t n = 0;
};

// Empirical CDF of B Monte Carlo draws, kept fully sorted.
class RwEcdf {
public:
  RwEcdf() = default;
  explicit RwEcdf(std::vector<double> sorted_draws);

  std::size_t draws() const { return values_.size(); }
  const std::vector<double>& sorted_values() const { return values_; }

  // Right-continuous evaluator: (# draws <= y) / B.
  double value(double y) const;
  // Left limit: (# draws < y) / B.
  double left_limit(double y) const;

  // One sorted draw per line, full precision.
  void write_csv(std::ostream& os) const;

private:
  std::vector<double> values_;
};

// One Dirichlet(4,...,4) weight vector of length n.
WeightVector sample_weights(std::size_t n, RngStream& stream);

// Self-normalized weighted score T = H / Hbar, where H is the weighted sum
// of centered scores and Hbar^2 = s2 / (n (4n+1)) is its exact variance
// under the weight law.
double rw_statistic(const ScoreStats& stats, const WeightVector& w);

// Throws PriorSupportError when the prior density vanishes at theta_hat.
RwCoefficients rw_coefficients(const MleFit& fit, const ScoreStats& stats,
                               const PriorValue& prior_at_fit);

// The cubic correction map. Writing s = t - beta_n/sqrt(n) and
// c = beta_n_prime/sqrt(n):
//   omega(t) = s - c s^2 + (c^2/3) s^3,
// non-decreasing everywhere since omega'(t) = (1 - c s)^2.
double omega_transform(double t, const RwCoefficients& coeffs);

// Exact inverse through the identity omega = (1 - (1 - c s)^3) / (3c),
// arranged to avoid cancellation for small c; |c| below 1e-8 switches to
// the numerically linear branch s = y + c y^2.
double omega_inverse(double y, const RwCoefficients& coeffs);

// B independent draws of the raw statistic T, sorted ascending. Draw i is
// generated from stream.substream(i), so the result is bit-identical for
// any thread count.
std::vector<double> rw_raw_draws(const ScoreStats& stats, std::size_t B,
                                 const RngStream& stream, int threads = 1);

// Empirical CDF of the corrected statistic omega(T): the Monte Carlo
// realization of the random-weighting posterior approximation.
RwEcdf rw_posterior_ecdf(const ParametricModel& model,
                         const DataSample& sample, const Prior& prior,
                         const MleFit& fit, const ScoreStats& stats,
                         std::size_t B, const RngStream& stream,
                         int threads = 1);

}  // namespace rwpost

#endif  // RWPOST_RWAPPROX_HPP_
