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

#ifndef RWPOST_MODEL_HPP_
#define RWPOST_MODEL_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rwpost/rng.hpp"

namespace rwpost {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains_interior(double x) const { return x > lo && x < hi; }
  double width() const { return hi - lo; }
};

// An i.i.d. sample x_1..x_n.
struct DataSample {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
};

// Univariate parametric family with four theta-derivatives of the
// log-density. All built-in families carry closed-form derivatives.
//
// Immutable after construction; evaluations are pure, so a model value can
// be shared across threads freely.
struct ParametricModel {
  std::string name;            // registry id this model was built from
  std::string family;          // "normal", "exp", ...
  std::vector<double> params;  // family-specific hyperparameters
  Interval parameter_interval; // closed [c, d]

  std::function<bool(double)> in_support;                    // x-support test
  std::function<double(double, double)> log_density;         // (x, theta)
  std::function<double(double, double, int)> log_density_deriv;  // order 1..4
  std::function<std::vector<double>(double, std::size_t, RngStream&)> simulate;
};

// Prior density on a compact support [a0, b0]; zero outside.
struct Prior {
  std::string name;
  Interval support;  // [a0, b0]

  std::function<double(double)> density;
  std::function<double(double)> density_deriv;
  // Normalized CDF on [a0, b0]; present for all built-in priors and
  // required by sample_prior.
  std::function<double(double)> cdf;

  // Closed-form posterior family this prior forms with a matching model,
  // empty when none is registered.
  std::string conjugate_tag;
  std::vector<double> hyper;  // hyperparameters used by the conjugate oracle
};

// Log-density and its first four theta-derivatives at (x, theta).
struct LogDerivs {
  double l0 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l4 = 0.0;
};

struct PriorValue {
  double density = 0.0;
  double deriv = 0.0;
};

// Throws DomainError when theta is outside [c, d] or x outside the support.
LogDerivs eval_log_density_derivs(const ParametricModel& model, double x,
                                  double theta);

// Total function: (0, 0) outside the open support.
PriorValue prior_eval(const Prior& prior, double theta);

// n i.i.d. draws from f(., theta); deterministic given the stream state.
DataSample simulate_data(const ParametricModel& model, double theta,
                         std::size_t n, RngStream& stream);

// Inverse-CDF draw from the prior (bisection on prior.cdf).
double sample_prior(const Prior& prior, RngStream& stream);

// Built-in families.
ParametricModel make_normal_model(double variance);
ParametricModel make_exponential_model();

// Built-in priors. The truncated normal is smooth only in the interior and
// leans on negligible boundary mass for wide supports; the bump prior
// vanishes with its first two derivatives at both endpoints.
Prior make_truncated_normal_prior(double mu, double tau2, double a0, double b0);
Prior make_truncated_gamma_prior(double shape, double rate, double a0,
                                 double b0);
Prior make_bump_prior(double a0, double b0);

// String registry used by the CLI:
//   normal:<variance>
//   exp
//   trunc-normal:<mu>,<tau2>,<a0>,<b0>
//   trunc-gamma:<shape>,<rate>,<a0>,<b0>
//   bump:<a0>,<b0>
// Malformed ids throw UsageError.
ParametricModel parse_model(const std::string& id);
Prior parse_prior(const std::string& id);

}  // namespace rwpost

#endif  // RWPOST_MODEL_HPP_
