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

#ifndef RWPOST_INFERENCE_HPP_
#define RWPOST_INFERENCE_HPP_

#include <vector>

#include "rwpost/model.hpp"

namespace rwpost {

// Maximum likelihood fit of a univariate parameter.
//
// b_squared is the per-observation observed information,
// -(1/n) sum_j d2/dtheta2 log f(x_j, theta_hat); with this normalization
// sqrt(n) (theta - theta_hat) b is asymptotically standard normal.
struct MleFit {
  double theta_hat = 0.0;
  double b_squared = 0.0;
  int iterations = 0;
  bool converged = false;
  bool at_boundary = false;
};

// Per-observation score values at the fitted parameter and the moments
// derived from them.
struct ScoreStats {
  std::vector<double> alphas;  // alpha_j = d/dtheta log f(x_j, theta_hat)
  double alpha_bar = 0.0;      // mean of alphas
  double s2 = 0.0;             // sum (alpha_j - alpha_bar)^2
  double s3 = 0.0;             // sum (alpha_j - alpha_bar)^3
  double r_n = 0.0;            // s3 / s2^{3/2}
  double a_n = 0.0;            // (1/6n) sum d3/dtheta3 log f(x_j, theta_hat)
};

// Safeguarded Newton on the score over `interval`: a Newton step is taken
// only when it stays inside the current bracket and does not decrease the
// log-likelihood, otherwise the bracket is bisected. A maximizer on the
// boundary is reported with converged=false and at_boundary=true.
//
// Throws FitError on non-convergence and CurvatureError when the observed
// information at the optimum is not positive.
MleFit fit_mle(const ParametricModel& model, const DataSample& sample,
               const Interval& interval);

// Uses the model's own parameter interval.
MleFit fit_mle(const ParametricModel& model, const DataSample& sample);

// Throws DegenerateScoreError when all alpha_j coincide (s2 = 0).
ScoreStats score_stats(const ParametricModel& model, const DataSample& sample,
                       const MleFit& fit);

}  // namespace rwpost

#endif  // RWPOST_INFERENCE_HPP_
