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

#include "rwpost/inference.hpp"

#include <cmath>
#include <limits>

#include "rwpost/errors.hpp"

namespace rwpost {

namespace {

struct ScoreEval {
  double loglik = 0.0;
  double score = 0.0;       // sum of first derivatives
  double curvature = 0.0;   // sum of second derivatives
  double abs_score = 0.0;   // sum of |first derivative|
};

ScoreEval evaluate(const ParametricModel& model, const DataSample& sample,
                   double theta) {
  ScoreEval e;
  for (const double x : sample.values) {
    e.loglik += model.log_density(x, theta);
    const double l1 = model.log_density_deriv(x, theta, 1);
    e.score += l1;
    e.abs_score += std::fabs(l1);
    e.curvature += model.log_density_deriv(x, theta, 2);
  }
  return e;
}

constexpr int kMaxIterations = 200;
constexpr double kScoreTol = 1e-12;
constexpr double kStepTol = 1e-12;

}  // namespace

MleFit fit_mle(const ParametricModel& model, const DataSample& sample,
               const Interval& interval) {
  const std::size_t n = sample.n();
  if (n < 2) throw UsageError("fit_mle requires at least two observations");
  if (!(interval.lo < interval.hi)) {
    throw UsageError("fit_mle requires a nonempty interval");
  }

  auto converged_score = [&](const ScoreEval& e) {
    const double scale = std::max(1.0, e.abs_score / double(n));
    return std::fabs(e.score) / double(n) <= kScoreTol * scale;
  };

  ScoreEval at_lo = evaluate(model, sample, interval.lo);
  ScoreEval at_hi = evaluate(model, sample, interval.hi);

  MleFit fit;

  // Score pointing outward at an endpoint: the maximizer sits on the
  // boundary (built-in likelihoods are strictly concave in theta).
  if (at_lo.score <= 0.0 && !converged_score(at_lo)) {
    fit.theta_hat = interval.lo;
    fit.converged = false;
    fit.at_boundary = true;
    fit.b_squared = -at_lo.curvature / double(n);
    return fit;
  }
  if (at_hi.score >= 0.0 && !converged_score(at_hi)) {
    fit.theta_hat = interval.hi;
    fit.converged = false;
    fit.at_boundary = true;
    fit.b_squared = -at_hi.curvature / double(n);
    return fit;
  }

  double lo = interval.lo;
  double hi = interval.hi;
  double theta = 0.5 * (lo + hi);
  ScoreEval cur = evaluate(model, sample, theta);

  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    fit.iterations = iter;
    if (converged_score(cur)) {
      fit.converged = true;
      break;
    }
    if (cur.score > 0.0) {
      lo = theta;
    } else {
      hi = theta;
    }

    double next = std::numeric_limits<double>::quiet_NaN();
    if (cur.curvature < 0.0) {
      const double candidate = theta - cur.score / cur.curvature;
      if (candidate > lo && candidate < hi) next = candidate;
    }
    if (!std::isfinite(next)) next = 0.5 * (lo + hi);

    ScoreEval trial = evaluate(model, sample, next);
    if (trial.loglik < cur.loglik) {
      // Newton overshoot; fall back to the bracket midpoint.
      next = 0.5 * (lo + hi);
      trial = evaluate(model, sample, next);
    }

    const double step = std::fabs(next - theta);
    theta = next;
    cur = trial;
    if (step <= kStepTol * std::max(1.0, std::fabs(theta))) {
      fit.converged = true;
      break;
    }
  }

  if (!fit.converged) {
    throw FitError("fit_mle did not converge after " +
                   std::to_string(fit.iterations) + " iterations for " +
                   model.name);
  }

  fit.theta_hat = theta;
  fit.b_squared = -cur.curvature / double(n);
  if (!(fit.b_squared > 0.0)) {
    throw CurvatureError("non-positive observed information at theta_hat=" +
                         std::to_string(theta));
  }
  return fit;
}

MleFit fit_mle(const ParametricModel& model, const DataSample& sample) {
  return fit_mle(model, sample, model.parameter_interval);
}

ScoreStats score_stats(const ParametricModel& model, const DataSample& sample,
                       const MleFit& fit) {
  if (!fit.converged) {
    throw UsageError("score_stats requires a converged interior fit");
  }
  const std::size_t n = sample.n();
  ScoreStats s;
  s.alphas.resize(n);

  double sum = 0.0;
  double l3_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    s.alphas[j] = model.log_density_deriv(sample.values[j], fit.theta_hat, 1);
    sum += s.alphas[j];
    l3_sum += model.log_density_deriv(sample.values[j], fit.theta_hat, 3);
  }
  s.alpha_bar = sum / double(n);
  for (const double a : s.alphas) {
    const double d = a - s.alpha_bar;
    s.s2 += d * d;
    s.s3 += d * d * d;
  }
  s.a_n = l3_sum / (6.0 * double(n));
  if (!(s.s2 > 0.0)) {
    throw DegenerateScoreError("all scores equal at theta_hat; s2 = 0");
  }
  s.r_n = s.s3 / (s.s2 * std::sqrt(s.s2));
  return s;
}

}  // namespace rwpost
