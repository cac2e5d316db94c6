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

#ifndef RWPOST_ORACLE_HPP_
#define RWPOST_ORACLE_HPP_

#include <cstddef>
#include <functional>

#include "rwpost/inference.hpp"
#include "rwpost/model.hpp"

namespace rwpost {

enum class OracleKind { quadrature, truncated_normal, truncated_gamma };

// Ground-truth posterior CDF of theta given the sample. The evaluator is
// immutable and safe to call from many threads.
struct PosteriorOracle {
  OracleKind kind = OracleKind::quadrature;
  double theta_hat = 0.0;
  double b = 1.0;
  std::size_t n = 0;
  Interval support;  // prior support [a0, b0]
  std::function<double(double)> cdf;  // 0 below a0, 1 above b0
};

// Log-space stabilized composite Gauss-Legendre integration of the
// unnormalized posterior nu(theta) prod_j f(x_j, theta): the log-posterior
// is shifted by its maximum before exponentiation, so builds stay clear of
// underflow for any sample size of interest. Panels are refined on a
// +-12/(sqrt(n) b) window around theta_hat where the posterior lives.
//
// Throws PriorSupportError when nu(theta_hat) = 0 and NumericError when the
// normalizer degenerates.
PosteriorOracle build_quadrature_oracle(const ParametricModel& model,
                                        const Prior& prior,
                                        const DataSample& sample,
                                        const MleFit& fit);

bool has_conjugate_oracle(const ParametricModel& model, const Prior& prior);

// Closed-form posterior for registered pairs:
//   normal likelihood + truncated normal prior  -> truncated normal
//   exponential likelihood + truncated gamma prior -> truncated gamma
// Throws ConjugacyError for any other pair and NumericError when the
// truncation interval carries no posterior mass.
PosteriorOracle build_conjugate_oracle(const ParametricModel& model,
                                       const Prior& prior,
                                       const DataSample& sample,
                                       const MleFit& fit);

// Standardized posterior CDF F_n(y) = P{ sqrt(n) (theta - theta_hat) b <= y },
// i.e. the oracle CDF evaluated at theta_hat + y / (sqrt(n) b).
double standardized_cdf(const PosteriorOracle& oracle, double y);

}  // namespace rwpost

#endif  // RWPOST_ORACLE_HPP_
