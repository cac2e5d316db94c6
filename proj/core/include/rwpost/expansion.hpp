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

#ifndef RWPOST_EXPANSION_HPP_
#define RWPOST_EXPANSION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "rwpost/inference.hpp"
#include "rwpost/model.hpp"

namespace rwpost {

// Inputs of the analytic expansion formulas, all evaluated at theta_hat.
struct ExpansionContext {
  std::size_t n = 0;
  double b = 1.0;         // sqrt of per-observation observed information
  double a_n = 0.0;       // averaged third log-density derivative / 6
  double nu_ratio = 0.0;  // prior score nu'(theta_hat) / nu(theta_hat)
  double r_n = 0.0;       // score skewness
};

// Convenience assembly from fitted pieces; throws PriorSupportError when
// the prior density vanishes at theta_hat.
ExpansionContext make_expansion_context(const MleFit& fit,
                                        const ScoreStats& stats,
                                        const PriorValue& prior_at_fit);

// First-order corrected normal CDF for the standardized posterior:
//   Phi(y) + n^{-1/2} A(y),  A(y) = -phi(y) [ a_n (y^2+2) / b^3 + nu_ratio / b ],
// clamped to [0,1].
double theorem1_cdf(double y, const ExpansionContext& ctx);

// One-term Edgeworth CDF of the raw weighted statistic:
//   Phi(y) - (1/6) phi(y) (y^2 - 1) r_n, clamped to [0,1].
double theorem2_cdf(double y, double r_n);

// Rescaled argument appearing in the self-normalized representation:
//   rho_n(y) = 2 sqrt(n) y / sqrt(4n + 1 + y^2); odd in y.
double rho_n(double y, std::size_t n);

// Normalized coefficients B_in(y) = A_in(y) / sqrt(sum_j A_jn(y)^2) with
// A_in(y) = alpha_i - alpha_bar - y Hbar_n. Their squares sum to one.
std::vector<double> b_coefficients(const ScoreStats& stats, double y);

struct Lemma2Gaps {
  double g1 = 0.0;  // max |Phi(rho_n(y)) - Phi(y)| over the grid
  double g2 = 0.0;  // max |phi(rho_n)(rho_n^2-1) - phi(y)(y^2-1)|
};

// Both gaps decay like 1/n; used as an empirical check of that rate.
Lemma2Gaps lemma2_gaps(std::size_t n, std::span<const double> grid);

}  // namespace rwpost

#endif  // RWPOST_EXPANSION_HPP_
