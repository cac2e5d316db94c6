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

#include "rwpost/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "rwpost/errors.hpp"
#include "rwpost/special.hpp"

namespace rwpost {

ExpansionContext make_expansion_context(const MleFit& fit,
                                        const ScoreStats& stats,
                                        const PriorValue& prior_at_fit) {
  if (!(prior_at_fit.density > 0.0)) {
    throw PriorSupportError("prior density vanishes at theta_hat");
  }
  if (!(fit.b_squared > 0.0)) {
    throw CurvatureError("b_squared must be positive");
  }
  ExpansionContext ctx;
  ctx.n = stats.alphas.size();
  ctx.b = std::sqrt(fit.b_squared);
  ctx.a_n = stats.a_n;
  ctx.nu_ratio = prior_at_fit.deriv / prior_at_fit.density;
  ctx.r_n = stats.r_n;
  return ctx;
}

double theorem1_cdf(double y, const ExpansionContext& ctx) {
  const double b3 = ctx.b * ctx.b * ctx.b;
  const double correction =
      -norm_pdf(y) * (ctx.a_n * (y * y + 2.0) / b3 + ctx.nu_ratio / ctx.b);
  const double value =
      norm_cdf(y) + correction / std::sqrt(double(ctx.n));
  return std::clamp(value, 0.0, 1.0);
}

double theorem2_cdf(double y, double r_n) {
  const double value =
      norm_cdf(y) - norm_pdf(y) * (y * y - 1.0) * r_n / 6.0;
  return std::clamp(value, 0.0, 1.0);
}

double rho_n(double y, std::size_t n) {
  const double nn = double(n);
  return 2.0 * std::sqrt(nn) * y / std::sqrt(4.0 * nn + 1.0 + y * y);
}

std::vector<double> b_coefficients(const ScoreStats& stats, double y) {
  const std::size_t n = stats.alphas.size();
  if (!(stats.s2 > 0.0)) {
    throw DegenerateScoreError("s2 = 0; coefficients undefined");
  }
  const double hbar = std::sqrt(stats.s2 / (double(n) * (4.0 * n + 1.0)));

  std::vector<double> coeffs(n);
  double sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    coeffs[i] = stats.alphas[i] - stats.alpha_bar - y * hbar;
    sumsq += coeffs[i] * coeffs[i];
  }
  if (!(sumsq > 0.0)) {
    throw DegenerateScoreError("all A_in(y) vanish; coefficients undefined");
  }
  const double inv_norm = 1.0 / std::sqrt(sumsq);
  for (auto& c : coeffs) c *= inv_norm;
  return coeffs;
}

Lemma2Gaps lemma2_gaps(std::size_t n, std::span<const double> grid) {
  if (grid.empty()) throw UsageError("lemma2_gaps requires a nonempty grid");
  Lemma2Gaps gaps;
  for (const double y : grid) {
    const double r = rho_n(y, n);
    gaps.g1 = std::max(gaps.g1, std::fabs(norm_cdf(r) - norm_cdf(y)));
    gaps.g2 = std::max(
        gaps.g2, std::fabs(norm_pdf(r) * (r * r - 1.0) -
                           norm_pdf(y) * (y * y - 1.0)));
  }
  return gaps;
}

}  // namespace rwpost
