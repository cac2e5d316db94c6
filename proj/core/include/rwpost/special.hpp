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

#ifndef RWPOST_SPECIAL_HPP_
#define RWPOST_SPECIAL_HPP_

#include <cmath>
#include <functional>
#include <vector>

namespace rwpost {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// Standard normal density.
inline double norm_pdf(double y) {
  return kInvSqrt2Pi * std::exp(-0.5 * y * y);
}

// Standard normal CDF via the complementary error function,
// absolute error below 1e-15 everywhere.
inline double norm_cdf(double y) {
  return 0.5 * std::erfc(-y * 0.70710678118654752440);
}

// Inverse of norm_cdf. Rational initial guess refined by one Halley step
// against erfc; relative error ~1e-15 in the bulk, more than enough for
// inverse-CDF sampling in the far tails.
double norm_quantile(double p);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a),
// series for x < a+1 and continued fraction otherwise.
double lower_gamma_regularized(double a, double x);

// Composite Gauss-Legendre integral of f over [a, b] with `panels`
// equal panels of an `order`-point rule.
double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, int panels, int order);

// Nodes/weights of the `order`-point Gauss-Legendre rule on [-1, 1].
// Computed once per order and cached.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int order);

}  // namespace rwpost

#endif  // RWPOST_SPECIAL_HPP_
