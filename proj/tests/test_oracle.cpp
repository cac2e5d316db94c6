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

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "rwpost/errors.hpp"
#include "rwpost/expansion.hpp"
#include "rwpost/harness.hpp"
#include "rwpost/oracle.hpp"
#include "rwpost/special.hpp"

using namespace rwpost;

namespace {

double sup_over_grid(const PosteriorOracle& a, const PosteriorOracle& b,
                     const std::vector<double>& grid) {
  double sup = 0.0;
  for (const double y : grid) {
    sup = std::max(sup,
                   std::fabs(standardized_cdf(a, y) - standardized_cdf(b, y)));
  }
  return sup;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("normal conjugate posterior at a hand-computed point") {
  // n = 4, mean 0, prior N(0,1): posterior N(0, 1/5), so
  // F_n(1) = P(2 theta <= 1) = Phi(0.5 sqrt 5).
  const ParametricModel model = make_normal_model(1.0);
  const Prior prior = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
  const DataSample sample{{-1.5, -0.5, 0.5, 1.5}};
  const MleFit fit = fit_mle(model, sample);
  const PosteriorOracle oracle =
      build_conjugate_oracle(model, prior, sample, fit);

  CHECK(oracle.kind == OracleKind::truncated_normal);
  CHECK(standardized_cdf(oracle, 1.0) ==
        doctest::Approx(norm_cdf(0.5 * std::sqrt(5.0))).epsilon(1e-13));
  CHECK(standardized_cdf(oracle, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(oracle.cdf(prior.support.lo) == 0.0);
  CHECK(oracle.cdf(prior.support.hi) == 1.0);
}

TEST_CASE("gamma conjugate posterior matches the updated parameters") {
  // n = 5, data sum 3, prior Gamma(2,1) on (0,50]: posterior Gamma(7,4).
  const ParametricModel model = make_exponential_model();
  const Prior prior = make_truncated_gamma_prior(2.0, 1.0, 0.0, 50.0);
  const DataSample sample{{0.6, 0.6, 0.6, 0.6, 0.6}};
  const MleFit fit = fit_mle(model, sample);
  const PosteriorOracle oracle =
      build_conjugate_oracle(model, prior, sample, fit);

  CHECK(oracle.kind == OracleKind::truncated_gamma);
  for (const double theta : {0.5, 1.0, 2.0, 3.0}) {
    const double reference = lower_gamma_regularized(7.0, 4.0 * theta) /
                             lower_gamma_regularized(7.0, 4.0 * 50.0);
    CHECK(oracle.cdf(theta) == doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("conjugate build rejects unregistered pairs and empty mass") {
  const ParametricModel model = make_normal_model(1.0);
  const Prior bump = make_bump_prior(-10.0, 10.0);
  const DataSample sample{{0.1, -0.2, 0.3}};
  const MleFit fit = fit_mle(model, sample);
  CHECK_THROWS_AS(build_conjugate_oracle(model, bump, sample, fit),
                  ConjugacyError);

  // All posterior mass sits far below the truncation window.
  const Prior far = make_truncated_normal_prior(0.0, 1.0, 8.0, 9.0);
  RngStream stream(3);
  const DataSample big = simulate_data(model, 0.0, 200, stream);
  const MleFit big_fit = fit_mle(model, big);
  CHECK_THROWS_AS(build_conjugate_oracle(model, far, big, big_fit),
                  NumericError);
}

TEST_CASE("flat posterior: no data and a uniform prior give cdf(theta)=theta") {
  Prior uniform;
  uniform.name = "uniform01";
  uniform.support = {0.0, 1.0};
  uniform.density = [](double) { return 1.0; };
  uniform.density_deriv = [](double) { return 0.0; };

  const ParametricModel model = make_normal_model(1.0);
  MleFit fit;
  fit.converged = true;
  fit.theta_hat = 0.5;
  fit.b_squared = 1.0;
  const PosteriorOracle oracle =
      build_quadrature_oracle(model, uniform, DataSample{}, fit);
  for (double theta = 0.05; theta < 1.0; theta += 0.05) {
    CHECK(oracle.cdf(theta) == doctest::Approx(theta).epsilon(1e-9));
  }
  CHECK(oracle.cdf(-0.5) == 0.0);
  CHECK(oracle.cdf(1.5) == 1.0);
}

TEST_CASE("quadrature agrees with both conjugate families") {
  const std::vector<double> grid = make_y_grid({-8.0, 8.0, 0.01});

  SUBCASE("normal likelihood, truncated normal prior") {
    const ParametricModel model = make_normal_model(1.0);
    const Prior prior = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
    for (const int n : {10, 200}) {
      RngStream stream = RngStream(17).substream(n);
      const DataSample sample = simulate_data(model, 0.3, n, stream);
      const MleFit fit = fit_mle(model, sample);
      const auto conj = build_conjugate_oracle(model, prior, sample, fit);
      const auto quad = build_quadrature_oracle(model, prior, sample, fit);
      CAPTURE(n);
      CHECK(sup_over_grid(conj, quad, grid) <= 1e-6);
    }
  }
  SUBCASE("exponential likelihood, truncated gamma prior") {
    const ParametricModel model = make_exponential_model();
    const Prior prior = make_truncated_gamma_prior(2.0, 1.0, 0.0, 50.0);
    for (const int n : {10, 200}) {
      RngStream stream = RngStream(18).substream(n);
      const DataSample sample = simulate_data(model, 2.0, n, stream);
      const MleFit fit = fit_mle(model, sample);
      const auto conj = build_conjugate_oracle(model, prior, sample, fit);
      const auto quad = build_quadrature_oracle(model, prior, sample, fit);
      CAPTURE(n);
      CHECK(sup_over_grid(conj, quad, grid) <= 1e-6);
    }
  }
}

TEST_CASE("quadrature survives n = 2000 without underflow") {
  const ParametricModel model = make_normal_model(1.0);
  const Prior prior = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
  RngStream stream(19);
  const DataSample sample = simulate_data(model, -0.4, 2000, stream);
  const MleFit fit = fit_mle(model, sample);
  const auto quad = build_quadrature_oracle(model, prior, sample, fit);
  const auto conj = build_conjugate_oracle(model, prior, sample, fit);
  CHECK(sup_over_grid(conj, quad, make_y_grid({-8.0, 8.0, 0.01})) <= 1e-6);
}

TEST_CASE("standardized CDF is monotone with unit range") {
  const ParametricModel model = make_exponential_model();
  const Prior prior = make_truncated_gamma_prior(2.0, 1.0, 0.0, 50.0);
  RngStream stream(23);
  const DataSample sample = simulate_data(model, 1.5, 60, stream);
  const MleFit fit = fit_mle(model, sample);
  const auto oracle = build_quadrature_oracle(model, prior, sample, fit);

  double previous = -1.0;
  for (double y = -12.0; y <= 12.0; y += 0.05) {
    const double v = standardized_cdf(oracle, y);
    CHECK(v >= previous - 1e-9);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    previous = v;
  }
  CHECK(standardized_cdf(oracle, 1e9) == 1.0);
  CHECK(standardized_cdf(oracle, -1e9) == 0.0);
}

TEST_CASE("first-order expansion tracks the exact posterior") {
  const ParametricModel model = make_normal_model(1.0);
  const Prior prior = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
  const std::vector<double> grid = make_y_grid({-8.0, 8.0, 0.01});

  auto median_scaled_gap = [&](int n) {
    std::vector<double> gaps;
    for (int rep = 0; rep < 10; ++rep) {
      RngStream rs = RngStream(29).substream(n).substream(rep);
      RngStream ts = rs.substream(0);
      RngStream xs = rs.substream(1);
      const double theta = sample_prior(prior, ts);
      const DataSample sample = simulate_data(model, theta, n, xs);
      const MleFit fit = fit_mle(model, sample);
      const ScoreStats stats = score_stats(model, sample, fit);
      const ExpansionContext ctx = make_expansion_context(
          fit, stats, prior_eval(prior, fit.theta_hat));
      const auto oracle = build_conjugate_oracle(model, prior, sample, fit);
      double sup = 0.0;
      for (const double y : grid) {
        sup = std::max(sup, std::fabs(theorem1_cdf(y, ctx) -
                                      standardized_cdf(oracle, y)));
      }
      gaps.push_back(std::sqrt(double(n)) * sup);
    }
    std::sort(gaps.begin(), gaps.end());
    return 0.5 * (gaps[4] + gaps[5]);
  };

  const double at50 = median_scaled_gap(50);
  const double at800 = median_scaled_gap(800);
  CHECK(at800 < at50);
  // Absolute bound at n = 200: the sup gap itself stays below 0.01.
  CHECK(median_scaled_gap(200) / std::sqrt(200.0) <= 0.01);
}

TEST_SUITE_END();
