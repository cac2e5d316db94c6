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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "rwpost/errors.hpp"
#include "rwpost/expansion.hpp"
#include "rwpost/harness.hpp"
#include "rwpost/special.hpp"

using namespace rwpost;

TEST_SUITE_BEGIN("expansion");

TEST_CASE("corrected normal CDF reduces to Phi without corrections") {
  ExpansionContext ctx;
  ctx.n = 9;
  for (double y = -6.0; y <= 6.0; y += 0.1) {
    CHECK(theorem1_cdf(y, ctx) == doctest::Approx(norm_cdf(y)).epsilon(1e-15));
  }
}

TEST_CASE("corrected normal CDF at a hand-computed point") {
  // y = 0, a_n = 0, b = 1, nu'/nu = -0.5, n = 4:
  // Phi(0) + (1/2) * phi(0) * 0.5 = 0.59973557...
  ExpansionContext ctx;
  ctx.n = 4;
  ctx.nu_ratio = -0.5;
  CHECK(theorem1_cdf(0.0, ctx) ==
        doctest::Approx(0.5997355701003582).epsilon(1e-12));
}

TEST_CASE("Edgeworth CDF special values") {
  for (double y = -6.0; y <= 6.0; y += 0.1) {
    CHECK(theorem2_cdf(y, 0.0) == doctest::Approx(norm_cdf(y)).epsilon(1e-15));
  }
  // The skew factor vanishes at y = 1 regardless of r_n.
  for (const double r : {-2.0, -0.1, 0.3, 4.0}) {
    CHECK(theorem2_cdf(1.0, r) ==
          doctest::Approx(0.8413447460685429).epsilon(1e-12));
  }
  CHECK(theorem2_cdf(0.0, 0.408248290463863) ==
        doctest::Approx(0.5271445839946066).epsilon(1e-12));
}

TEST_CASE("expansion CDFs reach their limits in the tails") {
  ExpansionContext ctx;
  ctx.n = 50;
  ctx.a_n = 0.8;
  ctx.nu_ratio = -1.5;
  ctx.b = 0.9;
  ctx.r_n = 0.4;
  CHECK(theorem1_cdf(-10.0, ctx) <= 1e-8);
  CHECK(theorem1_cdf(10.0, ctx) >= 1.0 - 1e-8);
  CHECK(theorem2_cdf(-10.0, ctx.r_n) <= 1e-8);
  CHECK(theorem2_cdf(10.0, ctx.r_n) >= 1.0 - 1e-8);
}

TEST_CASE("Edgeworth CDF differentiates to its signed density") {
  // d/dy [Phi - (1/6) phi (y^2-1) r] = phi(y) (1 + (r/6)(y^3 - 3y)).
  const double h = 1e-5;
  for (const double r : {-0.6, 0.25}) {
    for (double y = -3.0; y <= 3.0; y += 0.37) {
      // The identity holds where the [0,1] clamp is inactive.
      const double raw = norm_cdf(y) - norm_pdf(y) * (y * y - 1.0) * r / 6.0;
      if (raw < 1e-3 || raw > 1.0 - 1e-3) continue;
      const double fd = (theorem2_cdf(y + h, r) - theorem2_cdf(y - h, r)) /
                        (2.0 * h);
      const double expected =
          norm_pdf(y) * (1.0 + r / 6.0 * (y * y * y - 3.0 * y));
      CHECK(fd == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("rescaled argument: odd, zero at zero, closed form at n=6") {
  CHECK(rho_n(0.0, 100) == 0.0);
  CHECK(rho_n(1.0, 6) == doctest::Approx(0.9607689228305227).epsilon(1e-12));
  RngStream stream(4);
  for (int i = 0; i < 200; ++i) {
    const double y = stream.next_normal(0.0, 3.0);
    CHECK(rho_n(-y, 37) == doctest::Approx(-rho_n(y, 37)).epsilon(1e-14));
  }
}

TEST_CASE("normalized coefficients: unit norm and two-point example") {
  ScoreStats stats;
  stats.alphas = {1.0, -1.0};
  stats.alpha_bar = 0.0;
  stats.s2 = 2.0;

  const auto at0 = b_coefficients(stats, 0.0);
  REQUIRE(at0.size() == 2);
  CHECK(at0[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(at0[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));

  RngStream stream(12);
  for (int rep = 0; rep < 20; ++rep) {
    ScoreStats s;
    const std::size_t n = 3 + std::size_t(stream.next_uniform() * 60.0);
    s.alphas.resize(n);
    double sum = 0.0;
    for (auto& a : s.alphas) {
      a = stream.next_normal(0.0, 2.0);
      sum += a;
    }
    s.alpha_bar = sum / double(n);
    for (const double a : s.alphas) s.s2 += (a - s.alpha_bar) * (a - s.alpha_bar);
    const double y = stream.next_normal(0.0, 4.0);
    double sumsq = 0.0;
    for (const double c : b_coefficients(s, y)) sumsq += c * c;
    CHECK(sumsq == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("largest normalized coefficient shrinks with the sample") {
  const ParametricModel model = make_normal_model(1.0);
  auto max_coeff = [&](std::size_t n) {
    RngStream stream = RngStream(21).substream(n);
    const DataSample sample = simulate_data(model, 0.0, n, stream);
    const MleFit fit = fit_mle(model, sample);
    const ScoreStats stats = score_stats(model, sample, fit);
    double worst = 0.0;
    for (double y = -8.0; y <= 8.0; y += 0.25) {
      for (const double c : b_coefficients(stats, y)) {
        worst = std::max(worst, std::fabs(c));
      }
    }
    return worst;
  };
  const double at100 = max_coeff(100);
  const double at10000 = max_coeff(10000);
  CHECK(at10000 < at100);
}

TEST_CASE("lemma-2 gaps: trivial grid, positivity, 1/n scaling") {
  const std::vector<double> origin{0.0};
  const Lemma2Gaps at_origin = lemma2_gaps(100, origin);
  CHECK(at_origin.g1 == 0.0);
  CHECK(at_origin.g2 == 0.0);

  const std::vector<double> grid = make_y_grid({-8.0, 8.0, 0.01});
  const Lemma2Gaps g100 = lemma2_gaps(100, grid);
  const Lemma2Gaps g200 = lemma2_gaps(200, grid);
  CHECK(g100.g1 > 0.0);
  CHECK(g100.g2 > 0.0);
  CHECK(g100.g1 / g200.g1 == doctest::Approx(2.0).epsilon(0.20));

  for (const std::size_t n : {10u, 100u, 1000u, 10000u}) {
    const Lemma2Gaps g = lemma2_gaps(n, grid);
    CHECK(double(n) * g.g1 <= 0.2);
    CHECK(double(n) * g.g2 <= 0.6);
  }
  CHECK_THROWS_AS(lemma2_gaps(10, std::vector<double>{}), UsageError);
}

TEST_SUITE_END();
