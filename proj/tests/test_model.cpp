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
#include "rwpost/model.hpp"
#include "rwpost/special.hpp"

using namespace rwpost;

namespace {

// Five-point central difference, the independent oracle for the
// closed-form derivatives. Differentiates `f` at theta.
template <typename F>
double fd5(const F& f, double theta, double h) {
  return (f(theta - 2 * h) - 8 * f(theta - h) + 8 * f(theta + h) -
          f(theta + 2 * h)) /
         (12 * h);
}

void audit_derivatives(const ParametricModel& model, double x, double theta) {
  const double h = 1e-3 * std::max(1.0, std::fabs(theta));
  for (int order = 1; order <= 4; ++order) {
    auto lower = [&](double t) {
      return order == 1 ? model.log_density(x, t)
                        : model.log_density_deriv(x, t, order - 1);
    };
    const double fd = fd5(lower, theta, h);
    const double exact = model.log_density_deriv(x, theta, order);
    const double tol = 1e-6 * std::max(std::fabs(exact), 1e-8);
    CAPTURE(model.name);
    CAPTURE(x);
    CAPTURE(theta);
    CAPTURE(order);
    CHECK(std::fabs(fd - exact) <= tol);
  }
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("normal log-density derivatives at a hand-computed point") {
  const ParametricModel m = make_normal_model(1.0);
  const LogDerivs d = eval_log_density_derivs(m, 2.0, 0.0);
  CHECK(d.l1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.l2 == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(d.l3 == 0.0);
  CHECK(d.l4 == 0.0);
  CHECK(d.l0 == doctest::Approx(-0.5 * std::log(2.0 * M_PI) - 2.0));
}

TEST_CASE("exponential log-density derivatives at a hand-computed point") {
  const ParametricModel m = make_exponential_model();
  const LogDerivs d = eval_log_density_derivs(m, 1.0, 2.0);
  CHECK(d.l1 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(d.l2 == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(d.l3 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(d.l4 == doctest::Approx(-0.375).epsilon(1e-12));
}

TEST_CASE("derivatives match finite differences at 100 random points") {
  RngStream stream(2026);
  SUBCASE("normal, unit variance") {
    const ParametricModel m = make_normal_model(1.0);
    for (int i = 0; i < 100; ++i) {
      audit_derivatives(m, stream.next_normal(0.0, 2.0),
                        stream.next_normal(0.0, 3.0));
    }
  }
  SUBCASE("normal, variance 2.5") {
    const ParametricModel m = make_normal_model(2.5);
    for (int i = 0; i < 100; ++i) {
      audit_derivatives(m, stream.next_normal(1.0, 3.0),
                        stream.next_normal(0.0, 3.0));
    }
  }
  SUBCASE("exponential") {
    const ParametricModel m = make_exponential_model();
    for (int i = 0; i < 100; ++i) {
      const double theta = 0.5 + 4.5 * stream.next_uniform();
      audit_derivatives(m, stream.next_exponential(theta), theta);
    }
  }
}

TEST_CASE("domain errors outside the parameter interval or x-support") {
  const ParametricModel normal = make_normal_model(1.0);
  CHECK_THROWS_AS(eval_log_density_derivs(normal, 0.0, 51.0), DomainError);
  const ParametricModel expm = make_exponential_model();
  CHECK_THROWS_AS(eval_log_density_derivs(expm, -1.0, 2.0), DomainError);
  CHECK_THROWS_AS(eval_log_density_derivs(expm, 1.0, 0.0), DomainError);
}

TEST_CASE("truncated standard normal prior values") {
  const Prior p = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
  const PriorValue at0 = prior_eval(p, 0.0);
  CHECK(at0.density == doctest::Approx(0.3989422804014327).epsilon(1e-9));
  CHECK(at0.deriv == doctest::Approx(0.0));

  const PriorValue at05 = prior_eval(p, 0.5);
  CHECK(at05.deriv / at05.density == doctest::Approx(-0.5).epsilon(1e-12));

  // Total function: zero outside the support.
  const PriorValue outside = prior_eval(p, -11.0);
  CHECK(outside.density == 0.0);
  CHECK(outside.deriv == 0.0);
}

TEST_CASE("prior mass integrates to one") {
  const std::vector<Prior> priors = {
      make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0),
      make_truncated_normal_prior(1.0, 0.25, -1.0, 2.0),
      make_truncated_gamma_prior(2.0, 1.0, 0.0, 50.0),
      make_bump_prior(-3.0, 5.0),
  };
  for (const Prior& p : priors) {
    const double mass = integrate_gauss_legendre(
        [&](double t) { return prior_eval(p, t).density; }, p.support.lo,
        p.support.hi, 512, 16);
    CAPTURE(p.name);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("prior density derivative matches finite differences") {
  const std::vector<Prior> priors = {
      make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0),
      make_truncated_gamma_prior(2.0, 1.0, 0.0, 50.0),
      make_bump_prior(-3.0, 5.0),
  };
  RngStream stream(11);
  for (const Prior& p : priors) {
    for (int i = 0; i < 50; ++i) {
      const double width = p.support.width();
      const double theta =
          p.support.lo + width * (0.05 + 0.9 * stream.next_uniform());
      const double h = 1e-4 * width;
      const double fd =
          fd5([&](double t) { return prior_eval(p, t).density; }, theta, h);
      const double exact = prior_eval(p, theta).deriv;
      CAPTURE(p.name);
      CAPTURE(theta);
      CHECK(std::fabs(fd - exact) <= 1e-6 * std::max(std::fabs(exact), 1e-8));
    }
  }
}

TEST_CASE("bump prior vanishes smoothly at the boundary") {
  const Prior p = make_bump_prior(0.0, 1.0);
  CHECK(prior_eval(p, 0.0).density == 0.0);
  CHECK(prior_eval(p, 1.0).density == 0.0);
  // Cubic contact: density and slope at distance eps are O(eps^3), O(eps^2).
  const double eps = 1e-5;
  CHECK(std::fabs(prior_eval(p, eps).density) <= 150.0 * eps * eps * eps);
  CHECK(std::fabs(prior_eval(p, eps).deriv) <= 450.0 * eps * eps);
  CHECK(p.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("simulation is deterministic and honors edge cases") {
  const ParametricModel normal = make_normal_model(1.0);

  RngStream a(42);
  RngStream b(42);
  const DataSample s1 = simulate_data(normal, 0.7, 100, a);
  const DataSample s2 = simulate_data(normal, 0.7, 100, b);
  CHECK(s1.values == s2.values);

  RngStream c(43);
  CHECK(simulate_data(normal, 0.0, 0, c).n() == 0);

  const ParametricModel expm = make_exponential_model();
  RngStream d(44);
  const DataSample es = simulate_data(expm, 2.0, 1000, d);
  for (const double x : es.values) CHECK(x > 0.0);
}

TEST_CASE("simulated normal mean is within the 3-sigma band") {
  const ParametricModel normal = make_normal_model(1.0);
  RngStream stream(123);
  const DataSample s = simulate_data(normal, 0.0, 1000000, stream);
  double mean = 0.0;
  for (const double x : s.values) mean += x;
  mean /= double(s.n());
  CHECK(std::fabs(mean) <= 0.004);  // 3 / sqrt(n) at n = 1e6, sd 1
}

TEST_CASE("prior sampling lands in the support and centers correctly") {
  const Prior bump = make_bump_prior(2.0, 6.0);
  RngStream stream(5);
  double mean = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) {
    const double t = sample_prior(bump, stream);
    CHECK(t > 2.0);
    CHECK(t < 6.0);
    mean += t;
  }
  mean /= reps;
  // Symmetric density: mean 4, sd of the estimate ~ 0.75/sqrt(reps).
  CHECK(std::fabs(mean - 4.0) <= 0.02);

  RngStream s1(9), s2(9);
  CHECK(sample_prior(bump, s1) == sample_prior(bump, s2));
}

TEST_CASE("registry accepts the documented grammar") {
  CHECK(parse_model("normal:1.0").family == "normal");
  CHECK(parse_model("exp").family == "exp");
  CHECK(parse_prior("trunc-normal:0,1,-10,10").conjugate_tag == "normal");
  CHECK(parse_prior("trunc-gamma:2,1,0,50").conjugate_tag == "gamma");
  CHECK(parse_prior("bump:0,1").conjugate_tag.empty());

  CHECK_THROWS_AS(parse_model("normal"), UsageError);
  CHECK_THROWS_AS(parse_model("normal:0"), UsageError);
  CHECK_THROWS_AS(parse_model("cauchy:1"), UsageError);
  CHECK_THROWS_AS(parse_prior("trunc-normal:0,1"), UsageError);
  CHECK_THROWS_AS(parse_prior("bump:1,0"), UsageError);
  CHECK_THROWS_AS(parse_prior("trunc-gamma:2,1,5,5"), UsageError);
  CHECK_THROWS_AS(parse_prior("bump:0,1,2"), UsageError);
  CHECK_THROWS_AS(parse_model("normal:abc"), UsageError);
}

TEST_SUITE_END();
