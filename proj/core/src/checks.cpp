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
#include <ostream>

#include "rwpost/errors.hpp"
#include "rwpost/expansion.hpp"
#include "rwpost/harness.hpp"
#include "rwpost/oracle.hpp"
#include "rwpost/special.hpp"

namespace rwpost {

namespace {

constexpr std::uint64_t kCheckSeed = 0x5eedf00dULL;

class CheckPrinter {
public:
  explicit CheckPrinter(std::ostream& os) : os_(os) {}

  void expect(bool ok, const std::string& what) {
    os_ << (ok ? "[ ok ] " : "[FAIL] ") << what << '\n';
    all_ok_ = all_ok_ && ok;
  }

  bool all_ok() const { return all_ok_; }

private:
  std::ostream& os_;
  bool all_ok_ = true;
};

ScoreStats synthetic_stats(std::size_t n, RngStream& stream) {
  ScoreStats s;
  s.alphas.resize(n);
  double sum = 0.0;
  for (auto& a : s.alphas) {
    a = stream.next_normal(0.0, 1.0);
    sum += a;
  }
  s.alpha_bar = sum / double(n);
  for (const double a : s.alphas) {
    const double d = a - s.alpha_bar;
    s.s2 += d * d;
    s.s3 += d * d * d;
  }
  s.r_n = s.s3 / (s.s2 * std::sqrt(s.s2));
  return s;
}

void check_weights(CheckPrinter& p) {
  RngStream stream(kCheckSeed);

  {
    RngStream sub = stream.substream(1);
    const WeightVector w1 = sample_weights(1, sub);
    p.expect(w1.v.size() == 1 && w1.v[0] == 1.0, "n=1 weight is exactly 1");
    bool sums_ok = true;
    bool nonneg = true;
    for (std::size_t n : {7u, 100u, 953u}) {
      const WeightVector w = sample_weights(n, sub);
      double total = 0.0;
      for (const double v : w.v) {
        total += v;
        nonneg = nonneg && v >= 0.0;
      }
      sums_ok = sums_ok && std::fabs(total - 1.0) <= 1e-12;
    }
    p.expect(sums_ok, "weights sum to 1 within 1e-12");
    p.expect(nonneg, "weights are nonnegative");
  }

  {
    // First-weight moments at n=10: mean 1/10, variance 144/65600.
    RngStream sub = stream.substream(2);
    const std::size_t reps = 100000;
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
      const double v = sample_weights(10, sub).v[0];
      const double d = v - mean;
      mean += d / double(i + 1);
      m2 += d * (v - mean);
    }
    const double var = m2 / double(reps);
    p.expect(std::fabs(mean - 0.1) <= 3.0 * 1.482e-4,
             "mean(V_1) within 3 standard errors of 0.1");
    p.expect(std::fabs(var / 2.1951219512195124e-3 - 1.0) <= 0.10,
             "var(V_1) within 10% of the Dirichlet value");
  }

  {
    // The divisor of the self-normalized statistic is its exact standard
    // deviation under the weight law, so Var(T) must be 1.
    RngStream sub = stream.substream(3);
    ScoreStats stats = synthetic_stats(10, sub);
    const std::size_t B = 1000000;
    const std::vector<double> draws = rw_raw_draws(stats, B, sub.substream(9));
    double mean = 0.0, m2 = 0.0;
    std::size_t count = 0;
    for (const double t : draws) {
      ++count;
      const double d = t - mean;
      mean += d / double(count);
      m2 += d * (t - mean);
    }
    const double var = m2 / double(B);
    p.expect(var >= 0.99 && var <= 1.01,
             "Var(H_n)/Hbar^2 in [0.99, 1.01] at B=1e6");
    p.expect(std::fabs(mean) <= 4.0 / std::sqrt(double(B)),
             "weighted statistic is centered");
  }

  {
    RngStream sub = stream.substream(4);
    double worst = 0.0;
    bool monotone = true;
    for (int i = 0; i < 10000; ++i) {
      RwCoefficients c;
      c.n = 1 + std::size_t(sub.next_uniform() * 400.0);
      c.beta_n = sub.next_normal(0.0, 2.0);
      // Cover magnitudes straddling the 1e-8 inverse branch threshold.
      const double mag = std::pow(10.0, -12.0 + 13.0 * sub.next_uniform());
      c.beta_n_prime =
          (sub.next_uniform() < 0.5 ? -mag : mag) * std::sqrt(double(c.n));
      const double t = sub.next_normal(0.0, 3.0);
      const double back = omega_inverse(omega_transform(t, c), c);
      worst = std::max(worst, std::fabs(back - t));
      const double h = 1e-5;
      monotone = monotone && omega_transform(t + h, c) >=
                                 omega_transform(t - h, c);
    }
    p.expect(worst <= 1e-9, "omega round trip within 1e-9 (10^4 cases)");
    p.expect(monotone, "omega is non-decreasing");
  }
}

void check_expansion(CheckPrinter& p) {
  {
    bool ok = true;
    for (const double r : {-3.0, -0.4, 0.0, 0.7, 5.0}) {
      ok = ok && std::fabs(theorem2_cdf(1.0, r) - norm_cdf(1.0)) <= 1e-15;
    }
    p.expect(ok, "Edgeworth CDF at y=1 equals Phi(1) for any skewness");
  }
  {
    ExpansionContext ctx;
    ctx.n = 25;
    bool ok = true;
    for (double y = -8.0; y <= 8.0; y += 0.25) {
      ok = ok && std::fabs(theorem1_cdf(y, ctx) - norm_cdf(y)) <= 1e-15;
    }
    p.expect(ok, "zero-correction expansion reduces to Phi");
  }
  {
    bool odd = true;
    RngStream stream(kCheckSeed + 1);
    for (int i = 0; i < 1000; ++i) {
      const double y = stream.next_normal(0.0, 3.0);
      odd = odd && std::fabs(rho_n(-y, 37) + rho_n(y, 37)) <= 1e-15;
    }
    p.expect(odd, "rho_n is odd");
    p.expect(std::fabs(rho_n(1.0, 6) - 0.96076892283052274) <= 1e-12,
             "rho_n(1) at n=6 matches closed form");
  }
  {
    const std::vector<double> grid = make_y_grid({-8.0, 8.0, 0.01});
    const Lemma2Gaps a = lemma2_gaps(100, grid);
    const Lemma2Gaps b = lemma2_gaps(200, grid);
    const double ratio = a.g1 / b.g1;
    p.expect(ratio >= 1.6 && ratio <= 2.4,
             "sup |Phi(rho_n) - Phi| halves when n doubles");
    bool bounded = true;
    for (const std::size_t n : {10u, 100u, 1000u, 10000u}) {
      const Lemma2Gaps g = lemma2_gaps(n, grid);
      bounded = bounded && double(n) * g.g1 <= 0.2 &&
                double(n) * g.g2 <= 0.6;
    }
    p.expect(bounded, "n * lemma-2 gaps bounded over n in 10..10^4");
  }
  {
    RngStream stream(kCheckSeed + 2);
    ScoreStats stats = synthetic_stats(40, stream);
    bool ok = true;
    for (const double y : {-3.0, -0.5, 0.0, 1.5, 6.0}) {
      const auto coeffs = b_coefficients(stats, y);
      double sumsq = 0.0;
      for (const double c : coeffs) sumsq += c * c;
      ok = ok && std::fabs(sumsq - 1.0) <= 1e-12;
    }
    p.expect(ok, "normalized coefficients have unit sum of squares");
  }
  {
    // d/dy theorem2_cdf = phi(y) (1 + (r/6)(y^3 - 3y)).
    bool ok = true;
    const double h = 1e-5;
    for (const double y : {-2.0, -0.7, 0.3, 1.9}) {
      for (const double r : {-0.5, 0.2}) {
        const double fd =
            (theorem2_cdf(y + h, r) - theorem2_cdf(y - h, r)) / (2.0 * h);
        const double expected =
            norm_pdf(y) * (1.0 + r / 6.0 * (y * y * y - 3.0 * y));
        ok = ok && std::fabs(fd - expected) <= 1e-6;
      }
    }
    p.expect(ok, "Edgeworth CDF derivative matches its signed density");
  }
}

void check_oracle(CheckPrinter& p) {
  const ParametricModel normal = make_normal_model(1.0);
  const Prior nprior = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
  {
    const DataSample sample{{-1.5, -0.5, 0.5, 1.5}};  // mean 0
    const MleFit fit = fit_mle(normal, sample);
    const PosteriorOracle oracle =
        build_conjugate_oracle(normal, nprior, sample, fit);
    const double got = standardized_cdf(oracle, 1.0);
    const double want = norm_cdf(0.5 * std::sqrt(5.0));
    p.expect(std::fabs(got - want) <= 1e-12,
             "normal conjugate posterior reproduces closed form");
    p.expect(std::fabs(standardized_cdf(oracle, 0.0) - 0.5) <= 1e-12,
             "symmetric posterior has median at y=0");
  }
  {
    bool ok = true;
    const std::vector<double> grid = make_y_grid({-8.0, 8.0, 0.01});
    for (const int n : {10, 200}) {
      RngStream stream = RngStream(kCheckSeed + 3).substream(n);
      const DataSample sample =
          simulate_data(normal, 0.4, std::size_t(n), stream);
      const MleFit fit = fit_mle(normal, sample);
      const auto conj = build_conjugate_oracle(normal, nprior, sample, fit);
      const auto quad = build_quadrature_oracle(normal, nprior, sample, fit);
      double sup = 0.0;
      for (const double y : grid) {
        sup = std::max(sup, std::fabs(standardized_cdf(conj, y) -
                                      standardized_cdf(quad, y)));
      }
      ok = ok && sup <= 1e-6;
    }
    p.expect(ok, "quadrature matches the normal conjugate CDF to 1e-6");
  }
  {
    const ParametricModel expm = make_exponential_model();
    const Prior gprior = make_truncated_gamma_prior(2.0, 1.0, 0.0, 50.0);
    bool ok = true;
    const std::vector<double> grid = make_y_grid({-8.0, 8.0, 0.01});
    for (const int n : {10, 200}) {
      RngStream stream = RngStream(kCheckSeed + 4).substream(n);
      const DataSample sample =
          simulate_data(expm, 2.0, std::size_t(n), stream);
      const MleFit fit = fit_mle(expm, sample);
      const auto conj = build_conjugate_oracle(expm, gprior, sample, fit);
      const auto quad = build_quadrature_oracle(expm, gprior, sample, fit);
      double sup = 0.0;
      for (const double y : grid) {
        sup = std::max(sup, std::fabs(standardized_cdf(conj, y) -
                                      standardized_cdf(quad, y)));
      }
      ok = ok && sup <= 1e-6;
    }
    p.expect(ok, "quadrature matches the gamma conjugate CDF to 1e-6");
  }
}

}  // namespace

bool run_check_suite(const std::string& suite, std::ostream& os) {
  CheckPrinter printer(os);
  if (suite == "weights" || suite == "all") check_weights(printer);
  if (suite == "expansion" || suite == "all") check_expansion(printer);
  if (suite == "oracle" || suite == "all") check_oracle(printer);
  if (suite != "weights" && suite != "expansion" && suite != "oracle" &&
      suite != "all") {
    throw UsageError("unknown check suite '" + suite +
                     "' (weights|expansion|oracle|all)");
  }
  return printer.all_ok();
}

}  // namespace rwpost
