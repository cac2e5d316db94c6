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

#include <benchmark/benchmark.h>

#include <cmath>

#include "rwpost/expansion.hpp"
#include "rwpost/harness.hpp"
#include "rwpost/oracle.hpp"

using namespace rwpost;

namespace {

ScoreStats fixture_stats(std::size_t n) {
  ScoreStats s;
  s.alphas.resize(n);
  RngStream stream(99);
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

void BM_sample_weights(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  RngStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_weights(n, stream));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_sample_weights)->Arg(50)->Arg(400)->Arg(2000);

void BM_rw_raw_draws(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const ScoreStats stats = fixture_stats(n);
  const RngStream stream(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw_raw_draws(stats, 10000, stream));
  }
  state.SetItemsProcessed(state.iterations() * 10000 * int64_t(n));
}
BENCHMARK(BM_rw_raw_draws)->Arg(50)->Arg(400);

void BM_quadrature_oracle(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const ParametricModel model = make_normal_model(1.0);
  const Prior prior = make_truncated_normal_prior(0.0, 1.0, -10.0, 10.0);
  RngStream stream(3);
  const DataSample sample = simulate_data(model, 0.2, n, stream);
  const MleFit fit = fit_mle(model, sample);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_quadrature_oracle(model, prior, sample, fit));
  }
}
BENCHMARK(BM_quadrature_oracle)->Arg(100)->Arg(2000);

void BM_sup_distance(benchmark::State& state) {
  const ScoreStats stats = fixture_stats(100);
  const RwEcdf ecdf(rw_raw_draws(stats, std::size_t(state.range(0)),
                                 RngStream(4)));
  const CdfView view = make_ecdf_view(ecdf);
  const CdfView thm2 = make_cdf_view(
      [r = stats.r_n](double y) { return theorem2_cdf(y, r); });
  const std::vector<double> grid = make_y_grid(YGridSpec{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sup_distance(view, thm2, grid, ecdf.sorted_values()));
  }
}
BENCHMARK(BM_sup_distance)->Arg(10000)->Arg(200000);

void BM_fit_mle(benchmark::State& state) {
  const ParametricModel model = make_exponential_model();
  RngStream stream(5);
  const DataSample sample =
      simulate_data(model, 1.5, std::size_t(state.range(0)), stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_mle(model, sample));
  }
}
BENCHMARK(BM_fit_mle)->Arg(100)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
