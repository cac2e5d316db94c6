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

#include "rwpost/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <vector>

#include "rwpost/errors.hpp"
#include "rwpost/special.hpp"

namespace rwpost {

namespace {

constexpr int kCorePanels = 64;
constexpr int kSidePanels = 48;
constexpr int kOrder = 16;
constexpr double kCoreHalfWidthSds = 12.0;

// Precomputed panelization of the posterior on [a0, b0].
struct QuadratureTable {
  std::vector<double> edges;    // panel boundaries, ascending
  std::vector<double> prefix;   // cumulative shifted mass up to edges[k]
  double shift = 0.0;           // max of the log-posterior over all nodes
  double total = 0.0;           // shifted normalizer
  std::function<double(double)> log_post;  // tolerant: -inf out of domain
};

double panel_mass(const QuadratureTable& t, double lo, double hi) {
  const auto& rule = gauss_legendre_rule(kOrder);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int k = 0; k < kOrder; ++k) {
    const double g = t.log_post(mid + half * rule.nodes[k]);
    if (g > -std::numeric_limits<double>::infinity()) {
      acc += rule.weights[k] * std::exp(g - t.shift);
    }
  }
  return acc * half;
}

void append_uniform_edges(std::vector<double>& edges, double lo, double hi,
                          int panels) {
  for (int k = 1; k <= panels; ++k) {
    edges.push_back(lo + (hi - lo) * double(k) / double(panels));
  }
}

}  // namespace

PosteriorOracle build_quadrature_oracle(const ParametricModel& model,
                                        const Prior& prior,
                                        const DataSample& sample,
                                        const MleFit& fit) {
  if (!(prior_eval(prior, fit.theta_hat).density > 0.0)) {
    throw PriorSupportError("theta_hat outside prior support");
  }
  const double a0 = prior.support.lo;
  const double b0 = prior.support.hi;
  const std::size_t n = sample.n();

  auto table = std::make_shared<QuadratureTable>();
  // Copy what the evaluator needs; the oracle must not dangle.
  table->log_post = [model, prior, xs = sample.values](double theta) {
    const double nu = prior_eval(prior, theta).density;
    if (!(nu > 0.0) || !model.parameter_interval.contains(theta)) {
      return -std::numeric_limits<double>::infinity();
    }
    double g = std::log(nu);
    for (const double x : xs) g += model.log_density(x, theta);
    return std::isfinite(g) ? g
                            : -std::numeric_limits<double>::infinity();
  };

  // Panel layout: fine panels where the posterior concentrates, coarse
  // panels over the rest of the support.
  std::vector<double>& edges = table->edges;
  edges.push_back(a0);
  if (n >= 1) {
    const double scale =
        kCoreHalfWidthSds / (std::sqrt(double(n)) * std::sqrt(fit.b_squared));
    const double core_lo = std::max(a0, fit.theta_hat - scale);
    const double core_hi = std::min(b0, fit.theta_hat + scale);
    if (core_lo > a0) append_uniform_edges(edges, a0, core_lo, kSidePanels);
    append_uniform_edges(edges, core_lo, core_hi, kCorePanels);
    if (core_hi < b0) append_uniform_edges(edges, core_hi, b0, kSidePanels);
  } else {
    append_uniform_edges(edges, a0, b0, kCorePanels + 2 * kSidePanels);
  }

  // Shift by the max of the log-posterior over all nodes and edges.
  const auto& rule = gauss_legendre_rule(kOrder);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (int k = 0; k < kOrder; ++k) {
      shift = std::max(shift, table->log_post(mid + half * rule.nodes[k]));
    }
  }
  if (!std::isfinite(shift)) {
    throw NumericError("log-posterior is -inf on the whole prior support");
  }
  table->shift = shift;

  table->prefix.resize(edges.size(), 0.0);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    table->prefix[p + 1] =
        table->prefix[p] + panel_mass(*table, edges[p], edges[p + 1]);
  }
  table->total = table->prefix.back();
  if (!(table->total > 0.0) || !std::isfinite(table->total)) {
    throw NumericError("posterior normalizer underflowed to zero");
  }

  PosteriorOracle oracle;
  oracle.kind = OracleKind::quadrature;
  oracle.theta_hat = fit.theta_hat;
  oracle.b = std::sqrt(fit.b_squared);
  oracle.n = n;
  oracle.support = prior.support;
  oracle.cdf = [table, a0, b0](double theta) {
    if (theta <= a0) return 0.0;
    if (theta >= b0) return 1.0;
    const auto& e = table->edges;
    const auto it = std::upper_bound(e.begin(), e.end(), theta);
    const std::size_t p = std::size_t(it - e.begin()) - 1;
    const double partial = table->prefix[p] +
                           panel_mass(*table, e[p], theta);
    return std::clamp(partial / table->total, 0.0, 1.0);
  };
  return oracle;
}

bool has_conjugate_oracle(const ParametricModel& model, const Prior& prior) {
  return (model.family == "normal" && prior.conjugate_tag == "normal") ||
         (model.family == "exp" && prior.conjugate_tag == "gamma");
}

PosteriorOracle build_conjugate_oracle(const ParametricModel& model,
                                       const Prior& prior,
                                       const DataSample& sample,
                                       const MleFit& fit) {
  if (!has_conjugate_oracle(model, prior)) {
    throw ConjugacyError("no closed-form posterior registered for (" +
                         model.name + ", " + prior.name + ")");
  }
  const double a0 = prior.support.lo;
  const double b0 = prior.support.hi;
  const double data_sum = std::accumulate(sample.values.begin(),
                                          sample.values.end(), 0.0);

  PosteriorOracle oracle;
  oracle.theta_hat = fit.theta_hat;
  oracle.b = std::sqrt(fit.b_squared);
  oracle.n = sample.n();
  oracle.support = prior.support;

  if (model.family == "normal") {
    const double sigma2 = model.params[0];
    const double mu0 = prior.hyper[0];
    const double tau2 = prior.hyper[1];
    const double v = 1.0 / (double(sample.n()) / sigma2 + 1.0 / tau2);
    const double m = (data_sum / sigma2 + mu0 / tau2) * v;
    const double s = std::sqrt(v);
    const double za = norm_cdf((a0 - m) / s);
    const double zb = norm_cdf((b0 - m) / s);
    const double mass = zb - za;
    if (!(mass > 0.0)) {
      throw NumericError("posterior mass on the truncation interval is zero");
    }
    oracle.kind = OracleKind::truncated_normal;
    oracle.cdf = [m, s, za, mass, a0, b0](double theta) {
      if (theta <= a0) return 0.0;
      if (theta >= b0) return 1.0;
      return std::clamp((norm_cdf((theta - m) / s) - za) / mass, 0.0, 1.0);
    };
    return oracle;
  }

  // exp + gamma
  const double shape = prior.hyper[0] + double(sample.n());
  const double rate = prior.hyper[1] + data_sum;
  const double pa = lower_gamma_regularized(shape, rate * a0);
  const double pb = lower_gamma_regularized(shape, rate * b0);
  const double mass = pb - pa;
  if (!(mass > 0.0)) {
    throw NumericError("posterior mass on the truncation interval is zero");
  }
  oracle.kind = OracleKind::truncated_gamma;
  oracle.cdf = [shape, rate, pa, mass, a0, b0](double theta) {
    if (theta <= a0) return 0.0;
    if (theta >= b0) return 1.0;
    return std::clamp(
        (lower_gamma_regularized(shape, rate * theta) - pa) / mass, 0.0, 1.0);
  };
  return oracle;
}

double standardized_cdf(const PosteriorOracle& oracle, double y) {
  if (oracle.n == 0) {
    throw UsageError("standardized_cdf requires n >= 1");
  }
  const double theta =
      oracle.theta_hat + y / (std::sqrt(double(oracle.n)) * oracle.b);
  return oracle.cdf(theta);
}

}  // namespace rwpost
