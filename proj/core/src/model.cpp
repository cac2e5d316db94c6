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

#include "rwpost/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rwpost/errors.hpp"
#include "rwpost/special.hpp"

namespace rwpost {

namespace {

std::string format_id(const std::string& base,
                      const std::vector<double>& args) {
  std::ostringstream os;
  os << base;
  for (std::size_t i = 0; i < args.size(); ++i) {
    os << (i == 0 ? ':' : ',') << args[i];
  }
  return os.str();
}

}  // namespace

LogDerivs eval_log_density_derivs(const ParametricModel& model, double x,
                                  double theta) {
  if (!model.parameter_interval.contains(theta)) {
    throw DomainError("theta=" + std::to_string(theta) +
                      " outside parameter interval of " + model.name);
  }
  if (!model.in_support(x)) {
    throw DomainError("x=" + std::to_string(x) + " outside support of " +
                      model.name);
  }
  LogDerivs d;
  d.l0 = model.log_density(x, theta);
  d.l1 = model.log_density_deriv(x, theta, 1);
  d.l2 = model.log_density_deriv(x, theta, 2);
  d.l3 = model.log_density_deriv(x, theta, 3);
  d.l4 = model.log_density_deriv(x, theta, 4);
  return d;
}

PriorValue prior_eval(const Prior& prior, double theta) {
  if (!prior.support.contains_interior(theta)) return {0.0, 0.0};
  return {prior.density(theta), prior.density_deriv(theta)};
}

DataSample simulate_data(const ParametricModel& model, double theta,
                         std::size_t n, RngStream& stream) {
  if (!model.parameter_interval.contains(theta)) {
    throw DomainError("theta=" + std::to_string(theta) +
                      " outside parameter interval of " + model.name);
  }
  return DataSample{model.simulate(theta, n, stream)};
}

double sample_prior(const Prior& prior, RngStream& stream) {
  if (!prior.cdf) {
    throw UsageError("prior '" + prior.name + "' has no CDF to invert");
  }
  const double u = stream.next_uniform();
  double lo = prior.support.lo;
  double hi = prior.support.hi;
  // 64 bisection steps put the interval width below double resolution.
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (prior.cdf(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ParametricModel make_normal_model(double variance) {
  if (!(variance > 0.0)) {
    throw UsageError("normal model requires variance > 0");
  }
  ParametricModel m;
  m.name = format_id("normal", {variance});
  m.family = "normal";
  m.params = {variance};
  m.parameter_interval = {-50.0, 50.0};
  m.in_support = [](double) { return true; };

  const double inv_var = 1.0 / variance;
  const double log_norm = -0.5 * std::log(2.0 * M_PI * variance);
  m.log_density = [inv_var, log_norm](double x, double theta) {
    const double r = x - theta;
    return log_norm - 0.5 * r * r * inv_var;
  };
  m.log_density_deriv = [inv_var](double x, double theta, int order) {
    switch (order) {
      case 1: return (x - theta) * inv_var;
      case 2: return -inv_var;
      default: return 0.0;  // orders 3 and 4 vanish
    }
  };
  const double sd = std::sqrt(variance);
  m.simulate = [sd](double theta, std::size_t n, RngStream& stream) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = stream.next_normal(theta, sd);
    return xs;
  };
  return m;
}

ParametricModel make_exponential_model() {
  ParametricModel m;
  m.name = "exp";
  m.family = "exp";
  m.parameter_interval = {1e-8, 1e6};
  m.in_support = [](double x) { return x > 0.0; };

  m.log_density = [](double x, double theta) {
    return std::log(theta) - theta * x;
  };
  m.log_density_deriv = [](double x, double theta, int order) {
    switch (order) {
      case 1: return 1.0 / theta - x;
      case 2: return -1.0 / (theta * theta);
      case 3: return 2.0 / (theta * theta * theta);
      default: return -6.0 / (theta * theta * theta * theta);
    }
  };
  // Inverse-CDF draws keep the stream consumption fixed at one uniform
  // per observation.
  m.simulate = [](double theta, std::size_t n, RngStream& stream) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = -std::log1p(-stream.next_uniform()) / theta;
    return xs;
  };
  return m;
}

Prior make_truncated_normal_prior(double mu, double tau2, double a0,
                                  double b0) {
  if (!(tau2 > 0.0)) throw UsageError("trunc-normal requires tau2 > 0");
  if (!(a0 < b0)) throw UsageError("trunc-normal requires a0 < b0");
  const double tau = std::sqrt(tau2);
  const double za = norm_cdf((a0 - mu) / tau);
  const double zb = norm_cdf((b0 - mu) / tau);
  const double mass = zb - za;
  if (!(mass > 0.0)) {
    throw UsageError("trunc-normal: no mass on the truncation interval");
  }

  Prior p;
  p.name = format_id("trunc-normal", {mu, tau2, a0, b0});
  p.support = {a0, b0};
  p.conjugate_tag = "normal";
  p.hyper = {mu, tau2};
  p.density = [mu, tau, mass](double theta) {
    return norm_pdf((theta - mu) / tau) / (tau * mass);
  };
  p.density_deriv = [mu, tau, tau2, mass](double theta) {
    const double z = (theta - mu) / tau;
    return -norm_pdf(z) * z / (tau2 * mass);
  };
  p.cdf = [mu, tau, za, mass, a0, b0](double theta) {
    if (theta <= a0) return 0.0;
    if (theta >= b0) return 1.0;
    return std::clamp((norm_cdf((theta - mu) / tau) - za) / mass, 0.0, 1.0);
  };
  return p;
}

Prior make_truncated_gamma_prior(double shape, double rate, double a0,
                                 double b0) {
  if (!(shape > 0.0 && rate > 0.0)) {
    throw UsageError("trunc-gamma requires shape > 0 and rate > 0");
  }
  if (!(a0 >= 0.0 && a0 < b0)) {
    throw UsageError("trunc-gamma requires 0 <= a0 < b0");
  }
  const double pa = lower_gamma_regularized(shape, rate * a0);
  const double pb = lower_gamma_regularized(shape, rate * b0);
  const double mass = pb - pa;
  if (!(mass > 0.0)) {
    throw UsageError("trunc-gamma: no mass on the truncation interval");
  }
  const double log_norm = shape * std::log(rate) - std::lgamma(shape);

  Prior p;
  p.name = format_id("trunc-gamma", {shape, rate, a0, b0});
  p.support = {a0, b0};
  p.conjugate_tag = "gamma";
  p.hyper = {shape, rate};
  p.density = [shape, rate, log_norm, mass](double theta) {
    if (theta <= 0.0) return 0.0;
    return std::exp(log_norm + (shape - 1.0) * std::log(theta) -
                    rate * theta) /
           mass;
  };
  p.density_deriv = [shape, rate, log_norm, mass](double theta) {
    if (theta <= 0.0) return 0.0;
    const double d = std::exp(log_norm + (shape - 1.0) * std::log(theta) -
                              rate * theta) /
                     mass;
    return d * ((shape - 1.0) / theta - rate);
  };
  p.cdf = [shape, rate, pa, mass, a0, b0](double theta) {
    if (theta <= a0) return 0.0;
    if (theta >= b0) return 1.0;
    return std::clamp(
        (lower_gamma_regularized(shape, rate * theta) - pa) / mass, 0.0, 1.0);
  };
  return p;
}

Prior make_bump_prior(double a0, double b0) {
  if (!(a0 < b0)) throw UsageError("bump requires a0 < b0");
  const double width = b0 - a0;

  // density proportional to w^3 (1-w)^3 on the unit interval; the value and
  // the first two derivatives vanish at both endpoints, so the extension by
  // zero is twice continuously differentiable on the whole line.
  // Normalizer: integral of w^3 (1-w)^3 dw = 1/140.
  Prior p;
  p.name = format_id("bump", {a0, b0});
  p.support = {a0, b0};
  p.density = [a0, width](double theta) {
    const double w = (theta - a0) / width;
    if (w <= 0.0 || w >= 1.0) return 0.0;
    const double g = w * (1.0 - w);
    return 140.0 * g * g * g / width;
  };
  p.density_deriv = [a0, width](double theta) {
    const double w = (theta - a0) / width;
    if (w <= 0.0 || w >= 1.0) return 0.0;
    const double v = 1.0 - w;
    return 140.0 * 3.0 * (w * w * v * v * v - w * w * w * v * v) /
           (width * width);
  };
  // CDF is the order-4 regularized incomplete beta, a degree-7 Bernstein
  // polynomial here.
  p.cdf = [a0, b0, width](double theta) {
    if (theta <= a0) return 0.0;
    if (theta >= b0) return 1.0;
    const double w = (theta - a0) / width;
    const double v = 1.0 - w;
    const double w4 = w * w * w * w;
    return w4 * (35.0 * v * v * v + 21.0 * w * v * v + 7.0 * w * w * v +
                 w * w * w);
  };
  return p;
}

namespace {

std::vector<double> parse_args(const std::string& id, const std::string& spec,
                               std::size_t expected) {
  std::vector<double> args;
  if (!spec.empty()) {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        args.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw UsageError("bad numeric argument '" + tok + "' in '" + id + "'");
      }
    }
  }
  if (args.size() != expected) {
    throw UsageError("'" + id + "' expects " + std::to_string(expected) +
                     " argument(s), got " + std::to_string(args.size()));
  }
  return args;
}

std::pair<std::string, std::string> split_id(const std::string& id) {
  const auto colon = id.find(':');
  if (colon == std::string::npos) return {id, ""};
  return {id.substr(0, colon), id.substr(colon + 1)};
}

}  // namespace

ParametricModel parse_model(const std::string& id) {
  const auto [base, spec] = split_id(id);
  if (base == "normal") {
    const auto args = parse_args(id, spec, 1);
    return make_normal_model(args[0]);
  }
  if (base == "exp") {
    parse_args(id, spec, 0);
    return make_exponential_model();
  }
  throw UsageError("unknown model id '" + id + "'");
}

Prior parse_prior(const std::string& id) {
  const auto [base, spec] = split_id(id);
  if (base == "trunc-normal") {
    const auto a = parse_args(id, spec, 4);
    return make_truncated_normal_prior(a[0], a[1], a[2], a[3]);
  }
  if (base == "trunc-gamma") {
    const auto a = parse_args(id, spec, 4);
    return make_truncated_gamma_prior(a[0], a[1], a[2], a[3]);
  }
  if (base == "bump") {
    const auto a = parse_args(id, spec, 2);
    return make_bump_prior(a[0], a[1]);
  }
  throw UsageError("unknown prior id '" + id + "'");
}

}  // namespace rwpost
