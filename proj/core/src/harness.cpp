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

#include "rwpost/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rwpost/errors.hpp"
#include "rwpost/expansion.hpp"
#include "rwpost/oracle.hpp"
#include "rwpost/parallel.hpp"

namespace rwpost {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Type-7 quantile (linear interpolation) of an ascending vector.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return kNaN;
  if (sorted.size() == 1) return sorted.front();
  const double h = p * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - double(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::string sanitize_reason(std::string reason) {
  for (auto& c : reason) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return reason;
}

}  // namespace

std::vector<double> make_y_grid(const YGridSpec& spec) {
  if (!(spec.step > 0.0) || !(spec.lo < spec.hi)) {
    throw UsageError("y-grid requires lo < hi and step > 0");
  }
  const auto count =
      std::size_t(std::floor((spec.hi - spec.lo) / spec.step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = spec.lo + double(k) * spec.step;
  }
  return grid;
}

CdfView make_cdf_view(std::function<double(double)> f) {
  CdfView view;
  view.value = std::move(f);
  return view;
}

CdfView make_ecdf_view(const RwEcdf& ecdf) {
  // The view holds a pointer; the ECDF must outlive it.
  CdfView view;
  view.value = [e = &ecdf](double y) { return e->value(y); };
  view.left = [e = &ecdf](double y) { return e->left_limit(y); };
  return view;
}

double sup_distance(const CdfView& f, const CdfView& g,
                    std::span<const double> grid,
                    std::span<const double> jumps) {
  if (grid.empty() && jumps.empty()) {
    throw UsageError("sup_distance needs at least one evaluation point");
  }
  const bool any_left = bool(f.left) || bool(g.left);
  double sup = 0.0;
  auto visit = [&](double y) {
    const double fv = f.value(y);
    const double gv = g.value(y);
    sup = std::max(sup, std::fabs(fv - gv));
    if (any_left) {
      const double fl = f.left ? f.left(y) : fv;
      const double gl = g.left ? g.left(y) : gv;
      sup = std::max(sup, std::fabs(fl - gl));
    }
  };
  for (const double y : grid) visit(y);
  for (const double y : jumps) visit(y);
  return sup;
}

void validate(const ExperimentConfig& config) {
  const ParametricModel model = parse_model(config.model_id);
  parse_prior(config.prior_id);
  if (config.n_grid.empty()) throw UsageError("n-grid must be nonempty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 2) {
      throw UsageError("every n must be at least 2");
    }
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw UsageError("n-grid must be strictly ascending");
    }
  }
  if (config.data_reps < 0) throw UsageError("data-reps must be >= 0");
  if (config.mc_draws < 1000) throw UsageError("mc draws B must be >= 1000");
  if (config.theta_fixed &&
      !model.parameter_interval.contains(*config.theta_fixed)) {
    throw UsageError("fixed theta outside the model parameter interval");
  }
  make_y_grid(config.y_grid);  // validates lo/hi/step
}

namespace {

struct RepInputs {
  const ParametricModel& model;
  const Prior& prior;
  const ExperimentConfig& config;
  const std::vector<double>& grid;
  bool use_conjugate = false;
};

RepRecord run_one_rep(const RepInputs& in, int n, int rep) {
  RepRecord rec;
  rec.n = n;
  rec.rep = rep;
  rec.theta_hat = rec.b2 = rec.r_n = rec.a_n = kNaN;
  rec.beta_n = rec.beta_n_prime = kNaN;
  rec.D_rw_oracle = rec.sqrtn_D = rec.D_thm1_oracle = rec.D_thm2_raw = kNaN;

  auto skip = [&](std::string reason) {
    rec.skipped = true;
    rec.reason = std::move(reason);
    return rec;
  };

  const RngStream rep_stream = RngStream(in.config.master_seed)
                                   .substream(std::uint64_t(n))
                                   .substream(std::uint64_t(rep));
  RngStream theta_stream = rep_stream.substream(0);
  RngStream data_stream = rep_stream.substream(1);
  const RngStream mc_stream = rep_stream.substream(2);

  const double theta_true = in.config.theta_fixed
                                ? *in.config.theta_fixed
                                : sample_prior(in.prior, theta_stream);
  rec.theta_true = theta_true;

  const DataSample sample =
      simulate_data(in.model, theta_true, std::size_t(n), data_stream);

  MleFit fit;
  try {
    fit = fit_mle(in.model, sample);
  } catch (const FitError& e) {
    return skip(std::string("fit: ") + e.what());
  } catch (const CurvatureError& e) {
    return skip(std::string("curvature: ") + e.what());
  }
  if (fit.at_boundary) {
    rec.theta_hat = fit.theta_hat;
    return skip("mle at parameter boundary");
  }
  rec.theta_hat = fit.theta_hat;
  rec.b2 = fit.b_squared;

  const PriorValue pv = prior_eval(in.prior, fit.theta_hat);
  if (!(pv.density > 0.0)) {
    return skip("theta_hat outside prior support");
  }

  ScoreStats stats;
  try {
    stats = score_stats(in.model, sample, fit);
  } catch (const DegenerateScoreError& e) {
    return skip(std::string("degenerate score: ") + e.what());
  }
  rec.r_n = stats.r_n;
  rec.a_n = stats.a_n;

  const RwCoefficients coeffs = rw_coefficients(fit, stats, pv);
  rec.beta_n = coeffs.beta_n;
  rec.beta_n_prime = coeffs.beta_n_prime;

  PosteriorOracle oracle;
  try {
    oracle = in.use_conjugate
                 ? build_conjugate_oracle(in.model, in.prior, sample, fit)
                 : build_quadrature_oracle(in.model, in.prior, sample, fit);
  } catch (const NumericError& e) {
    return skip(std::string("oracle: ") + e.what());
  }

  // One Monte Carlo pass serves both the raw and the corrected ECDF.
  std::vector<double> raw = rw_raw_draws(stats, in.config.mc_draws, mc_stream);
  std::vector<double> corrected(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    corrected[i] = omega_transform(raw[i], coeffs);
  }
  const RwEcdf ecdf_raw(std::move(raw));
  const RwEcdf ecdf_rw(std::move(corrected));

  const CdfView oracle_view =
      make_cdf_view([&](double y) { return standardized_cdf(oracle, y); });
  const ExpansionContext ctx = make_expansion_context(fit, stats, pv);
  const CdfView thm1_view =
      make_cdf_view([&](double y) { return theorem1_cdf(y, ctx); });
  const CdfView thm2_view = make_cdf_view(
      [r = stats.r_n](double y) { return theorem2_cdf(y, r); });

  rec.D_rw_oracle = sup_distance(make_ecdf_view(ecdf_rw), oracle_view,
                                 in.grid, ecdf_rw.sorted_values());
  rec.sqrtn_D = std::sqrt(double(n)) * rec.D_rw_oracle;
  rec.D_thm1_oracle = sup_distance(thm1_view, oracle_view, in.grid, {});
  rec.D_thm2_raw = sup_distance(make_ecdf_view(ecdf_raw), thm2_view,
                                in.grid, ecdf_raw.sorted_values());
  return rec;
}

}  // namespace

ConvergenceReport run_convergence(const ExperimentConfig& config,
                                  int threads) {
  validate(config);
  const ParametricModel model = parse_model(config.model_id);
  const Prior prior = parse_prior(config.prior_id);
  const std::vector<double> grid = make_y_grid(config.y_grid);

  RepInputs inputs{model, prior, config, grid,
                   has_conjugate_oracle(model, prior)};

  ConvergenceReport report;
  report.config = config;
  const std::size_t reps = std::size_t(config.data_reps);
  report.rows.resize(config.n_grid.size() * reps);

  parallel_for(report.rows.size(), threads, [&](std::size_t task) {
    const int n = config.n_grid[task / reps];
    const int rep = int(task % reps);
    report.rows[task] = run_one_rep(inputs, n, rep);
  });

  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    NSummary s;
    s.n = config.n_grid[gi];
    std::vector<double> values;
    for (std::size_t r = 0; r < reps; ++r) {
      const RepRecord& rec = report.rows[gi * reps + r];
      if (rec.skipped) {
        ++s.skipped;
      } else {
        ++s.completed;
        values.push_back(rec.sqrtn_D);
      }
    }
    std::sort(values.begin(), values.end());
    s.median_sqrtn_D = quantile_sorted(values, 0.5);
    s.iqr_sqrtn_D =
        quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
    report.summary.push_back(s);
  }
  return report;
}

namespace {

constexpr const char* kCsvHeader =
    "n,rep,theta_true,theta_hat,b2,r_n,a_n,beta_n,beta_n_prime,"
    "D_rw_oracle,sqrtn_D,D_thm1_oracle,D_thm2_raw,skipped,reason";

}  // namespace

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const RepRecord& r : report.rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.rep) + ',';
    out += fmt17(r.theta_true) + ',' + fmt17(r.theta_hat) + ',';
    out += fmt17(r.b2) + ',' + fmt17(r.r_n) + ',' + fmt17(r.a_n) + ',';
    out += fmt17(r.beta_n) + ',' + fmt17(r.beta_n_prime) + ',';
    out += fmt17(r.D_rw_oracle) + ',' + fmt17(r.sqrtn_D) + ',';
    out += fmt17(r.D_thm1_oracle) + ',' + fmt17(r.D_thm2_raw) + ',';
    out += r.skipped ? "1," : "0,";
    out += sanitize_reason(r.reason);
    out += '\n';
  }
  return out;
}

std::vector<RepRecord> parse_report_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw UsageError("unrecognized report CSV header");
  }
  std::vector<RepRecord> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) fields.push_back(tok);
    // `reason` may be empty, which getline drops at end of line.
    if (fields.size() == 14) fields.emplace_back();
    if (fields.size() != 15) {
      throw UsageError("report row with " + std::to_string(fields.size()) +
                       " fields");
    }
    RepRecord r;
    r.n = std::stoi(fields[0]);
    r.rep = std::stoi(fields[1]);
    r.theta_true = std::strtod(fields[2].c_str(), nullptr);
    r.theta_hat = std::strtod(fields[3].c_str(), nullptr);
    r.b2 = std::strtod(fields[4].c_str(), nullptr);
    r.r_n = std::strtod(fields[5].c_str(), nullptr);
    r.a_n = std::strtod(fields[6].c_str(), nullptr);
    r.beta_n = std::strtod(fields[7].c_str(), nullptr);
    r.beta_n_prime = std::strtod(fields[8].c_str(), nullptr);
    r.D_rw_oracle = std::strtod(fields[9].c_str(), nullptr);
    r.sqrtn_D = std::strtod(fields[10].c_str(), nullptr);
    r.D_thm1_oracle = std::strtod(fields[11].c_str(), nullptr);
    r.D_thm2_raw = std::strtod(fields[12].c_str(), nullptr);
    r.skipped = fields[13] == "1";
    r.reason = fields[14];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string report_to_json(const ConvergenceReport& report) {
  nlohmann::json meta;
  meta["model"] = report.config.model_id;
  meta["prior"] = report.config.prior_id;
  if (report.config.theta_fixed) {
    meta["theta"] = *report.config.theta_fixed;
  } else {
    meta["theta"] = "from-prior";
  }
  meta["n_grid"] = report.config.n_grid;
  meta["data_reps"] = report.config.data_reps;
  meta["mc_draws"] = report.config.mc_draws;
  meta["master_seed"] = report.config.master_seed;
  meta["y_grid"] = {{"lo", report.config.y_grid.lo},
                    {"hi", report.config.y_grid.hi},
                    {"step", report.config.y_grid.step}};

  nlohmann::json rows = nlohmann::json::array();
  for (const RepRecord& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"rep", r.rep},
                    {"theta_true", r.theta_true},
                    {"theta_hat", r.theta_hat},
                    {"b2", r.b2},
                    {"r_n", r.r_n},
                    {"a_n", r.a_n},
                    {"beta_n", r.beta_n},
                    {"beta_n_prime", r.beta_n_prime},
                    {"D_rw_oracle", r.D_rw_oracle},
                    {"sqrtn_D", r.sqrtn_D},
                    {"D_thm1_oracle", r.D_thm1_oracle},
                    {"D_thm2_raw", r.D_thm2_raw},
                    {"skipped", r.skipped},
                    {"reason", r.reason}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const NSummary& s : report.summary) {
    summary.push_back({{"n", s.n},
                       {"completed", s.completed},
                       {"skipped", s.skipped},
                       {"median_sqrtn_D", s.median_sqrtn_D},
                       {"iqr_sqrtn_D", s.iqr_sqrtn_D}});
  }
  nlohmann::json doc;
  doc["metadata"] = meta;
  doc["rows"] = rows;
  doc["summary"] = summary;
  // NaN is not representable in JSON; nlohmann would emit `null` anyway,
  // make that explicit by serializing with replacement.
  return doc.dump(2, ' ', false,
                  nlohmann::json::error_handler_t::replace);
}

void emit_report(const ConvergenceReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << (format == ReportFormat::csv ? report_to_csv(report)
                                     : report_to_json(report));
  os.flush();
  if (!os) throw Error("write to '" + path + "' failed");
}

CdfTable simulate_cdf_table(const ExperimentConfig& config, int threads) {
  validate(config);
  const ParametricModel model = parse_model(config.model_id);
  const Prior prior = parse_prior(config.prior_id);
  const int n = config.n_grid.front();

  const RngStream rep_stream = RngStream(config.master_seed)
                                   .substream(std::uint64_t(n))
                                   .substream(0);
  RngStream theta_stream = rep_stream.substream(0);
  RngStream data_stream = rep_stream.substream(1);
  const RngStream mc_stream = rep_stream.substream(2);

  const double theta_true = config.theta_fixed
                                ? *config.theta_fixed
                                : sample_prior(prior, theta_stream);
  const DataSample sample =
      simulate_data(model, theta_true, std::size_t(n), data_stream);

  const MleFit fit = fit_mle(model, sample);
  if (fit.at_boundary) {
    throw FitError("mle at parameter boundary; no expansion available");
  }
  const PriorValue pv = prior_eval(prior, fit.theta_hat);
  if (!(pv.density > 0.0)) {
    throw PriorSupportError("theta_hat outside prior support");
  }
  const ScoreStats stats = score_stats(model, sample, fit);
  const RwCoefficients coeffs = rw_coefficients(fit, stats, pv);
  const ExpansionContext ctx = make_expansion_context(fit, stats, pv);

  const PosteriorOracle oracle =
      has_conjugate_oracle(model, prior)
          ? build_conjugate_oracle(model, prior, sample, fit)
          : build_quadrature_oracle(model, prior, sample, fit);

  std::vector<double> raw =
      rw_raw_draws(stats, config.mc_draws, mc_stream, threads);
  for (auto& t : raw) t = omega_transform(t, coeffs);
  const RwEcdf ecdf_rw(std::move(raw));

  CdfTable table;
  table.y = make_y_grid(config.y_grid);
  table.f_rw.reserve(table.y.size());
  table.f_oracle.reserve(table.y.size());
  table.f_thm1.reserve(table.y.size());
  table.f_thm2.reserve(table.y.size());
  for (const double y : table.y) {
    table.f_rw.push_back(ecdf_rw.value(y));
    table.f_oracle.push_back(standardized_cdf(oracle, y));
    table.f_thm1.push_back(theorem1_cdf(y, ctx));
    table.f_thm2.push_back(theorem2_cdf(y, stats.r_n));
  }
  return table;
}

std::string cdf_table_to_csv(const CdfTable& table) {
  std::string out = "y,F_rw,F_oracle,F_thm1,F_thm2\n";
  for (std::size_t i = 0; i < table.y.size(); ++i) {
    out += fmt17(table.y[i]) + ',' + fmt17(table.f_rw[i]) + ',' +
           fmt17(table.f_oracle[i]) + ',' + fmt17(table.f_thm1[i]) + ',' +
           fmt17(table.f_thm2[i]) + '\n';
  }
  return out;
}

}  // namespace rwpost
