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

#ifndef RWPOST_HARNESS_HPP_
#define RWPOST_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwpost/rwapprox.hpp"

namespace rwpost {

// Evaluation grid lo, lo+step, ..., hi.
struct YGridSpec {
  double lo = -8.0;
  double hi = 8.0;
  double step = 0.01;
};

std::vector<double> make_y_grid(const YGridSpec& spec);

// CDF evaluator pair for the sup-distance. `left` may be empty for a
// continuous CDF, in which case the left limit equals the value.
struct CdfView {
  std::function<double(double)> value;
  std::function<double(double)> left;
};

CdfView make_cdf_view(std::function<double(double)> f);
CdfView make_ecdf_view(const RwEcdf& ecdf);

// Kolmogorov sup-distance over grid-union-jumps, taking both one-sided
// values at every point so that step discontinuities are measured exactly.
double sup_distance(const CdfView& f, const CdfView& g,
                    std::span<const double> grid,
                    std::span<const double> jumps);

struct ExperimentConfig {
  std::string model_id;
  std::string prior_id;
  // Fixed true parameter; empty means "draw theta from the prior" per
  // replication.
  std::optional<double> theta_fixed;
  std::vector<int> n_grid;
  int data_reps = 20;
  std::size_t mc_draws = 200000;  // B
  std::uint64_t master_seed = 0;
  YGridSpec y_grid;
  std::string output_path;
};

// Throws UsageError on malformed configs (ids, grid order, B < 1000, ...).
void validate(const ExperimentConfig& config);

// One (n, rep) cell: either a complete distance record or a skip record
// with a reason. Unavailable numeric fields are NaN.
struct RepRecord {
  int n = 0;
  int rep = 0;
  double theta_true = 0.0;
  double theta_hat = 0.0;
  double b2 = 0.0;
  double r_n = 0.0;
  double a_n = 0.0;
  double beta_n = 0.0;
  double beta_n_prime = 0.0;
  double D_rw_oracle = 0.0;   // sup |rw ECDF - oracle F_n|
  double sqrtn_D = 0.0;       // sqrt(n) * D_rw_oracle
  double D_thm1_oracle = 0.0; // sup |first-order expansion - oracle F_n|
  double D_thm2_raw = 0.0;    // sup |raw ECDF - Edgeworth CDF|
  bool skipped = false;
  std::string reason;
};

struct NSummary {
  int n = 0;
  int completed = 0;
  int skipped = 0;
  double median_sqrtn_D = 0.0;
  double iqr_sqrtn_D = 0.0;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<RepRecord> rows;     // ordered by (n, rep)
  std::vector<NSummary> summary;   // one entry per n
};

// Runs the full convergence experiment. The report is a pure function of
// the config: replications use substreams keyed by (master_seed, n, rep),
// so any thread count produces identical output.
ConvergenceReport run_convergence(const ExperimentConfig& config,
                                  int threads = 1);

enum class ReportFormat { csv, json };

std::string report_to_csv(const ConvergenceReport& report);
std::string report_to_json(const ConvergenceReport& report);

// Writes the report to `path`; throws Error naming the path on I/O failure.
void emit_report(const ConvergenceReport& report, ReportFormat format,
                 const std::string& path);

// Parsed form of the CSV produced above; used for round-trip checks and by
// downstream consumers.
std::vector<RepRecord> parse_report_csv(const std::string& csv);

// One-configuration table of all four CDFs on the y-grid.
struct CdfTable {
  std::vector<double> y;
  std::vector<double> f_rw;      // corrected random-weighting ECDF
  std::vector<double> f_oracle;  // exact standardized posterior
  std::vector<double> f_thm1;    // first-order corrected normal CDF
  std::vector<double> f_thm2;    // Edgeworth CDF of the raw statistic
};

CdfTable simulate_cdf_table(const ExperimentConfig& config, int threads = 1);
std::string cdf_table_to_csv(const CdfTable& table);

// Built-in property suites behind the `check` CLI subcommand;
// suite is one of "weights", "expansion", "oracle", "all".
// Prints one line per check and returns true when everything passed.
bool run_check_suite(const std::string& suite, std::ostream& os);

}  // namespace rwpost

#endif  // RWPOST_HARNESS_HPP_
