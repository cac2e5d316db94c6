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

// Command line front end:
//   rwpost simulate    one configuration, CDF table on the y-grid
//   rwpost convergence the sup-distance experiment over an n-grid
//   rwpost check       built-in property suites
//
// Exit codes: 0 success, 1 usage error, 2 numerical/fit failure. All
// randomness flows from --seed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwpost/errors.hpp"
#include "rwpost/harness.hpp"

namespace {

struct CommonOptions {
  std::string model_id;
  std::string prior_id;
  std::string theta = "from-prior";
  std::uint64_t seed = 0;
  std::size_t mc_draws = 200000;
  std::string out;
  int threads = 1;
  rwpost::YGridSpec y_grid;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--model", opt.model_id,
                  "model id, e.g. normal:1.0 or exp")
      ->required();
  cmd->add_option("--prior", opt.prior_id,
                  "prior id, e.g. trunc-normal:0,1,-10,10")
      ->required();
  cmd->add_option("--theta", opt.theta,
                  "true parameter value, or 'from-prior'");
  cmd->add_option("--reps", opt.mc_draws, "Monte Carlo draws B")
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", opt.out, "output path")->required();
  cmd->add_option("--threads", opt.threads, "worker threads")
      ->capture_default_str();
  cmd->add_option("--y-lo", opt.y_grid.lo, "y-grid lower end")
      ->capture_default_str();
  cmd->add_option("--y-hi", opt.y_grid.hi, "y-grid upper end")
      ->capture_default_str();
  cmd->add_option("--y-step", opt.y_grid.step, "y-grid step")
      ->capture_default_str();
}

rwpost::ExperimentConfig to_config(const CommonOptions& opt) {
  rwpost::ExperimentConfig config;
  config.model_id = opt.model_id;
  config.prior_id = opt.prior_id;
  if (opt.theta != "from-prior") {
    try {
      std::size_t pos = 0;
      config.theta_fixed = std::stod(opt.theta, &pos);
      if (pos != opt.theta.size()) throw std::invalid_argument(opt.theta);
    } catch (const std::exception&) {
      throw rwpost::UsageError("--theta must be a real or 'from-prior'");
    }
  }
  config.mc_draws = opt.mc_draws;
  config.master_seed = opt.seed;
  config.y_grid = opt.y_grid;
  config.output_path = opt.out;
  return config;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw rwpost::Error("cannot open '" + path + "' for writing");
  os << content;
  os.flush();
  if (!os) throw rwpost::Error("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-weighting approximation of standardized posteriors"};
  app.require_subcommand(1);

  CommonOptions sim_opt;
  int sim_n = 100;
  CLI::App* sim = app.add_subcommand(
      "simulate", "emit the CDF table y,F_rw,F_oracle,F_thm1,F_thm2");
  add_common(sim, sim_opt);
  sim->add_option("--n", sim_n, "sample size")->required();

  CommonOptions conv_opt;
  std::vector<int> n_grid;
  int data_reps = 20;
  std::string format = "csv";
  CLI::App* conv = app.add_subcommand(
      "convergence", "sup-distance convergence experiment over an n-grid");
  add_common(conv, conv_opt);
  conv->add_option("--n-grid", n_grid, "ascending sample sizes")
      ->required()
      ->delimiter(',');
  conv->add_option("--data-reps", data_reps, "data replications per n")
      ->capture_default_str();
  conv->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string suite = "all";
  CLI::App* check = app.add_subcommand("check", "built-in property suites");
  check->add_option("--suite", suite, "weights|expansion|oracle|all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      rwpost::ExperimentConfig config = to_config(sim_opt);
      config.n_grid = {sim_n};
      config.data_reps = 0;
      const rwpost::CdfTable table =
          rwpost::simulate_cdf_table(config, sim_opt.threads);
      write_file(sim_opt.out, rwpost::cdf_table_to_csv(table));
    } else if (conv->parsed()) {
      rwpost::ExperimentConfig config = to_config(conv_opt);
      config.n_grid = n_grid;
      config.data_reps = data_reps;
      const rwpost::ConvergenceReport report =
          rwpost::run_convergence(config, conv_opt.threads);
      rwpost::emit_report(report,
                          format == "json" ? rwpost::ReportFormat::json
                                           : rwpost::ReportFormat::csv,
                          conv_opt.out);
    } else if (check->parsed()) {
      if (!rwpost::run_check_suite(suite, std::cout)) {
        std::cerr << "check suite '" << suite << "' failed\n";
        return 2;
      }
    }
  } catch (const rwpost::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
