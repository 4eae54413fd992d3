// Copyright 2026 The qpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qpd: entanglement-parameterized quantum Prisoner's Dilemma toolkit.
//
//   qpd thresholds [--table r,s,t,p] [--verify]
//   qpd equilibria --gamma G [--grid 61x31] [--tol 1e-9]
//   qpd landscape (--preset fig2|fig3|fig4 | --gamma G) [--steps N]
//   qpd sweep [--gamma g1,g2,...] [--noise-angle E] [--noise-readout S] [--seed N]
//   qpd nmr --gamma G [--noise-angle E] [--seed N] [--bob-defects]
//   qpd tomo [--gamma G | --records FILE] [--noise-angle E] [--noise-readout S]
//
// Exit codes: 0 success, 1 input error, 2 I/O error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpd/commands.h"
#include "qpd/error.h"
#include "qpd/text_format.h"

namespace {

using qpd::cli::Format;
using qpd::cli::RunConfig;

struct RawFlags {
  std::string gamma;
  std::string table;
  std::string grid;
  std::string format = "csv";
  std::string out = ".";
  std::string replay;
};

qpd::PayoffTable parse_table(const std::string& s) {
  const auto parts = qpd::text::split(s, ',');
  if (parts.size() != 4) throw qpd::InvalidArgument("--table expects r,s,t,p");
  return qpd::PayoffTable(qpd::text::parse_double(parts[0], "reward"),
                          qpd::text::parse_double(parts[1], "sucker"),
                          qpd::text::parse_double(parts[2], "temptation"),
                          qpd::text::parse_double(parts[3], "punishment"));
}

void apply_grid(const std::string& s, RunConfig& config) {
  const auto parts = qpd::text::split(s, 'x');
  if (parts.size() != 2) throw qpd::InvalidArgument("--grid expects THETAxPHI, e.g. 61x31");
  const double theta = qpd::text::parse_double(parts[0], "grid theta steps");
  const double phi = qpd::text::parse_double(parts[1], "grid phi steps");
  if (theta != static_cast<int>(theta) || phi != static_cast<int>(phi)) {
    throw qpd::InvalidArgument("--grid steps must be integers");
  }
  config.grid_theta = static_cast<int>(theta);
  config.grid_phi = static_cast<int>(phi);
}

RunConfig resolve(const std::string& command, RunConfig config, const RawFlags& raw) {
  if (!raw.replay.empty()) {
    RunConfig replayed = qpd::cli::config_from_dataset(qpd::cli::read_file(raw.replay));
    if (replayed.command != command) {
      throw qpd::InvalidArgument("--replay file was produced by '" + replayed.command +
                                 "', not '" + command + "'");
    }
    return replayed;
  }
  config.command = command;
  if (!raw.gamma.empty()) {
    for (std::string_view g : qpd::text::split(raw.gamma, ',')) {
      config.gammas.push_back(qpd::text::parse_double(g, "gamma"));
    }
  }
  if (!raw.table.empty()) config.table = parse_table(raw.table);
  if (!raw.grid.empty()) apply_grid(raw.grid, config);
  if (raw.format == "csv") {
    config.format = Format::kCsv;
  } else if (raw.format == "json") {
    config.format = Format::kJson;
  } else {
    throw qpd::InvalidArgument("--format must be csv or json");
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Prisoner's Dilemma with tunable entanglement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qpd::cli::kToolVersion));

  RawFlags raw;
  RunConfig config;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--table", raw.table, "Payoff table reward,sucker,temptation,punishment");
    sub->add_option("--format", raw.format, "Output format: csv or json");
    sub->add_option("--out", raw.out, "Output directory");
  };
  const auto gamma_flag = [&](CLI::App* sub) {
    sub->add_option("--gamma", raw.gamma, "Entanglement gamma in [0, pi/2] (radians)");
  };
  const auto noise_flags = [&](CLI::App* sub) {
    sub->add_option("--noise-angle", config.noise_angle, "Fractional pulse-angle error");
    sub->add_option("--noise-readout", config.noise_readout, "Readout noise sigma");
    sub->add_option("--seed", config.seed, "Noise seed");
  };

  auto* thresholds = app.add_subcommand("thresholds", "Entanglement thresholds of a table");
  common(thresholds);
  thresholds->add_flag("--verify", config.verify, "Cross-check by grid regime scan");
  thresholds->add_option("--grid", raw.grid, "Strategy grid THETAxPHI for --verify");

  auto* equilibria = app.add_subcommand("equilibria", "Grid Nash equilibria at one gamma");
  common(equilibria);
  gamma_flag(equilibria);
  equilibria->add_option("--grid", raw.grid, "Strategy grid THETAxPHI (default 61x31)");
  equilibria->add_option("--tol", config.tol, "Unilateral-deviation tolerance");

  auto* landscape = app.add_subcommand("landscape", "Alice's payoff over the t square");
  common(landscape);
  gamma_flag(landscape);
  landscape->add_option("--preset", config.preset, "fig2, fig3 or fig4");
  landscape->add_option("--steps", config.steps, "Points per axis (default 41)");
  landscape->add_option("--replay", raw.replay, "Regenerate from a dataset's embedded config");

  auto* sweep = app.add_subcommand("sweep", "Analytic, simulated and noisy Nash payoffs");
  common(sweep);
  sweep->add_option("--gamma", raw.gamma, "Comma-separated gammas (default n pi/36)");
  noise_flags(sweep);
  sweep->add_option("--steps", config.steps, "Points on the analytic curve (default 181)");
  sweep->add_option("--replay", raw.replay, "Regenerate from a dataset's embedded config");

  auto* nmr = app.add_subcommand("nmr", "Compile and simulate the NMR experiment");
  common(nmr);
  gamma_flag(nmr);
  noise_flags(nmr);
  nmr->add_flag("--bob-defects", config.bob_defects, "Intermediate regime: Q(x)D");

  auto* tomo = app.add_subcommand("tomo", "Simulated readout and reconstruction");
  common(tomo);
  gamma_flag(tomo);
  noise_flags(tomo);
  tomo->add_flag("--bob-defects", config.bob_defects, "Intermediate regime: Q(x)D");
  tomo->add_option("--records", config.records, "Reconstruct recorded measurements instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    // The sweep's noisy series defaults to 5% pulse-angle error and 0.03
    // readout sigma.
    if (command == "sweep") {
      if (sweep->count("--noise-angle") == 0) config.noise_angle = 0.05;
      if (sweep->count("--noise-readout") == 0) config.noise_readout = 0.03;
    }
    const RunConfig resolved = resolve(command, config, raw);
    const qpd::cli::CommandResult result = qpd::cli::run_command(resolved);
    qpd::cli::write_outputs(result, raw.out);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << result.summary << "\n";
    for (const auto& f : result.files) std::cout << "wrote " << f.name << "\n";
  } catch (const qpd::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
