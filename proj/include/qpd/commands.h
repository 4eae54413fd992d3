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

#ifndef QPD_COMMANDS_H_
#define QPD_COMMANDS_H_

// Command implementations behind the `qpd` executable. Each command turns a
// RunConfig into in-memory output files so it can be tested without touching
// the filesystem.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpd/game.h"

namespace qpd::cli {

inline constexpr std::string_view kToolVersion = "qpd 0.1.0";

enum class Format { kCsv, kJson };

struct RunConfig {
  std::string command;  // landscape, sweep, equilibria, thresholds, nmr, tomo
  PayoffTable table;
  int grid_theta = 61;
  int grid_phi = 31;
  // Empty means the command's default (the 19-point sweep where a list is
  // needed, pi/2 where a single gamma is).
  std::vector<double> gammas;
  std::string preset;  // landscape: fig2, fig3, fig4
  int steps = 0;       // 0 means the command's default
  double tol = 1e-9;
  double noise_angle = 0.0;
  double noise_readout = 0.0;
  std::uint64_t seed = 1;
  bool bob_defects = false;  // intermediate-regime assignment
  bool verify = false;       // thresholds: cross-check by grid scan
  std::string records;       // tomo: recorded measurements to reconstruct
  Format format = Format::kCsv;
};

using Cell = std::variant<double, std::string>;

struct Dataset {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Extra "key: value" metadata lines besides the tool version and config.
  std::vector<std::pair<std::string, std::string>> notes;
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  std::vector<OutputFile> files;
  std::vector<std::string> warnings;
  std::string summary;  // short human-readable report for stdout
};

// The 19 values n pi / 36, n = 0..18.
std::vector<double> sweep_gammas();

// fig2: gamma_th1 / 2, fig3: (gamma_th1 + gamma_th2) / 2,
// fig4: (gamma_th2 + pi / 2) / 2.
double preset_gamma(std::string_view preset, const PayoffTable& table = PayoffTable());

CommandResult cmd_landscape(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);
CommandResult cmd_equilibria(const RunConfig& config);
CommandResult cmd_thresholds(const RunConfig& config);
CommandResult cmd_nmr(const RunConfig& config);
CommandResult cmd_tomo(const RunConfig& config);

// Dispatches on config.command.
CommandResult run_command(const RunConfig& config);

// CSV: "# tool", "# kind", "# config: <json>", notes, header, rows with
// numbers in fixed notation to 12 significant digits. JSON mirrors it with
// column-oriented data.
std::string render(const Dataset& data, const RunConfig& config);

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(std::string_view json);
// Extracts the embedded config from a CSV or JSON dataset written by render().
RunConfig config_from_dataset(std::string_view content);

// Creates `dir` if needed; throws IoError naming the failing path.
void write_outputs(const CommandResult& result, const std::filesystem::path& dir);
std::string read_file(const std::filesystem::path& path);

}  // namespace qpd::cli

#endif  // QPD_COMMANDS_H_
