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

#include "qpd/commands.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpd/equilibrium.h"
#include "qpd/error.h"
#include "qpd/nmr.h"
#include "qpd/seed.h"
#include "qpd/text_format.h"
#include "qpd/tomography.h"

namespace qpd::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr int kDefaultLandscapeSteps = 41;
constexpr int kDefaultCurveSteps = 181;

std::string extension(Format f) { return f == Format::kCsv ? ".csv" : ".json"; }

std::string csv_field(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) return text::format_fixed12(*v);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

double single_gamma(const RunConfig& config, double fallback) {
  if (config.gammas.size() > 1) {
    throw InvalidArgument(config.command + " takes a single --gamma value");
  }
  return config.gammas.empty() ? fallback : config.gammas.front();
}

ordered_json cell_json(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) return *v;
  return std::get<std::string>(c);
}

nmr::IntermediateAssignment assignment_of(const RunConfig& config) {
  return config.bob_defects ? nmr::IntermediateAssignment::kBobDefects
                            : nmr::IntermediateAssignment::kAliceDefects;
}

Dataset density_dataset(const std::string& kind, const DensityMatrix4& rho) {
  Dataset d{kind, {"row", "col", "re", "im"}, {}, {}};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      d.rows.push_back({static_cast<double>(r), static_cast<double>(c), rho(r, c).real(),
                        rho(r, c).imag()});
    }
  }
  return d;
}

PayoffPair tomography_payoff(const DensityMatrix4& rho, double sigma, std::uint64_t seed,
                             const PayoffTable& table) {
  const auto records = tomo::simulate_all_settings(rho, sigma, seed);
  return tomo::payoff_from_density(tomo::reconstruct(records).rho_hat, table);
}

OutputFile dataset_file(const std::string& stem, const Dataset& d, const RunConfig& config) {
  return {stem + extension(config.format), render(d, config)};
}

std::string fixed6(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> sweep_gammas() {
  std::vector<double> out;
  for (int n = 0; n <= 18; ++n) out.push_back(EntanglementParam::SweepPoint(n).gamma());
  return out;
}

double preset_gamma(std::string_view preset, const PayoffTable& table) {
  const ThresholdPair th = thresholds(table);
  if (preset == "fig2") return th.gamma_th1 / 2;
  if (preset == "fig3") return (th.gamma_th1 + th.gamma_th2) / 2;
  if (preset == "fig4") return (th.gamma_th2 + kPi / 2) / 2;
  throw InvalidArgument("unknown preset '" + std::string(preset) +
                        "' (expected fig2, fig3 or fig4)");
}

CommandResult cmd_landscape(const RunConfig& config) {
  double gamma = 0.0;
  if (!config.preset.empty()) {
    if (!config.gammas.empty()) throw InvalidArgument("use either --preset or --gamma");
    gamma = preset_gamma(config.preset, config.table);
  } else {
    if (config.gammas.empty()) throw InvalidArgument("landscape needs --gamma or --preset");
    gamma = single_gamma(config, 0.0);
  }
  const EntanglementParam g(gamma);
  const int steps = config.steps > 0 ? config.steps : kDefaultLandscapeSteps;

  Dataset d{"landscape", {"t_a", "t_b", "payoff_a"}, {}, {}};
  d.notes.emplace_back("gamma", text::format_fixed12(gamma));
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const LandscapeCell& c : landscape(g, steps, config.table)) {
    d.rows.push_back({c.t_a, c.t_b, c.payoff_a});
    lo = first ? c.payoff_a : std::min(lo, c.payoff_a);
    hi = first ? c.payoff_a : std::max(hi, c.payoff_a);
    first = false;
  }
  CommandResult result;
  result.files.push_back(dataset_file("landscape", d, config));
  result.summary = "landscape gamma=" + text::format_fixed12(gamma) + " steps=" +
                   std::to_string(steps) + " payoff range [" + text::format_fixed12(lo) +
                   ", " + text::format_fixed12(hi) + "]";
  return result;
}

CommandResult cmd_sweep(const RunConfig& config) {
  const std::vector<double> gammas = config.gammas.empty() ? sweep_gammas() : config.gammas;
  const nmr::SpinSystem sys;
  const nmr::NoiseModel noise(config.noise_angle, 0.0, config.seed);

  Dataset sweep{"sweep_comparison",
                {"n", "gamma", "regime", "equilibrium", "analytic_a", "analytic_b",
                 "simulated_a", "simulated_b", "noisy_a", "noisy_b"},
                {},
                {}};
  const ThresholdPair th = thresholds(config.table);
  std::uint64_t stream = 0;
  for (std::size_t n = 0; n < gammas.size(); ++n) {
    const EntanglementParam g(gammas[n]);
    const Regime regime = classify(g.gamma(), th);
    for (const CurvePoint& branch : nash_payoff_curve(config.table, {g.gamma()})) {
      const nmr::StrategyPair pair{
          branch.label[0] == 'D' ? Strategy::Defect() : Strategy::Quantum(),
          branch.label[1] == 'D' ? Strategy::Defect() : Strategy::Quantum()};
      const auto ideal = nmr::run_experiment(g, pair, sys, nmr::NoiseModel());
      const PayoffPair simulated = tomography_payoff(ideal.rho, 0.0, 0, config.table);

      const std::uint64_t run_seed = derive_seed(config.seed, stream++);
      const std::uint64_t readout_seed = derive_seed(config.seed, stream++);
      const auto noisy_run = nmr::run_experiment(g, pair, sys, noise.with_seed(run_seed));
      const PayoffPair noisy =
          tomography_payoff(noisy_run.rho, config.noise_readout, readout_seed, config.table);

      sweep.rows.push_back({std::to_string(n), g.gamma(), std::string(to_string(regime)),
                            branch.label, branch.payoff_a, branch.payoff_b, simulated.a,
                            simulated.b, noisy.a, noisy.b});
    }
  }
  sweep.notes.emplace_back("gamma_th1", text::format_fixed12(th.gamma_th1));
  sweep.notes.emplace_back("gamma_th2", text::format_fixed12(th.gamma_th2));

  const int steps = config.steps > 0 ? config.steps : kDefaultCurveSteps;
  Dataset curve{"payoff_curve", {"gamma", "equilibrium", "payoff_a", "payoff_b"}, {}, {}};
  std::vector<double> dense;
  for (int k = 0; k < steps; ++k) {
    dense.push_back(k + 1 == steps ? kPi / 2 : kPi / 2 * k / (steps - 1));
  }
  for (const CurvePoint& p : nash_payoff_curve(config.table, dense)) {
    curve.rows.push_back({p.gamma, p.label, p.payoff_a, p.payoff_b});
  }

  CommandResult result;
  result.files.push_back(dataset_file("sweep", sweep, config));
  result.files.push_back(dataset_file("payoff_curve", curve, config));
  result.summary = "sweep: " + std::to_string(gammas.size()) + " gamma values, " +
                   std::to_string(sweep.rows.size()) + " equilibrium branches";
  return result;
}

CommandResult cmd_equilibria(const RunConfig& config) {
  const EntanglementParam g(single_gamma(config, kPi / 2));
  const StrategyGrid grid(config.grid_theta, config.grid_phi);
  NashSearchOptions options;
  options.tol = config.tol;
  options.table = config.table;
  const EquilibriumReport report = find_nash_grid(g, grid, options);

  Dataset d{"equilibria",
            {"alice", "bob", "alice_theta", "alice_phi", "bob_theta", "bob_phi", "payoff_a",
             "payoff_b"},
            {},
            {}};
  for (const NashEquilibrium& e : report.equilibria) {
    d.rows.push_back({e.alice.label(), e.bob.label(), e.alice.theta(), e.alice.phi(),
                      e.bob.theta(), e.bob.phi(), e.payoff_a, e.payoff_b});
  }
  const std::string regime =
      report.regime ? std::string(to_string(*report.regime)) : std::string("unclassified");
  d.notes.emplace_back("gamma", text::format_fixed12(g.gamma()));
  d.notes.emplace_back("regime", regime);
  d.notes.emplace_back("equilibria", std::to_string(report.equilibria.size()));

  CommandResult result;
  if (!report.only_named_points()) {
    result.warnings.push_back(
        "grid search found equilibria away from C, D, Q; the grid may be too coarse");
  }
  result.files.push_back(dataset_file("equilibria", d, config));
  std::string pairs;
  for (const NashEquilibrium& e : report.equilibria) {
    pairs += " " + e.alice.label() + "(x)" + e.bob.label();
  }
  result.summary = "gamma=" + text::format_fixed12(g.gamma()) + " regime=" + regime + " " +
                   std::to_string(report.equilibria.size()) + " equilibria:" + pairs;
  return result;
}

CommandResult cmd_thresholds(const RunConfig& config) {
  const ThresholdPair th = thresholds(config.table);
  Dataset d{"thresholds", {"gamma_th1", "gamma_th2"}, {{th.gamma_th1, th.gamma_th2}}, {}};
  CommandResult result;
  if (config.verify) {
    const StrategyGrid grid(config.grid_theta, config.grid_phi);
    NashSearchOptions options;
    options.tol = config.tol;
    options.table = config.table;
    const auto only = [&](double gamma, const Strategy& s) {
      const auto r = find_nash_grid(EntanglementParam(gamma), grid, options);
      return r.equilibria.size() == 1 && r.equilibria[0].alice == s && r.equilibria[0].bob == s;
    };
    const bool below = only(std::max(0.0, th.gamma_th1 - 0.01), Strategy::Defect());
    const bool above = only(std::min(kPi / 2, th.gamma_th2 + 0.01), Strategy::Quantum());
    const bool ok = below && above;
    d.notes.emplace_back("scan", ok ? "consistent" : "inconsistent");
    if (!ok) result.warnings.push_back("grid regime scan disagrees with the threshold formulas");
  }
  result.files.push_back(dataset_file("thresholds", d, config));
  result.summary = "gamma_th1=" + fixed6(th.gamma_th1) + " gamma_th2=" + fixed6(th.gamma_th2);
  return result;
}

CommandResult cmd_nmr(const RunConfig& config) {
  const EntanglementParam g(single_gamma(config, kPi / 2));
  const nmr::SpinSystem sys;
  const nmr::NoiseModel noise(config.noise_angle, 0.0, config.seed);
  const nmr::ExperimentRun run =
      nmr::run_experiment(g, sys, noise, config.table, assignment_of(config));
  const PayoffPair payoff = tomo::payoff_from_density(run.rho, config.table);

  Dataset d = density_dataset("nmr_density", run.rho);
  d.notes.emplace_back("gamma", text::format_fixed12(g.gamma()));
  d.notes.emplace_back("strategies", run.strategies.alice.label() + run.strategies.bob.label());
  d.notes.emplace_back("payoff_a", text::format_fixed12(payoff.a));
  d.notes.emplace_back("payoff_b", text::format_fixed12(payoff.b));
  d.notes.emplace_back("free_evolution_s", text::format_fixed12(run.program.free_evolution_time()));
  d.notes.emplace_back("duration_s", text::format_fixed12(run.duration));

  CommandResult result;
  if (run.duration >= nmr::kDurationBudget) {
    result.warnings.push_back("modeled duration " + text::format_fixed12(run.duration) +
                              " s exceeds the 300 ms budget");
  }
  if (run.duration >= sys.t2()) {
    result.warnings.push_back("modeled duration " + text::format_fixed12(run.duration) +
                              " s is not within T2 = " + text::format_fixed12(sys.t2()) + " s");
  }
  result.files.push_back({"nmr_pulses.txt", nmr::serialize(run.program)});
  result.files.push_back(dataset_file("nmr", d, config));
  result.summary = "gamma=" + text::format_fixed12(g.gamma()) + " strategies " +
                   run.strategies.alice.label() + "(x)" + run.strategies.bob.label() +
                   " payoffs (" + text::format_fixed12(payoff.a) + ", " +
                   text::format_fixed12(payoff.b) + ") duration " +
                   text::format_fixed12(run.duration) + " s";
  return result;
}

CommandResult cmd_tomo(const RunConfig& config) {
  tomo::verify_standard_design();
  CommandResult result;
  std::vector<tomo::MeasurementRecord> records;
  std::optional<DensityMatrix4> truth;
  if (!config.records.empty()) {
    records = tomo::parse_records(read_file(config.records));
  } else {
    const EntanglementParam g(single_gamma(config, kPi / 2));
    const nmr::NoiseModel noise(config.noise_angle, 0.0, derive_seed(config.seed, 0));
    const auto run =
        nmr::run_experiment(g, nmr::SpinSystem(), noise, config.table, assignment_of(config));
    truth = run.rho;
    records = tomo::simulate_all_settings(run.rho, config.noise_readout,
                                          derive_seed(config.seed, 1));
    result.files.push_back({"tomo_records.csv", tomo::serialize_records(records)});
  }
  const tomo::ReconstructionResult rec = tomo::reconstruct(records);
  const PayoffPair payoff = tomo::payoff_from_density(rec.rho_hat, config.table);

  Dataset d = density_dataset("tomography", rec.rho_hat);
  d.notes.emplace_back("residual_norm", text::format_fixed12(rec.residual_norm));
  d.notes.emplace_back("projected", rec.projected ? "true" : "false");
  d.notes.emplace_back("payoff_a", text::format_fixed12(payoff.a));
  d.notes.emplace_back("payoff_b", text::format_fixed12(payoff.b));
  if (truth) {
    d.notes.emplace_back("trace_distance_to_truth",
                         text::format_fixed12(trace_distance(*truth, rec.rho_hat)));
  }
  result.files.push_back(dataset_file("tomo", d, config));
  result.summary = "reconstructed payoffs (" + text::format_fixed12(payoff.a) + ", " +
                   text::format_fixed12(payoff.b) + ") residual " +
                   text::format_fixed12(rec.residual_norm) +
                   (rec.projected ? " (projected)" : "");
  return result;
}

CommandResult run_command(const RunConfig& config) {
  if (config.command == "landscape") return cmd_landscape(config);
  if (config.command == "sweep") return cmd_sweep(config);
  if (config.command == "equilibria") return cmd_equilibria(config);
  if (config.command == "thresholds") return cmd_thresholds(config);
  if (config.command == "nmr") return cmd_nmr(config);
  if (config.command == "tomo") return cmd_tomo(config);
  throw InvalidArgument("unknown command '" + config.command + "'");
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["table"] = {c.table.reward(), c.table.sucker(), c.table.temptation(), c.table.punishment()};
  j["grid"] = {c.grid_theta, c.grid_phi};
  j["gammas"] = c.gammas;
  j["preset"] = c.preset;
  j["steps"] = c.steps;
  j["tol"] = c.tol;
  j["noise_angle"] = c.noise_angle;
  j["noise_readout"] = c.noise_readout;
  j["seed"] = c.seed;
  j["bob_defects"] = c.bob_defects;
  j["verify"] = c.verify;
  j["records"] = c.records;
  j["format"] = c.format == Format::kCsv ? "csv" : "json";
  return j.dump();
}

RunConfig config_from_json(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    const auto t = j.at("table").get<std::vector<double>>();
    if (t.size() != 4) throw InvalidArgument("config table needs 4 entries");
    c.table = PayoffTable(t[0], t[1], t[2], t[3]);
    const auto grid = j.at("grid").get<std::vector<int>>();
    if (grid.size() != 2) throw InvalidArgument("config grid needs 2 entries");
    c.grid_theta = grid[0];
    c.grid_phi = grid[1];
    c.gammas = j.at("gammas").get<std::vector<double>>();
    c.preset = j.at("preset").get<std::string>();
    c.steps = j.at("steps").get<int>();
    c.tol = j.at("tol").get<double>();
    c.noise_angle = j.at("noise_angle").get<double>();
    c.noise_readout = j.at("noise_readout").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.bob_defects = j.at("bob_defects").get<bool>();
    c.verify = j.at("verify").get<bool>();
    c.records = j.at("records").get<std::string>();
    const auto format = j.at("format").get<std::string>();
    if (format != "csv" && format != "json") throw InvalidArgument("config format");
    c.format = format == "csv" ? Format::kCsv : Format::kJson;
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed embedded config: ") + e.what());
  }
}

RunConfig config_from_dataset(std::string_view content) {
  const std::string_view body = text::trim(content);
  if (!body.empty() && body.front() == '{') {
    try {
      const auto j = nlohmann::json::parse(body);
      return config_from_json(j.at("config").dump());
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed JSON dataset: ") + e.what());
    }
  }
  constexpr std::string_view kPrefix = "# config: ";
  for (std::string_view line : text::split(content, '\n')) {
    if (line.substr(0, kPrefix.size()) == kPrefix) {
      return config_from_json(line.substr(kPrefix.size()));
    }
  }
  throw InvalidArgument("dataset has no embedded config line");
}

std::string render(const Dataset& data, const RunConfig& config) {
  for (const auto& row : data.rows) {
    if (row.size() != data.columns.size()) {
      throw Error("dataset '" + data.kind + "' has a row of the wrong length");
    }
  }
  if (config.format == Format::kJson) {
    ordered_json j;
    j["tool"] = kToolVersion;
    j["kind"] = data.kind;
    j["config"] = ordered_json::parse(config_to_json(config));
    ordered_json notes = ordered_json::object();
    for (const auto& [k, v] : data.notes) notes[k] = v;
    j["notes"] = notes;
    j["columns"] = data.columns;
    ordered_json columns = ordered_json::object();
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
      ordered_json series = ordered_json::array();
      for (const auto& row : data.rows) series.push_back(cell_json(row[c]));
      columns[data.columns[c]] = series;
    }
    j["data"] = columns;
    return j.dump(2) + "\n";
  }
  std::string out;
  out += "# tool: " + std::string(kToolVersion) + "\n";
  out += "# kind: " + data.kind + "\n";
  out += "# config: " + config_to_json(config) + "\n";
  for (const auto& [k, v] : data.notes) out += "# " + k + ": " + v + "\n";
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    out += (c ? "," : "") + data.columns[c];
  }
  out += "\n";
  for (const auto& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += (c ? "," : "") + csv_field(row[c]);
    }
    out += "\n";
  }
  return out;
}

void write_outputs(const CommandResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const OutputFile& f : result.files) {
    const std::filesystem::path path = dir / f.name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << f.content;
    os.close();
    if (!os) throw IoError("cannot write " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace qpd::cli
