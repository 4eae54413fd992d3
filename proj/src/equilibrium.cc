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

#include "qpd/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.h"
#include "qpd/error.h"

namespace qpd {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_named(const Strategy& s) {
  return s == Strategy::Cooperate() || s == Strategy::Defect() || s == Strategy::Quantum();
}

// Exact endpoint values: the last grid point is `hi` itself, not a product.
double grid_value(int k, int steps, double hi) {
  if (k == steps - 1) return hi;
  return hi * static_cast<double>(k) / static_cast<double>(steps - 1);
}

}  // namespace

StrategyGrid::StrategyGrid(int theta_steps, int phi_steps)
    : theta_steps_(theta_steps), phi_steps_(phi_steps) {
  if (theta_steps < 2 || phi_steps < 2) {
    throw InvalidArgument("strategy grid needs at least 2 steps per axis");
  }
  points_.reserve(static_cast<std::size_t>(theta_steps - 1) * phi_steps + 1);
  for (int i = 0; i + 1 < theta_steps; ++i) {
    const double theta = grid_value(i, theta_steps, kPi);
    for (int j = 0; j < phi_steps; ++j) {
      points_.emplace_back(theta, grid_value(j, phi_steps, kPi / 2));
    }
  }
  points_.push_back(Strategy::Defect());
}

TParam::TParam(double t) : t_(t) {
  if (!(t >= -1.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "t = " << t << " outside [-1, 1]";
    throw InvalidArgument(os.str());
  }
}

Strategy TParam::strategy() const {
  if (t_ >= 0.0) return Strategy(t_ * kPi, 0.0);
  return Strategy(0.0, -t_ * kPi / 2);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kClassical:
      return "classical";
    case Regime::kIntermediate:
      return "intermediate";
    case Regime::kQuantum:
      return "quantum";
  }
  return "unknown";
}

ThresholdPair thresholds(const PayoffTable& table) {
  const double r = table.reward();
  const double s = table.sucker();
  const double t = table.temptation();
  const double p = table.punishment();
  if (p >= t || r >= t) {
    throw InvalidArgument("thresholds need punishment < temptation and reward < temptation");
  }
  if (r + p > t + s) {
    std::ostringstream os;
    os << "payoff table with reward + punishment (" << r + p
       << ") > temptation + sucker (" << t + s
       << ") has overlapping D(x)D and Q(x)Q regions; no intermediate regime";
    throw InvalidArgument(os.str());
  }
  const double span = t - s;
  return {std::asin(std::sqrt((p - s) / span)), std::acos(std::sqrt((r - s) / span))};
}

Regime classify(double gamma, const ThresholdPair& th) {
  if (gamma >= th.gamma_th2) return Regime::kQuantum;
  if (gamma >= th.gamma_th1) return Regime::kIntermediate;
  return Regime::kClassical;
}

bool EquilibriumReport::only_named_points() const {
  return std::all_of(equilibria.begin(), equilibria.end(), [](const NashEquilibrium& e) {
    return is_named(e.alice) && is_named(e.bob);
  });
}

BestResponse best_response(const EntanglementParam& g, const Strategy& opponent,
                           const StrategyGrid& grid, const PayoffTable& table) {
  const GameEvaluator game(g, table);
  const Unitary2 opp = strategy_unitary(opponent);
  std::vector<double> payoff(grid.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    payoff[i] = game.payoffs(strategy_unitary(grid.points()[i]), opp).a;
    best = std::max(best, payoff[i]);
  }
  const double tie = kDefaultPolicy.identity_tol;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (payoff[i] >= best - tie) return {grid.points()[i], payoff[i]};
  }
  throw Error("best_response: empty grid");
}

EquilibriumReport find_nash_grid(const EntanglementParam& g, const StrategyGrid& grid,
                                 const NashSearchOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("Nash tolerance must be positive");
  const GameEvaluator game(g, options.table);
  const std::size_t n = grid.size();

  std::vector<Unitary2> unitaries;
  unitaries.reserve(n);
  for (const Strategy& s : grid.points()) unitaries.push_back(strategy_unitary(s));

  // Row i is Alice's strategy, column j Bob's.
  std::vector<double> pay_a(n * n);
  std::vector<double> pay_b(n * n);
  internal::parallel_for(n, options.workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const PayoffPair p = game.payoffs(unitaries[i], unitaries[j]);
      pay_a[i * n + j] = p.a;
      pay_b[i * n + j] = p.b;
    }
  });

  std::vector<double> best_a(n, -std::numeric_limits<double>::infinity());
  std::vector<double> best_b(n, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      best_a[j] = std::max(best_a[j], pay_a[i * n + j]);
      best_b[i] = std::max(best_b[i], pay_b[i * n + j]);
    }
  }

  EquilibriumReport report{g.gamma(), {}, std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = pay_a[i * n + j];
      const double b = pay_b[i * n + j];
      if (a >= best_a[j] - options.tol && b >= best_b[i] - options.tol) {
        report.equilibria.push_back({grid.points()[i], grid.points()[j], a, b});
      }
    }
  }
  try {
    report.regime = classify(g.gamma(), thresholds(options.table));
  } catch (const InvalidArgument&) {
    report.regime = std::nullopt;
  }
  return report;
}

std::vector<CurvePoint> nash_payoff_curve(const PayoffTable& table,
                                          const std::vector<double>& gammas) {
  const ThresholdPair th = thresholds(table);
  const double r = table.reward();
  const double s = table.sucker();
  const double t = table.temptation();
  const double p = table.punishment();
  std::vector<CurvePoint> out;
  for (double gamma : gammas) {
    EntanglementParam checked(gamma);
    const double s2 = std::sin(gamma) * std::sin(gamma);
    const double c2 = std::cos(gamma) * std::cos(gamma);
    if (gamma <= th.gamma_th1) out.push_back({gamma, "DD", p, p});
    if (gamma >= th.gamma_th1 && gamma <= th.gamma_th2) {
      const double defector = t * c2 + s * s2;
      const double quantum = t * s2 + s * c2;
      out.push_back({gamma, "DQ", defector, quantum});
      out.push_back({gamma, "QD", quantum, defector});
    }
    if (gamma >= th.gamma_th2) out.push_back({gamma, "QQ", r, r});
  }
  return out;
}

std::vector<double> t_axis(int steps) {
  if (steps < 2) throw InvalidArgument("landscape needs at least 2 steps");
  std::vector<double> t(steps);
  const int last = steps - 1;
  for (int k = 0; k < steps; ++k) {
    t[k] = static_cast<double>(2 * k - last) / static_cast<double>(last);
  }
  return t;
}

std::vector<LandscapeCell> landscape(const EntanglementParam& g, int steps,
                                     const PayoffTable& table) {
  const std::vector<double> axis = t_axis(steps);
  const GameEvaluator game(g, table);
  std::vector<Unitary2> unitaries;
  unitaries.reserve(axis.size());
  for (double t : axis) unitaries.push_back(strategy_unitary(TParam(t).strategy()));

  std::vector<LandscapeCell> cells;
  cells.reserve(axis.size() * axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j < axis.size(); ++j) {
      cells.push_back({axis[i], axis[j], game.payoffs(unitaries[i], unitaries[j]).a});
    }
  }
  return cells;
}

}  // namespace qpd
