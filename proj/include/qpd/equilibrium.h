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

#ifndef QPD_EQUILIBRIUM_H_
#define QPD_EQUILIBRIUM_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpd/game.h"

namespace qpd {

// Uniform grid over theta in [0, pi] and phi in [0, pi/2], endpoints included.
// U(pi, phi) is the same operator for every phi, so the theta = pi row is
// represented by D alone; otherwise every physical strategy on the final row
// would show up as a distinct equilibrium.
class StrategyGrid {
 public:
  StrategyGrid(int theta_steps = 61, int phi_steps = 31);

  int theta_steps() const { return theta_steps_; }
  int phi_steps() const { return phi_steps_; }

  // Sorted by theta, then phi.
  const std::vector<Strategy>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  int theta_steps_;
  int phi_steps_;
  std::vector<Strategy> points_;
};

// Single-parameter path through strategy space: t in [0, 1] maps to
// U(t pi, 0) and t in [-1, 0) to U(0, -t pi / 2). C is t = 0, D is t = 1,
// Q is t = -1.
class TParam {
 public:
  explicit TParam(double t);
  double t() const { return t_; }
  Strategy strategy() const;

 private:
  double t_;
};

enum class Regime { kClassical, kIntermediate, kQuantum };

std::string_view to_string(Regime r);

struct ThresholdPair {
  double gamma_th1;
  double gamma_th2;
};

// gamma_th1 = arcsin sqrt((p - s) / (t - s)) bounds the region where D(x)D
// holds; gamma_th2 = arccos sqrt((r - s) / (t - s)) is where Q(x)Q starts.
// For the default table these are arcsin sqrt(1/5) and arcsin sqrt(2/5).
// Tables with reward + punishment > temptation + sucker invert the order (both
// symmetric equilibria coexist between the thresholds) and are rejected.
ThresholdPair thresholds(const PayoffTable& table = PayoffTable());

// [0, th1) classical, [th1, th2) intermediate, [th2, pi/2] quantum.
Regime classify(double gamma, const ThresholdPair& th);

struct NashEquilibrium {
  Strategy alice;
  Strategy bob;
  double payoff_a;
  double payoff_b;
};

struct EquilibriumReport {
  double gamma;
  std::vector<NashEquilibrium> equilibria;
  // Empty when the table has no three-regime structure.
  std::optional<Regime> regime;

  // True when every equilibrium is built from the named points C, D, Q.
  bool only_named_points() const;
};

struct BestResponse {
  Strategy strategy;
  double payoff;
};

inline constexpr double kExactNashTol = 1e-9;
// For payoffs recovered from noisy tomography.
inline constexpr double kCoarseNashTol = 1e-2;

// Alice's grid best reply to `opponent`. Payoffs within
// NumericPolicy::identity_tol of the maximum count as ties, resolved toward
// the smallest theta and then the smallest phi.
BestResponse best_response(const EntanglementParam& g, const Strategy& opponent,
                           const StrategyGrid& grid,
                           const PayoffTable& table = PayoffTable());

struct NashSearchOptions {
  double tol = kExactNashTol;
  PayoffTable table;
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

// Every grid pair from which neither player gains more than `tol` by moving to
// another grid point. Output order is deterministic: Alice's grid index, then
// Bob's.
EquilibriumReport find_nash_grid(const EntanglementParam& g, const StrategyGrid& grid,
                                 const NashSearchOptions& options = {});

struct CurvePoint {
  double gamma;
  std::string label;  // "DD", "DQ", "QD" or "QQ" (Alice first)
  double payoff_a;
  double payoff_b;
};

// Analytic equilibrium payoffs. Both asymmetric branches are emitted inside
// the intermediate band; at a threshold every equilibrium that holds there is
// emitted.
std::vector<CurvePoint> nash_payoff_curve(const PayoffTable& table,
                                          const std::vector<double>& gammas);

struct LandscapeCell {
  double t_a;
  double t_b;
  double payoff_a;
};

// Alice's payoff over the t-parametrized square, t_a outer and t_b inner,
// `steps` points per axis from -1 to 1.
std::vector<LandscapeCell> landscape(const EntanglementParam& g, int steps,
                                     const PayoffTable& table = PayoffTable());

// Grid of `steps` values from -1 to 1; the endpoints and (odd steps) 0 are exact.
std::vector<double> t_axis(int steps);

}  // namespace qpd

#endif  // QPD_EQUILIBRIUM_H_
