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

#ifndef QPD_GAME_H_
#define QPD_GAME_H_

#include <numbers>
#include <string>

#include "qpd/qstate.h"

namespace qpd {

// A point of the two-parameter strategy family
//   U(theta, phi) = [[e^{i phi} cos(theta/2), sin(theta/2)],
//                    [-sin(theta/2),          e^{-i phi} cos(theta/2)]]
// with theta in [0, pi] and phi in [0, pi/2]. Out-of-range values are
// rejected, never clamped.
class Strategy {
 public:
  Strategy(double theta, double phi);

  static Strategy Cooperate() { return Strategy(0.0, 0.0); }
  static Strategy Defect() { return Strategy(std::numbers::pi, 0.0); }
  static Strategy Quantum() { return Strategy(0.0, std::numbers::pi / 2); }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  // "C", "D", "Q" for the named points, otherwise "U(theta,phi)".
  std::string label() const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  double theta_;
  double phi_;
};

// Entanglement of the shared initial state, gamma in [0, pi/2].
class EntanglementParam {
 public:
  explicit EntanglementParam(double gamma);

  // gamma = n * pi / 36 for n = 0..18.
  static EntanglementParam SweepPoint(int n);

  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

// Prisoner's Dilemma payoffs, ordered temptation > reward > punishment > sucker.
class PayoffTable {
 public:
  PayoffTable() = default;
  PayoffTable(double reward, double sucker, double temptation, double punishment);

  double reward() const { return reward_; }
  double sucker() const { return sucker_; }
  double temptation() const { return temptation_; }
  double punishment() const { return punishment_; }

  // Expected payoffs for outcome probabilities (P_CC, P_CD, P_DC, P_DD).
  double payoff_a(const Probabilities& p) const;
  double payoff_b(const Probabilities& p) const;

  friend bool operator==(const PayoffTable&, const PayoffTable&) = default;

 private:
  double reward_ = 3.0;
  double sucker_ = 0.0;
  double temptation_ = 5.0;
  double punishment_ = 1.0;
};

struct PayoffPair {
  double a = 0.0;
  double b = 0.0;
};

struct GameOutcome {
  StateVector4 final_state;
  Probabilities probabilities;
  double payoff_a;
  double payoff_b;
};

Unitary2 strategy_unitary(const Strategy& s);

// J(gamma) = exp(i gamma D(x)D / 2) = cos(gamma/2) I + i sin(gamma/2) D(x)D,
// exact because (D(x)D)^2 = I.
Unitary4 entangling_gate(const EntanglementParam& g);
Unitary4 disentangling_gate(const EntanglementParam& g);

// Precomputes the gates for one (gamma, table) so repeated plays only pay
// for the local unitaries.
class GameEvaluator {
 public:
  GameEvaluator(const EntanglementParam& g, const PayoffTable& table);

  GameOutcome play(const Strategy& a, const Strategy& b) const;

  // Same pipeline for arbitrary local unitaries, without building a
  // GameOutcome.
  Probabilities final_probabilities(const Unitary2& a, const Unitary2& b) const;
  PayoffPair payoffs(const Unitary2& a, const Unitary2& b) const;

  const EntanglementParam& gamma() const { return gamma_; }
  const PayoffTable& table() const { return table_; }

 private:
  Vector4 final_amplitudes(const Matrix2& a, const Matrix2& b) const;

  EntanglementParam gamma_;
  PayoffTable table_;
  Matrix4 disentangle_;
  Vector4 initial_;
};

// |psi_f> = J^dagger (U_A (x) U_B) J |CC>, measured in the computational basis.
GameOutcome play(const EntanglementParam& g, const Strategy& a, const Strategy& b,
                 const PayoffTable& table = PayoffTable());

// Alice's payoff for U(theta, phi) against D with the default table:
//   sin^2(theta/2) + 5 cos^2(theta/2) sin^2(phi) sin^2(gamma)
double payoff_vs_defect(double theta, double phi, double gamma);

// Alice's payoff for U(theta, phi) against Q with the default table:
//   4 - cos(theta) + (-3 + 2 cos(theta) - cos^2(theta/2) cos(2 phi)) sin^2(gamma)
double payoff_vs_q(double theta, double phi, double gamma);

}  // namespace qpd

#endif  // QPD_GAME_H_
