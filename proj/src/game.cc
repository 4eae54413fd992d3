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

#include "qpd/game.h"

#include <cmath>
#include <sstream>

#include "qpd/error.h"

namespace qpd {
namespace {

constexpr double kPi = std::numbers::pi;

Matrix4 defect_defect() {
  return kron(strategy_unitary(Strategy::Defect()).matrix(),
              strategy_unitary(Strategy::Defect()).matrix());
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

Strategy::Strategy(double theta, double phi) : theta_(theta), phi_(phi) {
  require_finite(theta, "theta");
  require_finite(phi, "phi");
  if (theta < 0.0 || theta > kPi) {
    std::ostringstream os;
    os << "theta = " << theta << " outside [0, pi]";
    throw InvalidArgument(os.str());
  }
  if (phi < 0.0 || phi > kPi / 2) {
    std::ostringstream os;
    os << "phi = " << phi << " outside [0, pi/2]";
    throw InvalidArgument(os.str());
  }
}

std::string Strategy::label() const {
  if (*this == Cooperate()) return "C";
  if (*this == Defect()) return "D";
  if (*this == Quantum()) return "Q";
  std::ostringstream os;
  os.precision(6);
  os << "U(" << theta_ << "," << phi_ << ")";
  return os.str();
}

EntanglementParam::EntanglementParam(double gamma) : gamma_(gamma) {
  require_finite(gamma, "gamma");
  if (gamma < 0.0 || gamma > kPi / 2) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma = " << gamma << " outside [0, pi/2]";
    throw InvalidArgument(os.str());
  }
}

EntanglementParam EntanglementParam::SweepPoint(int n) {
  if (n < 0 || n > 18) throw InvalidArgument("sweep index must lie in 0..18");
  return EntanglementParam(n * kPi / 36.0);
}

PayoffTable::PayoffTable(double reward, double sucker, double temptation, double punishment)
    : reward_(reward), sucker_(sucker), temptation_(temptation), punishment_(punishment) {
  for (double v : {reward, sucker, temptation, punishment}) require_finite(v, "payoff");
  if (!(temptation > reward && reward > punishment && punishment > sucker)) {
    std::ostringstream os;
    os << "payoff table (r=" << reward << ", s=" << sucker << ", t=" << temptation
       << ", p=" << punishment
       << ") violates the Prisoner's Dilemma ordering temptation > reward > "
          "punishment > sucker";
    throw InvalidArgument(os.str());
  }
}

double PayoffTable::payoff_a(const Probabilities& p) const {
  return reward_ * p[0] + sucker_ * p[1] + temptation_ * p[2] + punishment_ * p[3];
}

double PayoffTable::payoff_b(const Probabilities& p) const {
  return reward_ * p[0] + temptation_ * p[1] + sucker_ * p[2] + punishment_ * p[3];
}

Unitary2 strategy_unitary(const Strategy& s) {
  const double c = std::cos(s.theta() / 2);
  const double sn = std::sin(s.theta() / 2);
  const Complex phase = std::polar(1.0, s.phi());
  Matrix2 m;
  m << phase * c, sn, -sn, std::conj(phase) * c;
  return Unitary2(m);
}

Unitary4 entangling_gate(const EntanglementParam& g) {
  const double half = g.gamma() / 2;
  Matrix4 m = std::cos(half) * Matrix4::Identity() +
              Complex(0.0, std::sin(half)) * defect_defect();
  return Unitary4(m);
}

Unitary4 disentangling_gate(const EntanglementParam& g) {
  return entangling_gate(g).adjoint();
}

GameEvaluator::GameEvaluator(const EntanglementParam& g, const PayoffTable& table)
    : gamma_(g), table_(table) {
  const Unitary4 j = entangling_gate(g);
  disentangle_ = j.adjoint().matrix();
  initial_ = j.matrix().col(0);
}

Vector4 GameEvaluator::final_amplitudes(const Matrix2& a, const Matrix2& b) const {
  return disentangle_ * (kron(a, b) * initial_);
}

Probabilities GameEvaluator::final_probabilities(const Unitary2& a,
                                                 const Unitary2& b) const {
  const Vector4 psi = final_amplitudes(a.matrix(), b.matrix());
  return {std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2)), std::norm(psi(3))};
}

PayoffPair GameEvaluator::payoffs(const Unitary2& a, const Unitary2& b) const {
  const Probabilities p = final_probabilities(a, b);
  return {table_.payoff_a(p), table_.payoff_b(p)};
}

GameOutcome GameEvaluator::play(const Strategy& a, const Strategy& b) const {
  StateVector4 final_state(
      final_amplitudes(strategy_unitary(a).matrix(), strategy_unitary(b).matrix()));
  const Probabilities p = probabilities(final_state);
  return GameOutcome{final_state, p, table_.payoff_a(p), table_.payoff_b(p)};
}

GameOutcome play(const EntanglementParam& g, const Strategy& a, const Strategy& b,
                 const PayoffTable& table) {
  return GameEvaluator(g, table).play(a, b);
}

double payoff_vs_defect(double theta, double phi, double gamma) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const double sp = std::sin(phi);
  const double sg = std::sin(gamma);
  return s * s + 5.0 * c * c * sp * sp * sg * sg;
}

double payoff_vs_q(double theta, double phi, double gamma) {
  const double c = std::cos(theta / 2);
  const double sg = std::sin(gamma);
  return 4.0 - std::cos(theta) +
         (-3.0 + 2.0 * std::cos(theta) - c * c * std::cos(2.0 * phi)) * sg * sg;
}

}  // namespace qpd
