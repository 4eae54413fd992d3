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

#ifndef QPD_NMR_H_
#define QPD_NMR_H_

// Two-spin NMR model of the game: gate compilation into RF pulses and
// J-coupling delays, and their simulation in the weak-coupling rotating frame
//   H = (pi J / 2) sigma_z (x) sigma_z
// with chemical shifts dropped (both spins on resonance).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpd/equilibrium.h"
#include "qpd/game.h"
#include "qpd/qstate.h"

namespace qpd::nmr {

class SpinSystem {
 public:
  // j_coupling in Hz, t2 and pulse_width in seconds. pulse_width is only used
  // for duration accounting; pulses act instantaneously.
  explicit SpinSystem(double j_coupling = 7.17, double t2 = 3.0,
                      bool selective_addressing = true, double pulse_width = 1e-3);

  double j_coupling() const { return j_coupling_; }
  double t2() const { return t2_; }
  bool selective_addressing() const { return selective_addressing_; }
  double pulse_width() const { return pulse_width_; }

 private:
  double j_coupling_;
  double t2_;
  bool selective_addressing_;
  double pulse_width_;
};

enum class Target { kAlice, kBob, kBoth };
enum class Axis { kX, kMinusX, kY, kMinusY };

std::string_view to_string(Target t);
std::string_view to_string(Axis a);

struct PulsePrimitive {
  enum class Kind { kRotation, kFreeEvolution };

  Kind kind = Kind::kRotation;
  Target target = Target::kBoth;
  double angle_deg = 0.0;  // rotation only
  Axis axis = Axis::kX;    // rotation only
  double duration = 0.0;   // free evolution only, seconds

  static PulsePrimitive Rotation(Target target, double angle_deg, Axis axis);
  static PulsePrimitive Delay(double seconds);

  bool is_rotation() const { return kind == Kind::kRotation; }

  friend bool operator==(const PulsePrimitive&, const PulsePrimitive&) = default;
};

class PulseSequence {
 public:
  // Throws InvalidArgument for an empty list, negative or non-finite
  // durations, or fields set that do not belong to the primitive's kind.
  PulseSequence(std::string label, std::vector<PulsePrimitive> primitives);

  const std::string& label() const { return label_; }
  const std::vector<PulsePrimitive>& primitives() const { return primitives_; }

  // Sum of free-evolution periods.
  double free_evolution_time() const;
  int rotation_count() const;
  // Free evolution plus one nominal pulse width per rotation.
  double total_duration(const SpinSystem& sys) const;

  // Time-ordered concatenation: `*this` first, then `next`.
  PulseSequence then(const PulseSequence& next, std::string label) const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::string label_;
  std::vector<PulsePrimitive> primitives_;
};

class NoiseModel {
 public:
  // rotation_angle_error: each rotation angle is scaled by 1 + u, u uniform
  //   in [-e, e], drawn independently per pulse.
  // field_inhomogeneity: one scale 1 + v, v uniform in [-f, f], applied to the
  //   J coupling and every rotation angle of a run.
  // dephasing: damp off-diagonal density-matrix elements by exp(-t / T2)
  //   during free evolution (run_experiment only).
  explicit NoiseModel(double rotation_angle_error = 0.0, double field_inhomogeneity = 0.0,
                      std::uint64_t seed = 0, bool dephasing = false);

  double rotation_angle_error() const { return rotation_angle_error_; }
  double field_inhomogeneity() const { return field_inhomogeneity_; }
  std::uint64_t seed() const { return seed_; }
  bool dephasing() const { return dephasing_; }
  bool is_noiseless() const {
    return rotation_angle_error_ == 0.0 && field_inhomogeneity_ == 0.0 && !dephasing_;
  }

  NoiseModel with_seed(std::uint64_t seed) const;

 private:
  double rotation_angle_error_;
  double field_inhomogeneity_;
  std::uint64_t seed_;
  bool dephasing_;
};

// Which player defects when the intermediate regime calls for D(x)Q or Q(x)D.
enum class IntermediateAssignment { kAliceDefects, kBobDefects };

struct StrategyPair {
  Strategy alice;
  Strategy bob;
};

// Ideal J(gamma): 90 -x on both spins, delay gamma / (pi J), 90 x on both.
PulseSequence compile_entangler(const EntanglementParam& g, const SpinSystem& sys);

// Ideal J^dagger(gamma): as the entangler with delay (2 pi - gamma) / (pi J).
PulseSequence compile_disentangler(const EntanglementParam& g, const SpinSystem& sys);

// The players' equilibrium moves for the regime of gamma:
//   classical:    non-selective 180 y            (D (x) D)
//   intermediate: selective 180 y on the defector and 90 -y, 180 x, 90 y on
//                 the other spin                 (D (x) Q or Q (x) D)
//   quantum:      non-selective 90 -y, 180 x, 90 y  (Q (x) Q)
PulseSequence compile_strategies(
    const EntanglementParam& g, const PayoffTable& table = PayoffTable(),
    IntermediateAssignment assignment = IntermediateAssignment::kAliceDefects);

// Pulses for an explicit pair drawn from {D, Q}; other strategies are
// rejected. Equal pairs use non-selective pulses.
PulseSequence compile_strategy_pair(const StrategyPair& pair);

// The strategies compile_strategies realizes.
StrategyPair equilibrium_strategies(
    const EntanglementParam& g, const PayoffTable& table = PayoffTable(),
    IntermediateAssignment assignment = IntermediateAssignment::kAliceDefects);

// Single-spin rotation exp(-i angle/2 n.sigma) about an in-plane axis.
Matrix2 rotation(double angle_rad, Axis axis);

// exp(-i (pi J / 2) sigma_z (x) sigma_z t).
Matrix4 free_evolution(double j_coupling, double seconds);

struct RealizedStep {
  Matrix4 unitary;
  double duration;  // free-evolution seconds; 0 for pulses
};

// Primitive propagators with noise drawn from `noise` (deterministic per seed).
std::vector<RealizedStep> realize(const PulseSequence& seq, const SpinSystem& sys,
                                  const NoiseModel& noise);

// Time-ordered product of the realized propagators.
Unitary4 sequence_unitary(const PulseSequence& seq, const SpinSystem& sys,
                          const NoiseModel& noise = NoiseModel());

struct ExperimentRun {
  DensityMatrix4 rho;
  PulseSequence program;  // entangler, strategies, disentangler
  StrategyPair strategies;
  double duration;        // seconds, including nominal pulse widths
};

// Starts from |CC><CC| and runs the compiled entangler, strategy pulses and
// disentangler.
ExperimentRun run_experiment(const EntanglementParam& g, const StrategyPair& strategies,
                             const SpinSystem& sys, const NoiseModel& noise);

// As above with the equilibrium strategies for gamma's regime.
ExperimentRun run_experiment(
    const EntanglementParam& g, const SpinSystem& sys, const NoiseModel& noise,
    const PayoffTable& table = PayoffTable(),
    IntermediateAssignment assignment = IntermediateAssignment::kAliceDefects);

// Line format: "PULSE <target> <angle>deg <axis>" or "DELAY <seconds>", with a
// leading "# <label>" line. Numbers round-trip exactly.
std::string serialize(const PulseSequence& seq);
PulseSequence parse_pulse_sequence(std::string_view text);

inline constexpr double kDurationBudget = 0.3;  // seconds

}  // namespace qpd::nmr

#endif  // QPD_NMR_H_
