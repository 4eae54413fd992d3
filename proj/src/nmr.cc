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

#include "qpd/nmr.h"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "qpd/error.h"
#include "qpd/text_format.h"

namespace qpd::nmr {
namespace {

constexpr double kPi = std::numbers::pi;

double degrees_to_radians(double deg) { return deg * kPi / 180.0; }

// Uniform in [-1, 1] from raw engine bits, independent of the standard
// library's distribution implementations.
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

Matrix4 place(const Matrix2& r, Target target) {
  switch (target) {
    case Target::kAlice:
      return kron(r, Matrix2::Identity());
    case Target::kBob:
      return kron(Matrix2::Identity(), r);
    case Target::kBoth:
      return kron(r, r);
  }
  throw Error("unknown pulse target");
}

void check_fraction(double v, const char* what) {
  if (!(v >= 0.0 && v <= 0.2)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [0, 0.2]";
    throw InvalidArgument(os.str());
  }
}

PulseSequence coupling_block(std::string label, double delay) {
  return PulseSequence(std::move(label),
                       {PulsePrimitive::Rotation(Target::kBoth, 90.0, Axis::kMinusX),
                        PulsePrimitive::Delay(delay),
                        PulsePrimitive::Rotation(Target::kBoth, 90.0, Axis::kX)});
}

std::vector<PulsePrimitive> q_sandwich(Target target) {
  return {PulsePrimitive::Rotation(target, 90.0, Axis::kMinusY),
          PulsePrimitive::Rotation(target, 180.0, Axis::kX),
          PulsePrimitive::Rotation(target, 90.0, Axis::kY)};
}

Target parse_target(std::string_view s) {
  if (s == "alice") return Target::kAlice;
  if (s == "bob") return Target::kBob;
  if (s == "both") return Target::kBoth;
  throw InvalidArgument("unknown pulse target '" + std::string(s) + "'");
}

Axis parse_axis(std::string_view s) {
  if (s == "x") return Axis::kX;
  if (s == "-x") return Axis::kMinusX;
  if (s == "y") return Axis::kY;
  if (s == "-y") return Axis::kMinusY;
  throw InvalidArgument("unknown pulse axis '" + std::string(s) + "'");
}

Regime regime_of(const EntanglementParam& g, const PayoffTable& table) {
  return classify(g.gamma(), thresholds(table));
}

}  // namespace

SpinSystem::SpinSystem(double j_coupling, double t2, bool selective_addressing,
                       double pulse_width)
    : j_coupling_(j_coupling),
      t2_(t2),
      selective_addressing_(selective_addressing),
      pulse_width_(pulse_width) {
  if (!(j_coupling > 0.0) || !std::isfinite(j_coupling)) {
    throw InvalidArgument("J coupling must be positive");
  }
  if (!(t2 > 0.0) || !std::isfinite(t2)) throw InvalidArgument("T2 must be positive");
  if (!(pulse_width >= 0.0) || !std::isfinite(pulse_width)) {
    throw InvalidArgument("pulse width must be non-negative");
  }
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::kAlice:
      return "alice";
    case Target::kBob:
      return "bob";
    case Target::kBoth:
      return "both";
  }
  return "?";
}

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::kX:
      return "x";
    case Axis::kMinusX:
      return "-x";
    case Axis::kY:
      return "y";
    case Axis::kMinusY:
      return "-y";
  }
  return "?";
}

PulsePrimitive PulsePrimitive::Rotation(Target target, double angle_deg, Axis axis) {
  PulsePrimitive p;
  p.kind = Kind::kRotation;
  p.target = target;
  p.angle_deg = angle_deg;
  p.axis = axis;
  return p;
}

PulsePrimitive PulsePrimitive::Delay(double seconds) {
  PulsePrimitive p;
  p.kind = Kind::kFreeEvolution;
  p.duration = seconds;
  return p;
}

PulseSequence::PulseSequence(std::string label, std::vector<PulsePrimitive> primitives)
    : label_(std::move(label)), primitives_(std::move(primitives)) {
  if (primitives_.empty()) throw InvalidArgument("pulse sequence is empty");
  for (const PulsePrimitive& p : primitives_) {
    if (p.is_rotation()) {
      if (p.duration != 0.0) throw InvalidArgument("rotation pulse carries a duration");
      if (!std::isfinite(p.angle_deg)) throw InvalidArgument("rotation angle not finite");
    } else {
      if (p.angle_deg != 0.0 || p.axis != Axis::kX || p.target != Target::kBoth) {
        throw InvalidArgument("free evolution carries rotation fields");
      }
      if (!std::isfinite(p.duration) || p.duration < 0.0) {
        std::ostringstream os;
        os << "free evolution duration " << p.duration << " s is negative or not finite";
        throw InvalidArgument(os.str());
      }
    }
  }
}

double PulseSequence::free_evolution_time() const {
  double total = 0.0;
  for (const PulsePrimitive& p : primitives_) {
    if (!p.is_rotation()) total += p.duration;
  }
  return total;
}

int PulseSequence::rotation_count() const {
  int n = 0;
  for (const PulsePrimitive& p : primitives_) n += p.is_rotation() ? 1 : 0;
  return n;
}

double PulseSequence::total_duration(const SpinSystem& sys) const {
  return free_evolution_time() + rotation_count() * sys.pulse_width();
}

PulseSequence PulseSequence::then(const PulseSequence& next, std::string label) const {
  std::vector<PulsePrimitive> all = primitives_;
  all.insert(all.end(), next.primitives_.begin(), next.primitives_.end());
  return PulseSequence(std::move(label), std::move(all));
}

NoiseModel::NoiseModel(double rotation_angle_error, double field_inhomogeneity,
                       std::uint64_t seed, bool dephasing)
    : rotation_angle_error_(rotation_angle_error),
      field_inhomogeneity_(field_inhomogeneity),
      seed_(seed),
      dephasing_(dephasing) {
  check_fraction(rotation_angle_error, "rotation angle error");
  check_fraction(field_inhomogeneity, "field inhomogeneity");
}

NoiseModel NoiseModel::with_seed(std::uint64_t seed) const {
  return NoiseModel(rotation_angle_error_, field_inhomogeneity_, seed, dephasing_);
}

PulseSequence compile_entangler(const EntanglementParam& g, const SpinSystem& sys) {
  return coupling_block("entangler", g.gamma() / (kPi * sys.j_coupling()));
}

PulseSequence compile_disentangler(const EntanglementParam& g, const SpinSystem& sys) {
  return coupling_block("disentangler", (2.0 * kPi - g.gamma()) / (kPi * sys.j_coupling()));
}

StrategyPair equilibrium_strategies(const EntanglementParam& g, const PayoffTable& table,
                                    IntermediateAssignment assignment) {
  switch (regime_of(g, table)) {
    case Regime::kClassical:
      return {Strategy::Defect(), Strategy::Defect()};
    case Regime::kIntermediate:
      if (assignment == IntermediateAssignment::kAliceDefects) {
        return {Strategy::Defect(), Strategy::Quantum()};
      }
      return {Strategy::Quantum(), Strategy::Defect()};
    case Regime::kQuantum:
      return {Strategy::Quantum(), Strategy::Quantum()};
  }
  throw Error("unknown regime");
}

PulseSequence compile_strategy_pair(const StrategyPair& pair) {
  const auto is_dq = [](const Strategy& s) {
    return s == Strategy::Defect() || s == Strategy::Quantum();
  };
  if (!is_dq(pair.alice) || !is_dq(pair.bob)) {
    throw InvalidArgument("no pulse recipe for strategies " + pair.alice.label() + " (x) " +
                          pair.bob.label() + "; only D and Q are compiled");
  }
  const std::string label = "strategies " + pair.alice.label() + pair.bob.label();
  if (pair.alice == pair.bob) {
    if (pair.alice == Strategy::Defect()) {
      return PulseSequence(label, {PulsePrimitive::Rotation(Target::kBoth, 180.0, Axis::kY)});
    }
    return PulseSequence(label, q_sandwich(Target::kBoth));
  }
  const bool alice_defects = pair.alice == Strategy::Defect();
  const Target defector = alice_defects ? Target::kAlice : Target::kBob;
  const Target other = alice_defects ? Target::kBob : Target::kAlice;
  std::vector<PulsePrimitive> prims{PulsePrimitive::Rotation(defector, 180.0, Axis::kY)};
  for (const PulsePrimitive& p : q_sandwich(other)) prims.push_back(p);
  return PulseSequence(label, std::move(prims));
}

PulseSequence compile_strategies(const EntanglementParam& g, const PayoffTable& table,
                                 IntermediateAssignment assignment) {
  return compile_strategy_pair(equilibrium_strategies(g, table, assignment));
}

Matrix2 rotation(double angle_rad, Axis axis) {
  Matrix2 n;
  switch (axis) {
    case Axis::kX:
      n = pauli::X();
      break;
    case Axis::kMinusX:
      n = -pauli::X();
      break;
    case Axis::kY:
      n = pauli::Y();
      break;
    case Axis::kMinusY:
      n = -pauli::Y();
      break;
  }
  return std::cos(angle_rad / 2) * Matrix2::Identity() -
         Complex(0.0, std::sin(angle_rad / 2)) * n;
}

Matrix4 free_evolution(double j_coupling, double seconds) {
  const double phase = kPi * j_coupling / 2.0 * seconds;
  // sigma_z (x) sigma_z = diag(1, -1, -1, 1)
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = std::polar(1.0, -phase);
  u(1, 1) = std::polar(1.0, phase);
  u(2, 2) = std::polar(1.0, phase);
  u(3, 3) = std::polar(1.0, -phase);
  return u;
}

std::vector<RealizedStep> realize(const PulseSequence& seq, const SpinSystem& sys,
                                  const NoiseModel& noise) {
  std::mt19937_64 rng(noise.seed());
  const double field_scale = 1.0 + noise.field_inhomogeneity() * symmetric_unit(rng);
  std::vector<RealizedStep> steps;
  steps.reserve(seq.primitives().size());
  for (const PulsePrimitive& p : seq.primitives()) {
    if (p.is_rotation()) {
      if (p.target != Target::kBoth && !sys.selective_addressing()) {
        throw InvalidArgument("selective pulse on " + std::string(to_string(p.target)) +
                              " but the spin system has no selective addressing");
      }
      const double angle_scale = 1.0 + noise.rotation_angle_error() * symmetric_unit(rng);
      const double angle = degrees_to_radians(p.angle_deg) * angle_scale * field_scale;
      steps.push_back({place(rotation(angle, p.axis), p.target), 0.0});
    } else {
      if (p.duration < 0.0) throw InvalidArgument("negative free-evolution duration");
      steps.push_back({free_evolution(sys.j_coupling() * field_scale, p.duration),
                       p.duration});
    }
  }
  return steps;
}

Unitary4 sequence_unitary(const PulseSequence& seq, const SpinSystem& sys,
                          const NoiseModel& noise) {
  Matrix4 total = Matrix4::Identity();
  for (const RealizedStep& step : realize(seq, sys, noise)) total = step.unitary * total;
  return Unitary4(total);
}

ExperimentRun run_experiment(const EntanglementParam& g, const StrategyPair& strategies,
                             const SpinSystem& sys, const NoiseModel& noise) {
  const PulseSequence program = compile_entangler(g, sys)
                                    .then(compile_strategy_pair(strategies), "game")
                                    .then(compile_disentangler(g, sys), "game");

  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = 1.0;
  for (const RealizedStep& step : realize(program, sys, noise)) {
    rho = (step.unitary * rho * step.unitary.adjoint()).eval();
    if (noise.dephasing() && step.duration > 0.0) {
      const double damping = std::exp(-step.duration / sys.t2());
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          if (r != c) rho(r, c) *= damping;
        }
      }
    }
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return ExperimentRun{DensityMatrix4(rho), program, strategies, program.total_duration(sys)};
}

ExperimentRun run_experiment(const EntanglementParam& g, const SpinSystem& sys,
                             const NoiseModel& noise, const PayoffTable& table,
                             IntermediateAssignment assignment) {
  return run_experiment(g, equilibrium_strategies(g, table, assignment), sys, noise);
}

std::string serialize(const PulseSequence& seq) {
  std::string out = "# " + seq.label() + "\n";
  for (const PulsePrimitive& p : seq.primitives()) {
    if (p.is_rotation()) {
      out += "PULSE ";
      out += to_string(p.target);
      out += " " + text::format_exact(p.angle_deg) + "deg ";
      out += to_string(p.axis);
    } else {
      out += "DELAY " + text::format_exact(p.duration);
    }
    out += "\n";
  }
  return out;
}

PulseSequence parse_pulse_sequence(std::string_view text) {
  std::string label;
  std::vector<PulsePrimitive> prims;
  int line_no = 0;
  for (std::string_view raw : text::split(text, '\n')) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (label.empty()) label = std::string(text::trim(line.substr(1)));
      continue;
    }
    std::vector<std::string_view> words;
    for (std::string_view w : text::split(line, ' ')) {
      if (!w.empty()) words.push_back(w);
    }
    const std::string where = "line " + std::to_string(line_no);
    if (words[0] == "PULSE" && words.size() == 4) {
      std::string_view angle = words[2];
      if (angle.size() < 4 || angle.substr(angle.size() - 3) != "deg") {
        throw InvalidArgument(where + ": angle must end in 'deg'");
      }
      angle.remove_suffix(3);
      prims.push_back(PulsePrimitive::Rotation(parse_target(words[1]),
                                               text::parse_double(angle, "pulse angle"),
                                               parse_axis(words[3])));
    } else if (words[0] == "DELAY" && words.size() == 2) {
      prims.push_back(PulsePrimitive::Delay(text::parse_double(words[1], "delay")));
    } else {
      throw InvalidArgument(where + ": expected 'PULSE <target> <angle>deg <axis>' or "
                                    "'DELAY <seconds>'");
    }
  }
  return PulseSequence(std::move(label), std::move(prims));
}

}  // namespace qpd::nmr
