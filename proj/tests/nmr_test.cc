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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qpd/error.h"

namespace qpd::nmr {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

const SpinSystem kSys;

double Fidelity(const PulseSequence& seq, const Unitary4& ideal,
                const NoiseModel& noise = NoiseModel()) {
  return fidelity_up_to_phase(sequence_unitary(seq, kSys, noise), ideal);
}

Unitary4 Pair(const Strategy& a, const Strategy& b) {
  return tensor(strategy_unitary(a), strategy_unitary(b));
}

TEST(SpinSystemTest, Validation) {
  EXPECT_THROW(SpinSystem(0.0), InvalidArgument);
  EXPECT_THROW(SpinSystem(7.17, -1.0), InvalidArgument);
  EXPECT_THROW(SpinSystem(7.17, 3.0, true, -1e-3), InvalidArgument);
  EXPECT_EQ(kSys.j_coupling(), 7.17);
  EXPECT_EQ(kSys.t2(), 3.0);
}

TEST(PulseSequenceTest, Validation) {
  EXPECT_THROW(PulseSequence("empty", {}), InvalidArgument);
  EXPECT_THROW(PulseSequence("neg", {PulsePrimitive::Delay(-1e-3)}), InvalidArgument);
  PulsePrimitive bad_rot = PulsePrimitive::Rotation(Target::kBoth, 90, Axis::kX);
  bad_rot.duration = 0.1;
  EXPECT_THROW(PulseSequence("r", {bad_rot}), InvalidArgument);
  PulsePrimitive bad_delay = PulsePrimitive::Delay(0.1);
  bad_delay.angle_deg = 90;
  EXPECT_THROW(PulseSequence("d", {bad_delay}), InvalidArgument);
}

TEST(NoiseModelTest, FractionsBounded) {
  EXPECT_THROW(NoiseModel(0.25), InvalidArgument);
  EXPECT_THROW(NoiseModel(0.0, -0.01), InvalidArgument);
  EXPECT_TRUE(NoiseModel().is_noiseless());
  EXPECT_FALSE(NoiseModel(0.05).is_noiseless());
  EXPECT_EQ(NoiseModel(0.05, 0.01, 3).with_seed(9).seed(), 9u);
}

TEST(EntanglerTest, MaximalDelay) {
  const PulseSequence seq = compile_entangler(EntanglementParam(kPi / 2), kSys);
  EXPECT_NEAR(seq.free_evolution_time(), 0.0697350069735007, 1e-16);
}

TEST(EntanglerTest, ZeroGammaIsIdentity) {
  const PulseSequence seq = compile_entangler(EntanglementParam(0.0), kSys);
  EXPECT_NEAR(Fidelity(seq, Unitary4::Identity()), 1.0, 1e-12);
}

TEST(EntanglerTest, MatchesIdealGateOnSweepAndRandomGamma) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(0.0, kPi / 2);
  std::vector<double> gammas;
  for (int n = 0; n <= 18; ++n) gammas.push_back(n * kPi / 36);
  for (int k = 0; k < 30; ++k) gammas.push_back(dist(rng));
  for (double g : gammas) {
    const EntanglementParam p(g);
    EXPECT_GE(Fidelity(compile_entangler(p, kSys), entangling_gate(p)), 1 - 1e-9) << g;
    EXPECT_GE(Fidelity(compile_disentangler(p, kSys), disentangling_gate(p)), 1 - 1e-9) << g;
  }
}

TEST(EntanglerTest, MatchesSeriesOracle) {
  const double g = 0.77;
  const Unitary4 u = sequence_unitary(compile_entangler(EntanglementParam(g), kSys), kSys);
  EXPECT_NEAR(fidelity_up_to_phase(u, Unitary4(oracle::entangler_series(g))), 1.0, 1e-12);
}

TEST(DisentanglerTest, Durations) {
  EXPECT_NEAR(compile_disentangler(EntanglementParam(kPi / 2), kSys).free_evolution_time(),
              0.2092050209205021, 1e-16);
  const PulseSequence zero = compile_disentangler(EntanglementParam(0.0), kSys);
  EXPECT_NEAR(zero.free_evolution_time(), 0.2789400278940028, 1e-16);
  EXPECT_NEAR(Fidelity(zero, Unitary4::Identity()), 1.0, 1e-12);
}

TEST(DisentanglerTest, ComposesToIdentityAndFixedTotalDelay) {
  for (int n = 0; n <= 18; ++n) {
    const EntanglementParam g = EntanglementParam::SweepPoint(n);
    const PulseSequence both =
        compile_entangler(g, kSys).then(compile_disentangler(g, kSys), "pair");
    EXPECT_GE(Fidelity(both, Unitary4::Identity()), 1 - 1e-9);
    EXPECT_NEAR(both.free_evolution_time(), 2 / kSys.j_coupling(), 1e-15);
  }
}

TEST(StrategiesTest, RecipesPerRegime) {
  const Strategy d = Strategy::Defect(), q = Strategy::Quantum();
  EXPECT_GE(Fidelity(compile_strategies(EntanglementParam(0.0)), Pair(d, d)), 1 - 1e-9);
  const EntanglementParam mid(7 * kPi / 36);
  EXPECT_GE(Fidelity(compile_strategies(mid), Pair(d, q)), 1 - 1e-9);
  EXPECT_GE(Fidelity(compile_strategies(mid, PayoffTable(), IntermediateAssignment::kBobDefects),
                     Pair(q, d)),
            1 - 1e-9);
  EXPECT_GE(Fidelity(compile_strategies(EntanglementParam(kPi / 2)), Pair(q, q)), 1 - 1e-9);
}

TEST(StrategiesTest, AllSweepPointsCompileToTheirEquilibrium) {
  for (int n = 0; n <= 18; ++n) {
    const EntanglementParam g = EntanglementParam::SweepPoint(n);
    const StrategyPair s = equilibrium_strategies(g);
    EXPECT_GE(Fidelity(compile_strategies(g), Pair(s.alice, s.bob)), 1 - 1e-9) << n;
  }
}

TEST(StrategiesTest, RejectsUncompilableStrategies) {
  EXPECT_THROW(compile_strategy_pair({Strategy::Cooperate(), Strategy::Defect()}),
               InvalidArgument);
}

TEST(StrategiesTest, SelectivePulsesNeedAddressing) {
  const SpinSystem plain(7.17, 3.0, false);
  const PulseSequence seq = compile_strategies(EntanglementParam(7 * kPi / 36));
  EXPECT_THROW(sequence_unitary(seq, plain), InvalidArgument);
  EXPECT_NO_THROW(sequence_unitary(compile_strategies(EntanglementParam(0.0)), plain));
}

TEST(SimulatorTest, NonSelectivePiYFlipsBothSpins) {
  const PulseSequence seq("flip", {PulsePrimitive::Rotation(Target::kBoth, 180, Axis::kY)});
  const StateVector4 s = apply(sequence_unitary(seq, kSys), StateVector4::Basis(Outcome::kCC));
  EXPECT_NEAR(std::abs(s[Outcome::kDD]), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_up_to_phase(sequence_unitary(seq, kSys),
                                   Pair(Strategy::Defect(), Strategy::Defect())),
              1.0, 1e-15);
}

TEST(SimulatorTest, FreeEvolutionQuarterPeriod) {
  const Matrix4 u = free_evolution(kSys.j_coupling(), 1 / (2 * kSys.j_coupling()));
  const Complex m = std::polar(1.0, -kPi / 4), p = std::polar(1.0, kPi / 4);
  EXPECT_LT(std::abs(u(0, 0) - m), 1e-15);
  EXPECT_LT(std::abs(u(1, 1) - p), 1e-15);
  EXPECT_LT(std::abs(u(2, 2) - p), 1e-15);
  EXPECT_LT(std::abs(u(3, 3) - m), 1e-15);
}

TEST(SimulatorTest, FreeEvolutionMatchesSeries) {
  const double j = 7.17, t = 0.123;
  const oracle::M4 h = (-kI * kPi * j / 2.0 * t) * oracle::kron_loops(pauli::Z(), pauli::Z());
  EXPECT_LT((free_evolution(j, t) - oracle::series_expm(h, 40)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SimulatorTest, ZeroDelayIsIdentity) {
  const PulseSequence seq("wait", {PulsePrimitive::Delay(0.0)});
  EXPECT_EQ(sequence_unitary(seq, kSys).matrix(), Matrix4::Identity());
}

TEST(SimulatorTest, RotationMatchesSeries) {
  for (Axis axis : {Axis::kX, Axis::kMinusX, Axis::kY, Axis::kMinusY}) {
    const Matrix2 n = axis == Axis::kX       ? pauli::X()
                      : axis == Axis::kMinusX ? Matrix2(-pauli::X())
                      : axis == Axis::kY      ? pauli::Y()
                                              : Matrix2(-pauli::Y());
    const double angle = 1.3;
    const oracle::M4 want = oracle::series_expm((-kI * angle / 2.0) * oracle::kron_loops(n, Matrix2::Identity()), 40);
    const Matrix4 got = kron(rotation(angle, axis), Matrix2::Identity());
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(NoiseTest, DeterministicPerSeed) {
  const PulseSequence seq = compile_entangler(EntanglementParam(0.9), kSys)
                                .then(compile_strategies(EntanglementParam(0.9)), "g");
  const NoiseModel a(0.05, 0.02, 123), b(0.05, 0.02, 123), c(0.05, 0.02, 124);
  const Matrix4 ua = sequence_unitary(seq, kSys, a).matrix();
  EXPECT_EQ(ua, sequence_unitary(seq, kSys, b).matrix());
  EXPECT_NE(ua, sequence_unitary(seq, kSys, c).matrix());
}

TEST(NoiseTest, AngleErrorPerturbsBoundedly) {
  const EntanglementParam g(kPi / 2);
  const PulseSequence seq = compile_entangler(g, kSys);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double f = Fidelity(seq, entangling_gate(g), NoiseModel(0.05, 0.0, seed));
    EXPECT_LT(f, 1.0);
    EXPECT_GT(f, 0.9);
  }
}

TEST(ExperimentTest, ClassicalLimit) {
  const ExperimentRun run = run_experiment(EntanglementParam(0.0), kSys, NoiseModel());
  EXPECT_NEAR(run.rho.population(Outcome::kDD), 1.0, 1e-12);
  EXPECT_LT((run.rho.matrix() - Matrix4(Eigen::Vector4cd(0, 0, 0, 1).asDiagonal()))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(ExperimentTest, MaximalEntanglement) {
  const ExperimentRun run = run_experiment(EntanglementParam(kPi / 2), kSys, NoiseModel());
  EXPECT_NEAR(run.rho.population(Outcome::kCC), 1.0, 1e-12);
  EXPECT_EQ(run.strategies.alice, Strategy::Quantum());
  EXPECT_EQ(run.strategies.bob, Strategy::Quantum());
}

TEST(ExperimentTest, DiagonalMatchesPlayOnSweep) {
  for (int n = 0; n <= 18; ++n) {
    const EntanglementParam g = EntanglementParam::SweepPoint(n);
    const ExperimentRun run = run_experiment(g, kSys, NoiseModel());
    const GameOutcome ideal = play(g, run.strategies.alice, run.strategies.bob);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(run.rho.populations()[k], ideal.probabilities[k], 1e-9) << n;
    }
    EXPECT_LT(run.duration, kDurationBudget) << n;
    EXPECT_NEAR(run.program.free_evolution_time(), 2 / kSys.j_coupling(), 1e-15);
  }
}

TEST(ExperimentTest, DurationIncludesPulseWidths) {
  const ExperimentRun run = run_experiment(EntanglementParam(kPi / 2), kSys, NoiseModel());
  EXPECT_NEAR(run.duration, 2 / 7.17 + 7 * 1e-3, 1e-15);
  const ExperimentRun slow =
      run_experiment(EntanglementParam(kPi / 2), SpinSystem(7.17, 3.0, true, 4e-3), NoiseModel());
  EXPECT_GE(slow.duration, kDurationBudget);
}

TEST(ExperimentTest, DephasingMixesTheState) {
  const EntanglementParam g(0.9);
  const ExperimentRun pure = run_experiment(g, kSys, NoiseModel());
  const ExperimentRun mixed = run_experiment(g, kSys, NoiseModel(0.0, 0.0, 0, true));
  const double purity_pure = (pure.rho.matrix() * pure.rho.matrix()).trace().real();
  const double purity_mixed = (mixed.rho.matrix() * mixed.rho.matrix()).trace().real();
  EXPECT_NEAR(purity_pure, 1.0, 1e-12);
  EXPECT_LT(purity_mixed, 1.0 - 1e-3);
  EXPECT_NEAR(mixed.rho.matrix().trace().real(), 1.0, 1e-12);
}

TEST(ExperimentTest, NoisyRunsAreReproducible) {
  const EntanglementParam g(0.3);
  const NoiseModel noise(0.05, 0.01, 77);
  const Matrix4 a = run_experiment(g, kSys, noise).rho.matrix();
  const Matrix4 b = run_experiment(g, kSys, noise).rho.matrix();
  EXPECT_EQ(a, b);
}

TEST(SerializeTest, Format) {
  const std::string text = serialize(compile_entangler(EntanglementParam(kPi / 2), kSys));
  EXPECT_EQ(text,
            "# entangler\n"
            "PULSE both 90deg -x\n"
            "DELAY 0.0697350069735007\n"
            "PULSE both 90deg x\n");
}

TEST(SerializeTest, RoundTripsExactly) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> dist(0.0, kPi / 2);
  for (int k = 0; k < 50; ++k) {
    const EntanglementParam g(dist(rng));
    const PulseSequence seq =
        compile_entangler(g, kSys)
            .then(compile_strategies(g), "x")
            .then(compile_disentangler(g, kSys), "x")
            .then(PulseSequence("odd", {PulsePrimitive::Rotation(Target::kBob, 90.00000000000001,
                                                                 Axis::kMinusY)}),
                  "full program");
    EXPECT_EQ(parse_pulse_sequence(serialize(seq)), seq);
  }
}

TEST(SerializeTest, ParseErrors) {
  EXPECT_THROW(parse_pulse_sequence("# x\nPULSE both 90 x\n"), InvalidArgument);
  EXPECT_THROW(parse_pulse_sequence("# x\nPULSE both 90deg z\n"), InvalidArgument);
  EXPECT_THROW(parse_pulse_sequence("# x\nPULSE carol 90deg x\n"), InvalidArgument);
  EXPECT_THROW(parse_pulse_sequence("# x\nDELAY -0.1\n"), InvalidArgument);
  EXPECT_THROW(parse_pulse_sequence("# x\nWAIT 3\n"), InvalidArgument);
  EXPECT_THROW(parse_pulse_sequence("# only a label\n"), InvalidArgument);
}

}  // namespace
}  // namespace qpd::nmr
