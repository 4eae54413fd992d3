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

#include "qpd/qstate.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qpd/error.h"
#include "qpd/game.h"

namespace qpd {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Unitary2 DefectMatrix() {
  Matrix2 m;
  m << 0, 1, -1, 0;
  return Unitary2(m);
}

StateVector4 BellLike() {
  Vector4 v;
  v << 1, 0, 0, kI;
  return StateVector4(v / std::sqrt(2.0));
}

TEST(Unitary2Test, RejectsNonUnitary) {
  Matrix2 m;
  m << 1, 1, 0, 1;
  EXPECT_THROW(Unitary2{m}, InvalidArgument);
}

TEST(Unitary2Test, RejectsNonFinite) {
  Matrix2 m = Matrix2::Identity();
  m(0, 0) = std::nan("");
  EXPECT_THROW(Unitary2{m}, InvalidArgument);
}

TEST(Unitary4Test, RejectsNonUnitary) {
  Matrix4 m = Matrix4::Identity();
  m(3, 3) = 1.0 + 1e-6;
  EXPECT_THROW(Unitary4{m}, InvalidArgument);
}

TEST(TensorTest, IdentityTimesIdentity) {
  const Unitary4 u = tensor(Unitary2::Identity(), Unitary2::Identity());
  EXPECT_TRUE(u.matrix().isApprox(Matrix4::Identity(), 0.0));
}

TEST(TensorTest, DefectDefectAntidiagonal) {
  const Unitary4 u = tensor(DefectMatrix(), DefectMatrix());
  // (i sigma_y) (x) (i sigma_y) read row by row from the top.
  const double expected[4] = {1, -1, -1, 1};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Complex want = (c == 3 - r) ? Complex(expected[r]) : Complex(0.0);
      EXPECT_EQ(u(r, c), want) << r << "," << c;
    }
  }
}

TEST(TensorTest, DefectOnAliceMovesCCToDC) {
  const StateVector4 s =
      apply(tensor(DefectMatrix(), Unitary2::Identity()), StateVector4::Basis(Outcome::kCC));
  EXPECT_NEAR(std::abs(s[Outcome::kDC]), 1.0, 1e-15);
}

TEST(TensorTest, MatchesIndexLoopOracle) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const Matrix2 a = oracle::random_unitary<2>(rng);
    const Matrix2 b = oracle::random_unitary<2>(rng);
    const Unitary4 u = tensor(Unitary2(a), Unitary2(b));
    EXPECT_LT((u.matrix() - oracle::kron_loops(a, b)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(TensorTest, ProductOfRandomUnitariesIsUnitary) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Unitary4 u = tensor(Unitary2(oracle::random_unitary<2>(rng)),
                              Unitary2(oracle::random_unitary<2>(rng)));
    EXPECT_LT(unitarity_deviation(u.matrix()), 1e-12);
  }
}

TEST(ApplyTest, IdentityKeepsState) {
  const StateVector4 s = apply(Unitary4::Identity(), StateVector4::Basis(Outcome::kCC));
  EXPECT_EQ(s[Outcome::kCC], Complex(1.0));
}

TEST(ApplyTest, MaximalEntanglerOnCC) {
  const StateVector4 s =
      apply(entangling_gate(EntanglementParam(kPi / 2)), StateVector4::Basis(Outcome::kCC));
  EXPECT_NEAR(std::abs(s[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[3] - kI / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_LT(std::abs(s[1]), 1e-15);
  EXPECT_LT(std::abs(s[2]), 1e-15);
}

TEST(ApplyTest, PreservesNormForRandomInputs) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Unitary4 u(oracle::random_unitary<4>(rng));
    const StateVector4 s(oracle::random_state(rng));
    EXPECT_NEAR(apply(u, s).amplitudes().norm(), 1.0, 1e-12);
  }
}

TEST(StateVectorTest, RejectsUnnormalized) {
  Vector4 v;
  v << 1, 1, 0, 0;
  EXPECT_THROW(StateVector4{v}, InvalidArgument);
}

TEST(ProbabilitiesTest, BasisState) {
  const Probabilities p = probabilities(StateVector4::Basis(Outcome::kCC));
  EXPECT_EQ(p, (Probabilities{1, 0, 0, 0}));
}

TEST(ProbabilitiesTest, BellLike) {
  const Probabilities p = probabilities(BellLike());
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_EQ(p[2], 0.0);
  EXPECT_NEAR(p[3], 0.5, 1e-15);
}

TEST(ProbabilitiesTest, PartialEntanglementAtPiOverThree) {
  Vector4 v = Vector4::Zero();
  v(0) = std::cos(kPi / 6);
  v(3) = kI * std::sin(kPi / 6);
  const Probabilities p = probabilities(StateVector4(v));
  EXPECT_NEAR(p[0], 0.75, 1e-15);
  EXPECT_NEAR(p[3], 0.25, 1e-15);
}

TEST(ProbabilitiesTest, SumToOneForRandomStates) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const Probabilities p = probabilities(StateVector4(oracle::random_state(rng)));
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-12);
  }
}

TEST(DensityTest, BasisState) {
  const DensityMatrix4 rho = density_from_state(StateVector4::Basis(Outcome::kCC));
  Matrix4 want = Matrix4::Zero();
  want(0, 0) = 1.0;
  EXPECT_EQ(rho.matrix(), want);
}

TEST(DensityTest, BellLikeEntries) {
  const DensityMatrix4 rho = density_from_state(BellLike());
  Matrix4 want = Matrix4::Zero();
  want(0, 0) = 0.5;
  want(3, 3) = 0.5;
  want(0, 3) = -0.5 * kI;
  want(3, 0) = 0.5 * kI;
  EXPECT_LT((rho.matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DensityTest, RandomStatesGiveRankOneUnitTrace) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix4 rho = density_from_state(StateVector4(oracle::random_state(rng)));
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    const Eigen::Vector4d ev = hermitian_eigenvalues(rho.matrix());
    EXPECT_LE(ev(2), 1e-10);
  }
}

TEST(DensityTest, RejectsNonHermitian) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.0;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix4{m}, InvalidArgument);
}

TEST(DensityTest, RejectsWrongTrace) {
  Matrix4 m = Matrix4::Identity() * 0.3;
  EXPECT_THROW(DensityMatrix4{m}, InvalidArgument);
}

TEST(DensityTest, RejectsNegativeEigenvalue) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.1;
  m(1, 1) = -0.1;
  EXPECT_THROW(DensityMatrix4{m}, InvalidArgument);
}

TEST(DensityTest, PolicyFloorIsConfigurable) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = 1.0 + 1e-6;
  m(1, 1) = -1e-6;
  EXPECT_THROW(DensityMatrix4{m}, InvalidArgument);
  NumericPolicy loose;
  loose.eigen_floor = -1e-5;
  EXPECT_NO_THROW(DensityMatrix4(m, loose));
}

TEST(FidelityTest, IdentityWithItself) {
  EXPECT_NEAR(fidelity_up_to_phase(Unitary4::Identity(), Unitary4::Identity()), 1.0, 1e-15);
}

TEST(FidelityTest, GlobalPhaseInvariant) {
  const Unitary4 phased(Matrix4::Identity() * std::polar(1.0, kPi / 7));
  EXPECT_NEAR(fidelity_up_to_phase(Unitary4::Identity(), phased), 1.0, 1e-15);
}

TEST(FidelityTest, IdentityAgainstDefectDefect) {
  const Unitary4 dd = tensor(DefectMatrix(), DefectMatrix());
  EXPECT_EQ(fidelity_up_to_phase(Unitary4::Identity(), dd), 0.0);
}

TEST(FidelityTest, RandomUnitaryWithItself) {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 100; ++k) {
    const Unitary4 u(oracle::random_unitary<4>(rng));
    EXPECT_NEAR(fidelity_up_to_phase(u, u), 1.0, 1e-12);
  }
}

TEST(ConjugateTest, TraceDistanceOfOrthogonalStates) {
  const DensityMatrix4 cc = density_from_state(StateVector4::Basis(Outcome::kCC));
  const DensityMatrix4 dd =
      conjugate(tensor(DefectMatrix(), DefectMatrix()), cc);
  EXPECT_NEAR(dd.population(Outcome::kDD), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(cc, dd), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(cc, cc), 0.0, 1e-15);
}

TEST(PauliTest, KronMatchesTensor) {
  EXPECT_EQ(kron(pauli::X(), pauli::Z()),
            tensor(Unitary2(pauli::X()), Unitary2(pauli::Z())).matrix());
  EXPECT_EQ(pauli::X() * pauli::Y(), kI * pauli::Z());
}

}  // namespace
}  // namespace qpd
