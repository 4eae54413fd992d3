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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpd/error.h"

namespace qpd {
namespace {

template <typename M>
double max_abs(const M& m) {
  double worst = 0.0;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) worst = std::max(worst, std::abs(m(r, c)));
  }
  return worst;
}

template <typename M>
void require_finite(const M& m, const char* what) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        throw InvalidArgument(std::string(what) + ": non-finite entry");
      }
    }
  }
}

std::string describe(const char* what, double deviation, double tol) {
  std::ostringstream os;
  os << what << ": deviation " << deviation << " exceeds tolerance " << tol;
  return os.str();
}

}  // namespace

double unitarity_deviation(const Matrix2& m) {
  return max_abs(Matrix2(m * m.adjoint() - Matrix2::Identity()));
}

double unitarity_deviation(const Matrix4& m) {
  return max_abs(Matrix4(m * m.adjoint() - Matrix4::Identity()));
}

Unitary2::Unitary2(const Matrix2& m, const NumericPolicy& policy) : m_(m) {
  require_finite(m, "Unitary2");
  const double dev = unitarity_deviation(m);
  if (dev > policy.identity_tol) {
    throw InvalidArgument(describe("Unitary2 is not unitary", dev, policy.identity_tol));
  }
}

Unitary2 Unitary2::Identity() { return Unitary2(Trusted{}, Matrix2::Identity()); }

Unitary2 Unitary2::adjoint() const { return Unitary2(Trusted{}, m_.adjoint()); }

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
  return Unitary2(a.m_ * b.m_);
}

Unitary4::Unitary4(const Matrix4& m, const NumericPolicy& policy) : m_(m) {
  require_finite(m, "Unitary4");
  const double dev = unitarity_deviation(m);
  if (dev > policy.identity_tol) {
    throw InvalidArgument(describe("Unitary4 is not unitary", dev, policy.identity_tol));
  }
}

Unitary4 Unitary4::Identity() { return Unitary4(Trusted{}, Matrix4::Identity()); }

Unitary4 Unitary4::adjoint() const { return Unitary4(Trusted{}, m_.adjoint()); }

Unitary4 operator*(const Unitary4& a, const Unitary4& b) {
  return Unitary4(a.m_ * b.m_);
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

Unitary4 tensor(const Unitary2& a, const Unitary2& b) {
  return Unitary4(kron(a.matrix(), b.matrix()));
}

StateVector4::StateVector4(const Vector4& amplitudes, const NumericPolicy& policy)
    : a_(amplitudes) {
  require_finite(amplitudes, "StateVector4");
  const double dev = std::abs(amplitudes.squaredNorm() - 1.0);
  if (dev > policy.identity_tol) {
    throw InvalidArgument(describe("StateVector4 is not normalized", dev, policy.identity_tol));
  }
}

StateVector4 StateVector4::Basis(Outcome o) {
  Vector4 v = Vector4::Zero();
  v(static_cast<int>(o)) = 1.0;
  return StateVector4(v);
}

DensityMatrix4::DensityMatrix4(const Matrix4& m, const NumericPolicy& policy) : m_(m) {
  require_finite(m, "DensityMatrix4");
  const double herm = max_abs(Matrix4(m - m.adjoint()));
  if (herm > policy.identity_tol) {
    throw InvalidArgument(describe("DensityMatrix4 is not Hermitian", herm, policy.identity_tol));
  }
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > policy.identity_tol) {
    throw InvalidArgument(describe("DensityMatrix4 trace differs from 1", trace_dev,
                                   policy.identity_tol));
  }
  const double smallest = hermitian_eigenvalues(m)(0);
  if (smallest < policy.eigen_floor) {
    std::ostringstream os;
    os << "DensityMatrix4 has negative eigenvalue " << smallest;
    throw InvalidArgument(os.str());
  }
}

Probabilities DensityMatrix4::populations() const {
  return {m_(0, 0).real(), m_(1, 1).real(), m_(2, 2).real(), m_(3, 3).real()};
}

StateVector4 apply(const Unitary4& u, const StateVector4& s) {
  return StateVector4(u.matrix() * s.amplitudes());
}

Probabilities probabilities(const StateVector4& s) {
  Probabilities p{};
  for (int i = 0; i < 4; ++i) p[i] = std::norm(s[i]);
  return p;
}

DensityMatrix4 density_from_state(const StateVector4& s) {
  const Vector4& a = s.amplitudes();
  Matrix4 rho = a * a.adjoint();
  // Outer products are Hermitian analytically; symmetrize away roundoff.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix4(rho);
}

double fidelity_up_to_phase(const Unitary4& a, const Unitary4& b) {
  const double f = std::abs((a.matrix().adjoint() * b.matrix()).trace()) / 4.0;
  return std::min(f, 1.0);
}

DensityMatrix4 conjugate(const Unitary4& u, const DensityMatrix4& rho) {
  Matrix4 out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix4(out);
}

double trace_distance(const DensityMatrix4& a, const DensityMatrix4& b) {
  const Eigen::Vector4d ev = hermitian_eigenvalues(a.matrix() - b.matrix());
  return 0.5 * ev.cwiseAbs().sum();
}

Eigen::Vector4d hermitian_eigenvalues(const Matrix4& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

namespace pauli {
Matrix2 I() { return Matrix2::Identity(); }
Matrix2 X() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix2 Y() {
  Matrix2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
Matrix2 Z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

}  // namespace qpd
