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

#ifndef QPD_QSTATE_H_
#define QPD_QSTATE_H_

// Two-qubit linear algebra in the fixed basis (CC, CD, DC, DD).
// Alice is the left (most significant) qubit: index = 2 * alice + bob,
// with C = |0> and D = |1>.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qpd {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;
using Vector4 = Eigen::Matrix<Complex, 4, 1>;

// Tolerances shared by every invariant check in the library.
struct NumericPolicy {
  // Exact-arithmetic identities: unitarity, normalization, hermiticity, trace.
  double identity_tol = 1e-12;
  // Smallest admissible eigenvalue of a density matrix.
  double eigen_floor = -1e-10;
};

inline constexpr NumericPolicy kDefaultPolicy{};

enum class Outcome : int { kCC = 0, kCD = 1, kDC = 2, kDD = 3 };

// P_CC, P_CD, P_DC, P_DD.
using Probabilities = std::array<double, 4>;

class Unitary2 {
 public:
  // Throws InvalidArgument if `m` has non-finite entries or is not unitary.
  explicit Unitary2(const Matrix2& m, const NumericPolicy& policy = kDefaultPolicy);

  static Unitary2 Identity();

  const Matrix2& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  Unitary2 adjoint() const;

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);

 private:
  struct Trusted {};
  Unitary2(Trusted, const Matrix2& m) : m_(m) {}
  Matrix2 m_;
};

class Unitary4 {
 public:
  explicit Unitary4(const Matrix4& m, const NumericPolicy& policy = kDefaultPolicy);

  static Unitary4 Identity();

  const Matrix4& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  Unitary4 adjoint() const;

  friend Unitary4 operator*(const Unitary4& a, const Unitary4& b);
  friend Unitary4 tensor(const Unitary2& a, const Unitary2& b);

 private:
  struct Trusted {};
  Unitary4(Trusted, const Matrix4& m) : m_(m) {}
  Matrix4 m_;
};

class StateVector4 {
 public:
  // Rejects unnormalized input instead of rescaling it.
  explicit StateVector4(const Vector4& amplitudes,
                        const NumericPolicy& policy = kDefaultPolicy);

  static StateVector4 Basis(Outcome o);

  const Vector4& amplitudes() const { return a_; }
  Complex operator[](Outcome o) const { return a_(static_cast<int>(o)); }
  Complex operator[](int i) const { return a_(i); }

 private:
  Vector4 a_;
};

class DensityMatrix4 {
 public:
  // Hermitian, unit trace, eigenvalues >= policy.eigen_floor.
  explicit DensityMatrix4(const Matrix4& m,
                          const NumericPolicy& policy = kDefaultPolicy);

  const Matrix4& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  double population(Outcome o) const {
    return m_(static_cast<int>(o), static_cast<int>(o)).real();
  }
  Probabilities populations() const;

 private:
  Matrix4 m_;
};

// Kronecker product; `a` acts on Alice's qubit.
Unitary4 tensor(const Unitary2& a, const Unitary2& b);

StateVector4 apply(const Unitary4& u, const StateVector4& s);

Probabilities probabilities(const StateVector4& s);

DensityMatrix4 density_from_state(const StateVector4& s);

// |tr(a^dagger b)| / 4, which is 1 exactly when a and b differ by a global phase.
double fidelity_up_to_phase(const Unitary4& a, const Unitary4& b);

// U rho U^dagger.
DensityMatrix4 conjugate(const Unitary4& u, const DensityMatrix4& rho);

// Half the trace norm of the difference.
double trace_distance(const DensityMatrix4& a, const DensityMatrix4& b);

// Ascending eigenvalues of a Hermitian matrix.
Eigen::Vector4d hermitian_eigenvalues(const Matrix4& m);

// Largest |(m m^dagger - I)_ij|.
double unitarity_deviation(const Matrix2& m);
double unitarity_deviation(const Matrix4& m);

namespace pauli {
Matrix2 I();
Matrix2 X();
Matrix2 Y();
Matrix2 Z();
}  // namespace pauli

Matrix4 kron(const Matrix2& a, const Matrix2& b);

}  // namespace qpd

#endif  // QPD_QSTATE_H_
