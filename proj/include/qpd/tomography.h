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

#ifndef QPD_TOMOGRAPHY_H_
#define QPD_TOMOGRAPHY_H_

// Nine-setting readout and least-squares density-matrix reconstruction.
//
// A setting applies an optional 90 degree pulse about x or y to each spin
// before a z-basis readout. Each setting yields six values: the four rotated
// populations and the two single-spin <sigma_z> expectations.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpd/game.h"
#include "qpd/qstate.h"

namespace qpd::tomo {

enum class ReadoutRotation { kNone, kX90, kY90 };

struct ReadoutSetting {
  ReadoutRotation alice = ReadoutRotation::kNone;
  ReadoutRotation bob = ReadoutRotation::kNone;

  // "none:none", "x90:y90", ...
  std::string id() const;
  static ReadoutSetting FromId(std::string_view id);
  // All nine combinations, Alice's rotation varying slowest.
  static const std::array<ReadoutSetting, 9>& All();

  friend bool operator==(const ReadoutSetting&, const ReadoutSetting&) = default;
};

inline constexpr int kObservablesPerSetting = 6;
// P_CC, P_CD, P_DC, P_DD, Z_A, Z_B
std::string_view observable_id(int index);

struct MeasurementRecord {
  ReadoutSetting setting;
  std::array<double, kObservablesPerSetting> values;
  double noise_sigma;
};

// Noiseless operator whose expectation is observable `index` under `setting`.
Matrix4 measurement_operator(const ReadoutSetting& setting, int index);

// Exact observables plus independent Gaussian noise of `noise_sigma`.
MeasurementRecord simulate_readout(const DensityMatrix4& rho, const ReadoutSetting& setting,
                                   double noise_sigma, std::uint64_t seed);

// One record per setting; setting k uses derive_seed(seed, k).
std::vector<MeasurementRecord> simulate_all_settings(const DensityMatrix4& rho,
                                                     double noise_sigma, std::uint64_t seed);

struct ReconstructionResult {
  DensityMatrix4 rho_hat;
  Matrix4 raw;            // unconstrained least-squares solution
  double residual_norm;   // ||A c - b|| of the raw solution
  bool projected;         // negative eigenvalues were clipped
};

// Least squares over the 15 real Pauli coordinates of a Hermitian unit-trace
// matrix via the normal equations. If the solution has an eigenvalue below
// NumericPolicy::eigen_floor, negative eigenvalues are clipped to zero and the
// trace renormalized. Throws RankDeficient, naming the unconstrained Pauli
// directions, when the records do not determine all coordinates.
ReconstructionResult reconstruct(std::span<const MeasurementRecord> records);

// Rank check of the standard nine-setting design; evaluated once and cached.
// Throws RankDeficient if it fails.
void verify_standard_design();

PayoffPair payoff_from_density(const DensityMatrix4& rho,
                               const PayoffTable& table = PayoffTable());

// "# noise_sigma <s>" then "setting,observable,value" rows.
std::string serialize_records(std::span<const MeasurementRecord> records);
std::vector<MeasurementRecord> parse_records(std::string_view text);

}  // namespace qpd::tomo

#endif  // QPD_TOMOGRAPHY_H_
