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

#include "qpd/tomography.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "qpd/error.h"
#include "qpd/nmr.h"
#include "qpd/seed.h"
#include "qpd/text_format.h"

namespace qpd::tomo {
namespace {

constexpr int kParams = 15;
constexpr std::array<std::string_view, kObservablesPerSetting> kObservableIds = {
    "P_CC", "P_CD", "P_DC", "P_DD", "Z_A", "Z_B"};
constexpr std::array<char, 4> kPauliNames = {'I', 'X', 'Y', 'Z'};

using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, kParams>;
using NormalMatrix = Eigen::Matrix<double, kParams, kParams>;
using ParamVector = Eigen::Matrix<double, kParams, 1>;

Matrix2 pauli_by_index(int i) {
  switch (i) {
    case 1:
      return pauli::X();
    case 2:
      return pauli::Y();
    case 3:
      return pauli::Z();
    default:
      return pauli::I();
  }
}

// sigma_a (x) sigma_b for parameter k = 4a + b - 1, skipping I (x) I.
struct PauliBasis {
  std::array<Matrix4, kParams> ops;
  std::array<std::string, kParams> names;
  PauliBasis() {
    for (int k = 0; k < kParams; ++k) {
      const int a = (k + 1) / 4;
      const int b = (k + 1) % 4;
      ops[k] = kron(pauli_by_index(a), pauli_by_index(b));
      names[k] = std::string{kPauliNames[a], kPauliNames[b]};
    }
  }
};

const PauliBasis& pauli_basis() {
  static const PauliBasis basis;
  return basis;
}

Matrix2 readout_rotation(ReadoutRotation r) {
  switch (r) {
    case ReadoutRotation::kNone:
      return Matrix2::Identity();
    case ReadoutRotation::kX90:
      return nmr::rotation(std::numbers::pi / 2, nmr::Axis::kX);
    case ReadoutRotation::kY90:
      return nmr::rotation(std::numbers::pi / 2, nmr::Axis::kY);
  }
  throw Error("unknown readout rotation");
}

std::string_view rotation_id(ReadoutRotation r) {
  switch (r) {
    case ReadoutRotation::kNone:
      return "none";
    case ReadoutRotation::kX90:
      return "x90";
    case ReadoutRotation::kY90:
      return "y90";
  }
  return "?";
}

ReadoutRotation parse_rotation(std::string_view s) {
  if (s == "none") return ReadoutRotation::kNone;
  if (s == "x90") return ReadoutRotation::kX90;
  if (s == "y90") return ReadoutRotation::kY90;
  throw InvalidArgument("unknown readout rotation '" + std::string(s) + "'");
}

Matrix4 z_basis_observable(int index) {
  Matrix4 m = Matrix4::Zero();
  if (index < 4) {
    m(index, index) = 1.0;
  } else if (index == 4) {
    m = kron(pauli::Z(), pauli::I());
  } else {
    m = kron(pauli::I(), pauli::Z());
  }
  return m;
}

struct Design {
  DesignMatrix a;
  Eigen::VectorXd offset;
};

Design build_design(std::span<const ReadoutSetting> settings) {
  const PauliBasis& basis = pauli_basis();
  Design d;
  const auto rows = static_cast<Eigen::Index>(settings.size()) * kObservablesPerSetting;
  d.a.resize(rows, kParams);
  d.offset.resize(rows);
  Eigen::Index row = 0;
  for (const ReadoutSetting& s : settings) {
    for (int o = 0; o < kObservablesPerSetting; ++o, ++row) {
      const Matrix4 m = measurement_operator(s, o);
      d.offset(row) = m.trace().real() / 4.0;
      for (int k = 0; k < kParams; ++k) {
        d.a(row, k) = (m * basis.ops[k]).trace().real() / 4.0;
      }
    }
  }
  return d;
}

// Throws RankDeficient listing the dominant Pauli components of every
// near-null direction of the normal matrix.
void check_rank(const NormalMatrix& normal) {
  Eigen::SelfAdjointEigenSolver<NormalMatrix> solver(normal);
  const auto& ev = solver.eigenvalues();
  const double scale = std::max(ev(kParams - 1), 1e-300);
  std::vector<std::string> directions;
  for (int i = 0; i < kParams; ++i) {
    if (ev(i) > 1e-10 * scale) continue;
    const ParamVector v = solver.eigenvectors().col(i);
    std::string dir;
    for (int k = 0; k < kParams; ++k) {
      if (std::abs(v(k)) < 0.1) continue;
      std::ostringstream os;
      os.precision(3);
      if (!dir.empty() && v(k) >= 0) os << "+";
      os << v(k) << "*" << pauli_basis().names[k];
      dir += os.str();
    }
    directions.push_back(dir);
  }
  if (directions.empty()) return;
  std::string msg = "tomography design is rank deficient (" +
                    std::to_string(kParams - static_cast<int>(directions.size())) + "/" +
                    std::to_string(kParams) + "); unconstrained directions:";
  for (const std::string& d : directions) msg += " [" + d + "]";
  throw RankDeficient(msg);
}

Matrix4 from_pauli_coordinates(const ParamVector& c) {
  Matrix4 rho = Matrix4::Identity() / 4.0;
  for (int k = 0; k < kParams; ++k) rho += (c(k) / 4.0) * pauli_basis().ops[k];
  return 0.5 * (rho + rho.adjoint());
}

Matrix4 project_to_physical(const Matrix4& raw) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(raw);
  Eigen::Vector4d ev = solver.eigenvalues().cwiseMax(0.0);
  ev /= ev.sum();
  const Matrix4& v = solver.eigenvectors();
  Matrix4 rho = v * ev.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  // Exact unit trace for the populations; the correction is at roundoff level.
  const double trace = rho.trace().real();
  for (int i = 0; i < 4; ++i) rho(i, i) = Complex(rho(i, i).real() / trace, 0.0);
  return rho;
}

}  // namespace

std::string ReadoutSetting::id() const {
  return std::string(rotation_id(alice)) + ":" + std::string(rotation_id(bob));
}

ReadoutSetting ReadoutSetting::FromId(std::string_view id) {
  const auto parts = text::split(id, ':');
  if (parts.size() != 2) throw InvalidArgument("bad readout setting id '" + std::string(id) + "'");
  return {parse_rotation(parts[0]), parse_rotation(parts[1])};
}

const std::array<ReadoutSetting, 9>& ReadoutSetting::All() {
  static const std::array<ReadoutSetting, 9> all = [] {
    std::array<ReadoutSetting, 9> out;
    const std::array<ReadoutRotation, 3> rots = {ReadoutRotation::kNone, ReadoutRotation::kX90,
                                                 ReadoutRotation::kY90};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out[3 * i + j] = {rots[i], rots[j]};
    }
    return out;
  }();
  return all;
}

std::string_view observable_id(int index) {
  if (index < 0 || index >= kObservablesPerSetting) throw InvalidArgument("observable index");
  return kObservableIds[index];
}

Matrix4 measurement_operator(const ReadoutSetting& setting, int index) {
  const Matrix4 r = kron(readout_rotation(setting.alice), readout_rotation(setting.bob));
  return r.adjoint() * z_basis_observable(index) * r;
}

MeasurementRecord simulate_readout(const DensityMatrix4& rho, const ReadoutSetting& setting,
                                   double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw InvalidArgument("readout noise sigma must be non-negative");
  }
  MeasurementRecord rec{setting, {}, noise_sigma};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int o = 0; o < kObservablesPerSetting; ++o) {
    const double exact = (measurement_operator(setting, o) * rho.matrix()).trace().real();
    rec.values[o] = noise_sigma > 0.0 ? exact + noise_sigma * gauss(rng) : exact;
  }
  return rec;
}

std::vector<MeasurementRecord> simulate_all_settings(const DensityMatrix4& rho,
                                                     double noise_sigma, std::uint64_t seed) {
  std::vector<MeasurementRecord> out;
  const auto& all = ReadoutSetting::All();
  for (std::size_t k = 0; k < all.size(); ++k) {
    out.push_back(simulate_readout(rho, all[k], noise_sigma, derive_seed(seed, k)));
  }
  return out;
}

void verify_standard_design() {
  static std::once_flag once;
  static std::string failure;
  std::call_once(once, [] {
    const auto& all = ReadoutSetting::All();
    const Design d = build_design(all);
    try {
      check_rank(d.a.transpose() * d.a);
    } catch (const RankDeficient& e) {
      failure = e.what();
    }
  });
  if (!failure.empty()) throw RankDeficient(failure);
}

ReconstructionResult reconstruct(std::span<const MeasurementRecord> records) {
  verify_standard_design();
  if (records.empty()) throw RankDeficient("tomography needs at least one measurement record");
  std::vector<ReadoutSetting> settings;
  settings.reserve(records.size());
  for (const MeasurementRecord& r : records) settings.push_back(r.setting);
  const Design d = build_design(settings);

  Eigen::VectorXd b(d.offset.size());
  Eigen::Index row = 0;
  for (const MeasurementRecord& r : records) {
    for (double v : r.values) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite measurement value");
      b(row) = v - d.offset(row);
      ++row;
    }
  }

  const NormalMatrix normal = d.a.transpose() * d.a;
  check_rank(normal);
  const ParamVector c = normal.ldlt().solve(d.a.transpose() * b);
  const double residual = (d.a * c - b).norm();

  const Matrix4 raw = from_pauli_coordinates(c);
  const double smallest = hermitian_eigenvalues(raw)(0);
  if (smallest < kDefaultPolicy.eigen_floor) {
    return {DensityMatrix4(project_to_physical(raw)), raw, residual, true};
  }
  return {DensityMatrix4(raw), raw, residual, false};
}

PayoffPair payoff_from_density(const DensityMatrix4& rho, const PayoffTable& table) {
  const Probabilities p = rho.populations();
  return {table.payoff_a(p), table.payoff_b(p)};
}

std::string serialize_records(std::span<const MeasurementRecord> records) {
  if (records.empty()) throw InvalidArgument("no measurement records to serialize");
  const double sigma = records.front().noise_sigma;
  for (const MeasurementRecord& r : records) {
    if (r.noise_sigma != sigma) {
      throw InvalidArgument("measurement records mix different noise sigmas");
    }
  }
  std::string out = "# noise_sigma " + text::format_exact(sigma) + "\n";
  out += "setting,observable,value\n";
  for (const MeasurementRecord& r : records) {
    for (int o = 0; o < kObservablesPerSetting; ++o) {
      out += r.setting.id() + "," + std::string(kObservableIds[o]) + "," +
             text::format_exact(r.values[o]) + "\n";
    }
  }
  return out;
}

std::vector<MeasurementRecord> parse_records(std::string_view text) {
  double sigma = 0.0;
  std::vector<MeasurementRecord> out;
  std::vector<std::array<bool, kObservablesPerSetting>> seen;
  std::map<std::string, std::size_t> index_of;
  int line_no = 0;
  for (std::string_view raw : text::split(text, '\n')) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = text::trim(line.substr(1));
      constexpr std::string_view kKey = "noise_sigma";
      if (body.substr(0, kKey.size()) == kKey) {
        sigma = text::parse_double(body.substr(kKey.size()), "noise_sigma");
      }
      continue;
    }
    if (line == "setting,observable,value") continue;
    const auto cols = text::split(line, ',');
    const std::string where = "records line " + std::to_string(line_no);
    if (cols.size() != 3) throw InvalidArgument(where + ": expected 3 columns");
    const std::string setting_id(text::trim(cols[0]));
    const auto obs = std::find(kObservableIds.begin(), kObservableIds.end(), text::trim(cols[1]));
    if (obs == kObservableIds.end()) {
      throw InvalidArgument(where + ": unknown observable '" + std::string(cols[1]) + "'");
    }
    const auto o = static_cast<std::size_t>(obs - kObservableIds.begin());
    auto [it, inserted] = index_of.try_emplace(setting_id, out.size());
    if (inserted) {
      out.push_back({ReadoutSetting::FromId(setting_id), {}, 0.0});
      seen.push_back({});
    }
    if (seen[it->second][o]) throw InvalidArgument(where + ": duplicate observable");
    seen[it->second][o] = true;
    out[it->second].values[o] = text::parse_double(cols[2], "measurement value");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].noise_sigma = sigma;
    for (bool s : seen[i]) {
      if (!s) {
        throw InvalidArgument("setting " + out[i].setting.id() + " is missing observables");
      }
    }
  }
  return out;
}

}  // namespace qpd::tomo
