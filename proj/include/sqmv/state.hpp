// Copyright 2026 The sqmv developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "sqmv/pauli.hpp"
#include "sqmv/rng.hpp"

namespace sqmv {

/// Dense pure state or density matrix on up to 12 qubits. Values are
/// immutable: every operation returns a new state.
class QuantumState {
 public:
  QuantumState() = default;

  static QuantumState pure(Eigen::VectorXcd amplitudes);
  static QuantumState mixed(Eigen::MatrixXcd rho);

  /// |+>^n
  static QuantumState plus_state(int num_qubits);

  /// Computational basis state from a bit string, qubit 0 first: "01" is
  /// qubit0=0, qubit1=1.
  static QuantumState basis_state(const std::string& bits);
  static QuantumState basis_state(int num_qubits, uint64_t index);

  static QuantumState maximally_mixed(int num_qubits);

  enum class Purity { Pure, Mixed };
  static QuantumState random(int num_qubits, Purity purity, RngStream& rng);

  int num_qubits() const { return n_; }
  bool is_pure() const { return pure_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_; }

  const Eigen::VectorXcd& vector() const;

  /// Density matrix view; forms the outer product for pure states.
  Eigen::MatrixXcd density_matrix() const;

  /// Pure -> mixed promotion (no-op on mixed states).
  QuantumState promoted() const;

  nlohmann::json to_json() const;
  static QuantumState from_json(const nlohmann::json& j);

 private:
  int n_ = 0;
  bool pure_ = true;
  Eigen::VectorXcd vec_;
  Eigen::MatrixXcd mat_;

  friend struct StateOps;
};

/// Measurement basis for one qubit: a Hermitian involution, kept together
/// with the rotation U that maps it onto Z (rows of U are the +1 / -1
/// eigenbras).
struct MeasurementBasis {
  Eigen::Matrix2cd observable;
  Eigen::Matrix2cd rotation;
  std::string label;

  static MeasurementBasis x();
  static MeasurementBasis y();
  static MeasurementBasis z();

  /// Observable cos(phi) X + sin(phi) Y; the X-Y plane angle used by MBQC.
  static MeasurementBasis xy_plane(double phi);

  /// General 2x2 Hermitian involution (checked to 1e-10).
  static MeasurementBasis from_matrix(const Eigen::Matrix2cd& b, std::string label = "M");
};

struct MeasurementResult {
  int outcome = 0;  // +1 or -1
  double probability = 0.0;
  QuantumState post;
};

QuantumState apply_single_qubit_gate(const QuantumState& state, int qubit,
                                     const Eigen::Matrix2cd& unitary);

QuantumState apply_cz(const QuantumState& state, int qubit_a, int qubit_b);

/// Born-rule measurement of one qubit. Implemented by rotating the basis
/// onto Z, measuring, and rotating back, so there is a single sampling
/// path for every basis.
MeasurementResult measure_single_qubit(const QuantumState& state, int qubit,
                                       const MeasurementBasis& basis, RngStream& rng);

/// Deterministically selects the branch with the given outcome (+1/-1).
/// Throws when that branch has probability below 1e-12.
MeasurementResult project_single_qubit(const QuantumState& state, int qubit,
                                       const MeasurementBasis& basis, int outcome);

/// Probability that a Z measurement of `qubit` yields bit 0.
double zero_probability(const QuantumState& state, int qubit);

/// Tr(p rho); requires a Hermitian string and matching sizes.
double expectation(const QuantumState& state, const PauliString& p);

/// <psi|M|psi> resp. Tr(M rho) for a dense Hermitian observable.
double expectation(const QuantumState& state, const Eigen::MatrixXcd& observable);

/// Reduced state on `keep` (ascending original qubit order).
QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep);

/// Uhlmann fidelity F = Tr sqrt(sqrt(a) b sqrt(a)), in [0, 1].
double fidelity(const QuantumState& a, const QuantumState& b);

/// (1/2) || a - b ||_1, in [0, 1].
double trace_distance(const QuantumState& a, const QuantumState& b);

}  // namespace sqmv
