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

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "sqmv/state.hpp"

namespace sqmv {

/// Gate over the {J(theta), CZ} set. J(theta) = H Rz(theta); J(0) = H.
struct Gate {
  enum class Kind { J, CZ };
  Kind kind = Kind::J;
  int qubit = 0;            // J target
  double theta = 0.0;       // J angle
  int qubit_a = 0;          // CZ pair
  int qubit_b = 0;

  static Gate j(int qubit, double theta);
  static Gate cz(int a, int b);
};

/// 2x2 matrix of J(theta) = H Rz(theta).
Eigen::Matrix2cd j_matrix(double theta);

/**
 * QMA verifier circuit over witness qubits 0..n_witness-1 followed by
 * ancillas (initialized to |+>). Accepts when the computational-basis
 * readout of `accept_qubit` equals `accept_value` (1 by convention).
 */
struct VerifierCircuit {
  int n_witness = 0;
  int m_ancilla = 0;
  std::vector<Gate> gates;
  int accept_qubit = 0;
  int accept_value = 1;

  int num_qubits() const { return n_witness + m_ancilla; }
  void validate() const;

  nlohmann::json to_json() const;
  static VerifierCircuit from_json(const nlohmann::json& j);
  static VerifierCircuit load(const std::string& path);
  void save(const std::string& path) const;

  /// Convenience constructors for common gates as J-compositions:
  /// H = J(0), Rz(theta) = J(0) J(theta).
  void add_h(int qubit);
  void add_rz(int qubit, double theta);
};

/// Runs the circuit on witness (x) |+>^m. Null witness is allowed only
/// when n_witness == 0.
QuantumState simulate_circuit(const VerifierCircuit& c, const QuantumState* witness);

/// Probability that the readout accepts, given the witness.
double circuit_accept_probability(const VerifierCircuit& c, const QuantumState* witness);

/// POVM element E on the witness register with p_accept = <xi|E|xi>;
/// its top eigenvalue is the best acceptance any witness achieves.
Eigen::MatrixXcd witness_accept_operator(const VerifierCircuit& c);

}  // namespace sqmv
