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

#include <map>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "sqmv/circuit.hpp"
#include "sqmv/graph.hpp"
#include "sqmv/rng.hpp"
#include "sqmv/state.hpp"

namespace sqmv {

/// One adaptive measurement step. The executed angle is
/// (-1)^s * angle + pi * t, where s and t are the XOR of the outcome bits
/// of s_deps and t_deps respectively.
struct PatternMeasurement {
  int vertex = 0;
  double angle = 0.0;
  std::vector<int> s_deps;
  std::vector<int> t_deps;
};

/**
 * Adaptive single-qubit measurement program on a verification graph.
 * Witness wires enter at V2 vertices, ancilla wires at V1 vertices; every
 * J gate teleports its wire one vertex further along V1. Output vertices
 * are not measured by the sequence; the executor reads the accept wire in
 * the computational basis and consumes the rest.
 */
struct MeasurementPattern {
  VerificationGraph graph;
  std::vector<PatternMeasurement> sequence;
  std::vector<int> input_vertices;                // witness wire entries, wire order
  std::vector<int> output_vertices;               // per logical wire
  std::vector<std::vector<int>> output_x_deps;    // byproduct X parity sets, per wire
  std::vector<std::vector<int>> output_z_deps;    // byproduct Z parity sets, per wire
  int accept_wire = 0;
  int accept_value = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static MeasurementPattern from_json(const nlohmann::json& j);
};

/// Compiles a {J(theta), CZ} circuit into a measurement pattern whose
/// execution on the honest state reproduces the circuit. Capped at 3
/// logical qubits and 12 graph vertices.
MeasurementPattern compile_pattern(const VerifierCircuit& circuit);

/// Honest prover message for a pattern: witness at the V2 inputs, graph
/// state elsewhere (delegates to honest_state on the pattern's graph).
QuantumState honest_prover_state(const MeasurementPattern& pattern, const QuantumState* witness);

struct PatternRun {
  bool accept = false;
  std::map<int, int> outcome_bits;  // measured vertex -> bit
  int raw_accept_bit = 0;
  int corrected_accept_bit = 0;
};

/// Executes the pattern on an arbitrary received state: adaptive X-Y
/// measurements in arrival order, Z readout of the accept vertex, Z
/// consumption of the remaining outputs.
PatternRun execute_pattern(const MeasurementPattern& pattern, const QuantumState& state,
                           RngStream& rng);

struct PatternBranch {
  double probability = 0.0;
  std::map<int, int> outcome_bits;
  QuantumState corrected_output;  // logical register after byproduct correction
};

/// Enumerates every measurement branch on the honest state and returns
/// the byproduct-corrected output register per branch. Used to certify
/// pattern/circuit equivalence exactly.
std::vector<PatternBranch> enumerate_pattern_branches(const MeasurementPattern& pattern,
                                                      const QuantumState* witness);

/// Protocol parameters of the combined test: computation branch with
/// probability q, stabilizer test otherwise.
struct ProtocolParams {
  double q = 0.0;
  double epsilon = 0.0;
  double a = 2.0 / 3.0;
  double b = 1.0 / 3.0;
  long x_size = 0;

  void validate() const;

  /// a = 2/3, b = 1/3, epsilon = 1/(2|x|^2), q = q*; the paper's choices.
  static ProtocolParams for_instance_size(long x_size);
};

/// Full verifier: with probability q run the compiled circuit by MBQC,
/// otherwise run the stabilizer test.
bool arthur_verify(const MeasurementPattern& pattern, const ProtocolParams& params,
                   const QuantumState& received, RngStream& rng);

/// Dense acceptance operator A with Tr(A rho) = overall acceptance
/// probability: q * (circuit branch POVM) + (1-q) * (I + Pi)/2 where Pi
/// is the stabilizer projector. Capped at 10 vertices.
Eigen::MatrixXcd acceptance_operator(const MeasurementPattern& pattern,
                                     const VerifierCircuit& circuit, double q);

/// Circuit-branch POVM element alone (the q = 1 part of A).
Eigen::MatrixXcd circuit_branch_operator(const MeasurementPattern& pattern);

/// Stabilizer-branch pass operator (I + Pi)/2 (the q = 0 part of A).
Eigen::MatrixXcd stabilizer_pass_operator(const VerificationGraph& graph);

struct CheatResult {
  double lambda_max = 0.0;
  QuantumState best_state;
};

/// Top eigenpair of the acceptance operator: the best cheating
/// probability and a state achieving it.
CheatResult optimal_cheat(const Eigen::MatrixXcd& acceptance);

// Closed-form acceptance bounds of the analysis.
double alpha(const ProtocolParams& p);   // q a + (1-q)
double beta1(const ProtocolParams& p);   // q (b + sqrt(2 eps)) + (1-q)
double beta2(const ProtocolParams& p);   // q + (1-q)(1-eps)
double delta1(const ProtocolParams& p);  // alpha - beta1
double delta2(const ProtocolParams& p);  // alpha - beta2

/// q* = eps / (1 + eps - b - sqrt(2 eps)); equalizes delta1 and delta2.
/// May exceed 1 for large eps; throws when the denominator is <= 0.
double optimal_q(const ProtocolParams& p);

/// Gap at the optimal q: eps (a - b - sqrt(2 eps)) / (1 + eps - b - sqrt(2 eps)).
double protocol_gap(const ProtocolParams& p);

/// 1 / (48 |x|^2), the closed-form floor for the paper's settings.
double gap_floor(long x_size);

}  // namespace sqmv
