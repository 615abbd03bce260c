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
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sqmv/pauli.hpp"
#include "sqmv/rng.hpp"
#include "sqmv/state.hpp"

namespace sqmv {

/**
 * Verification graph: resource vertices V1, witness vertices V2, and the
 * order in which the prover sends qubits. Vertex ids double as qubit
 * indices, so they must be exactly 0..V-1. Edges inside V2 are rejected
 * unless `allow_witness_edges` is set.
 */
struct VerificationGraph {
  std::vector<int> v1;
  std::vector<int> v2;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> arrival_order;
  bool allow_witness_edges = false;

  int num_vertices() const { return static_cast<int>(v1.size() + v2.size()); }
  int resource_size() const { return static_cast<int>(v1.size()); }

  bool in_v1(int v) const;
  bool in_v2(int v) const;
  std::vector<int> neighbors(int v) const;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  nlohmann::json to_json() const;
  static VerificationGraph from_json(const nlohmann::json& j);
  static VerificationGraph load(const std::string& path);
  void save(const std::string& path) const;
};

// Stock layouts used by tests and the CLI (`builtin:<name>`). All have
// arrival order 0,1,2,...
VerificationGraph path_graph(int n);
VerificationGraph cycle_graph(int n);
VerificationGraph grid_graph(int rows, int cols);
VerificationGraph star_graph(int n);
/// rows x cols resource grid plus `witnesses` V2 vertices, each attached
/// to a first-column grid vertex.
VerificationGraph fig1_graph(int rows, int cols, int witnesses);
VerificationGraph builtin_graph(const std::string& name);

/// Graph state on (V1, E1) alone; qubit i of the result is v1[i].
QuantumState graph_state(const VerificationGraph& g);

/// Honest prover message: |G> on V1, `witness` on V2 (qubit i -> v2[i]),
/// coupled by CZ along every edge. With empty V2 this is the graph state.
QuantumState honest_state(const VerificationGraph& g, const QuantumState* witness);

/// g_j = X_j (x) Z_{neighbors(j)} on all |V| qubits. j must lie in V1.
PauliString stabilizer_generator(const VerificationGraph& g, int j);

/// s_k = prod_{j in V1} g_j^{k_j}; k_bits[i] belongs to v1[i].
PauliString stabilizer_product(const VerificationGraph& g, const std::vector<int>& k_bits);

/// Closed-form pass probability (1 + Tr(Pi rho))/2 where Pi projects onto
/// the common +1 eigenspace of the generators.
double exact_pass_probability(const VerificationGraph& g, const QuantumState& state);

/// Same quantity by brute-force average over all 2^N strings k; the
/// independent route for cross-checks. Requires N <= 16.
double exact_pass_probability_enumerated(const VerificationGraph& g, const QuantumState& state);

enum class TestBasis { X, Y, Z, Skip };

struct StabilizerTestRecord {
  std::vector<int> k_bits;
  std::map<int, TestBasis> per_qubit_bases;
  std::map<int, int> outcomes;  // vertex -> ±1, non-skip letters only
  int product_sign = +1;
  bool passed = false;
};

/// One round of the stabilizer test: draw k uniformly, then measure each
/// qubit in arrival order in the single-qubit basis dictated by s_k.
/// Identity letters are consumed by a Z measurement whose value is
/// discarded.
StabilizerTestRecord run_stabilizer_test(const VerificationGraph& g, const QuantumState& state,
                                         RngStream& rng);

struct HonestStateBound {
  double epsilon = 0.0;   // 1 - p_pass
  double bound = 0.0;     // sqrt(2 epsilon)
  double distance = 0.0;  // trace distance to the optimal honest state
  QuantumState closest;   // W(|+><+|^N (x) w*) W
};

/// Builds the honest state closest to `state` (optimal witness taken from
/// the conditional state on V2) and certifies distance <= sqrt(2 eps).
HonestStateBound closest_honest_state_bound(const VerificationGraph& g,
                                            const QuantumState& state);

}  // namespace sqmv
