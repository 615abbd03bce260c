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

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "sqmv/pauli.hpp"
#include "sqmv/rng.hpp"
#include "sqmv/state.hpp"

namespace sqmv {

/// Pauli letters on a term's support qubits, e.g. {"XZ", -0.5} on
/// support {0, 3} means -0.5 X_0 Z_3.
struct LocalPauli {
  std::string letters;
  double coeff = 0.0;
};

/// k-local Hamiltonian H = sum_m H_m. A term is either a dense Hermitian
/// matrix on its support (decomposed internally; |support| <= 6) or an
/// explicit Pauli expansion.
struct LocalHamiltonian {
  struct Term {
    std::vector<int> support;
    std::variant<Eigen::MatrixXcd, std::vector<LocalPauli>> op;
  };

  int n = 0;
  int k = 0;
  std::vector<Term> terms;

  void validate() const;

  /// Dense matrix of the full Hamiltonian (n <= 12).
  Eigen::MatrixXcd to_dense() const;

  nlohmann::json to_json() const;
  static LocalHamiltonian from_json(const nlohmann::json& j);
  static LocalHamiltonian load(const std::string& path);
  void save(const std::string& path) const;
};

// Builtin instances.
LocalHamiltonian single_term_hamiltonian(int n, const std::string& pauli_text, double coeff);
/// H = -sum Z_i Z_{i+1} - g sum X_i on an open chain.
LocalHamiltonian tfim_chain(int sites, double g);
/// H = sum (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}) on an open chain.
LocalHamiltonian heisenberg_chain(int sites);
LocalHamiltonian builtin_hamiltonian(const std::string& name);

/// Weighted Pauli terms with the derived sampling distribution
/// pi_S = |d_S| / sum |d_S|.
struct PauliEnsemble {
  struct Entry {
    PauliString string;  // Hermitian, phase +1
    double d = 0.0;      // signed weight
  };
  int num_qubits = 0;
  std::vector<Entry> entries;
  double total_weight = 0.0;    // sum |d|
  std::vector<double> pi;

  Eigen::MatrixXcd reconstruct_dense() const;
};

/// Merges the Pauli expansions of all terms into d_S = sum_m c_S^m,
/// dropping weights below 1e-12. Throws if everything cancels.
PauliEnsemble assemble_ensemble(const LocalHamiltonian& h);

/// Entry index drawn according to pi.
std::size_t sample_term(const PauliEnsemble& ensemble, RngStream& rng);

/// Measures one sampled term qubit-by-qubit: support qubits in their
/// Pauli bases, all others consumed by a Z measurement. Returns
/// r = (1 + sign(d) x_1...x_k) / 2 in {0, 1}.
int measure_term(const QuantumState& state, const PauliEnsemble::Entry& entry, RngStream& rng);

/// One verification round; accepts iff r = 0 for a freshly sampled term.
bool verify_once(const QuantumState& state, const PauliEnsemble& ensemble, RngStream& rng);

/// Closed form 1 - (<H> + sum|d|) / (2 sum|d|).
double exact_acceptance(const QuantumState& state, const PauliEnsemble& ensemble);

/// <H> evaluated through the ensemble (sum_S d_S <S>).
double ensemble_energy(const QuantumState& state, const PauliEnsemble& ensemble);

struct EnergyEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long shots = 0;
};

/// Unbiased single-qubit-measurement estimator of <H>: each shot draws a
/// fresh state from `source`, samples a term, and measures it;
/// <H> = 2 sum|d| E[r] - sum|d|.
EnergyEstimate estimate_energy(const std::function<QuantumState()>& source,
                               const PauliEnsemble& ensemble, long shots, RngStream& rng);

struct GroundState {
  double energy = 0.0;
  QuantumState state;
};

/// Dense diagonalization oracle (n <= 12).
GroundState ground_energy_exact(const LocalHamiltonian& h);

struct EnergyPromise {
  double e_a = 0.0;
  double e_b = 0.0;
  void validate() const;
};

/// Completeness-soundness gap (e_b - e_a) / (2 sum|d|).
double lh_gap(const PauliEnsemble& ensemble, const EnergyPromise& promise);

}  // namespace sqmv
