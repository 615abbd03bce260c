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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sqmv {

/// Single-qubit Pauli letter. The numeric value packs the symplectic bits
/// as x | (z << 1), so I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
enum class PauliOp : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(PauliOp op);

/**
 * Signed n-qubit Pauli string in symplectic form.
 *
 * The represented operator is i^phase_power * prod_j L_j with the site
 * letter L_j = i^(x_j z_j) X^(x_j) Z^(z_j), i.e. the factor i for Y is
 * absorbed into the letter. A string is Hermitian exactly when
 * phase_power is 0 or 2.
 *
 * Qubit 0 is the most significant tensor factor throughout: the dense
 * matrix of a string on qubits (q0, q1, ...) is kron(L_0, L_1, ...), and
 * the basis index of |b0 b1 ... b_{n-1}> is sum_j b_j 2^(n-1-j).
 */
class PauliString {
 public:
  PauliString() = default;

  /// Identity string on `num_qubits` qubits (phase +1).
  explicit PauliString(int num_qubits);

  static PauliString identity(int num_qubits) { return PauliString(num_qubits); }

  /// Single non-identity letter at `qubit`, identity elsewhere.
  static PauliString single(int num_qubits, int qubit, PauliOp op);

  /// Parses "XIZY", "-XX", "+iZ", "-iY", ... Letters map to qubits left
  /// to right starting at qubit 0.
  static PauliString from_text(std::string_view text);

  int num_qubits() const { return n_; }
  PauliOp op(int qubit) const;
  void set_op(int qubit, PauliOp op);

  uint64_t x_bits() const { return x_; }
  uint64_t z_bits() const { return z_; }

  /// Power p of the global prefactor i^p, in {0,1,2,3}.
  int phase_power() const { return phase_; }
  void set_phase_power(int p) { phase_ = static_cast<uint8_t>(((p % 4) + 4) % 4); }
  std::complex<double> phase() const;

  bool is_hermitian() const { return phase_ == 0 || phase_ == 2; }

  /// +1 or -1 for Hermitian strings; throws otherwise.
  double sign() const;

  /// True when every letter is I (the phase may still be anything).
  bool is_identity_letters() const { return x_ == 0 && z_ == 0; }

  /// Number of non-identity letters.
  int weight() const;

  /// Qubits carrying a non-identity letter, ascending.
  std::vector<int> support() const;

  std::string to_text() const;

  /// Dense 2^n x 2^n matrix. Requires n <= 12.
  Eigen::MatrixXcd to_dense() const;

  /// Action on a computational basis state: P |b> = coeff(b) |b ^ flip_mask()|.
  /// Indices use the dense convention above.
  uint64_t flip_mask() const;
  std::complex<double> basis_coeff(uint64_t basis_index) const;

  bool operator==(const PauliString& other) const = default;

 private:
  int n_ = 0;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
  uint8_t phase_ = 0;  // power of i
};

/// Symbolic product p*q with exact phase bookkeeping.
PauliString multiply(const PauliString& p, const PauliString& q);

/// True iff the symplectic form <p.x,q.z> + <p.z,q.x> vanishes mod 2.
bool commutes(const PauliString& p, const PauliString& q);

/// Hermitian Pauli term with the sign carried in the coefficient; the
/// string itself always has phase exactly +1.
struct WeightedPauliTerm {
  PauliString string;
  double coeff = 0.0;
};

/**
 * Pauli-basis decomposition of a Hermitian matrix living on `support`
 * (support[0] = most significant factor of h), embedded into
 * `num_qubits` total qubits. Coefficients are Tr(S h) / 2^k; terms with
 * |c| < 1e-12 are dropped.
 */
std::vector<WeightedPauliTerm> decompose(const Eigen::MatrixXcd& h,
                                         const std::vector<int>& support,
                                         int num_qubits);

}  // namespace sqmv
