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

// Test-side oracles, kept independent of the library's symbolic Pauli
// path: hardcoded letter matrices, a separate Kronecker product, and
// brute-force spectral routines.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::Matrix2cd letter(char c) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (c) {
    case 'I':
      m << 1, 0, 0, 1;
      return m;
    case 'X':
      m << 0, 1, 1, 0;
      return m;
    case 'Y':
      m << 0, -i, i, 0;
      return m;
    case 'Z':
      m << 1, 0, 0, -1;
      return m;
  }
  throw std::invalid_argument("oracle::letter: bad char");
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Letters map to qubits left to right, qubit 0 most significant.
inline Eigen::MatrixXcd dense_pauli(const std::string& letters) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) {
    m = kron(m, letter(c));
  }
  return m;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Uhlmann fidelity straight from eigen-decompositions.
inline double fidelity_dense(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd root = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(root * sigma * root,
                                                        Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < inner.eigenvalues().size(); ++i) {
    f += std::sqrt(std::max(0.0, inner.eigenvalues()(i)));
  }
  return f;
}

inline double trace_distance_dense(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho - sigma, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace oracle
