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

#include "sqmv/pauli.hpp"

#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace sqmv {

namespace {

constexpr int kMaxQubits = 64;
constexpr int kMaxDenseQubits = 12;
constexpr double kHermTol = 1e-10;
constexpr double kDropTol = 1e-12;

const std::complex<double> kI(0.0, 1.0);

Eigen::Matrix2cd letter_matrix(PauliOp op) {
  Eigen::Matrix2cd m;
  switch (op) {
    case PauliOp::I:
      m << 1, 0, 0, 1;
      break;
    case PauliOp::X:
      m << 0, 1, 1, 0;
      break;
    case PauliOp::Z:
      m << 1, 0, 0, -1;
      break;
    case PauliOp::Y:
      m << 0, -kI, kI, 0;
      break;
  }
  return m;
}

std::complex<double> i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

}  // namespace

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::I:
      return 'I';
    case PauliOp::X:
      return 'X';
    case PauliOp::Z:
      return 'Z';
    case PauliOp::Y:
      return 'Y';
  }
  throw std::logic_error("pauli_char: bad letter");
}

PauliString::PauliString(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument(
        fmt::format("PauliString: qubit count {} outside [1, {}]", num_qubits, kMaxQubits));
  }
}

PauliString PauliString::single(int num_qubits, int qubit, PauliOp op) {
  PauliString p(num_qubits);
  p.set_op(qubit, op);
  return p;
}

PauliString PauliString::from_text(std::string_view text) {
  int phase = 0;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    const bool neg = text.front() == '-';
    text.remove_prefix(1);
    if (!text.empty() && (text.front() == 'i' || text.front() == 'I')) {
      // "+i"/"-i" prefix only when followed by at least one letter; a lone
      // leading 'I' is the identity letter.
      if (text.size() > 1) {
        phase = 1;
        text.remove_prefix(1);
      }
    }
    if (neg) {
      phase += 2;
    }
  }
  if (text.empty()) {
    throw std::invalid_argument("PauliString::from_text: no letters");
  }
  PauliString p(static_cast<int>(text.size()));
  for (std::size_t j = 0; j < text.size(); ++j) {
    switch (text[j]) {
      case 'I':
        break;
      case 'X':
        p.set_op(static_cast<int>(j), PauliOp::X);
        break;
      case 'Y':
        p.set_op(static_cast<int>(j), PauliOp::Y);
        break;
      case 'Z':
        p.set_op(static_cast<int>(j), PauliOp::Z);
        break;
      default:
        throw std::invalid_argument(
            fmt::format("PauliString::from_text: bad letter '{}'", text[j]));
    }
  }
  p.set_phase_power(phase);
  return p;
}

PauliOp PauliString::op(int qubit) const {
  if (qubit < 0 || qubit >= n_) {
    throw std::out_of_range(fmt::format("PauliString::op: qubit {} of {}", qubit, n_));
  }
  const uint64_t x = (x_ >> qubit) & 1u;
  const uint64_t z = (z_ >> qubit) & 1u;
  return static_cast<PauliOp>(x | (z << 1));
}

void PauliString::set_op(int qubit, PauliOp op) {
  if (qubit < 0 || qubit >= n_) {
    throw std::out_of_range(fmt::format("PauliString::set_op: qubit {} of {}", qubit, n_));
  }
  const uint64_t v = static_cast<uint64_t>(op);
  x_ = (x_ & ~(1ULL << qubit)) | ((v & 1u) << qubit);
  z_ = (z_ & ~(1ULL << qubit)) | (((v >> 1) & 1u) << qubit);
}

std::complex<double> PauliString::phase() const { return i_power(phase_); }

double PauliString::sign() const {
  if (!is_hermitian()) {
    throw std::logic_error(
        fmt::format("PauliString::sign: {} is not Hermitian (phase i^{})", to_text(), phase_));
  }
  return phase_ == 0 ? 1.0 : -1.0;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if (((x_ | z_) >> j) & 1u) {
      out.push_back(j);
    }
  }
  return out;
}

std::string PauliString::to_text() const {
  std::string out;
  switch (phase_) {
    case 0:
      break;
    case 1:
      out += "+i";
      break;
    case 2:
      out += "-";
      break;
    case 3:
      out += "-i";
      break;
  }
  for (int j = 0; j < n_; ++j) {
    out += pauli_char(op(j));
  }
  return out;
}

uint64_t PauliString::flip_mask() const {
  uint64_t mask = 0;
  for (int j = 0; j < n_; ++j) {
    if ((x_ >> j) & 1u) {
      mask |= 1ULL << (n_ - 1 - j);
    }
  }
  return mask;
}

std::complex<double> PauliString::basis_coeff(uint64_t basis_index) const {
  // P|b> = i^(phase + #Y) * (-1)^<z,b> |b ^ flip>.
  uint64_t z_dense = 0;
  for (int j = 0; j < n_; ++j) {
    if ((z_ >> j) & 1u) {
      z_dense |= 1ULL << (n_ - 1 - j);
    }
  }
  const int y_count = std::popcount(x_ & z_);
  std::complex<double> c = i_power(phase_ + y_count);
  if (std::popcount(z_dense & basis_index) & 1) {
    c = -c;
  }
  return c;
}

Eigen::MatrixXcd PauliString::to_dense() const {
  if (n_ > kMaxDenseQubits) {
    throw std::invalid_argument(
        fmt::format("PauliString::to_dense: {} qubits exceeds the dense cap of {}", n_,
                    kMaxDenseQubits));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(1, 1, phase());
  for (int j = 0; j < n_; ++j) {
    // accumulate m (x) letter, keeping qubit 0 as the most significant factor
    const Eigen::Matrix2cd l = letter_matrix(op(j));
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block(r * 2, c * 2, 2, 2) = m(r, c) * l;
      }
    }
    m.swap(next);
  }
  return m;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument(fmt::format("multiply: size mismatch {} vs {}", p.num_qubits(),
                                            q.num_qubits()));
  }
  PauliString out(p.num_qubits());
  int phase = p.phase_power() + q.phase_power();
  for (int j = 0; j < p.num_qubits(); ++j) {
    const int x1 = (p.x_bits() >> j) & 1u;
    const int z1 = (p.z_bits() >> j) & 1u;
    const int x2 = (q.x_bits() >> j) & 1u;
    const int z2 = (q.z_bits() >> j) & 1u;
    const int x3 = x1 ^ x2;
    const int z3 = z1 ^ z2;
    // L(x1,z1) L(x2,z2) = i^(x1 z1 + x2 z2 - x3 z3 + 2 z1 x2) L(x3,z3).
    phase += x1 * z1 + x2 * z2 - x3 * z3 + 2 * z1 * x2;
    out.set_op(j, static_cast<PauliOp>(x3 | (z3 << 1)));
  }
  out.set_phase_power(phase);
  return out;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument(fmt::format("commutes: size mismatch {} vs {}", p.num_qubits(),
                                            q.num_qubits()));
  }
  const int sform =
      std::popcount(p.x_bits() & q.z_bits()) + std::popcount(p.z_bits() & q.x_bits());
  return (sform & 1) == 0;
}

std::vector<WeightedPauliTerm> decompose(const Eigen::MatrixXcd& h,
                                         const std::vector<int>& support, int num_qubits) {
  const int k = static_cast<int>(support.size());
  if (k < 1 || k > 6) {
    throw std::invalid_argument(
        fmt::format("decompose: support size {} outside [1, 6]", k));
  }
  const Eigen::Index dim = Eigen::Index(1) << k;
  if (h.rows() != dim || h.cols() != dim) {
    throw std::invalid_argument(fmt::format("decompose: matrix is {}x{}, expected {}x{}",
                                            h.rows(), h.cols(), dim, dim));
  }
  const double herm_dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermTol) {
    throw std::invalid_argument(
        fmt::format("decompose: input deviates from Hermitian by {:.3e}", herm_dev));
  }
  for (int idx : support) {
    if (idx < 0 || idx >= num_qubits) {
      throw std::invalid_argument(
          fmt::format("decompose: support qubit {} outside [0, {})", idx, num_qubits));
    }
  }

  std::vector<WeightedPauliTerm> terms;
  const uint64_t strings = 1ULL << (2 * k);
  for (uint64_t code = 0; code < strings; ++code) {
    PauliString local(k);
    for (int j = 0; j < k; ++j) {
      local.set_op(j, static_cast<PauliOp>((code >> (2 * j)) & 3u));
    }
    // Tr(S h) without building S: S|b> = c(b) |b ^ flip>, so the trace
    // picks out the entries h(b, b ^ flip).
    const uint64_t flip = local.flip_mask();
    std::complex<double> trace = 0.0;
    for (uint64_t b = 0; b < static_cast<uint64_t>(dim); ++b) {
      trace += local.basis_coeff(b) * h(static_cast<Eigen::Index>(b),
                                        static_cast<Eigen::Index>(b ^ flip));
    }
    const std::complex<double> c = trace / static_cast<double>(dim);
    if (std::abs(c.imag()) > kHermTol) {
      throw std::logic_error(
          fmt::format("decompose: coefficient of {} has imaginary part {:.3e}",
                      local.to_text(), c.imag()));
    }
    if (std::abs(c.real()) < kDropTol) {
      continue;
    }
    PauliString embedded(num_qubits);
    for (int j = 0; j < k; ++j) {
      embedded.set_op(support[j], local.op(j));
    }
    terms.push_back({embedded, c.real()});
  }
  return terms;
}

}  // namespace sqmv
