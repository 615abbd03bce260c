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

#include "sqmv/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sqmv {

namespace {

constexpr int kMaxQubits = 12;
constexpr double kNormTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kBranchTol = 1e-12;
constexpr double kEigClamp = 1e-12;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument(
        fmt::format("QuantumState: qubit count {} outside [1, {}]", n, kMaxQubits));
  }
}

int qubit_count_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) {
    ++n;
  }
  if ((Eigen::Index(1) << n) != dim) {
    throw std::invalid_argument(fmt::format("QuantumState: dimension {} is not a power of two", dim));
  }
  return n;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

// Internal mutating kernels. Public operations copy once and then work in
// place; protocol executors reuse them through the same functions.
struct StateOps {
  static void gate(QuantumState& s, int qubit, const Eigen::Matrix2cd& u) {
    const Eigen::Index dim = s.dim();
    const Eigen::Index stride = Eigen::Index(1) << (s.n_ - 1 - qubit);
    if (s.pure_) {
      auto& v = s.vec_;
      for (Eigen::Index base = 0; base < dim; ++base) {
        if (base & stride) continue;
        const std::complex<double> a0 = v(base);
        const std::complex<double> a1 = v(base | stride);
        v(base) = u(0, 0) * a0 + u(0, 1) * a1;
        v(base | stride) = u(1, 0) * a0 + u(1, 1) * a1;
      }
    } else {
      auto& m = s.mat_;
      for (Eigen::Index col = 0; col < dim; ++col) {
        for (Eigen::Index base = 0; base < dim; ++base) {
          if (base & stride) continue;
          const std::complex<double> a0 = m(base, col);
          const std::complex<double> a1 = m(base | stride, col);
          m(base, col) = u(0, 0) * a0 + u(0, 1) * a1;
          m(base | stride, col) = u(1, 0) * a0 + u(1, 1) * a1;
        }
      }
      for (Eigen::Index row = 0; row < dim; ++row) {
        for (Eigen::Index base = 0; base < dim; ++base) {
          if (base & stride) continue;
          const std::complex<double> a0 = m(row, base);
          const std::complex<double> a1 = m(row, base | stride);
          m(row, base) = a0 * std::conj(u(0, 0)) + a1 * std::conj(u(0, 1));
          m(row, base | stride) = a0 * std::conj(u(1, 0)) + a1 * std::conj(u(1, 1));
        }
      }
    }
  }

  static void cz(QuantumState& s, int qubit_a, int qubit_b) {
    const Eigen::Index dim = s.dim();
    const Eigen::Index mask = (Eigen::Index(1) << (s.n_ - 1 - qubit_a)) |
                              (Eigen::Index(1) << (s.n_ - 1 - qubit_b));
    auto flipped = [&](Eigen::Index idx) { return (idx & mask) == mask; };
    if (s.pure_) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (flipped(i)) s.vec_(i) = -s.vec_(i);
      }
    } else {
      for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
          if (flipped(r) != flipped(c)) s.mat_(r, c) = -s.mat_(r, c);
        }
      }
    }
  }

  static double prob_bit0(const QuantumState& s, int qubit) {
    const Eigen::Index dim = s.dim();
    const Eigen::Index stride = Eigen::Index(1) << (s.n_ - 1 - qubit);
    double p = 0.0;
    if (s.pure_) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (!(i & stride)) p += std::norm(s.vec_(i));
      }
    } else {
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (!(i & stride)) p += s.mat_(i, i).real();
      }
    }
    return clamp01(p);
  }

  // Projects onto the given Z-outcome bit and renormalizes. Returns the
  // branch probability without sanity-checking it; callers decide.
  static double project_z(QuantumState& s, int qubit, int bit) {
    const Eigen::Index dim = s.dim();
    const Eigen::Index stride = Eigen::Index(1) << (s.n_ - 1 - qubit);
    const double p0 = prob_bit0(s, qubit);
    const double p = bit == 0 ? p0 : 1.0 - p0;
    if (p < kBranchTol) {
      return p;
    }
    auto kept = [&](Eigen::Index idx) { return ((idx & stride) != 0) == (bit == 1); };
    if (s.pure_) {
      const double scale = 1.0 / std::sqrt(p);
      for (Eigen::Index i = 0; i < dim; ++i) {
        s.vec_(i) = kept(i) ? s.vec_(i) * scale : 0.0;
      }
    } else {
      const double scale = 1.0 / p;
      for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
          s.mat_(r, c) = (kept(r) && kept(c)) ? s.mat_(r, c) * scale : 0.0;
        }
      }
    }
    return p;
  }

  static QuantumState unchecked_mixed(int n, Eigen::MatrixXcd rho) {
    QuantumState s;
    s.n_ = n;
    s.pure_ = false;
    s.mat_ = std::move(rho);
    return s;
  }
};

QuantumState QuantumState::pure(Eigen::VectorXcd amplitudes) {
  QuantumState s;
  s.n_ = qubit_count_for_dim(amplitudes.size());
  check_qubit_count(s.n_);
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw std::invalid_argument(fmt::format("QuantumState::pure: norm {} != 1", norm));
  }
  s.pure_ = true;
  s.vec_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::mixed(Eigen::MatrixXcd rho) {
  QuantumState s;
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("QuantumState::mixed: matrix not square");
  }
  s.n_ = qubit_count_for_dim(rho.rows());
  check_qubit_count(s.n_);
  const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kNormTol) {
    throw std::invalid_argument(
        fmt::format("QuantumState::mixed: deviates from Hermitian by {:.3e}", herm_dev));
  }
  const double trace_dev = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (trace_dev > kNormTol) {
    throw std::invalid_argument(
        fmt::format("QuantumState::mixed: trace deviates from 1 by {:.3e}", trace_dev));
  }
  // Positive semidefiniteness is only checked where the eigensolve is
  // cheap; larger matrices come from trusted internal operations.
  if (rho.rows() <= 256) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kNormTol) {
      throw std::invalid_argument(fmt::format("QuantumState::mixed: negative eigenvalue {:.3e}",
                                              es.eigenvalues().minCoeff()));
    }
  }
  s.pure_ = false;
  s.mat_ = std::move(rho);
  return s;
}

QuantumState QuantumState::plus_state(int num_qubits) {
  check_qubit_count(num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  return pure(std::move(v));
}

QuantumState QuantumState::basis_state(const std::string& bits) {
  const int n = static_cast<int>(bits.size());
  check_qubit_count(n);
  uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument(fmt::format("basis_state: bad bit '{}'", c));
    }
    index = (index << 1) | (c == '1' ? 1u : 0u);
  }
  return basis_state(n, index);
}

QuantumState QuantumState::basis_state(int num_qubits, uint64_t index) {
  check_qubit_count(num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  if (index >= static_cast<uint64_t>(dim)) {
    throw std::invalid_argument(fmt::format("basis_state: index {} out of range", index));
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return pure(std::move(v));
}

QuantumState QuantumState::maximally_mixed(int num_qubits) {
  check_qubit_count(num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  return StateOps::unchecked_mixed(
      num_qubits, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

QuantumState QuantumState::random(int num_qubits, Purity purity, RngStream& rng) {
  check_qubit_count(num_qubits);
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  if (purity == Purity::Pure) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
    }
    v.normalize();
    return pure(std::move(v));
  }
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      g(r, c) = std::complex<double>(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return StateOps::unchecked_mixed(num_qubits, std::move(rho));
}

const Eigen::VectorXcd& QuantumState::vector() const {
  if (!pure_) {
    throw std::logic_error("QuantumState::vector: state is mixed");
  }
  return vec_;
}

Eigen::MatrixXcd QuantumState::density_matrix() const {
  if (pure_) {
    return vec_ * vec_.adjoint();
  }
  return mat_;
}

QuantumState QuantumState::promoted() const {
  if (!pure_) {
    return *this;
  }
  return StateOps::unchecked_mixed(n_, vec_ * vec_.adjoint());
}

nlohmann::json QuantumState::to_json() const {
  nlohmann::json data = nlohmann::json::array();
  auto push = [&](std::complex<double> v) { data.push_back({v.real(), v.imag()}); };
  if (pure_) {
    for (Eigen::Index i = 0; i < vec_.size(); ++i) push(vec_(i));
  } else {
    for (Eigen::Index r = 0; r < mat_.rows(); ++r) {
      for (Eigen::Index c = 0; c < mat_.cols(); ++c) push(mat_(r, c));
    }
  }
  return {{"n", n_}, {"kind", pure_ ? "pure" : "mixed"}, {"data", std::move(data)}};
}

QuantumState QuantumState::from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  check_qubit_count(n);
  const std::string kind = j.at("kind").get<std::string>();
  const auto& data = j.at("data");
  const Eigen::Index dim = Eigen::Index(1) << n;
  auto entry = [&](std::size_t i) {
    return std::complex<double>(data.at(i).at(0).get<double>(), data.at(i).at(1).get<double>());
  };
  if (kind == "pure") {
    if (static_cast<Eigen::Index>(data.size()) != dim) {
      throw std::invalid_argument("QuantumState::from_json: wrong amplitude count");
    }
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = entry(static_cast<std::size_t>(i));
    return pure(std::move(v));
  }
  if (kind == "mixed") {
    if (static_cast<Eigen::Index>(data.size()) != dim * dim) {
      throw std::invalid_argument("QuantumState::from_json: wrong entry count");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        m(r, c) = entry(static_cast<std::size_t>(r * dim + c));
      }
    }
    return mixed(std::move(m));
  }
  throw std::invalid_argument(fmt::format("QuantumState::from_json: bad kind '{}'", kind));
}

MeasurementBasis MeasurementBasis::x() {
  MeasurementBasis b;
  b.observable << 0, 1, 1, 0;
  const double s = 1.0 / std::sqrt(2.0);
  b.rotation << s, s, s, -s;
  b.label = "X";
  return b;
}

MeasurementBasis MeasurementBasis::y() {
  MeasurementBasis b;
  const std::complex<double> i(0.0, 1.0);
  b.observable << 0, -i, i, 0;
  const double s = 1.0 / std::sqrt(2.0);
  b.rotation << s, -i * s, s, i * s;
  b.label = "Y";
  return b;
}

MeasurementBasis MeasurementBasis::z() {
  MeasurementBasis b;
  b.observable << 1, 0, 0, -1;
  b.rotation = Eigen::Matrix2cd::Identity();
  b.label = "Z";
  return b;
}

MeasurementBasis MeasurementBasis::xy_plane(double phi) {
  MeasurementBasis b;
  const std::complex<double> e(std::cos(phi), std::sin(phi));
  b.observable << 0.0, std::conj(e), e, 0.0;
  const double s = 1.0 / std::sqrt(2.0);
  // Rows are the eigenbras of |±_phi> = (|0> ± e^{i phi} |1>)/sqrt(2).
  b.rotation << s, s * std::conj(e), s, -s * std::conj(e);
  b.label = fmt::format("XY({:.6g})", phi);
  return b;
}

MeasurementBasis MeasurementBasis::from_matrix(const Eigen::Matrix2cd& m, std::string label) {
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kUnitaryTol) {
    throw std::invalid_argument(
        fmt::format("MeasurementBasis: deviates from Hermitian by {:.3e}", herm_dev));
  }
  const double invol_dev = (m * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (invol_dev > kUnitaryTol) {
    throw std::invalid_argument(
        fmt::format("MeasurementBasis: squares to identity only within {:.3e}", invol_dev));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
  MeasurementBasis b;
  b.observable = m;
  // Eigenvalues come out ascending; row 0 must be the +1 eigenbra.
  b.rotation.row(0) = es.eigenvectors().col(1).adjoint();
  b.rotation.row(1) = es.eigenvectors().col(0).adjoint();
  b.label = std::move(label);
  return b;
}

QuantumState apply_single_qubit_gate(const QuantumState& state, int qubit,
                                     const Eigen::Matrix2cd& unitary) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range(
        fmt::format("apply_single_qubit_gate: qubit {} of {}", qubit, state.num_qubits()));
  }
  const double dev =
      (unitary * unitary.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) {
    throw std::invalid_argument(
        fmt::format("apply_single_qubit_gate: matrix deviates from unitary by {:.3e}", dev));
  }
  QuantumState out = state;
  StateOps::gate(out, qubit, unitary);
  return out;
}

QuantumState apply_cz(const QuantumState& state, int qubit_a, int qubit_b) {
  if (qubit_a == qubit_b || qubit_a < 0 || qubit_b < 0 || qubit_a >= state.num_qubits() ||
      qubit_b >= state.num_qubits()) {
    throw std::out_of_range(fmt::format("apply_cz: bad qubit pair ({}, {}) on {} qubits",
                                        qubit_a, qubit_b, state.num_qubits()));
  }
  QuantumState out = state;
  StateOps::cz(out, qubit_a, qubit_b);
  return out;
}

double zero_probability(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range(fmt::format("zero_probability: qubit {} of {}", qubit,
                                        state.num_qubits()));
  }
  return StateOps::prob_bit0(state, qubit);
}

namespace {

MeasurementResult measure_impl(const QuantumState& state, int qubit,
                               const MeasurementBasis& basis, int forced_outcome,
                               RngStream* rng) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range(
        fmt::format("measure_single_qubit: qubit {} of {}", qubit, state.num_qubits()));
  }
  QuantumState work = state;
  StateOps::gate(work, qubit, basis.rotation);
  const double p0 = StateOps::prob_bit0(work, qubit);
  int bit = 0;
  if (rng != nullptr) {
    bit = rng->uniform() < p0 ? 0 : 1;
  } else {
    bit = forced_outcome == +1 ? 0 : 1;
  }
  const double p = StateOps::project_z(work, qubit, bit);
  if (p < kBranchTol) {
    throw std::runtime_error(
        fmt::format("measurement: requested branch (outcome {}) has probability {:.3e}",
                    bit == 0 ? +1 : -1, p));
  }
  StateOps::gate(work, qubit, basis.rotation.adjoint());
  MeasurementResult r;
  r.outcome = bit == 0 ? +1 : -1;
  r.probability = p;
  r.post = std::move(work);
  return r;
}

}  // namespace

MeasurementResult measure_single_qubit(const QuantumState& state, int qubit,
                                       const MeasurementBasis& basis, RngStream& rng) {
  return measure_impl(state, qubit, basis, 0, &rng);
}

MeasurementResult project_single_qubit(const QuantumState& state, int qubit,
                                       const MeasurementBasis& basis, int outcome) {
  if (outcome != +1 && outcome != -1) {
    throw std::invalid_argument(fmt::format("project_single_qubit: outcome {} not ±1", outcome));
  }
  return measure_impl(state, qubit, basis, outcome, nullptr);
}

double expectation(const QuantumState& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument(fmt::format("expectation: {}-qubit string on {}-qubit state",
                                            p.num_qubits(), state.num_qubits()));
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument(
        fmt::format("expectation: {} is not Hermitian", p.to_text()));
  }
  const Eigen::Index dim = state.dim();
  const uint64_t flip = p.flip_mask();
  std::complex<double> acc = 0.0;
  if (state.is_pure()) {
    const auto& v = state.vector();
    for (Eigen::Index b = 0; b < dim; ++b) {
      acc += p.basis_coeff(static_cast<uint64_t>(b)) * v(b) *
             std::conj(v(static_cast<Eigen::Index>(static_cast<uint64_t>(b) ^ flip)));
    }
  } else {
    const Eigen::MatrixXcd& m = state.density_matrix();
    for (Eigen::Index b = 0; b < dim; ++b) {
      acc += p.basis_coeff(static_cast<uint64_t>(b)) *
             m(b, static_cast<Eigen::Index>(static_cast<uint64_t>(b) ^ flip));
    }
  }
  return acc.real();
}

double expectation(const QuantumState& state, const Eigen::MatrixXcd& observable) {
  if (observable.rows() != state.dim() || observable.cols() != state.dim()) {
    throw std::invalid_argument("expectation: observable dimension mismatch");
  }
  if (state.is_pure()) {
    const auto& v = state.vector();
    return (v.adjoint() * observable * v)(0, 0).real();
  }
  return (observable * state.density_matrix()).trace().real();
}

QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep) {
  const int n = state.num_qubits();
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.front() < 0 || sorted.back() >= n) {
    throw std::invalid_argument("partial_trace: keep set must be a nonempty subset of qubits");
  }
  const int k = static_cast<int>(sorted.size());
  if (k == n) {
    return state;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(sorted.begin(), sorted.end(), q)) {
      traced.push_back(q);
    }
  }
  const Eigen::Index kept_dim = Eigen::Index(1) << k;
  const Eigen::Index traced_dim = Eigen::Index(1) << (n - k);
  auto old_index = [&](Eigen::Index kept_idx, Eigen::Index traced_idx) {
    uint64_t idx = 0;
    for (int i = 0; i < k; ++i) {
      const uint64_t bit = (static_cast<uint64_t>(kept_idx) >> (k - 1 - i)) & 1u;
      idx |= bit << (n - 1 - sorted[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n - k; ++i) {
      const uint64_t bit = (static_cast<uint64_t>(traced_idx) >> (n - k - 1 - i)) & 1u;
      idx |= bit << (n - 1 - traced[static_cast<std::size_t>(i)]);
    }
    return static_cast<Eigen::Index>(idx);
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
  if (state.is_pure()) {
    const auto& v = state.vector();
    for (Eigen::Index t = 0; t < traced_dim; ++t) {
      for (Eigen::Index r = 0; r < kept_dim; ++r) {
        const std::complex<double> ar = v(old_index(r, t));
        if (ar == std::complex<double>(0.0, 0.0)) continue;
        for (Eigen::Index c = 0; c < kept_dim; ++c) {
          out(r, c) += ar * std::conj(v(old_index(c, t)));
        }
      }
    }
  } else {
    const auto& m = state.density_matrix();
    for (Eigen::Index t = 0; t < traced_dim; ++t) {
      for (Eigen::Index r = 0; r < kept_dim; ++r) {
        for (Eigen::Index c = 0; c < kept_dim; ++c) {
          out(r, c) += m(old_index(r, t), old_index(c, t));
        }
      }
    }
  }
  return StateOps::unchecked_mixed(k, std::move(out));
}

namespace {

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    vals(i) = vals(i) > kEigClamp ? std::sqrt(vals(i)) : 0.0;
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument(fmt::format("fidelity: {} vs {} qubits", a.num_qubits(),
                                            b.num_qubits()));
  }
  if (a.is_pure() && b.is_pure()) {
    return std::abs(a.vector().dot(b.vector()));
  }
  if (a.is_pure() || b.is_pure()) {
    const QuantumState& p = a.is_pure() ? a : b;
    const QuantumState& m = a.is_pure() ? b : a;
    const double overlap =
        (p.vector().adjoint() * m.density_matrix() * p.vector())(0, 0).real();
    return std::sqrt(std::max(0.0, overlap));
  }
  const Eigen::MatrixXcd sqrt_a = matrix_sqrt_psd(a.density_matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sqrt_a * b.density_matrix() * sqrt_a,
                                                     Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > kEigClamp) {
      f += std::sqrt(v);
    }
  }
  return clamp01(f);
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument(fmt::format("trace_distance: {} vs {} qubits", a.num_qubits(),
                                            b.num_qubits()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      a.density_matrix() - b.density_matrix(), Eigen::EigenvaluesOnly);
  return clamp01(0.5 * es.eigenvalues().cwiseAbs().sum());
}

}  // namespace sqmv
