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

#include "sqmv/localham.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sqmv {

namespace {

constexpr int kMaxDenseQubits = 12;
constexpr int kMaxMatrixLocality = 6;
constexpr double kHermTol = 1e-10;
constexpr double kDropTol = 1e-12;

PauliOp letter_from_char(char c) {
  switch (c) {
    case 'I':
      return PauliOp::I;
    case 'X':
      return PauliOp::X;
    case 'Y':
      return PauliOp::Y;
    case 'Z':
      return PauliOp::Z;
    default:
      throw std::invalid_argument(fmt::format("hamiltonian: bad Pauli letter '{}'", c));
  }
}

// Expands one term into embedded phase-free Pauli strings.
std::vector<WeightedPauliTerm> term_paulis(const LocalHamiltonian& h,
                                           const LocalHamiltonian::Term& term) {
  if (std::holds_alternative<Eigen::MatrixXcd>(term.op)) {
    return decompose(std::get<Eigen::MatrixXcd>(term.op), term.support, h.n);
  }
  std::vector<WeightedPauliTerm> out;
  for (const LocalPauli& lp : std::get<std::vector<LocalPauli>>(term.op)) {
    if (lp.letters.size() != term.support.size()) {
      throw std::invalid_argument(
          fmt::format("hamiltonian: Pauli word '{}' does not match support size {}",
                      lp.letters, term.support.size()));
    }
    if (!std::isfinite(lp.coeff)) {
      throw std::invalid_argument("hamiltonian: non-finite coefficient");
    }
    PauliString s(h.n);
    for (std::size_t i = 0; i < lp.letters.size(); ++i) {
      s.set_op(term.support[i], letter_from_char(lp.letters[i]));
    }
    out.push_back({s, lp.coeff});
  }
  return out;
}

}  // namespace

void LocalHamiltonian::validate() const {
  if (n < 1 || n > 64) {
    throw std::invalid_argument(fmt::format("hamiltonian: {} qubits out of range", n));
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument(fmt::format("hamiltonian: locality k = {} out of range", k));
  }
  for (const Term& t : terms) {
    if (t.support.empty() || static_cast<int>(t.support.size()) > k) {
      throw std::invalid_argument(
          fmt::format("hamiltonian: term support size {} violates locality {}",
                      t.support.size(), k));
    }
    std::set<int> uniq(t.support.begin(), t.support.end());
    if (uniq.size() != t.support.size()) {
      throw std::invalid_argument("hamiltonian: duplicate qubit in term support");
    }
    for (int q : t.support) {
      if (q < 0 || q >= n) {
        throw std::invalid_argument(fmt::format("hamiltonian: support qubit {} outside [0, {})",
                                                q, n));
      }
    }
    if (std::holds_alternative<Eigen::MatrixXcd>(t.op)) {
      if (static_cast<int>(t.support.size()) > kMaxMatrixLocality) {
        throw std::invalid_argument(
            fmt::format("hamiltonian: matrix terms capped at {} qubits", kMaxMatrixLocality));
      }
      const auto& m = std::get<Eigen::MatrixXcd>(t.op);
      const Eigen::Index dim = Eigen::Index(1) << t.support.size();
      if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument(fmt::format("hamiltonian: term matrix is {}x{}, expected {}",
                                                m.rows(), m.cols(), dim));
      }
      const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
      if (dev > kHermTol) {
        throw std::invalid_argument(
            fmt::format("hamiltonian: term deviates from Hermitian by {:.3e}", dev));
      }
    }
  }
}

Eigen::MatrixXcd LocalHamiltonian::to_dense() const {
  validate();
  if (n > kMaxDenseQubits) {
    throw std::invalid_argument(fmt::format("hamiltonian: dense form capped at {} qubits",
                                            kMaxDenseQubits));
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Term& t : terms) {
    for (const WeightedPauliTerm& wt : term_paulis(*this, t)) {
      acc += wt.coeff * wt.string.to_dense();
    }
  }
  return acc;
}

nlohmann::json LocalHamiltonian::to_json() const {
  nlohmann::json ts = nlohmann::json::array();
  for (const Term& t : terms) {
    nlohmann::json jt{{"support", t.support}};
    if (std::holds_alternative<Eigen::MatrixXcd>(t.op)) {
      const auto& m = std::get<Eigen::MatrixXcd>(t.op);
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
      }
      jt["matrix"] = std::move(rows);
    } else {
      nlohmann::json ps = nlohmann::json::array();
      for (const LocalPauli& lp : std::get<std::vector<LocalPauli>>(t.op)) {
        ps.push_back({{"string", lp.letters}, {"coeff", lp.coeff}});
      }
      jt["pauli"] = std::move(ps);
    }
    ts.push_back(std::move(jt));
  }
  return {{"n", n}, {"k", k}, {"terms", std::move(ts)}};
}

LocalHamiltonian LocalHamiltonian::from_json(const nlohmann::json& j) {
  LocalHamiltonian h;
  h.n = j.at("n").get<int>();
  h.k = j.at("k").get<int>();
  for (const auto& jt : j.at("terms")) {
    Term t;
    t.support = jt.at("support").get<std::vector<int>>();
    if (jt.contains("matrix")) {
      const auto& rows = jt.at("matrix");
      const Eigen::Index dim = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXcd m(dim, dim);
      for (Eigen::Index r = 0; r < dim; ++r) {
        const auto& row = rows.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != dim) {
          throw std::invalid_argument("hamiltonian: ragged term matrix");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
          const auto& cell = row.at(static_cast<std::size_t>(c));
          m(r, c) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
      }
      t.op = std::move(m);
    } else if (jt.contains("pauli")) {
      std::vector<LocalPauli> ps;
      for (const auto& jp : jt.at("pauli")) {
        ps.push_back({jp.at("string").get<std::string>(), jp.at("coeff").get<double>()});
      }
      t.op = std::move(ps);
    } else {
      throw std::invalid_argument("hamiltonian: term needs either 'matrix' or 'pauli'");
    }
    h.terms.push_back(std::move(t));
  }
  h.validate();
  return h;
}

LocalHamiltonian LocalHamiltonian::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument(fmt::format("hamiltonian: cannot open '{}'", path));
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("hamiltonian: parse error in '{}': {}", path,
                                            e.what()));
  }
  return from_json(j);
}

void LocalHamiltonian::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument(fmt::format("hamiltonian: cannot write '{}'", path));
  }
  out << to_json().dump(2) << "\n";
}

LocalHamiltonian single_term_hamiltonian(int n, const std::string& pauli_text, double coeff) {
  const PauliString s = PauliString::from_text(pauli_text);
  if (s.num_qubits() != n) {
    throw std::invalid_argument(fmt::format("single_term_hamiltonian: '{}' is not on {} qubits",
                                            pauli_text, n));
  }
  LocalHamiltonian h;
  h.n = n;
  std::vector<int> sup = s.support();
  if (sup.empty()) {
    sup.push_back(0);  // identity term: park it on qubit 0
  }
  h.k = static_cast<int>(sup.size());
  std::string letters;
  for (int q : sup) {
    letters += pauli_char(s.op(q));
  }
  h.terms.push_back({sup, std::vector<LocalPauli>{{letters, coeff * s.sign()}}});
  h.validate();
  return h;
}

LocalHamiltonian tfim_chain(int sites, double g) {
  if (sites < 2) {
    throw std::invalid_argument("tfim_chain: need at least 2 sites");
  }
  LocalHamiltonian h;
  h.n = sites;
  h.k = 2;
  for (int i = 0; i + 1 < sites; ++i) {
    h.terms.push_back({{i, i + 1}, std::vector<LocalPauli>{{"ZZ", -1.0}}});
  }
  for (int i = 0; i < sites; ++i) {
    h.terms.push_back({{i}, std::vector<LocalPauli>{{"X", -g}}});
  }
  h.validate();
  return h;
}

LocalHamiltonian heisenberg_chain(int sites) {
  if (sites < 2) {
    throw std::invalid_argument("heisenberg_chain: need at least 2 sites");
  }
  LocalHamiltonian h;
  h.n = sites;
  h.k = 2;
  for (int i = 0; i + 1 < sites; ++i) {
    h.terms.push_back({{i, i + 1},
                       std::vector<LocalPauli>{{"XX", 1.0}, {"YY", 1.0}, {"ZZ", 1.0}}});
  }
  h.validate();
  return h;
}

LocalHamiltonian builtin_hamiltonian(const std::string& name) {
  if (name == "zz") return single_term_hamiltonian(2, "ZZ", 1.0);
  if (name == "x+zz") {
    LocalHamiltonian h;
    h.n = 2;
    h.k = 2;
    h.terms.push_back({{0}, std::vector<LocalPauli>{{"X", 1.0}}});
    h.terms.push_back({{0, 1}, std::vector<LocalPauli>{{"ZZ", 1.0}}});
    h.validate();
    return h;
  }
  if (name == "tfim4") return tfim_chain(4, 1.0);
  if (name == "heisenberg4") return heisenberg_chain(4);
  throw std::invalid_argument(
      fmt::format("unknown builtin hamiltonian '{}' (have: zz, x+zz, tfim4, heisenberg4)",
                  name));
}

Eigen::MatrixXcd PauliEnsemble::reconstruct_dense() const {
  if (num_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("ensemble: dense reconstruction capped at 12 qubits");
  }
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Entry& e : entries) {
    acc += e.d * e.string.to_dense();
  }
  return acc;
}

PauliEnsemble assemble_ensemble(const LocalHamiltonian& h) {
  h.validate();
  // Merge c_S^m across terms, keyed by the (x, z) masks; all strings are
  // phase +1 so the masks identify them.
  std::map<std::pair<uint64_t, uint64_t>, double> merged;
  for (const LocalHamiltonian::Term& t : h.terms) {
    for (const WeightedPauliTerm& wt : term_paulis(h, t)) {
      if (!wt.string.is_hermitian()) {
        throw std::logic_error("assemble_ensemble: non-Hermitian contribution");
      }
      merged[{wt.string.x_bits(), wt.string.z_bits()}] += wt.coeff * wt.string.sign();
    }
  }
  PauliEnsemble ens;
  ens.num_qubits = h.n;
  for (const auto& [masks, d] : merged) {
    if (std::abs(d) < kDropTol) {
      continue;  // cancelled across terms
    }
    PauliString s(h.n);
    for (int q = 0; q < h.n; ++q) {
      const uint64_t x = (masks.first >> q) & 1u;
      const uint64_t z = (masks.second >> q) & 1u;
      s.set_op(q, static_cast<PauliOp>(x | (z << 1)));
    }
    ens.entries.push_back({s, d});
    ens.total_weight += std::abs(d);
  }
  if (ens.entries.empty()) {
    throw std::invalid_argument("assemble_ensemble: Hamiltonian is identically zero");
  }
  for (const auto& e : ens.entries) {
    ens.pi.push_back(std::abs(e.d) / ens.total_weight);
  }
  return ens;
}

std::size_t sample_term(const PauliEnsemble& ensemble, RngStream& rng) {
  if (ensemble.entries.empty()) {
    throw std::invalid_argument("sample_term: empty ensemble");
  }
  return rng.sample_discrete(ensemble.pi);
}

int measure_term(const QuantumState& state, const PauliEnsemble::Entry& entry, RngStream& rng) {
  if (state.num_qubits() != entry.string.num_qubits()) {
    throw std::invalid_argument(fmt::format("measure_term: state on {} qubits, term on {}",
                                            state.num_qubits(), entry.string.num_qubits()));
  }
  QuantumState work = state;
  int product = 1;
  for (int q = 0; q < state.num_qubits(); ++q) {
    const PauliOp letter = entry.string.op(q);
    MeasurementBasis basis = MeasurementBasis::z();
    switch (letter) {
      case PauliOp::I:
        // Consumed one-by-one like every other qubit; value discarded.
        work = measure_single_qubit(work, q, basis, rng).post;
        continue;
      case PauliOp::X:
        basis = MeasurementBasis::x();
        break;
      case PauliOp::Y:
        basis = MeasurementBasis::y();
        break;
      case PauliOp::Z:
        break;
    }
    const MeasurementResult res = measure_single_qubit(work, q, basis, rng);
    product *= res.outcome;
    work = res.post;
  }
  const double sign = entry.d >= 0.0 ? 1.0 : -1.0;
  return (1 + static_cast<int>(sign) * product) / 2;
}

bool verify_once(const QuantumState& state, const PauliEnsemble& ensemble, RngStream& rng) {
  const std::size_t idx = sample_term(ensemble, rng);
  return measure_term(state, ensemble.entries[idx], rng) == 0;
}

double ensemble_energy(const QuantumState& state, const PauliEnsemble& ensemble) {
  double energy = 0.0;
  for (const auto& e : ensemble.entries) {
    energy += e.d * expectation(state, e.string);
  }
  return energy;
}

double exact_acceptance(const QuantumState& state, const PauliEnsemble& ensemble) {
  const double w = ensemble.total_weight;
  if (w <= 0.0) {
    throw std::invalid_argument("exact_acceptance: empty ensemble");
  }
  return 1.0 - (ensemble_energy(state, ensemble) + w) / (2.0 * w);
}

EnergyEstimate estimate_energy(const std::function<QuantumState()>& source,
                               const PauliEnsemble& ensemble, long shots, RngStream& rng) {
  if (shots < 1) {
    throw std::invalid_argument("estimate_energy: need at least one shot");
  }
  const double w = ensemble.total_weight;
  double sum_r = 0.0;
  double sum_r2 = 0.0;
  for (long i = 0; i < shots; ++i) {
    RngStream shot_rng = rng.child(static_cast<uint64_t>(i));
    const QuantumState state = source();
    const std::size_t idx = sample_term(ensemble, shot_rng);
    const int r = measure_term(state, ensemble.entries[idx], shot_rng);
    sum_r += r;
    sum_r2 += r * r;
  }
  const double mean = sum_r / static_cast<double>(shots);
  EnergyEstimate est;
  est.shots = shots;
  est.estimate = 2.0 * w * mean - w;
  if (shots > 1) {
    const double var = std::max(0.0, (sum_r2 - shots * mean * mean) /
                                         static_cast<double>(shots - 1));
    est.std_error = 2.0 * w * std::sqrt(var / static_cast<double>(shots));
  }
  return est;
}

GroundState ground_energy_exact(const LocalHamiltonian& h) {
  const Eigen::MatrixXcd dense = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  GroundState g;
  g.energy = es.eigenvalues()(0);
  Eigen::VectorXcd vec = es.eigenvectors().col(0);
  vec.normalize();
  g.state = QuantumState::pure(std::move(vec));
  return g;
}

void EnergyPromise::validate() const {
  if (!(e_b - e_a > 0.0)) {
    throw std::invalid_argument(fmt::format("promise: E_b - E_a = {} must be positive",
                                            e_b - e_a));
  }
}

double lh_gap(const PauliEnsemble& ensemble, const EnergyPromise& promise) {
  promise.validate();
  if (ensemble.total_weight <= 0.0) {
    throw std::invalid_argument("lh_gap: empty ensemble");
  }
  return (promise.e_b - promise.e_a) / (2.0 * ensemble.total_weight);
}

}  // namespace sqmv
