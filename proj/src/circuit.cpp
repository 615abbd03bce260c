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

#include "sqmv/circuit.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sqmv {

Gate Gate::j(int qubit, double theta) {
  Gate g;
  g.kind = Kind::J;
  g.qubit = qubit;
  g.theta = theta;
  return g;
}

Gate Gate::cz(int a, int b) {
  Gate g;
  g.kind = Kind::CZ;
  g.qubit_a = a;
  g.qubit_b = b;
  return g;
}

Eigen::Matrix2cd j_matrix(double theta) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::complex<double> e(std::cos(theta), std::sin(theta));
  Eigen::Matrix2cd m;
  m << s, s * e, s, -s * e;
  return m;
}

void VerifierCircuit::validate() const {
  if (n_witness < 0 || m_ancilla < 0 || num_qubits() < 1) {
    throw std::invalid_argument("circuit: need at least one qubit");
  }
  const int total = num_qubits();
  for (const Gate& g : gates) {
    if (g.kind == Gate::Kind::J) {
      if (g.qubit < 0 || g.qubit >= total) {
        throw std::invalid_argument(fmt::format("circuit: J target {} out of range", g.qubit));
      }
      if (!std::isfinite(g.theta)) {
        throw std::invalid_argument("circuit: J angle is not finite");
      }
    } else {
      if (g.qubit_a < 0 || g.qubit_b < 0 || g.qubit_a >= total || g.qubit_b >= total ||
          g.qubit_a == g.qubit_b) {
        throw std::invalid_argument(fmt::format("circuit: bad CZ pair ({}, {})", g.qubit_a,
                                                g.qubit_b));
      }
    }
  }
  if (accept_qubit < 0 || accept_qubit >= total) {
    throw std::invalid_argument(fmt::format("circuit: accept qubit {} out of range",
                                            accept_qubit));
  }
  if (accept_value != 0 && accept_value != 1) {
    throw std::invalid_argument("circuit: accept_value must be a bit");
  }
}

nlohmann::json VerifierCircuit::to_json() const {
  nlohmann::json gs = nlohmann::json::array();
  for (const Gate& g : gates) {
    if (g.kind == Gate::Kind::J) {
      gs.push_back({{"g", "J"}, {"q", g.qubit}, {"theta", g.theta}});
    } else {
      gs.push_back({{"g", "CZ"}, {"q", {g.qubit_a, g.qubit_b}}});
    }
  }
  return {{"n_witness", n_witness}, {"m_ancilla", m_ancilla}, {"gates", std::move(gs)},
          {"accept_qubit", accept_qubit}, {"accept_value", accept_value}};
}

VerifierCircuit VerifierCircuit::from_json(const nlohmann::json& j) {
  VerifierCircuit c;
  c.n_witness = j.at("n_witness").get<int>();
  c.m_ancilla = j.at("m_ancilla").get<int>();
  c.accept_qubit = j.at("accept_qubit").get<int>();
  c.accept_value = j.value("accept_value", 1);
  for (const auto& g : j.at("gates")) {
    const std::string kind = g.at("g").get<std::string>();
    if (kind == "J") {
      c.gates.push_back(Gate::j(g.at("q").get<int>(), g.at("theta").get<double>()));
    } else if (kind == "CZ") {
      const auto& pair = g.at("q");
      c.gates.push_back(Gate::cz(pair.at(0).get<int>(), pair.at(1).get<int>()));
    } else {
      throw std::invalid_argument(fmt::format("circuit: unsupported gate '{}'", kind));
    }
  }
  c.validate();
  return c;
}

VerifierCircuit VerifierCircuit::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument(fmt::format("circuit: cannot open '{}'", path));
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("circuit: parse error in '{}': {}", path, e.what()));
  }
  return from_json(j);
}

void VerifierCircuit::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument(fmt::format("circuit: cannot write '{}'", path));
  }
  out << to_json().dump(2) << "\n";
}

void VerifierCircuit::add_h(int qubit) { gates.push_back(Gate::j(qubit, 0.0)); }

void VerifierCircuit::add_rz(int qubit, double theta) {
  // H H Rz(theta) = Rz(theta)
  gates.push_back(Gate::j(qubit, theta));
  gates.push_back(Gate::j(qubit, 0.0));
}

QuantumState simulate_circuit(const VerifierCircuit& c, const QuantumState* witness) {
  c.validate();
  if (c.n_witness == 0) {
    if (witness != nullptr) {
      throw std::invalid_argument("simulate_circuit: witness supplied but n_witness == 0");
    }
  } else if (witness == nullptr || witness->num_qubits() != c.n_witness) {
    throw std::invalid_argument(fmt::format("simulate_circuit: witness on {} qubits required",
                                            c.n_witness));
  }

  const int total = c.num_qubits();
  const Eigen::Index dim = Eigen::Index(1) << total;
  const Eigen::Index anc_dim = Eigen::Index(1) << c.m_ancilla;
  const double anc_amp = 1.0 / std::sqrt(static_cast<double>(anc_dim));

  QuantumState state;
  if (c.n_witness == 0) {
    state = QuantumState::plus_state(total);
  } else if (witness->is_pure()) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      v(idx) = witness->vector()(idx >> c.m_ancilla) * anc_amp;
    }
    state = QuantumState::pure(std::move(v));
  } else {
    const Eigen::MatrixXcd& w = witness->density_matrix();
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index cc = 0; cc < dim; ++cc) {
        m(r, cc) = w(r >> c.m_ancilla, cc >> c.m_ancilla) * (anc_amp * anc_amp);
      }
    }
    state = QuantumState::mixed(std::move(m));
  }

  for (const Gate& g : c.gates) {
    if (g.kind == Gate::Kind::J) {
      state = apply_single_qubit_gate(state, g.qubit, j_matrix(g.theta));
    } else {
      state = apply_cz(state, g.qubit_a, g.qubit_b);
    }
  }
  return state;
}

double circuit_accept_probability(const VerifierCircuit& c, const QuantumState* witness) {
  const QuantumState out = simulate_circuit(c, witness);
  const double p0 = zero_probability(out, c.accept_qubit);
  return c.accept_value == 0 ? p0 : 1.0 - p0;
}

Eigen::MatrixXcd witness_accept_operator(const VerifierCircuit& c) {
  c.validate();
  if (c.n_witness == 0) {
    Eigen::MatrixXcd e(1, 1);
    e(0, 0) = circuit_accept_probability(c, nullptr);
    return e;
  }
  const Eigen::Index wit_dim = Eigen::Index(1) << c.n_witness;
  const Eigen::Index dim = Eigen::Index(1) << c.num_qubits();
  const Eigen::Index accept_stride = Eigen::Index(1) << (c.num_qubits() - 1 - c.accept_qubit);

  std::vector<Eigen::VectorXcd> columns;
  columns.reserve(static_cast<std::size_t>(wit_dim));
  for (Eigen::Index b = 0; b < wit_dim; ++b) {
    const QuantumState witness = QuantumState::basis_state(c.n_witness, static_cast<uint64_t>(b));
    columns.push_back(simulate_circuit(c, &witness).vector());
  }
  Eigen::MatrixXcd e(wit_dim, wit_dim);
  for (Eigen::Index r = 0; r < wit_dim; ++r) {
    for (Eigen::Index cc = 0; cc < wit_dim; ++cc) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index idx = 0; idx < dim; ++idx) {
        const bool bit_one = (idx & accept_stride) != 0;
        if (bit_one == (c.accept_value == 1)) {
          acc += std::conj(columns[static_cast<std::size_t>(r)](idx)) *
                 columns[static_cast<std::size_t>(cc)](idx);
        }
      }
      e(r, cc) = acc;
    }
  }
  return e;
}

}  // namespace sqmv
