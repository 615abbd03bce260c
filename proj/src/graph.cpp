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

#include "sqmv/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sqmv {

namespace {

constexpr double kTinyWeight = 1e-12;

std::pair<int, int> normalized_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Unnormalized |+><+| projection of one qubit, in place.
void project_plus_vec(Eigen::VectorXcd& v, int n, int qubit) {
  const Eigen::Index stride = Eigen::Index(1) << (n - 1 - qubit);
  for (Eigen::Index base = 0; base < v.size(); ++base) {
    if (base & stride) continue;
    const std::complex<double> avg = 0.5 * (v(base) + v(base | stride));
    v(base) = avg;
    v(base | stride) = avg;
  }
}

void project_plus_mat(Eigen::MatrixXcd& m, int n, int qubit) {
  const Eigen::Index stride = Eigen::Index(1) << (n - 1 - qubit);
  const Eigen::Index dim = m.rows();
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & stride) continue;
      const std::complex<double> avg = 0.5 * (m(base, col) + m(base | stride, col));
      m(base, col) = avg;
      m(base | stride, col) = avg;
    }
  }
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & stride) continue;
      const std::complex<double> avg = 0.5 * (m(row, base) + m(row, base | stride));
      m(row, base) = avg;
      m(row, base | stride) = avg;
    }
  }
}

}  // namespace

bool VerificationGraph::in_v1(int v) const {
  return std::binary_search(v1.begin(), v1.end(), v);
}

bool VerificationGraph::in_v2(int v) const {
  return std::binary_search(v2.begin(), v2.end(), v);
}

std::vector<int> VerificationGraph::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void VerificationGraph::validate() const {
  if (v1.empty()) {
    throw std::invalid_argument("graph: V1 must be nonempty");
  }
  if (!std::is_sorted(v1.begin(), v1.end()) || !std::is_sorted(v2.begin(), v2.end())) {
    throw std::invalid_argument("graph: v1 and v2 must be listed in ascending order");
  }
  std::vector<int> all;
  all.reserve(v1.size() + v2.size());
  all.insert(all.end(), v1.begin(), v1.end());
  all.insert(all.end(), v2.begin(), v2.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) {
    if (all[static_cast<std::size_t>(i)] != i) {
      throw std::invalid_argument(
          fmt::format("graph: vertex ids must be exactly 0..{} (v1 and v2 disjoint); problem "
                      "near id {}",
                      all.size() - 1, all[static_cast<std::size_t>(i)]));
    }
  }
  const int total = num_vertices();
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= total || b >= total) {
      throw std::invalid_argument(fmt::format("graph: edge ({}, {}) references a missing vertex",
                                              a, b));
    }
    if (a == b) {
      throw std::invalid_argument(fmt::format("graph: self-loop at vertex {}", a));
    }
    if (!seen.insert(normalized_edge(a, b)).second) {
      throw std::invalid_argument(fmt::format("graph: duplicate edge ({}, {})", a, b));
    }
    if (in_v2(a) && in_v2(b) && !allow_witness_edges) {
      throw std::invalid_argument(
          fmt::format("graph: edge ({}, {}) lies inside V2; set allow_witness_edges to permit",
                      a, b));
    }
  }
  if (arrival_order.size() != static_cast<std::size_t>(total)) {
    throw std::invalid_argument(fmt::format("graph: arrival_order has {} entries for {} vertices",
                                            arrival_order.size(), total));
  }
  std::vector<int> order = arrival_order;
  std::sort(order.begin(), order.end());
  for (int i = 0; i < total; ++i) {
    if (order[static_cast<std::size_t>(i)] != i) {
      throw std::invalid_argument("graph: arrival_order is not a permutation of the vertices");
    }
  }
}

nlohmann::json VerificationGraph::to_json() const {
  nlohmann::json e = nlohmann::json::array();
  for (const auto& [a, b] : edges) {
    e.push_back({a, b});
  }
  nlohmann::json j{{"v1", v1}, {"v2", v2}, {"edges", std::move(e)},
                   {"arrival_order", arrival_order}};
  if (allow_witness_edges) {
    j["allow_witness_edges"] = true;
  }
  return j;
}

VerificationGraph VerificationGraph::from_json(const nlohmann::json& j) {
  VerificationGraph g;
  g.v1 = j.at("v1").get<std::vector<int>>();
  g.v2 = j.value("v2", std::vector<int>{});
  std::sort(g.v1.begin(), g.v1.end());
  std::sort(g.v2.begin(), g.v2.end());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("graph: each edge must be a pair [a, b]");
    }
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  if (j.contains("arrival_order")) {
    g.arrival_order = j.at("arrival_order").get<std::vector<int>>();
  } else {
    g.arrival_order.resize(static_cast<std::size_t>(g.num_vertices()));
    for (int i = 0; i < g.num_vertices(); ++i) g.arrival_order[static_cast<std::size_t>(i)] = i;
  }
  g.allow_witness_edges = j.value("allow_witness_edges", false);
  g.validate();
  return g;
}

VerificationGraph VerificationGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument(fmt::format("graph: cannot open '{}'", path));
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("graph: parse error in '{}': {}", path, e.what()));
  }
  return from_json(j);
}

void VerificationGraph::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument(fmt::format("graph: cannot write '{}'", path));
  }
  out << to_json().dump(2) << "\n";
}

namespace {

VerificationGraph with_default_order(VerificationGraph g) {
  g.arrival_order.resize(static_cast<std::size_t>(g.num_vertices()));
  for (int i = 0; i < g.num_vertices(); ++i) g.arrival_order[static_cast<std::size_t>(i)] = i;
  g.validate();
  return g;
}

}  // namespace

VerificationGraph path_graph(int n) {
  VerificationGraph g;
  for (int i = 0; i < n; ++i) g.v1.push_back(i);
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return with_default_order(std::move(g));
}

VerificationGraph cycle_graph(int n) {
  if (n < 3) {
    throw std::invalid_argument("cycle_graph: need at least 3 vertices");
  }
  VerificationGraph g = path_graph(n);
  g.edges.emplace_back(0, n - 1);
  return with_default_order(std::move(g));
}

VerificationGraph grid_graph(int rows, int cols) {
  VerificationGraph g;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      g.v1.push_back(id(r, c));
      if (c + 1 < cols) g.edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  std::sort(g.v1.begin(), g.v1.end());
  return with_default_order(std::move(g));
}

VerificationGraph star_graph(int n) {
  VerificationGraph g;
  for (int i = 0; i < n; ++i) g.v1.push_back(i);
  for (int i = 1; i < n; ++i) g.edges.emplace_back(0, i);
  return with_default_order(std::move(g));
}

VerificationGraph fig1_graph(int rows, int cols, int witnesses) {
  if (witnesses > rows) {
    throw std::invalid_argument("fig1_graph: at most one witness per grid row");
  }
  VerificationGraph g = grid_graph(rows, cols);
  const int base = rows * cols;
  for (int w = 0; w < witnesses; ++w) {
    g.v2.push_back(base + w);
    g.edges.emplace_back(base + w, w * cols);  // attach to first column, row w
  }
  return with_default_order(std::move(g));
}

VerificationGraph builtin_graph(const std::string& name) {
  if (name == "path4") return path_graph(4);
  if (name == "cycle4") return cycle_graph(4);
  if (name == "grid2x3") return grid_graph(2, 3);
  if (name == "fig1") return fig1_graph(2, 3, 2);
  if (name == "star5") return star_graph(5);
  throw std::invalid_argument(fmt::format(
      "unknown builtin graph '{}' (have: path4, cycle4, grid2x3, fig1, star5)", name));
}

QuantumState graph_state(const VerificationGraph& g) {
  g.validate();
  const int n = g.resource_size();
  QuantumState state = QuantumState::plus_state(n);
  auto index_of = [&](int vertex) {
    return static_cast<int>(std::lower_bound(g.v1.begin(), g.v1.end(), vertex) - g.v1.begin());
  };
  for (const auto& [a, b] : g.edges) {
    if (g.in_v1(a) && g.in_v1(b)) {
      state = apply_cz(state, index_of(a), index_of(b));
    }
  }
  return state;
}

QuantumState honest_state(const VerificationGraph& g, const QuantumState* witness) {
  g.validate();
  const int total = g.num_vertices();
  const int n2 = static_cast<int>(g.v2.size());
  if (n2 == 0) {
    if (witness != nullptr) {
      throw std::invalid_argument("honest_state: witness supplied but V2 is empty");
    }
  } else {
    if (witness == nullptr || witness->num_qubits() != n2) {
      throw std::invalid_argument(fmt::format("honest_state: witness on {} qubits required",
                                              n2));
    }
  }

  const Eigen::Index dim = Eigen::Index(1) << total;
  const double plus_amp = std::pow(std::sqrt(0.5), g.resource_size());
  // Witness qubit i occupies vertex v2[i] (ascending ids).
  auto witness_sub_index = [&](Eigen::Index full) {
    uint64_t sub = 0;
    for (int i = 0; i < n2; ++i) {
      const uint64_t bit =
          (static_cast<uint64_t>(full) >> (total - 1 - g.v2[static_cast<std::size_t>(i)])) & 1u;
      sub |= bit << (n2 - 1 - i);
    }
    return static_cast<Eigen::Index>(sub);
  };

  QuantumState state;
  if (n2 == 0 || witness->is_pure()) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const std::complex<double> w_amp =
          n2 == 0 ? std::complex<double>(1.0, 0.0) : witness->vector()(witness_sub_index(idx));
      v(idx) = plus_amp * w_amp;
    }
    state = QuantumState::pure(std::move(v));
  } else {
    const Eigen::MatrixXcd& w = witness->density_matrix();
    Eigen::MatrixXcd m(dim, dim);
    const double plus_weight = plus_amp * plus_amp;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        m(r, c) = plus_weight * w(witness_sub_index(r), witness_sub_index(c));
      }
    }
    state = QuantumState::mixed(std::move(m));
  }
  for (const auto& [a, b] : g.edges) {
    state = apply_cz(state, a, b);
  }
  return state;
}

PauliString stabilizer_generator(const VerificationGraph& g, int j) {
  if (!g.in_v1(j)) {
    throw std::invalid_argument(fmt::format("stabilizer_generator: vertex {} is not in V1", j));
  }
  PauliString p(g.num_vertices());
  p.set_op(j, PauliOp::X);
  for (int nb : g.neighbors(j)) {
    p.set_op(nb, PauliOp::Z);
  }
  return p;
}

PauliString stabilizer_product(const VerificationGraph& g, const std::vector<int>& k_bits) {
  if (k_bits.size() != g.v1.size()) {
    throw std::invalid_argument(fmt::format("stabilizer_product: k has {} bits for N = {}",
                                            k_bits.size(), g.v1.size()));
  }
  PauliString s = PauliString::identity(g.num_vertices());
  for (std::size_t i = 0; i < k_bits.size(); ++i) {
    if (k_bits[i] != 0) {
      s = multiply(s, stabilizer_generator(g, g.v1[i]));
    }
  }
  if (!s.is_hermitian()) {
    throw std::logic_error(fmt::format("stabilizer_product: non-Hermitian product {}",
                                       s.to_text()));
  }
  return s;
}

double exact_pass_probability(const VerificationGraph& g, const QuantumState& state) {
  if (state.num_qubits() != g.num_vertices()) {
    throw std::invalid_argument(fmt::format("exact_pass_probability: state on {} qubits, graph "
                                            "has {} vertices",
                                            state.num_qubits(), g.num_vertices()));
  }
  QuantumState conj = state;
  for (const auto& [a, b] : g.edges) {
    conj = apply_cz(conj, a, b);
  }
  const int total = g.num_vertices();
  double overlap = 0.0;
  if (conj.is_pure()) {
    Eigen::VectorXcd v = conj.vector();
    for (int vtx : g.v1) {
      project_plus_vec(v, total, vtx);
    }
    overlap = v.squaredNorm();
  } else {
    Eigen::MatrixXcd m = conj.density_matrix();
    for (int vtx : g.v1) {
      project_plus_mat(m, total, vtx);
    }
    overlap = m.trace().real();
  }
  overlap = std::min(1.0, std::max(0.0, overlap));
  return 0.5 * (1.0 + overlap);
}

double exact_pass_probability_enumerated(const VerificationGraph& g, const QuantumState& state) {
  const int n = g.resource_size();
  if (n > 16) {
    throw std::invalid_argument(
        fmt::format("exact_pass_probability_enumerated: 2^{} strings is too many", n));
  }
  const uint64_t count = 1ULL << n;
  double acc = 0.0;
  for (uint64_t k = 0; k < count; ++k) {
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      bits[static_cast<std::size_t>(i)] = static_cast<int>((k >> i) & 1u);
    }
    acc += 0.5 * (1.0 + expectation(state, stabilizer_product(g, bits)));
  }
  return acc / static_cast<double>(count);
}

StabilizerTestRecord run_stabilizer_test(const VerificationGraph& g, const QuantumState& state,
                                         RngStream& rng) {
  if (state.num_qubits() != g.num_vertices()) {
    throw std::invalid_argument(fmt::format("run_stabilizer_test: state on {} qubits, graph has "
                                            "{} vertices",
                                            state.num_qubits(), g.num_vertices()));
  }
  StabilizerTestRecord rec;
  rec.k_bits.resize(g.v1.size());
  for (auto& bit : rec.k_bits) {
    bit = rng.bit();
  }
  const PauliString s = stabilizer_product(g, rec.k_bits);
  rec.product_sign = static_cast<int>(s.sign());

  QuantumState work = state;
  int outcome_product = 1;
  for (int vtx : g.arrival_order) {
    const PauliOp letter = s.op(vtx);
    if (letter == PauliOp::I) {
      // The qubit still arrives and is consumed; measure Z, discard.
      rec.per_qubit_bases[vtx] = TestBasis::Skip;
      work = measure_single_qubit(work, vtx, MeasurementBasis::z(), rng).post;
      continue;
    }
    MeasurementBasis basis = MeasurementBasis::z();
    TestBasis tb = TestBasis::Z;
    if (letter == PauliOp::X) {
      basis = MeasurementBasis::x();
      tb = TestBasis::X;
    } else if (letter == PauliOp::Y) {
      basis = MeasurementBasis::y();
      tb = TestBasis::Y;
    }
    const MeasurementResult res = measure_single_qubit(work, vtx, basis, rng);
    rec.per_qubit_bases[vtx] = tb;
    rec.outcomes[vtx] = res.outcome;
    outcome_product *= res.outcome;
    work = res.post;
  }
  rec.passed = rec.product_sign * outcome_product == +1;
  return rec;
}

HonestStateBound closest_honest_state_bound(const VerificationGraph& g,
                                            const QuantumState& state) {
  HonestStateBound out;
  const double p_pass = exact_pass_probability(g, state);
  out.epsilon = std::max(0.0, 1.0 - p_pass);
  out.bound = std::sqrt(2.0 * out.epsilon);

  if (g.v2.empty()) {
    out.closest = honest_state(g, nullptr);
  } else {
    // Conditional state on V2 after projecting V1 of W rho W onto |+>^N;
    // this witness attains the fidelity maximum.
    QuantumState conj = state.promoted();
    for (const auto& [a, b] : g.edges) {
      conj = apply_cz(conj, a, b);
    }
    Eigen::MatrixXcd m = conj.density_matrix();
    for (int vtx : g.v1) {
      project_plus_mat(m, g.num_vertices(), vtx);
    }
    const double t = m.trace().real();
    QuantumState witness;
    if (t < kTinyWeight) {
      witness = QuantumState::maximally_mixed(static_cast<int>(g.v2.size()));
    } else {
      witness = partial_trace(QuantumState::mixed(m / t), g.v2);
    }
    out.closest = honest_state(g, &witness);
  }
  out.distance = trace_distance(out.closest, state);
  return out;
}

}  // namespace sqmv
