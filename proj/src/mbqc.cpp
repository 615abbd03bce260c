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

#include "sqmv/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sqmv {

namespace {

constexpr int kMaxLogicalQubits = 3;
constexpr int kMaxPatternVertices = 12;
constexpr int kMaxOperatorVertices = 10;

// XOR-merge of sorted parity sets (symmetric difference).
std::vector<int> xor_sets(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

int parity_of(const std::vector<int>& deps, const std::map<int, int>& bits) {
  int p = 0;
  for (int v : deps) {
    p ^= bits.at(v);
  }
  return p;
}

// a (x) b with `a` the more significant factor.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::Matrix2cd& b) {
  Eigen::MatrixXcd out(a.rows() * 2, a.cols() * 2);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * 2, c * 2, 2, 2) = a(r, c) * b;
    }
  }
  return out;
}

const Eigen::Matrix2cd kPauliX = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
const Eigen::Matrix2cd kPauliZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();

}  // namespace

void MeasurementPattern::validate() const {
  graph.validate();
  const int total = graph.num_vertices();
  std::set<int> seen;
  for (const auto& m : sequence) {
    if (m.vertex < 0 || m.vertex >= total) {
      throw std::invalid_argument(fmt::format("pattern: measured vertex {} out of range",
                                              m.vertex));
    }
    for (const auto* deps : {&m.s_deps, &m.t_deps}) {
      for (int d : *deps) {
        if (!seen.count(d)) {
          throw std::invalid_argument(fmt::format(
              "pattern: vertex {} depends on {}, which is not measured earlier", m.vertex, d));
        }
      }
    }
    if (!seen.insert(m.vertex).second) {
      throw std::invalid_argument(fmt::format("pattern: vertex {} measured twice", m.vertex));
    }
  }
  if (output_vertices.empty() || output_x_deps.size() != output_vertices.size() ||
      output_z_deps.size() != output_vertices.size()) {
    throw std::invalid_argument("pattern: output wires and dependency sets are inconsistent");
  }
  for (int v : output_vertices) {
    if (seen.count(v)) {
      throw std::invalid_argument(fmt::format("pattern: output vertex {} is measured", v));
    }
    seen.insert(v);
  }
  if (static_cast<int>(seen.size()) != total) {
    throw std::invalid_argument("pattern: sequence plus outputs must cover every vertex");
  }
  if (accept_wire < 0 || accept_wire >= static_cast<int>(output_vertices.size())) {
    throw std::invalid_argument(fmt::format("pattern: accept wire {} out of range", accept_wire));
  }
  // Measurement order must agree with the arrival order.
  std::size_t pos = 0;
  for (const auto& m : sequence) {
    if (pos >= graph.arrival_order.size() || graph.arrival_order[pos] != m.vertex) {
      throw std::invalid_argument(
          fmt::format("pattern: measurement of {} disagrees with the arrival order", m.vertex));
    }
    ++pos;
  }
}

nlohmann::json MeasurementPattern::to_json() const {
  nlohmann::json seq = nlohmann::json::array();
  for (const auto& m : sequence) {
    seq.push_back({{"vertex", m.vertex}, {"angle", m.angle}, {"s_deps", m.s_deps},
                   {"t_deps", m.t_deps}});
  }
  return {{"graph", graph.to_json()},
          {"sequence", std::move(seq)},
          {"input_vertices", input_vertices},
          {"output_vertices", output_vertices},
          {"output_x_deps", output_x_deps},
          {"output_z_deps", output_z_deps},
          {"accept_wire", accept_wire},
          {"accept_value", accept_value}};
}

MeasurementPattern MeasurementPattern::from_json(const nlohmann::json& j) {
  MeasurementPattern p;
  p.graph = VerificationGraph::from_json(j.at("graph"));
  for (const auto& m : j.at("sequence")) {
    PatternMeasurement pm;
    pm.vertex = m.at("vertex").get<int>();
    pm.angle = m.at("angle").get<double>();
    pm.s_deps = m.at("s_deps").get<std::vector<int>>();
    pm.t_deps = m.at("t_deps").get<std::vector<int>>();
    p.sequence.push_back(std::move(pm));
  }
  p.input_vertices = j.at("input_vertices").get<std::vector<int>>();
  p.output_vertices = j.at("output_vertices").get<std::vector<int>>();
  p.output_x_deps = j.at("output_x_deps").get<std::vector<std::vector<int>>>();
  p.output_z_deps = j.at("output_z_deps").get<std::vector<std::vector<int>>>();
  p.accept_wire = j.at("accept_wire").get<int>();
  p.accept_value = j.at("accept_value").get<int>();
  p.validate();
  return p;
}

MeasurementPattern compile_pattern(const VerifierCircuit& circuit) {
  circuit.validate();
  const int wires = circuit.num_qubits();
  if (wires > kMaxLogicalQubits) {
    throw std::invalid_argument(fmt::format("compile_pattern: {} logical qubits exceeds cap {}",
                                            wires, kMaxLogicalQubits));
  }

  MeasurementPattern pat;
  std::vector<int> cur(static_cast<std::size_t>(wires));
  std::vector<std::vector<int>> sx(static_cast<std::size_t>(wires));
  std::vector<std::vector<int>> sz(static_cast<std::size_t>(wires));

  int next_vertex = 0;
  // Witness wires enter at V2 vertices 0..n_witness-1.
  for (int w = 0; w < circuit.n_witness; ++w) {
    cur[static_cast<std::size_t>(w)] = next_vertex;
    pat.input_vertices.push_back(next_vertex);
    ++next_vertex;
  }
  for (int w = circuit.n_witness; w < wires; ++w) {
    cur[static_cast<std::size_t>(w)] = next_vertex++;
  }

  std::vector<std::pair<int, int>> edges;
  auto is_witness_entry = [&](int vertex) { return vertex < circuit.n_witness; };

  auto teleport = [&](int w, double theta) {
    const auto wi = static_cast<std::size_t>(w);
    const int from = cur[wi];
    const int to = next_vertex++;
    edges.emplace_back(from, to);
    // Measuring at -theta implements J(theta); s-dependencies flip the
    // sign for an X byproduct, t-dependencies absorb a Z byproduct as a
    // pi shift.
    pat.sequence.push_back({from, -theta, sx[wi], sz[wi]});
    sz[wi] = sx[wi];
    sx[wi] = {from};
    cur[wi] = to;
  };

  for (const Gate& g : circuit.gates) {
    if (g.kind == Gate::Kind::J) {
      teleport(g.qubit, g.theta);
    } else {
      const auto ai = static_cast<std::size_t>(g.qubit_a);
      const auto bi = static_cast<std::size_t>(g.qubit_b);
      if (is_witness_entry(cur[ai]) && is_witness_entry(cur[bi])) {
        // A CZ between two untouched witness wires would put an edge
        // inside V2; route one wire into the resource with J(0) J(0) = I.
        teleport(g.qubit_a, 0.0);
        teleport(g.qubit_a, 0.0);
      }
      // CZ is an involution: a repeated edge between the same pair of
      // live vertices cancels instead of duplicating. The byproduct
      // updates below are XORs and cancel with it.
      const auto edge = std::minmax(cur[ai], cur[bi]);
      const auto existing = std::find_if(edges.begin(), edges.end(), [&](const auto& e) {
        return std::minmax(e.first, e.second) == edge;
      });
      if (existing != edges.end()) {
        edges.erase(existing);
      } else {
        edges.emplace_back(cur[ai], cur[bi]);
      }
      const std::vector<int> old_sx_a = sx[ai];
      sz[ai] = xor_sets(sz[ai], sx[bi]);
      sz[bi] = xor_sets(sz[bi], old_sx_a);
    }
  }

  if (next_vertex == circuit.n_witness) {
    // Witness-only circuit with no gates: add one isolated resource
    // vertex so the graph has a V1 to run the stabilizer test on. It is
    // consumed by an angle-0 measurement whose outcome is unused.
    pat.sequence.push_back({next_vertex, 0.0, {}, {}});
    ++next_vertex;
  }

  if (next_vertex > kMaxPatternVertices) {
    throw std::invalid_argument(fmt::format("compile_pattern: {} vertices exceeds cap {}",
                                            next_vertex, kMaxPatternVertices));
  }

  VerificationGraph& g = pat.graph;
  for (int v = 0; v < next_vertex; ++v) {
    if (is_witness_entry(v)) {
      g.v2.push_back(v);
    } else {
      g.v1.push_back(v);
    }
  }
  g.edges = std::move(edges);
  for (const auto& m : pat.sequence) {
    g.arrival_order.push_back(m.vertex);
  }
  // Outputs arrive last, the accept wire at the very end.
  pat.output_vertices.assign(cur.begin(), cur.end());
  pat.output_x_deps = sx;
  pat.output_z_deps = sz;
  pat.accept_wire = circuit.accept_qubit;
  pat.accept_value = circuit.accept_value;
  for (int w = 0; w < wires; ++w) {
    if (w != circuit.accept_qubit) {
      g.arrival_order.push_back(cur[static_cast<std::size_t>(w)]);
    }
  }
  g.arrival_order.push_back(cur[static_cast<std::size_t>(circuit.accept_qubit)]);

  pat.validate();
  return pat;
}

QuantumState honest_prover_state(const MeasurementPattern& pattern,
                                 const QuantumState* witness) {
  return honest_state(pattern.graph, witness);
}

PatternRun execute_pattern(const MeasurementPattern& pattern, const QuantumState& state,
                           RngStream& rng) {
  if (state.num_qubits() != pattern.graph.num_vertices()) {
    throw std::invalid_argument(fmt::format("execute_pattern: state on {} qubits, graph has {}",
                                            state.num_qubits(),
                                            pattern.graph.num_vertices()));
  }
  PatternRun run;
  QuantumState work = state;
  for (const auto& m : pattern.sequence) {
    const double angle = (parity_of(m.s_deps, run.outcome_bits) ? -m.angle : m.angle) +
                         (parity_of(m.t_deps, run.outcome_bits) ? std::numbers::pi : 0.0);
    const MeasurementResult res =
        measure_single_qubit(work, m.vertex, MeasurementBasis::xy_plane(angle), rng);
    run.outcome_bits[m.vertex] = res.outcome == +1 ? 0 : 1;
    work = res.post;
  }
  const int accept_vertex =
      pattern.output_vertices[static_cast<std::size_t>(pattern.accept_wire)];
  for (std::size_t pos = pattern.sequence.size(); pos < pattern.graph.arrival_order.size();
       ++pos) {
    const int vtx = pattern.graph.arrival_order[pos];
    const MeasurementResult res = measure_single_qubit(work, vtx, MeasurementBasis::z(), rng);
    work = res.post;
    if (vtx == accept_vertex) {
      run.raw_accept_bit = res.outcome == +1 ? 0 : 1;
    }
  }
  const int x_fix = parity_of(pattern.output_x_deps[static_cast<std::size_t>(pattern.accept_wire)],
                              run.outcome_bits);
  run.corrected_accept_bit = run.raw_accept_bit ^ x_fix;
  run.accept = run.corrected_accept_bit == pattern.accept_value;
  return run;
}

namespace {

// Reorders the qubits of a pure state: target qubit i <- source qubit perm[i].
Eigen::VectorXcd permute_qubits(const Eigen::VectorXcd& v, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index src = 0; src < v.size(); ++src) {
    uint64_t dst = 0;
    for (int i = 0; i < n; ++i) {
      const uint64_t bit = (static_cast<uint64_t>(src) >> (n - 1 - perm[static_cast<std::size_t>(i)])) & 1u;
      dst |= bit << (n - 1 - i);
    }
    out(static_cast<Eigen::Index>(dst)) = v(src);
  }
  return out;
}

}  // namespace

std::vector<PatternBranch> enumerate_pattern_branches(const MeasurementPattern& pattern,
                                                      const QuantumState* witness) {
  const QuantumState honest = honest_prover_state(pattern, witness);
  std::vector<int> outputs_sorted = pattern.output_vertices;
  std::sort(outputs_sorted.begin(), outputs_sorted.end());
  // wire order <- position in ascending vertex order
  std::vector<int> perm;
  for (int v : pattern.output_vertices) {
    perm.push_back(static_cast<int>(
        std::lower_bound(outputs_sorted.begin(), outputs_sorted.end(), v) -
        outputs_sorted.begin()));
  }

  std::vector<PatternBranch> branches;
  struct Frame {
    QuantumState state;
    std::map<int, int> bits;
    double prob;
    std::size_t step;
  };
  std::vector<Frame> stack;
  stack.push_back({honest, {}, 1.0, 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.step == pattern.sequence.size()) {
      PatternBranch br;
      br.probability = f.prob;
      br.outcome_bits = f.bits;
      QuantumState reg = partial_trace(f.state, outputs_sorted);
      // The conditional output is pure on honest inputs; take the top
      // eigenvector of the reduced state.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reg.density_matrix());
      Eigen::Index top;
      es.eigenvalues().maxCoeff(&top);
      Eigen::VectorXcd vec = es.eigenvectors().col(top);
      vec.normalize();
      vec = permute_qubits(vec, perm);
      QuantumState out = QuantumState::pure(std::move(vec));
      for (std::size_t w = 0; w < pattern.output_vertices.size(); ++w) {
        if (parity_of(pattern.output_x_deps[w], f.bits)) {
          out = apply_single_qubit_gate(out, static_cast<int>(w), kPauliX);
        }
        if (parity_of(pattern.output_z_deps[w], f.bits)) {
          out = apply_single_qubit_gate(out, static_cast<int>(w), kPauliZ);
        }
      }
      br.corrected_output = std::move(out);
      branches.push_back(std::move(br));
      continue;
    }
    const auto& m = pattern.sequence[f.step];
    const double angle = (parity_of(m.s_deps, f.bits) ? -m.angle : m.angle) +
                         (parity_of(m.t_deps, f.bits) ? std::numbers::pi : 0.0);
    const MeasurementBasis basis = MeasurementBasis::xy_plane(angle);
    for (int outcome : {+1, -1}) {
      try {
        MeasurementResult res = project_single_qubit(f.state, m.vertex, basis, outcome);
        Frame next;
        next.state = std::move(res.post);
        next.bits = f.bits;
        next.bits[m.vertex] = outcome == +1 ? 0 : 1;
        next.prob = f.prob * res.probability;
        next.step = f.step + 1;
        stack.push_back(std::move(next));
      } catch (const std::runtime_error&) {
        // zero-probability branch
      }
    }
  }
  return branches;
}

void ProtocolParams::validate() const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument(fmt::format("params: q = {} outside [0, 1]", q));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument(fmt::format("params: epsilon = {} outside (0, 1)", epsilon));
  }
  if (!(a > b && b >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument(fmt::format("params: need 0 <= b < a <= 1, got a={}, b={}", a,
                                            b));
  }
}

ProtocolParams ProtocolParams::for_instance_size(long x_size) {
  if (x_size < 2) {
    throw std::invalid_argument("params: instance size must be at least 2");
  }
  ProtocolParams p;
  p.a = 2.0 / 3.0;
  p.b = 1.0 / 3.0;
  p.x_size = x_size;
  p.epsilon = 1.0 / (2.0 * static_cast<double>(x_size) * static_cast<double>(x_size));
  p.q = std::min(1.0, optimal_q(p));
  p.validate();
  return p;
}

bool arthur_verify(const MeasurementPattern& pattern, const ProtocolParams& params,
                   const QuantumState& received, RngStream& rng) {
  params.validate();
  if (rng.bernoulli(params.q)) {
    return execute_pattern(pattern, received, rng).accept;
  }
  return run_stabilizer_test(pattern.graph, received, rng).passed;
}

Eigen::MatrixXcd circuit_branch_operator(const MeasurementPattern& pattern) {
  pattern.validate();
  const int total = pattern.graph.num_vertices();
  if (total > kMaxOperatorVertices) {
    throw std::invalid_argument(fmt::format(
        "circuit_branch_operator: {} vertices exceeds the dense cap {}", total,
        kMaxOperatorVertices));
  }
  const Eigen::Index dim = Eigen::Index(1) << total;
  const int accept_vertex =
      pattern.output_vertices[static_cast<std::size_t>(pattern.accept_wire)];

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::Matrix2cd> factors(static_cast<std::size_t>(total),
                                        Eigen::Matrix2cd::Identity());

  // DFS over outcome histories; each accepted leaf contributes the tensor
  // product of its rank-1 measurement projectors (identity on vertices
  // whose outcome is discarded).
  std::function<void(std::size_t, std::map<int, int>&)> walk =
      [&](std::size_t step, std::map<int, int>& bits) {
        if (step == pattern.sequence.size()) {
          const int x_fix = parity_of(
              pattern.output_x_deps[static_cast<std::size_t>(pattern.accept_wire)], bits);
          for (int raw = 0; raw < 2; ++raw) {
            if ((raw ^ x_fix) != pattern.accept_value) {
              continue;
            }
            Eigen::Matrix2cd readout = Eigen::Matrix2cd::Zero();
            readout(raw, raw) = 1.0;
            factors[static_cast<std::size_t>(accept_vertex)] = readout;
            Eigen::MatrixXcd term = Eigen::MatrixXcd::Constant(1, 1, 1.0);
            for (int v = 0; v < total; ++v) {
              term = kron(term, factors[static_cast<std::size_t>(v)]);
            }
            acc += term;
            factors[static_cast<std::size_t>(accept_vertex)] = Eigen::Matrix2cd::Identity();
          }
          return;
        }
        const auto& m = pattern.sequence[step];
        const double angle = (parity_of(m.s_deps, bits) ? -m.angle : m.angle) +
                             (parity_of(m.t_deps, bits) ? std::numbers::pi : 0.0);
        const MeasurementBasis basis = MeasurementBasis::xy_plane(angle);
        for (int bit = 0; bit < 2; ++bit) {
          const Eigen::Vector2cd eigvec = basis.rotation.row(bit).adjoint();
          factors[static_cast<std::size_t>(m.vertex)] = eigvec * eigvec.adjoint();
          bits[m.vertex] = bit;
          walk(step + 1, bits);
          bits.erase(m.vertex);
          factors[static_cast<std::size_t>(m.vertex)] = Eigen::Matrix2cd::Identity();
        }
      };
  std::map<int, int> bits;
  walk(0, bits);
  return acc;
}

Eigen::MatrixXcd stabilizer_pass_operator(const VerificationGraph& graph) {
  graph.validate();
  const int total = graph.num_vertices();
  if (total > kMaxOperatorVertices) {
    throw std::invalid_argument(fmt::format(
        "stabilizer_pass_operator: {} vertices exceeds the dense cap {}", total,
        kMaxOperatorVertices));
  }
  const Eigen::Index dim = Eigen::Index(1) << total;
  Eigen::Matrix2cd plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  for (int v = 0; v < total; ++v) {
    k = kron(k, graph.in_v1(v) ? plus : Eigen::Matrix2cd::Identity());
  }
  // Conjugating by W = prod CZ only flips signs: W K W has entries
  // d_r d_c K_{rc} with d the diagonal of W.
  Eigen::VectorXd d(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    int arcs = 0;
    for (const auto& [a, b] : graph.edges) {
      const bool ba = (idx >> (total - 1 - a)) & 1;
      const bool bb = (idx >> (total - 1 - b)) & 1;
      arcs += (ba && bb) ? 1 : 0;
    }
    d(idx) = (arcs % 2 == 0) ? 1.0 : -1.0;
  }
  Eigen::MatrixXcd pi = d.asDiagonal() * k * d.asDiagonal();
  return 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + pi);
}

Eigen::MatrixXcd acceptance_operator(const MeasurementPattern& pattern,
                                     const VerifierCircuit& circuit, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument(fmt::format("acceptance_operator: q = {} outside [0, 1]", q));
  }
  if (circuit.accept_qubit != pattern.accept_wire ||
      circuit.accept_value != pattern.accept_value) {
    throw std::invalid_argument("acceptance_operator: pattern and circuit disagree on readout");
  }
  return q * circuit_branch_operator(pattern) +
         (1.0 - q) * stabilizer_pass_operator(pattern.graph);
}

CheatResult optimal_cheat(const Eigen::MatrixXcd& acceptance) {
  if (acceptance.rows() != acceptance.cols() || acceptance.rows() < 2) {
    throw std::invalid_argument("optimal_cheat: bad operator shape");
  }
  const double herm_dev = (acceptance - acceptance.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-10) {
    throw std::invalid_argument(
        fmt::format("optimal_cheat: operator deviates from Hermitian by {:.3e}", herm_dev));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(acceptance);
  const Eigen::Index top = es.eigenvalues().size() - 1;
  CheatResult r;
  r.lambda_max = es.eigenvalues()(top);
  Eigen::VectorXcd vec = es.eigenvectors().col(top);
  vec.normalize();
  r.best_state = QuantumState::pure(std::move(vec));
  return r;
}

double alpha(const ProtocolParams& p) { return p.q * p.a + (1.0 - p.q); }

double beta1(const ProtocolParams& p) {
  return p.q * (p.b + std::sqrt(2.0 * p.epsilon)) + (1.0 - p.q);
}

double beta2(const ProtocolParams& p) { return p.q + (1.0 - p.q) * (1.0 - p.epsilon); }

double delta1(const ProtocolParams& p) { return alpha(p) - beta1(p); }

double delta2(const ProtocolParams& p) { return alpha(p) - beta2(p); }

double optimal_q(const ProtocolParams& p) {
  const double denom = 1.0 + p.epsilon - p.b - std::sqrt(2.0 * p.epsilon);
  if (denom <= 0.0) {
    throw std::domain_error(
        fmt::format("optimal_q: degenerate denominator (b + sqrt(2 eps) = {} >= 1 + eps)",
                    p.b + std::sqrt(2.0 * p.epsilon)));
  }
  return p.epsilon / denom;
}

double protocol_gap(const ProtocolParams& p) {
  const double root = std::sqrt(2.0 * p.epsilon);
  const double numer = p.a - p.b - root;
  if (numer <= 0.0) {
    throw std::domain_error(
        fmt::format("protocol_gap: a - b - sqrt(2 eps) = {} is not positive", numer));
  }
  const double denom = 1.0 + p.epsilon - p.b - root;
  if (denom <= 0.0) {
    throw std::domain_error("protocol_gap: degenerate denominator");
  }
  return p.epsilon * numer / denom;
}

double gap_floor(long x_size) {
  if (x_size < 1) {
    throw std::invalid_argument("gap_floor: instance size must be positive");
  }
  return 1.0 / (48.0 * static_cast<double>(x_size) * static_cast<double>(x_size));
}

}  // namespace sqmv
