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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sqmv/harness.hpp"

using namespace sqmv;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, const std::function<void()>& body) {
  try {
    body();
    std::printf("criterion %d PASS  %s\n", number, what.c_str());
  } catch (const std::exception& e) {
    ++failures;
    std::printf("criterion %d FAIL  %s\n    %s\n", number, what.c_str(), e.what());
  }
  std::fflush(stdout);
}

void require(bool cond, const std::string& message) {
  if (!cond) {
    throw std::runtime_error(message);
  }
}

std::vector<VerificationGraph> criterion_graphs() {
  return {path_graph(4), cycle_graph(4), grid_graph(2, 3), fig1_graph(2, 3, 2),
          star_graph(5)};
}

VerifierCircuit toy_no_instance() {
  VerifierCircuit c;
  c.n_witness = 1;
  c.m_ancilla = 2;
  c.gates = {Gate::j(0, 0.0), Gate::j(0, 0.0), Gate::cz(0, 1), Gate::cz(1, 2)};
  c.accept_qubit = 1;
  return c;
}

VerifierCircuit random_circuit(int wires, int gates, RngStream& rng) {
  VerifierCircuit c;
  c.n_witness = wires;
  c.m_ancilla = 0;
  for (int i = 0; i < gates; ++i) {
    if (wires >= 2 && rng.bernoulli(0.3)) {
      c.gates.push_back(Gate::cz(0, 1));
    } else {
      const int target = static_cast<int>(rng.engine()() % static_cast<uint64_t>(wires));
      c.gates.push_back(Gate::j(target, rng.uniform(-std::numbers::pi, std::numbers::pi)));
    }
  }
  c.accept_qubit = static_cast<int>(rng.engine()() % static_cast<uint64_t>(wires));
  return c;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

void criterion1_honest_completeness() {
  const auto t0 = std::chrono::steady_clock::now();
  RngStream rng(1001);
  const long shots = 10000;
  for (const auto& g : criterion_graphs()) {
    QuantumState honest;
    if (g.v2.empty()) {
      honest = honest_state(g, nullptr);
    } else {
      RngStream wr = rng.child(static_cast<uint64_t>(g.num_vertices()));
      const QuantumState witness =
          QuantumState::random(static_cast<int>(g.v2.size()), QuantumState::Purity::Pure, wr);
      honest = honest_state(g, &witness);
    }
    const double exact = exact_pass_probability(g, honest);
    require(std::abs(exact - 1.0) <= 1e-10,
            "exact p_pass deviates from 1: " + fmt_num(exact));
    const auto samples = parallel_shots(shots, rng.child(7), [&](long, RngStream& r) {
      return run_stabilizer_test(g, honest, r).passed ? 1.0 : 0.0;
    });
    double rate = 0;
    for (double s : samples) rate += s;
    rate /= static_cast<double>(shots);
    require(rate == 1.0, "sampled pass rate is " + fmt_num(rate) + ", expected exactly 1");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(secs < 10.0, "runtime " + fmt_num(secs) + "s exceeds the 10 s budget");
}

void criterion2_stabilizer_identity() {
  for (const auto& g : criterion_graphs()) {
    const int n = g.resource_size();
    const Eigen::Index dim = Eigen::Index(1) << g.num_vertices();
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(dim, dim);
    for (int j : g.v1) {
      lhs = lhs * 0.5 *
            (Eigen::MatrixXcd::Identity(dim, dim) + stabilizer_generator(g, j).to_dense());
    }
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint64_t k = 0; k < (1ULL << n); ++k) {
      std::vector<int> bits(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        bits[static_cast<std::size_t>(i)] = static_cast<int>((k >> i) & 1u);
      }
      rhs += stabilizer_product(g, bits).to_dense();
    }
    rhs /= static_cast<double>(1ULL << n);
    const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
    require(dev <= 1e-12, "identity deviates entrywise by " + fmt_num(dev));
  }
}

void criterion3_trace_distance_bound() {
  RngStream rng(3003);
  const std::vector<VerificationGraph> graphs = {path_graph(2), path_graph(3),
                                                 fig1_graph(1, 2, 1), cycle_graph(4),
                                                 fig1_graph(2, 2, 1)};
  int tested = 0;
  while (tested < 200) {
    const auto& g = graphs[static_cast<std::size_t>(tested) % graphs.size()];
    const QuantumState rho = QuantumState::random(
        g.num_vertices(),
        tested % 2 == 0 ? QuantumState::Purity::Pure : QuantumState::Purity::Mixed, rng);
    const HonestStateBound b = closest_honest_state_bound(g, rho);
    require(b.distance <= b.bound + 1e-9,
            "distance " + fmt_num(b.distance) + " exceeds sqrt(2 eps) = " + fmt_num(b.bound));
    ++tested;
  }
}

void criterion4_gap_formulas() {
  for (long x = 4; x <= 1000; ++x) {
    ProtocolParams p = ProtocolParams::for_instance_size(x);
    const double qs = optimal_q(p);
    p.q = std::min(1.0, qs);
    const double eq = delta1(p) - delta2(p);
    require(std::abs(eq) <= 1e-12, "delta1 != delta2 at q* for x = " + std::to_string(x));
    require(protocol_gap(p) >= gap_floor(x) - 1e-15,
            "gap below 1/(48 x^2) at x = " + std::to_string(x));
  }
  const ProtocolParams p4 = ProtocolParams::for_instance_size(4);
  require(std::abs(optimal_q(p4) - 3.0 / 43.0) <= 1e-12, "q*(4) is not 3/43");
  require(std::abs(protocol_gap(p4) - 1.0 / 172.0) <= 1e-12, "delta(4) is not 1/172");
}

void criterion5_soundness_oracle() {
  const VerifierCircuit c = toy_no_instance();
  const MeasurementPattern pattern = compile_pattern(c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(witness_accept_operator(c),
                                                     Eigen::EigenvaluesOnly);
  const double b = es.eigenvalues().maxCoeff();
  require(std::abs(b - 0.5) <= 1e-12, "toy instance does not have b = 1/2");
  require(pattern.graph.resource_size() == 4, "toy instance resource is not 4 vertices");

  const std::vector<double> eps_grid = {0.3, 0.2, 0.1, 0.05, 0.02};
  for (double eps : eps_grid) {
    ProtocolParams params;
    params.epsilon = eps;
    params.a = 1.0;
    params.b = b;
    const double q = std::min(1.0, optimal_q(params));
    params.q = q;
    const double lambda =
        optimal_cheat(acceptance_operator(pattern, c, q)).lambda_max;
    double best = 2.0;
    for (double e2 : eps_grid) {
      ProtocolParams inner = params;
      inner.epsilon = e2;
      best = std::min(best, std::max(beta1(inner), beta2(inner)));
    }
    require(lambda <= best + 1e-9, "lambda_max " + fmt_num(lambda) + " beats the bound " +
                                       fmt_num(best) + " at eps = " + fmt_num(eps));
  }
}

void criterion6_mbqc_equivalence() {
  RngStream rng(6006);
  const long shots = 100000;
  for (int trial = 0; trial < 50; ++trial) {
    const int wires = 1 + static_cast<int>(rng.engine()() % 2);
    const VerifierCircuit c = random_circuit(wires, 1 + static_cast<int>(rng.engine()() % 4),
                                             rng);
    const MeasurementPattern pattern = compile_pattern(c);
    const QuantumState witness =
        QuantumState::random(wires, QuantumState::Purity::Pure, rng);
    const QuantumState direct = simulate_circuit(c, &witness);
    for (const auto& br : enumerate_pattern_branches(pattern, &witness)) {
      require(fidelity(br.corrected_output, direct) >= 1.0 - 1e-9,
              "branch output fidelity below 1 - 1e-9 in circuit " + std::to_string(trial));
    }
    const double want = circuit_accept_probability(c, &witness);
    const QuantumState honest = honest_prover_state(pattern, &witness);
    const auto samples =
        parallel_shots(shots, rng.child(static_cast<uint64_t>(trial)),
                       [&](long, RngStream& r) {
                         return execute_pattern(pattern, honest, r).accept ? 1.0 : 0.0;
                       });
    double rate = 0;
    for (double s : samples) rate += s;
    rate /= static_cast<double>(shots);
    const double sigma = std::sqrt(std::max(want * (1.0 - want), 1e-9) /
                                   static_cast<double>(shots));
    require(std::abs(rate - want) <= 4 * sigma,
            "accept rate " + fmt_num(rate) + " vs circuit " + fmt_num(want) +
                " beyond 4 sigma in circuit " + std::to_string(trial));
  }

  // QMA1 case: perfect-completeness toy circuit accepts with rate exactly 1.
  VerifierCircuit qma1;
  qma1.n_witness = 1;
  qma1.m_ancilla = 0;
  qma1.gates = {Gate::j(0, 0.0), Gate::j(0, 0.0)};
  qma1.accept_qubit = 0;
  const MeasurementPattern p1 = compile_pattern(qma1);
  const QuantumState one = QuantumState::basis_state("1");
  const QuantumState h1 = honest_prover_state(p1, &one);
  RngStream qrng(6060);
  for (int i = 0; i < 10000; ++i) {
    require(execute_pattern(p1, h1, qrng).accept, "QMA1 toy circuit rejected a perfect proof");
  }
}

void criterion7_lh_estimator() {
  RngStream rng(7007);
  for (const char* name : {"zz", "x+zz", "tfim4", "heisenberg4"}) {
    const LocalHamiltonian h = builtin_hamiltonian(name);
    const PauliEnsemble ens = assemble_ensemble(h);
    const Eigen::MatrixXcd dense = h.to_dense();

    // (i) reconstruction
    const double recon = (ens.reconstruct_dense() - dense).cwiseAbs().maxCoeff();
    require(recon <= 1e-10, std::string(name) + ": reconstruction error " + fmt_num(recon));

    // (ii) exact acceptance equals the closed form on 20 random states
    const double w = ens.total_weight;
    for (int trial = 0; trial < 20; ++trial) {
      const QuantumState s = QuantumState::random(
          h.n, trial % 2 == 0 ? QuantumState::Purity::Pure : QuantumState::Purity::Mixed,
          rng);
      const double via_dense = 1.0 - (expectation(s, dense) + w) / (2.0 * w);
      const double via_ensemble = exact_acceptance(s, ens);
      require(std::abs(via_dense - via_ensemble) <= 1e-10,
              std::string(name) + ": acceptance routes disagree by " +
                  fmt_num(std::abs(via_dense - via_ensemble)));
    }

    // (iii) estimator lands within 4 reported standard errors
    const GroundState ground = ground_energy_exact(h);
    RngStream est_rng = rng.child(17);
    const EnergyEstimate est =
        estimate_energy([&]() { return ground.state; }, ens, 100000, est_rng);
    const double err_budget = est.std_error > 0 ? 4 * est.std_error : 1e-9;
    require(std::abs(est.estimate - ground.energy) <= err_budget,
            std::string(name) + ": estimate " + fmt_num(est.estimate) + " vs exact " +
                fmt_num(ground.energy) + " outside 4 std errors");

    // (iv) yes/no acceptance gap vs the promise from the dense spectrum
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    const double e0 = es.eigenvalues()(0);
    double e_next = e0;
    Eigen::Index top_index = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > e0 + 1e-9) {
        e_next = es.eigenvalues()(i);
        top_index = i;
        break;
      }
    }
    require(e_next > e0, std::string(name) + ": fully degenerate spectrum");
    const EnergyPromise promise{e0, e_next};
    const double gap = lh_gap(ens, promise);
    Eigen::VectorXcd no_vec = es.eigenvectors().col(top_index);
    no_vec.normalize();
    const QuantumState no_state = QuantumState::pure(no_vec);
    const double p_yes = exact_acceptance(ground.state, ens);
    const double p_no = exact_acceptance(no_state, ens);
    require(p_yes - p_no >= gap - 1e-10,
            std::string(name) + ": acceptance gap " + fmt_num(p_yes - p_no) +
                " below (E_b - E_a)/(2 sum|d|) = " + fmt_num(gap));

    // Monte Carlo confirmation of the same gap
    const long shots = 100000;
    auto rate_of = [&](const QuantumState& s, uint64_t salt) {
      const auto samples = parallel_shots(shots, rng.child(salt), [&](long, RngStream& r) {
        return verify_once(s, ens, r) ? 1.0 : 0.0;
      });
      double rate = 0;
      for (double v : samples) rate += v;
      return rate / static_cast<double>(shots);
    };
    const double yes_rate = rate_of(ground.state, 21);
    const double no_rate = rate_of(no_state, 22);
    const double sigma = std::sqrt(0.5 / static_cast<double>(shots));
    require(yes_rate - no_rate >= gap - 4 * sigma,
            std::string(name) + ": sampled gap " + fmt_num(yes_rate - no_rate) +
                " below the promise gap " + fmt_num(gap));
  }

  // the fixed value for the X0 + Z0Z1 ground state
  const PauliEnsemble ens = assemble_ensemble(builtin_hamiltonian("x+zz"));
  const GroundState g = ground_energy_exact(builtin_hamiltonian("x+zz"));
  const double acc = exact_acceptance(g.state, ens);
  require(std::abs(acc - (0.5 + std::sqrt(2.0) / 4.0)) <= 1e-10,
          "x+zz ground acceptance " + fmt_num(acc) + " is not 1/2 + sqrt(2)/4");
}

void criterion8_imperfect_completeness() {
  const PauliEnsemble ens = assemble_ensemble(builtin_hamiltonian("x+zz"));
  const GroundState g = ground_energy_exact(builtin_hamiltonian("x+zz"));
  const double acc = exact_acceptance(g.state, ens);
  require(acc < 1.0, "ground-state acceptance is not strictly below 1");
  require(std::abs(acc - (0.5 + std::sqrt(2.0) / 4.0)) <= 1e-10,
          "ground-state acceptance has drifted from 1/2 + sqrt(2)/4");
}

void criterion9_reproducibility() {
  // shots above the threading threshold so parallel execution is active
  ExperimentSpec stab;
  stab.protocol = ExperimentSpec::Protocol::StabOnly;
  stab.graph_path = "builtin:fig1";
  stab.shots = 10000;
  stab.seed = 424242;
  const std::string a = render_report(run(stab), ReportFormat::Csv);
  const std::string b = render_report(run(stab), ReportFormat::Csv);
  require(a == b, "stab-only CSV differs between identical runs");

  ExperimentSpec lh;
  lh.protocol = ExperimentSpec::Protocol::Lh;
  lh.hamiltonian_path = "builtin:tfim4";
  lh.shots = 10000;
  lh.seed = 77;
  const std::string c = render_report(run(lh), ReportFormat::Csv);
  const std::string d = render_report(run(lh), ReportFormat::Csv);
  require(c == d, "lh CSV differs between identical runs");
}

}  // namespace

int main() {
  criterion(1, "honest states pass the stabilizer test exactly (5 graphs, 1e4 shots)",
            criterion1_honest_completeness);
  criterion(2, "prod (I+g_j)/2 = 2^-N sum_k s_k entrywise (1e-12)",
            criterion2_stabilizer_identity);
  criterion(3, "trace distance to the optimal honest state is at most sqrt(2 eps)",
            criterion3_trace_distance_bound);
  criterion(4, "q* equalizes the gaps; delta >= 1/(48 x^2) for x in [4, 1000]",
            criterion4_gap_formulas);
  criterion(5, "no cheating state beats max(beta1, beta2) on the toy no-instance",
            criterion5_soundness_oracle);
  criterion(6, "pattern execution reproduces direct circuit simulation (50 circuits)",
            criterion6_mbqc_equivalence);
  criterion(7, "LH ensemble, acceptance formulas, estimator, and promise gap",
            criterion7_lh_estimator);
  criterion(8, "LH protocol accepts the exact ground state with probability < 1",
            criterion8_imperfect_completeness);
  criterion(9, "identical seeds give byte-identical reports under parallel shots",
            criterion9_reproducibility);

  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 9 criteria PASS\n");
  return 0;
}
