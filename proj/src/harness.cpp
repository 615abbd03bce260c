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

#include "sqmv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace sqmv {

namespace {

constexpr double kCheckTol = 1e-9;
constexpr double kExactTol = 1e-10;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

double binomial_sigma(double p, long shots) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(shots));
}

ReportRow exact_row(std::string experiment, std::string metric, double exact) {
  ReportRow r;
  r.experiment = std::move(experiment);
  r.metric = std::move(metric);
  r.exact = exact;
  return r;
}

ReportRow check_row(std::string experiment, std::string metric, double exact, double bound,
                    bool ok) {
  ReportRow r = exact_row(std::move(experiment), std::move(metric), exact);
  r.bound = bound;
  r.ok = ok;
  return r;
}

// Monte Carlo estimate vs. its exact companion at 4 binomial sigma.
ReportRow mc_row(std::string experiment, std::string metric, double exact, double rate,
                 long shots) {
  ReportRow r = exact_row(std::move(experiment), std::move(metric), exact);
  r.mc = rate;
  r.mc_stderr = binomial_sigma(rate, shots);
  r.shots = shots;
  const double tol = 4.0 * binomial_sigma(exact, shots) + 1e-12;
  r.bound = tol;
  r.ok = std::abs(rate - exact) <= tol;
  return r;
}

QuantumState mix_with_noise(const QuantumState& state, double mix) {
  if (mix <= 0.0) {
    return state;
  }
  const Eigen::Index dim = state.dim();
  Eigen::MatrixXcd rho = (1.0 - mix) * state.density_matrix() +
                         mix / static_cast<double>(dim) *
                             Eigen::MatrixXcd::Identity(dim, dim);
  return QuantumState::mixed(std::move(rho));
}

double mc_rate(const std::vector<double>& samples) {
  double acc = 0.0;
  for (double s : samples) {
    acc += s;
  }
  return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

}  // namespace

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::string out = "#schema=1\n";
    out += "experiment,metric,exact,mc,mc_stderr,shots,bound,ok\n";
    for (const ReportRow& r : rows) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", r.experiment, r.metric,
                         csv_cell(r.exact), csv_cell(r.mc), csv_cell(r.mc_stderr),
                         r.shots ? std::to_string(*r.shots) : std::string{},
                         csv_cell(r.bound),
                         r.ok ? (*r.ok ? "pass" : "fail") : std::string{});
    }
    return out;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    nlohmann::json j{{"experiment", r.experiment}, {"metric", r.metric}};
    if (r.exact) j["exact"] = *r.exact;
    if (r.mc) j["mc"] = *r.mc;
    if (r.mc_stderr) j["mc_stderr"] = *r.mc_stderr;
    if (r.shots) j["shots"] = *r.shots;
    if (r.bound) j["bound"] = *r.bound;
    if (r.ok) j["ok"] = *r.ok;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_report(const std::string& path, const std::vector<ReportRow>& rows,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument(fmt::format("report: cannot write '{}'", path));
  }
  out << render_report(rows, format);
}

void ExperimentSpec::validate() const {
  if (shots < 1) {
    throw std::invalid_argument("spec: shots must be at least 1");
  }
  if (mix < 0.0 || mix > 1.0) {
    throw std::invalid_argument(fmt::format("spec: mix = {} outside [0, 1]", mix));
  }
  if (q && (*q < 0.0 || *q > 1.0)) {
    throw std::invalid_argument(fmt::format("spec: q = {} outside [0, 1]", *q));
  }
  if (epsilon && (*epsilon <= 0.0 || *epsilon >= 1.0)) {
    throw std::invalid_argument(fmt::format("spec: epsilon = {} outside (0, 1)", *epsilon));
  }
  if (promise) {
    promise->validate();
  }
  if (x_min < 2 || x_max < x_min || x_max > 1000000) {
    throw std::invalid_argument("spec: instance-size range must satisfy 2 <= x_min <= x_max <= 1e6");
  }
  if (sweep_steps < 2 || sweep_steps > 100000) {
    throw std::invalid_argument("spec: sweep_steps outside [2, 1e5]");
  }
}

std::vector<double> parallel_shots(long shots, const RngStream& base,
                                   const std::function<double(long, RngStream&)>& worker) {
  std::vector<double> out(static_cast<std::size_t>(shots));
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned threads = std::min<unsigned>(hw == 0 ? 1 : hw, 8);
  if (threads <= 1 || shots < 2048) {
    for (long i = 0; i < shots; ++i) {
      RngStream rng = base.child(static_cast<uint64_t>(i));
      out[static_cast<std::size_t>(i)] = worker(i, rng);
    }
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (shots + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(shots, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      for (long i = lo; i < hi; ++i) {
        RngStream rng = base.child(static_cast<uint64_t>(i));
        out[static_cast<std::size_t>(i)] = worker(i, rng);
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  return out;
}

VerificationGraph resolve_graph(const std::string& spec_or_path) {
  if (spec_or_path.rfind("builtin:", 0) == 0) {
    return builtin_graph(spec_or_path.substr(8));
  }
  return VerificationGraph::load(spec_or_path);
}

LocalHamiltonian resolve_hamiltonian(const std::string& spec_or_path) {
  if (spec_or_path.rfind("builtin:", 0) == 0) {
    return builtin_hamiltonian(spec_or_path.substr(8));
  }
  return LocalHamiltonian::load(spec_or_path);
}

QuantumState make_witness(const std::string& kind, int num_qubits, RngStream& rng) {
  if (kind.empty() || kind == "random") {
    return QuantumState::random(num_qubits, QuantumState::Purity::Pure, rng);
  }
  if (kind == "mixed") {
    return QuantumState::random(num_qubits, QuantumState::Purity::Mixed, rng);
  }
  if (kind == "plus") {
    return QuantumState::plus_state(num_qubits);
  }
  if (std::all_of(kind.begin(), kind.end(), [](char c) { return c == '0' || c == '1'; })) {
    if (static_cast<int>(kind.size()) != num_qubits) {
      throw std::invalid_argument(fmt::format("witness '{}' is not on {} qubits", kind,
                                              num_qubits));
    }
    return QuantumState::basis_state(kind);
  }
  throw std::invalid_argument(
      fmt::format("unknown witness kind '{}' (random, mixed, plus, or a bit string)", kind));
}

namespace {

std::vector<ReportRow> run_stab(const ExperimentSpec& spec) {
  const VerificationGraph g = resolve_graph(spec.graph_path);
  RngStream root(spec.seed);
  RngStream witness_rng = root.child(0);
  const RngStream shot_base = root.child(1);

  QuantumState honest;
  if (g.v2.empty()) {
    honest = honest_state(g, nullptr);
  } else {
    const QuantumState witness =
        make_witness(spec.witness, static_cast<int>(g.v2.size()), witness_rng);
    honest = honest_state(g, &witness);
  }
  const QuantumState state = mix_with_noise(honest, spec.mix);

  // Exact quantities first; sampling only afterwards.
  const std::string id = fmt::format("stab-test seed={}", spec.seed);
  std::vector<ReportRow> rows;
  const double p_exact = exact_pass_probability(g, state);
  if (g.resource_size() <= 10) {
    const double p_enum = exact_pass_probability_enumerated(g, state);
    rows.push_back(check_row(id, "p_pass_enumerated", p_enum, kExactTol,
                             std::abs(p_enum - p_exact) <= kExactTol));
  }
  const HonestStateBound hsb = closest_honest_state_bound(g, state);
  rows.push_back(exact_row(id, "epsilon", hsb.epsilon));
  rows.push_back(check_row(id, "trace_distance", hsb.distance, hsb.bound,
                           hsb.distance <= hsb.bound + kCheckTol));

  const auto samples = parallel_shots(spec.shots, shot_base, [&](long, RngStream& rng) {
    return run_stabilizer_test(g, state, rng).passed ? 1.0 : 0.0;
  });
  rows.insert(rows.begin(), mc_row(id, "p_pass", p_exact, mc_rate(samples), spec.shots));
  return rows;
}

std::vector<ReportRow> run_mbqc(const ExperimentSpec& spec) {
  const VerifierCircuit circuit = VerifierCircuit::load(spec.circuit_path);
  const MeasurementPattern pattern = compile_pattern(circuit);
  RngStream root(spec.seed);
  RngStream witness_rng = root.child(0);
  const RngStream shot_base = root.child(1);

  ProtocolParams params;
  params.epsilon = spec.epsilon.value_or(1.0 / 32.0);
  if (spec.q) {
    params.q = *spec.q;
  } else {
    params.q = std::min(1.0, optimal_q(params));
  }
  params.validate();

  QuantumState honest;
  const QuantumState* witness_ptr = nullptr;
  QuantumState witness;
  if (circuit.n_witness > 0) {
    witness = make_witness(spec.witness, circuit.n_witness, witness_rng);
    witness_ptr = &witness;
  }
  honest = honest_prover_state(pattern, witness_ptr);
  const QuantumState state = mix_with_noise(honest, spec.mix);

  const std::string id = fmt::format("mbqc-run seed={}", spec.seed);
  std::vector<ReportRow> rows;
  const double p_circ = circuit_accept_probability(circuit, witness_ptr);
  const double p_pass = exact_pass_probability(pattern.graph, state);
  rows.push_back(exact_row(id, "p_circuit", p_circ));
  rows.push_back(exact_row(id, "p_pass", p_pass));

  double p_acc_exact;
  if (spec.mix == 0.0) {
    p_acc_exact = params.q * p_circ + (1.0 - params.q) * p_pass;
  } else {
    p_acc_exact = params.q * expectation(state, circuit_branch_operator(pattern)) +
                  (1.0 - params.q) * p_pass;
  }

  if (pattern.graph.num_vertices() <= 10) {
    const Eigen::MatrixXcd a = acceptance_operator(pattern, circuit, params.q);
    const double tr = expectation(state, a);
    rows.push_back(check_row(id, "p_acc_operator", tr, kCheckTol,
                             std::abs(tr - p_acc_exact) <= kCheckTol));
    const CheatResult cheat = optimal_cheat(a);
    rows.push_back(check_row(id, "lambda_max", cheat.lambda_max, p_acc_exact,
                             cheat.lambda_max >= p_acc_exact - kCheckTol));
  }
  rows.push_back(exact_row(id, "alpha", alpha(params)));
  rows.push_back(exact_row(id, "beta1", beta1(params)));
  rows.push_back(exact_row(id, "beta2", beta2(params)));
  try {
    const double qs = optimal_q(params);
    rows.push_back(exact_row(id, "q_star", qs));
    ProtocolParams at_star = params;
    at_star.q = std::min(1.0, qs);
    rows.push_back(check_row(id, "delta1-delta2_at_q_star",
                             delta1(at_star) - delta2(at_star), 1e-12,
                             std::abs(delta1(at_star) - delta2(at_star)) <= 1e-12));
    rows.push_back(exact_row(id, "delta", protocol_gap(params)));
  } catch (const std::domain_error&) {
    // degenerate parameter corner; the formula rows are omitted
  }

  const auto samples = parallel_shots(spec.shots, shot_base, [&](long, RngStream& rng) {
    return arthur_verify(pattern, params, state, rng) ? 1.0 : 0.0;
  });
  rows.insert(rows.begin(), mc_row(id, "p_acc", p_acc_exact, mc_rate(samples), spec.shots));
  rows.insert(rows.begin() + 1, exact_row(id, "q", params.q));
  return rows;
}

std::vector<ReportRow> run_lh(const ExperimentSpec& spec) {
  const LocalHamiltonian h = resolve_hamiltonian(spec.hamiltonian_path);
  const PauliEnsemble ens = assemble_ensemble(h);
  RngStream root(spec.seed);
  RngStream witness_rng = root.child(0);
  const RngStream shot_base = root.child(1);

  const std::string id = fmt::format("lh-verify seed={}", spec.seed);
  std::vector<ReportRow> rows;

  const Eigen::MatrixXcd dense = h.to_dense();
  const double recon_err = (ens.reconstruct_dense() - dense).cwiseAbs().maxCoeff();
  rows.push_back(check_row(id, "reconstruction_error", recon_err, kExactTol,
                           recon_err <= kExactTol));
  rows.push_back(exact_row(id, "total_weight", ens.total_weight));

  const GroundState ground = ground_energy_exact(h);
  rows.push_back(exact_row(id, "ground_energy", ground.energy));

  QuantumState state = (spec.witness.empty() || spec.witness == "ground")
                           ? ground.state
                           : make_witness(spec.witness, h.n, witness_rng);
  const double energy = ensemble_energy(state, ens);
  rows.push_back(exact_row(id, "state_energy", energy));
  const double p_acc = exact_acceptance(state, ens);

  // Promise: user-supplied, else oracle-generated from the dense
  // spectrum (E_a = ground energy, E_b = next distinct level).
  EnergyPromise promise;
  std::string promise_label = "lh_gap";
  if (spec.promise) {
    promise = *spec.promise;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
    double next = ground.energy;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > ground.energy + 1e-9) {
        next = es.eigenvalues()(i);
        break;
      }
    }
    if (next <= ground.energy) {
      next = ground.energy + 1.0;  // degenerate full spectrum; synthetic promise
    }
    promise = {ground.energy, next};
    promise_label = "lh_gap(oracle-promise)";
  }
  const double gap = lh_gap(ens, promise);
  rows.push_back(exact_row(id, promise_label, gap));
  // Acceptance bounds at the promise endpoints.
  const double p_yes_floor = 0.5 - promise.e_a / (2.0 * ens.total_weight);
  const double p_no_ceiling = 0.5 - promise.e_b / (2.0 * ens.total_weight);
  rows.push_back(exact_row(id, "p_acc_yes_floor", p_yes_floor));
  rows.push_back(exact_row(id, "p_acc_no_ceiling", p_no_ceiling));
  // The instance must sit on one side of the promise.
  const bool yes_side = ground.energy <= promise.e_a + 1e-12;
  const bool no_side = ground.energy >= promise.e_b - 1e-12;
  rows.push_back(check_row(id, yes_side ? "promise_side=yes" : "promise_side=no",
                           ground.energy, yes_side ? promise.e_a : promise.e_b,
                           yes_side || no_side));
  if (yes_side && energy <= promise.e_a + 1e-12) {
    rows.push_back(check_row(id, "acc_clears_yes_floor", p_acc, p_yes_floor,
                             p_acc >= p_yes_floor - 1e-10));
  }
  if (energy >= promise.e_b - 1e-12) {
    rows.push_back(check_row(id, "acc_below_no_ceiling", p_acc, p_no_ceiling,
                             p_acc <= p_no_ceiling + 1e-10));
  }

  const auto samples = parallel_shots(spec.shots, shot_base, [&](long, RngStream& rng) {
    return verify_once(state, ens, rng) ? 1.0 : 0.0;
  });
  rows.insert(rows.begin(), mc_row(id, "p_acc", p_acc, mc_rate(samples), spec.shots));
  return rows;
}

std::vector<ReportRow> run_estimate(const ExperimentSpec& spec) {
  const LocalHamiltonian h = resolve_hamiltonian(spec.hamiltonian_path);
  const PauliEnsemble ens = assemble_ensemble(h);
  RngStream root(spec.seed);
  RngStream witness_rng = root.child(0);
  RngStream est_rng = root.child(1);

  const GroundState ground = ground_energy_exact(h);
  const QuantumState state = (spec.witness.empty() || spec.witness == "ground")
                                 ? ground.state
                                 : make_witness(spec.witness, h.n, witness_rng);
  const double exact = ensemble_energy(state, ens);

  const EnergyEstimate est =
      estimate_energy([&]() { return state; }, ens, spec.shots, est_rng);

  const std::string id = fmt::format("estimate-energy seed={}", spec.seed);
  ReportRow row;
  row.experiment = id;
  row.metric = "energy";
  row.exact = exact;
  row.mc = est.estimate;
  row.mc_stderr = est.std_error;
  row.shots = est.shots;
  row.bound = 4.0 * est.std_error + kCheckTol;
  row.ok = std::abs(est.estimate - exact) <= *row.bound;
  return {row};
}

std::vector<ReportRow> run_gap_report(const ExperimentSpec& spec) {
  std::vector<ReportRow> rows;
  for (long x = spec.x_min; x <= spec.x_max; ++x) {
    const ProtocolParams p = ProtocolParams::for_instance_size(x);
    const std::string id = fmt::format("gap-report x={}", x);
    const double qs = optimal_q(p);
    const double gap = protocol_gap(p);
    const double floor = gap_floor(x);
    rows.push_back(exact_row(id, "epsilon", p.epsilon));
    rows.push_back(exact_row(id, "q_star", qs));
    ProtocolParams at_star = p;
    at_star.q = std::min(1.0, qs);
    const double equalization = delta1(at_star) - delta2(at_star);
    rows.push_back(check_row(id, "delta1-delta2", equalization, 1e-12,
                             std::abs(equalization) <= 1e-12));
    rows.push_back(check_row(id, "delta", gap, floor, gap >= floor - 1e-15));
  }
  return rows;
}

}  // namespace

std::vector<ReportRow> sweep(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ReportRow> rows;
  RngStream root(spec.seed);
  RngStream witness_rng = root.child(0);

  // Gap surfaces over q at fixed epsilon, with the interpolated crossing.
  ProtocolParams params;
  params.epsilon = spec.epsilon.value_or(1.0 / 32.0);
  const std::string gap_id = fmt::format("sweep-gap eps={}", format_double(params.epsilon));
  double prev_diff = 0.0;
  double prev_q = 0.0;
  std::optional<double> crossing;
  for (int i = 0; i < spec.sweep_steps; ++i) {
    const double q = static_cast<double>(i) / (spec.sweep_steps - 1);
    params.q = q;
    const double d1 = delta1(params);
    const double d2 = delta2(params);
    rows.push_back(exact_row(gap_id, fmt::format("delta1@q={:.6f}", q), d1));
    rows.push_back(exact_row(gap_id, fmt::format("delta2@q={:.6f}", q), d2));
    const double diff = d1 - d2;
    if (i > 0 && !crossing && ((prev_diff <= 0.0 && diff >= 0.0) ||
                               (prev_diff >= 0.0 && diff <= 0.0))) {
      const double t = prev_diff == diff ? 0.0 : prev_diff / (prev_diff - diff);
      crossing = prev_q + t * (q - prev_q);
    }
    prev_diff = diff;
    prev_q = q;
  }
  if (crossing) {
    const double qs = optimal_q(params);
    rows.push_back(check_row(gap_id, "q_crossing", *crossing, qs,
                             std::abs(*crossing - qs) <= kCheckTol));
  }

  // Noise-mixing sweep on a graph: p_pass must fall monotonically.
  if (!spec.graph_path.empty()) {
    const VerificationGraph g = resolve_graph(spec.graph_path);
    QuantumState honest;
    if (g.v2.empty()) {
      honest = honest_state(g, nullptr);
    } else {
      const QuantumState witness =
          make_witness(spec.witness, static_cast<int>(g.v2.size()), witness_rng);
      honest = honest_state(g, &witness);
    }
    const std::string mix_id = "sweep-mix";
    bool monotone = true;
    double prev = 2.0;
    for (int i = 0; i < spec.sweep_steps; ++i) {
      const double mix = static_cast<double>(i) / (spec.sweep_steps - 1);
      const double p = exact_pass_probability(g, mix_with_noise(honest, mix));
      rows.push_back(exact_row(mix_id, fmt::format("p_pass@mix={:.6f}", mix), p));
      if (i > 0 && p > prev + 1e-12) {
        monotone = false;
      }
      prev = p;
    }
    rows.push_back(check_row(mix_id, "mix_monotone", monotone ? 1.0 : 0.0, 1.0, monotone));
  }

  // q sweep on a circuit: overall acceptance of the honest state is
  // affine in q; checked through the dense acceptance operator.
  if (!spec.circuit_path.empty()) {
    const VerifierCircuit circuit = VerifierCircuit::load(spec.circuit_path);
    const MeasurementPattern pattern = compile_pattern(circuit);
    const QuantumState* witness_ptr = nullptr;
    QuantumState witness;
    if (circuit.n_witness > 0) {
      witness = make_witness(spec.witness, circuit.n_witness, witness_rng);
      witness_ptr = &witness;
    }
    const QuantumState honest = honest_prover_state(pattern, witness_ptr);
    const std::string q_id = "sweep-q";
    std::vector<double> values;
    for (int i = 0; i < spec.sweep_steps; ++i) {
      const double q = static_cast<double>(i) / (spec.sweep_steps - 1);
      const Eigen::MatrixXcd a = acceptance_operator(pattern, circuit, q);
      const double p = expectation(honest, a);
      values.push_back(p);
      rows.push_back(exact_row(q_id, fmt::format("p_acc@q={:.6f}", q), p));
    }
    double max_residual = 0.0;
    const double lo = values.front();
    const double hi = values.back();
    for (int i = 0; i < spec.sweep_steps; ++i) {
      const double t = static_cast<double>(i) / (spec.sweep_steps - 1);
      max_residual = std::max(max_residual, std::abs(values[static_cast<std::size_t>(i)] -
                                                     (lo + t * (hi - lo))));
    }
    rows.push_back(check_row(q_id, "q_affine_residual", max_residual, kCheckTol,
                             max_residual <= kCheckTol));
  }
  return rows;
}

std::vector<ReportRow> run(const ExperimentSpec& spec) {
  spec.validate();
  switch (spec.protocol) {
    case ExperimentSpec::Protocol::StabOnly:
      return run_stab(spec);
    case ExperimentSpec::Protocol::Mbqc:
      return run_mbqc(spec);
    case ExperimentSpec::Protocol::Lh:
      return run_lh(spec);
    case ExperimentSpec::Protocol::EstimateEnergy:
      return run_estimate(spec);
    case ExperimentSpec::Protocol::GapReport:
      return run_gap_report(spec);
    case ExperimentSpec::Protocol::Sweep:
      return sweep(spec);
  }
  throw std::logic_error("run: unhandled protocol");
}

}  // namespace sqmv
