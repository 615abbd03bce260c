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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sqmv/harness.hpp"

namespace {

struct CliOptions {
  sqmv::ExperimentSpec spec;
  std::string format = "csv";
  std::string promise;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--seed", opt.spec.seed, "Master seed");
  cmd->add_option("--shots", opt.spec.shots, "Monte Carlo shots");
  cmd->add_option("--out", opt.spec.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", opt.format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

CLI::Option* add_witness(CLI::App* cmd, CliOptions& opt) {
  return cmd->add_option("--witness", opt.spec.witness,
                         "Witness: random, mixed, plus, ground (lh), or a bit string");
}

int finish(CliOptions& opt, const std::vector<sqmv::ReportRow>& rows) {
  const sqmv::ReportFormat fmt_kind =
      opt.format == "json" ? sqmv::ReportFormat::Json : sqmv::ReportFormat::Csv;
  if (opt.spec.out_path.empty()) {
    std::cout << sqmv::render_report(rows, fmt_kind);
  } else {
    sqmv::write_report(opt.spec.out_path, rows, fmt_kind);
  }
  for (const auto& r : rows) {
    if (r.ok && !*r.ok) {
      std::cerr << "bound check failed: " << r.experiment << " / " << r.metric << "\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit-measurement verification protocols: simulators and gap analysis"};
  app.require_subcommand(1);

  CliOptions opt;

  auto* stab = app.add_subcommand("stab-test", "Stabilizer test on a verification graph");
  stab->add_option("--graph", opt.spec.graph_path, "Graph JSON file or builtin:<name>")
      ->required();
  stab->add_option("--mix", opt.spec.mix, "Maximally-mixed admixture weight");
  add_witness(stab, opt);
  add_common(stab, opt);

  auto* mbqc = app.add_subcommand("mbqc-run", "Full MBQC protocol on a verifier circuit");
  mbqc->add_option("--circuit", opt.spec.circuit_path, "Circuit JSON file")->required();
  double q_val = -1.0;
  double eps_val = -1.0;
  mbqc->add_option("--q", q_val, "Computation-branch probability (default: q*)");
  mbqc->add_option("--epsilon", eps_val, "Analysis epsilon (default: 1/32)");
  mbqc->add_option("--mix", opt.spec.mix, "Maximally-mixed admixture weight");
  add_witness(mbqc, opt);
  add_common(mbqc, opt);

  auto* lh = app.add_subcommand("lh-verify", "Pauli-sampling Hamiltonian verification");
  lh->add_option("--hamiltonian", opt.spec.hamiltonian_path,
                 "Hamiltonian JSON file or builtin:<name>")
      ->required();
  lh->add_option("--promise", opt.promise, "Promise pair Ea,Eb (default: oracle-derived)");
  auto* lh_wit = add_witness(lh, opt);
  add_common(lh, opt);

  auto* est = app.add_subcommand("estimate-energy", "Single-qubit-measurement energy estimator");
  est->add_option("--hamiltonian", opt.spec.hamiltonian_path,
                  "Hamiltonian JSON file or builtin:<name>")
      ->required();
  auto* est_wit = add_witness(est, opt);
  add_common(est, opt);

  auto* gap = app.add_subcommand("gap-report", "Completeness-soundness gap vs. instance size");
  gap->add_option("--xmin", opt.spec.x_min, "Smallest instance size");
  gap->add_option("--xmax", opt.spec.x_max, "Largest instance size");
  add_common(gap, opt);

  auto* sw = app.add_subcommand("sweep", "Gap surfaces, noise mixing, and q sweeps");
  sw->add_option("--epsilon", eps_val, "Analysis epsilon (default: 1/32)");
  sw->add_option("--graph", opt.spec.graph_path, "Optional graph for the mixing sweep");
  sw->add_option("--circuit", opt.spec.circuit_path, "Optional circuit for the q sweep");
  sw->add_option("--steps", opt.spec.sweep_steps, "Grid points per sweep");
  add_witness(sw, opt);
  add_common(sw, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (q_val >= 0.0) opt.spec.q = q_val;
    if (eps_val >= 0.0) opt.spec.epsilon = eps_val;
    if (!opt.promise.empty()) {
      sqmv::EnergyPromise p;
      if (std::sscanf(opt.promise.c_str(), "%lf,%lf", &p.e_a, &p.e_b) != 2) {
        throw std::invalid_argument("promise must be two numbers: Ea,Eb");
      }
      opt.spec.promise = p;
    }

    using P = sqmv::ExperimentSpec::Protocol;
    if (stab->parsed()) opt.spec.protocol = P::StabOnly;
    if (mbqc->parsed()) opt.spec.protocol = P::Mbqc;
    if (lh->parsed()) {
      opt.spec.protocol = P::Lh;
      if (lh_wit->count() == 0) opt.spec.witness = "ground";
    }
    if (est->parsed()) {
      opt.spec.protocol = P::EstimateEnergy;
      if (est_wit->count() == 0) opt.spec.witness = "ground";
    }
    if (gap->parsed()) opt.spec.protocol = P::GapReport;
    if (sw->parsed()) opt.spec.protocol = P::Sweep;

    return finish(opt, sqmv::run(opt.spec));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
