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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqmv/graph.hpp"
#include "sqmv/localham.hpp"
#include "sqmv/mbqc.hpp"
#include "sqmv/rng.hpp"

namespace sqmv {

/// One report line: an exact quantity, optionally its Monte Carlo
/// companion with standard error and shot count, and a bound check.
struct ReportRow {
  std::string experiment;
  std::string metric;
  std::optional<double> exact;
  std::optional<double> mc;
  std::optional<double> mc_stderr;
  std::optional<long> shots;
  std::optional<double> bound;
  std::optional<bool> ok;
};

enum class ReportFormat { Csv, Json };

/// Serializes rows with the fixed "#schema=1" header. Formatting is
/// locale-free and byte-stable for identical inputs.
std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format);
void write_report(const std::string& path, const std::vector<ReportRow>& rows,
                  ReportFormat format);

struct ExperimentSpec {
  enum class Protocol { StabOnly, Mbqc, Lh, EstimateEnergy, GapReport, Sweep };

  Protocol protocol = Protocol::StabOnly;
  std::string graph_path;        // or "builtin:<name>"
  std::string circuit_path;
  std::string hamiltonian_path;  // or "builtin:<name>"
  std::string witness = "random";  // "random", "plus", or a bit string
  double mix = 0.0;              // weight of maximally mixed admixture
  std::optional<double> q;
  std::optional<double> epsilon;
  std::optional<EnergyPromise> promise;
  long x_min = 4;
  long x_max = 100;
  int sweep_steps = 21;
  long shots = 10000;
  uint64_t seed = 1;
  std::string out_path;          // empty: stdout
  ReportFormat format = ReportFormat::Csv;

  void validate() const;
};

/// Runs one experiment; all exact quantities are computed before any
/// sampling. Deterministic in (spec, seed), also under parallel shots.
std::vector<ReportRow> run(const ExperimentSpec& spec);

/// Parameter sweeps: q grid for the gap surfaces (with the interpolated
/// crossing against q*), plus noise-mixing and q-affinity grids when a
/// graph resp. circuit is supplied.
std::vector<ReportRow> sweep(const ExperimentSpec& spec);

/// Deterministic parallel map over shots: result[i] comes from
/// worker(i, base.child(i)) regardless of thread schedule.
std::vector<double> parallel_shots(long shots, const RngStream& base,
                                   const std::function<double(long, RngStream&)>& worker);

// Shared helpers for tests and the CLI.
VerificationGraph resolve_graph(const std::string& spec_or_path);
LocalHamiltonian resolve_hamiltonian(const std::string& spec_or_path);
QuantumState make_witness(const std::string& kind, int num_qubits, RngStream& rng);

}  // namespace sqmv
