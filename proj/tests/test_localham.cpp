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

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sqmv/localham.hpp"

using namespace sqmv;

namespace {

LocalHamiltonian x_plus_zz() { return builtin_hamiltonian("x+zz"); }

}  // namespace

TEST_CASE("assemble: single Pauli term") {
  const PauliEnsemble ens = assemble_ensemble(builtin_hamiltonian("zz"));
  REQUIRE(ens.entries.size() == 1);
  CHECK(ens.entries[0].string.to_text() == "ZZ");
  CHECK(ens.entries[0].d == doctest::Approx(1.0));
  CHECK(ens.total_weight == doctest::Approx(1.0));
  CHECK(ens.pi[0] == doctest::Approx(1.0));
}

TEST_CASE("assemble: X0 + Z0Z1 gives the uniform two-entry ensemble") {
  const PauliEnsemble ens = assemble_ensemble(x_plus_zz());
  REQUIRE(ens.entries.size() == 2);
  CHECK(ens.total_weight == doctest::Approx(2.0));
  for (double p : ens.pi) {
    CHECK(p == doctest::Approx(0.5));
  }
}

TEST_CASE("assemble: cancelling contributions are dropped") {
  LocalHamiltonian h;
  h.n = 2;
  h.k = 1;
  h.terms.push_back({{0}, std::vector<LocalPauli>{{"Z", 1.0}}});
  h.terms.push_back({{0}, std::vector<LocalPauli>{{"Z", -1.0}, {"X", 0.5}}});
  const PauliEnsemble ens = assemble_ensemble(h);
  REQUIRE(ens.entries.size() == 1);
  CHECK(ens.entries[0].string.to_text() == "XI");

  LocalHamiltonian zero;
  zero.n = 1;
  zero.k = 1;
  zero.terms.push_back({{0}, std::vector<LocalPauli>{{"Z", 1.0}, {"Z", -1.0}}});
  CHECK_THROWS_AS(assemble_ensemble(zero), std::invalid_argument);
}

TEST_CASE("assemble merges matrix-form and pauli-form terms identically") {
  LocalHamiltonian matrix_form;
  matrix_form.n = 2;
  matrix_form.k = 2;
  matrix_form.terms.push_back({{0}, Eigen::MatrixXcd(oracle::letter('X'))});
  matrix_form.terms.push_back({{0, 1}, Eigen::MatrixXcd(oracle::dense_pauli("ZZ"))});
  const PauliEnsemble a = assemble_ensemble(matrix_form);
  const PauliEnsemble b = assemble_ensemble(x_plus_zz());
  REQUIRE(a.entries.size() == b.entries.size());
  CHECK(oracle::max_abs_diff(a.reconstruct_dense(), b.reconstruct_dense()) < 1e-12);
}

TEST_CASE("ensemble reconstruction matches the dense Hamiltonian") {
  for (const char* name : {"zz", "x+zz", "tfim4", "heisenberg4"}) {
    const LocalHamiltonian h = builtin_hamiltonian(name);
    const PauliEnsemble ens = assemble_ensemble(h);
    REQUIRE(oracle::max_abs_diff(ens.reconstruct_dense(), h.to_dense()) < 1e-10);
  }
}

TEST_CASE("shifted-rescaled spectrum: affine map, shared eigenvectors, [0,1] range") {
  for (const char* name : {"x+zz", "tfim4", "heisenberg4"}) {
    const LocalHamiltonian h = builtin_hamiltonian(name);
    const PauliEnsemble ens = assemble_ensemble(h);
    const double w = ens.total_weight;
    const Eigen::Index dim = Eigen::Index(1) << h.n;
    // H'' = (H + w I) / (2 w), assembled from the projector form
    Eigen::MatrixXcd hpp = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < ens.entries.size(); ++i) {
      const auto& e = ens.entries[i];
      const double sign = e.d >= 0 ? 1.0 : -1.0;
      hpp += ens.pi[i] * 0.5 *
             (Eigen::MatrixXcd::Identity(dim, dim) + sign * e.string.to_dense());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eh(h.to_dense());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ehpp(hpp);
    for (Eigen::Index i = 0; i < dim; ++i) {
      REQUIRE(ehpp.eigenvalues()(i) ==
              doctest::Approx((eh.eigenvalues()(i) + w) / (2 * w)).epsilon(1e-10));
      REQUIRE(ehpp.eigenvalues()(i) >= -1e-10);
      REQUIRE(ehpp.eigenvalues()(i) <= 1.0 + 1e-10);
    }
    // the ground state of H is the ground state of H''
    const GroundState g = ground_energy_exact(h);
    const double r = expectation(g.state, hpp);
    REQUIRE(r == doctest::Approx((g.energy + w) / (2 * w)).epsilon(1e-10));
  }
}

TEST_CASE("sample_term frequencies follow pi") {
  LocalHamiltonian h;
  h.n = 2;
  h.k = 1;
  h.terms.push_back({{0}, std::vector<LocalPauli>{{"X", 3.0}}});
  h.terms.push_back({{1}, std::vector<LocalPauli>{{"Z", 1.0}}});
  const PauliEnsemble ens = assemble_ensemble(h);
  RngStream rng(101);
  const long shots = 40000;
  std::vector<long> counts(ens.entries.size(), 0);
  for (long i = 0; i < shots; ++i) {
    ++counts[sample_term(ens, rng)];
  }
  for (std::size_t i = 0; i < ens.entries.size(); ++i) {
    const double rate = static_cast<double>(counts[i]) / shots;
    const double sigma = std::sqrt(ens.pi[i] * (1 - ens.pi[i]) / shots);
    CHECK(std::abs(rate - ens.pi[i]) <= 4 * sigma);
  }
}

TEST_CASE("measure_term: deterministic outcomes on ZZ eigenstates") {
  const PauliEnsemble ens = assemble_ensemble(builtin_hamiltonian("zz"));
  RngStream rng(103);
  const QuantumState anti = QuantumState::basis_state("01");
  const QuantumState aligned = QuantumState::basis_state("00");
  for (int i = 0; i < 50; ++i) {
    CHECK(measure_term(anti, ens.entries[0], rng) == 0);
    CHECK(measure_term(aligned, ens.entries[0], rng) == 1);
  }
}

TEST_CASE("identity entries contribute deterministically") {
  LocalHamiltonian h;
  h.n = 1;
  h.k = 1;
  h.terms.push_back({{0}, std::vector<LocalPauli>{{"I", 2.0}, {"X", 1.0}}});
  const PauliEnsemble ens = assemble_ensemble(h);
  const PauliEnsemble::Entry* id_entry = nullptr;
  for (const auto& e : ens.entries) {
    if (e.string.is_identity_letters()) id_entry = &e;
  }
  REQUIRE(id_entry != nullptr);
  CHECK(id_entry->d == doctest::Approx(2.0));
  RngStream rng(107);
  const QuantumState s = QuantumState::plus_state(1);
  for (int i = 0; i < 20; ++i) {
    CHECK(measure_term(s, *id_entry, rng) == 1);  // r = (1 + sign)/2 = 1
  }
  // affine relation with the identity entry present: <H> = 3 on |+>,
  // sum |d| = 3, so acceptance is 1 - (3 + 3)/6 = 0
  const double exact = exact_acceptance(s, ens);
  CHECK(exact == doctest::Approx(0.0));
}

TEST_CASE("exact acceptance values and Monte Carlo agreement") {
  const PauliEnsemble zz = assemble_ensemble(builtin_hamiltonian("zz"));
  const QuantumState anti = QuantumState::basis_state("01");
  CHECK(exact_acceptance(anti, zz) == doctest::Approx(1.0).epsilon(1e-12));
  const QuantumState pp = QuantumState::plus_state(2);
  CHECK(exact_acceptance(pp, zz) == doctest::Approx(0.5).epsilon(1e-12));

  const LocalHamiltonian h = x_plus_zz();
  const PauliEnsemble ens = assemble_ensemble(h);
  const GroundState g = ground_energy_exact(h);
  CHECK(g.energy == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  const double exact = exact_acceptance(g.state, ens);
  CHECK(exact == doctest::Approx(0.5 + std::sqrt(2.0) / 4.0).epsilon(1e-10));

  RngStream rng(109);
  long hits = 0;
  const long shots = 20000;
  for (long i = 0; i < shots; ++i) {
    if (verify_once(g.state, ens, rng)) ++hits;
  }
  const double rate = static_cast<double>(hits) / shots;
  const double sigma = std::sqrt(exact * (1 - exact) / shots);
  CHECK(std::abs(rate - exact) <= 4 * sigma);
}

TEST_CASE("acceptance is never perfect off the Pauli eigenbasis") {
  const LocalHamiltonian h = x_plus_zz();
  const PauliEnsemble ens = assemble_ensemble(h);
  const GroundState g = ground_energy_exact(h);
  CHECK(exact_acceptance(g.state, ens) < 1.0 - 1e-3);
}

TEST_CASE("E[r] equals the ensemble expectation of H''") {
  RngStream rng(113);
  const LocalHamiltonian h = builtin_hamiltonian("tfim4");
  const PauliEnsemble ens = assemble_ensemble(h);
  const QuantumState s = QuantumState::random(4, QuantumState::Purity::Pure, rng);
  // exact: sum_S pi_S <P_S> = (sum_S pi_S (1 + sign <S>)) / 2
  double want = 0.0;
  for (std::size_t i = 0; i < ens.entries.size(); ++i) {
    const auto& e = ens.entries[i];
    const double sign = e.d >= 0 ? 1.0 : -1.0;
    want += ens.pi[i] * 0.5 * (1.0 + sign * expectation(s, e.string));
  }
  CHECK(want == doctest::Approx(1.0 - exact_acceptance(s, ens)).epsilon(1e-12));

  double sum_r = 0.0;
  const long shots = 20000;
  for (long i = 0; i < shots; ++i) {
    const std::size_t idx = sample_term(ens, rng);
    sum_r += measure_term(s, ens.entries[idx], rng);
  }
  const double mean = sum_r / shots;
  const double sigma = std::sqrt(want * (1 - want) / shots);
  CHECK(std::abs(mean - want) <= 4 * sigma);
}

TEST_CASE("energy estimator: deterministic case is exact with zero error") {
  const PauliEnsemble ens = assemble_ensemble(builtin_hamiltonian("zz"));
  const QuantumState anti = QuantumState::basis_state("01");
  RngStream rng(127);
  const EnergyEstimate est = estimate_energy([&]() { return anti; }, ens, 200, rng);
  CHECK(est.estimate == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("energy estimator: ground state of X0 + Z0Z1 within 4 reported errors") {
  const LocalHamiltonian h = x_plus_zz();
  const PauliEnsemble ens = assemble_ensemble(h);
  const GroundState g = ground_energy_exact(h);
  RngStream rng(131);
  const EnergyEstimate est = estimate_energy([&]() { return g.state; }, ens, 100000, rng);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.estimate - g.energy) <= 4 * est.std_error);
}

TEST_CASE("energy estimator: symmetric case averages to zero") {
  const PauliEnsemble ens = assemble_ensemble(single_term_hamiltonian(1, "Z", 1.0));
  const QuantumState plus = QuantumState::plus_state(1);
  RngStream rng(137);
  const EnergyEstimate est = estimate_energy([&]() { return plus; }, ens, 50000, rng);
  CHECK(std::abs(est.estimate - 0.0) <= 4 * est.std_error);
  CHECK_THROWS_AS(estimate_energy([&]() { return plus; }, ens, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("lh gap: formula values and scale invariance") {
  const PauliEnsemble zz = assemble_ensemble(builtin_hamiltonian("zz"));
  CHECK(lh_gap(zz, {-1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));

  const PauliEnsemble ens = assemble_ensemble(x_plus_zz());
  CHECK(lh_gap(ens, {-std::sqrt(2.0), -1.0}) ==
        doctest::Approx((std::sqrt(2.0) - 1.0) / 4.0).epsilon(1e-12));

  // scaling H by c > 0 leaves the gap invariant
  LocalHamiltonian scaled;
  scaled.n = 2;
  scaled.k = 2;
  scaled.terms.push_back({{0}, std::vector<LocalPauli>{{"X", 3.0}}});
  scaled.terms.push_back({{0, 1}, std::vector<LocalPauli>{{"ZZ", 3.0}}});
  const PauliEnsemble ens3 = assemble_ensemble(scaled);
  CHECK(lh_gap(ens3, {3 * -std::sqrt(2.0), 3 * -1.0}) ==
        doctest::Approx((std::sqrt(2.0) - 1.0) / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(lh_gap(ens, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("acceptance bounds from the promise endpoints hold against dense spectra") {
  for (const char* name : {"x+zz", "tfim4", "heisenberg4"}) {
    const LocalHamiltonian h = builtin_hamiltonian(name);
    const PauliEnsemble ens = assemble_ensemble(h);
    const double w = ens.total_weight;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
    const double e0 = es.eigenvalues().minCoeff();
    const double etop = es.eigenvalues().maxCoeff();

    // yes case: the ground state accepts with at least 1/2 - E_a/(2 w)
    const GroundState g = ground_energy_exact(h);
    CHECK(exact_acceptance(g.state, ens) >= 0.5 - e0 / (2 * w) - 1e-10);

    // no case: every eigenstate with energy >= E_b accepts with at most
    // 1/2 - E_b/(2 w); spot-check the full eigenbasis
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      Eigen::VectorXcd v = es.eigenvectors().col(i);
      v.normalize();
      const QuantumState eigst = QuantumState::pure(v);
      const double acc = exact_acceptance(eigst, ens);
      REQUIRE(acc <= 0.5 - es.eigenvalues()(i) / (2 * w) + 1e-10);
      REQUIRE(acc >= 0.5 - etop / (2 * w) - 1e-10);
    }
  }
}

TEST_CASE("hamiltonian json round trip, including matrix terms") {
  LocalHamiltonian h;
  h.n = 3;
  h.k = 2;
  h.terms.push_back({{0, 2}, std::vector<LocalPauli>{{"XZ", -0.75}}});
  Eigen::MatrixXcd m(2, 2);
  m << 0.25, std::complex<double>(0, 0.5), std::complex<double>(0, -0.5), -0.25;
  h.terms.push_back({{1}, m});
  const LocalHamiltonian h2 = LocalHamiltonian::from_json(h.to_json());
  CHECK(oracle::max_abs_diff(h2.to_dense(), h.to_dense()) < 1e-12);
}

TEST_CASE("hamiltonian validation") {
  LocalHamiltonian h;
  h.n = 2;
  h.k = 1;
  h.terms.push_back({{0, 1}, std::vector<LocalPauli>{{"ZZ", 1.0}}});
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);  // violates locality

  LocalHamiltonian dup;
  dup.n = 2;
  dup.k = 2;
  dup.terms.push_back({{0, 0}, std::vector<LocalPauli>{{"ZZ", 1.0}}});
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  LocalHamiltonian bad_word;
  bad_word.n = 2;
  bad_word.k = 2;
  bad_word.terms.push_back({{0, 1}, std::vector<LocalPauli>{{"Z", 1.0}}});
  CHECK_THROWS_AS(assemble_ensemble(bad_word), std::invalid_argument);

  LocalHamiltonian non_herm;
  non_herm.n = 1;
  non_herm.k = 1;
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 0, 0;
  non_herm.terms.push_back({{0}, m});
  CHECK_THROWS_AS(non_herm.validate(), std::invalid_argument);
}

TEST_CASE("tfim ground energy agrees with the dense oracle") {
  const LocalHamiltonian h = tfim_chain(4, 1.0);
  const GroundState g = ground_energy_exact(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
  CHECK(g.energy == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-12));
  CHECK(expectation(g.state, h.to_dense()) == doctest::Approx(g.energy).epsilon(1e-10));
}
