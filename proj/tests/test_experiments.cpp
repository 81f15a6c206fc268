// Copyright 2026 The vdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vdsim/circuit.hpp"
#include "vdsim/generators.hpp"
#include "vdsim/models.hpp"
#include "vdsim/qdrift.hpp"
#include "vdsim/random.hpp"
#include "vdsim/sweep.hpp"

using namespace vdsim;

namespace {

const std::optional<double>* find_td(const std::vector<SweepRow>& rows, std::size_t start, const std::string& M) {
  for (std::size_t i = start; i < rows.size(); ++i) {
    if (rows[i].M == M) return &rows[i].trace_distance;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("scrambler construction") {
  Rng rng(1);
  const Circuit c = gen_scrambler(6, 10, true, rng);
  CHECK(c.two_qubit_count() == 25);
  Rng a(42), b(42);
  CHECK(circuit_to_json(gen_scrambler(5, 7, true, a)) == circuit_to_json(gen_scrambler(5, 7, true, b)));
  Rng n(3);
  const Circuit ne = gen_scrambler(6, 10, false, n);
  CHECK(ne.two_qubit_count() == 25);
  for (const auto& op : ne.ops()) {
    if (op.gate.arity() == 2) CHECK(op.gate.is_identity());
  }
  const auto rho = simulate_noisy(ne, NoiseSpec::depolarizing(0.01), DensityMatrixd::basis(6, 0));
  const auto analytic = nonentangling_final_state(product_state_factors(ne), 0.01, 10);
  CHECK((rho.matrix() - analytic.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Heisenberg Trotter circuits") {
  HeisenbergParams hp;
  CHECK(gen_heisenberg_trotter(6, 90, hp).two_qubit_count() == 450);
  CHECK_THROWS_AS(gen_heisenberg_trotter(6, 0, hp), ValidationError);

  // Hamiltonian against a Pauli-string oracle.
  const int N = 4;
  ComplexMatrixd H = ComplexMatrixd::Zero(16, 16);
  auto word = [&](int i, char a, int j, char b) {
    std::string s(N, 'I');
    s[static_cast<std::size_t>(i)] = a;
    if (j >= 0) s[static_cast<std::size_t>(j)] = b;
    return oracle::pauli_string(s);
  };
  for (int i = 0; i + 1 < N; ++i) H += word(i, 'X', i + 1, 'X') + word(i, 'Y', i + 1, 'Y') + 1.5 * word(i, 'Z', i + 1, 'Z');
  for (int i = 0; i < N; ++i) H += word(i, 'X', -1, 'I');
  CHECK((heisenberg_hamiltonian(N, hp) - H).cwiseAbs().maxCoeff() < 1e-14);

  // A single tiny step is the identity up to O(||H|| dt), and matches exp(-iH dt)
  // up to the O(dt^2) Trotter error.
  hp.dt = 1e-5;
  const ComplexMatrixd u = circuit_unitary(gen_heisenberg_trotter(N, 1, hp));
  const double hnorm = H.operatorNorm();
  CHECK((u - ComplexMatrixd::Identity(16, 16)).operatorNorm() <= hnorm * hp.dt * (1 + 1e-6));
  CHECK((u - expm_hermitian(H, hp.dt)).cwiseAbs().maxCoeff() < 1e-8);

  // First-order Trotter error at fixed total time.
  std::vector<double> dts, errs;
  const double total = 1.0;
  for (int steps : {10, 20, 40, 80}) {
    HeisenbergParams p;
    p.dt = total / steps;
    const auto psi = simulate_pure(gen_heisenberg_trotter(N, steps, p), neel_state(N));
    const ComplexVectord exact = expm_hermitian(H, total) * neel_state(N).amplitudes();
    dts.push_back(p.dt);
    errs.push_back(trace_distance(psi, PureStated::from_amplitudes(exact)));
  }
  CHECK(std::abs(fit_loglog_slope(dts, errs) - 1.0) < 0.2);
}

TEST_CASE("periodic boundary and random-sign fields") {
  HeisenbergParams hp;
  hp.boundary = Boundary::Periodic;
  hp.field_pattern = FieldPattern::RandomSignZ;
  hp.field_signs = {1, -1, -1, 1};
  CHECK(gen_heisenberg_trotter(4, 3, hp).two_qubit_count() == 12);
  const ComplexMatrixd H = heisenberg_hamiltonian(4, hp);
  CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(H.trace()) < 1e-12);
  hp.field_signs = {1, 2, 1, 1};
  CHECK_THROWS_AS(hp.validate(), ValidationError);
}

TEST_CASE("magnetization error") {
  Rng rng(2);
  const auto ideal = random_pure_state<double>(3, rng);
  CHECK(magnetization_error(dm_from_pure(ideal), ideal) < 1e-14);
  for (int k = 0; k < 10; ++k) {
    const auto rho = random_density_matrix<double>(3, rng);
    CHECK(magnetization_error(rho, ideal) <= 2.0 * trace_distance(rho, ideal) + 1e-9);
  }
  const auto m = magnetization_error({{"1", dm_from_pure(ideal)}, {"x", DensityMatrixd::maximally_mixed(3)}}, ideal);
  CHECK(m.at("1") < 1e-14);
  CHECK(m.at("x") > 0.0);
}

TEST_CASE("qDRIFT channel") {
  // One term: the channel is the exact unitary for every eta.
  QDriftTerm term{2.0, PauliObservable::parse("XY")};
  for (long eta : {1L, 3L, 64L}) {
    const auto model = QDriftModel::make({term}, 0.7, eta);
    const auto rho = qdrift_evolve_exact(model, DensityMatrixd::basis(2, 0));
    const ComplexVectord want = expm_hermitian(model_hamiltonian(model), 0.7) * PureStated::basis(2, 0).amplitudes();
    CHECK(trace_distance(rho, PureStated::from_amplitudes(want)) < 1e-12);
  }

  // Output is a valid state at every eta, and the error falls as 1/eta.
  std::vector<double> etas, dist;
  for (int k = 4; k <= 10; ++k) {
    const auto model = qdrift_ring_model(3, 1.0, 0.25, 1L << k, {1, -1, 1});
    const auto rho = qdrift_evolve_exact(model, dm_from_pure(neel_state(3)));
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(spectrum(rho).values.minCoeff() > -1e-12);
    etas.push_back(static_cast<double>(1L << k));
    dist.push_back(qdrift_distances(model, neel_state(3)).plain);
  }
  CHECK(std::abs(fit_loglog_slope(etas, dist) + 1.0) < 0.15);

  // Exact channel against a dense average over all terms.
  const auto model = qdrift_ring_model(2, 1.0, 0.5, 3, {1, -1});
  ComplexMatrixd rho = dm_from_pure(neel_state(2)).matrix();
  const double tau = model.lambda * model.t / static_cast<double>(model.eta);
  for (long s = 0; s < model.eta; ++s) {
    ComplexMatrixd next = ComplexMatrixd::Zero(4, 4);
    for (const auto& t : model.terms) {
      const ComplexMatrixd p = oracle::pauli_string(oracle::letters(t.op)) * t.op.coefficient();
      const ComplexMatrixd u = expm_hermitian(p, tau);
      next += (t.weight / model.lambda) * u * rho * u.adjoint();
    }
    rho = next;
  }
  CHECK((qdrift_evolve_exact(model, dm_from_pure(neel_state(2))).matrix() - rho).cwiseAbs().maxCoeff() < 1e-12);

  // Sampled product formulas converge to the channel.
  Rng rng(3);
  const auto sampled = qdrift_evolve_sampled(model, dm_from_pure(neel_state(2)), 10000, rng);
  CHECK((sampled.mean.matrix() - rho).norm() < 3.0 * sampled.frobenius_standard_error);
  CHECK(sampled.frobenius_standard_error < 0.02);
}

TEST_CASE("qDRIFT step-count search") {
  const auto trivial = qdrift_eta_search(3, 1.0, 3.0, 1.0, std::vector<double>{1, 1, -1});
  CHECK(trivial.eta_plain == 1);
  CHECK(trivial.eta_vd == 1);
  Rng rng(4);
  for (int N : {3, 4}) {
    for (int k = 0; k < 3; ++k) {
      const auto r = qdrift_eta_search(N, 1.0, static_cast<double>(N), 0.01, rng);
      CHECK(r.eta_vd <= r.eta_plain);
      CHECK(r.t_plain <= 0.01);
      CHECK(r.t_vd <= 0.01);
      const auto below = qdrift_distances(qdrift_ring_model(N, 1.0, N, r.eta_plain - 1, r.field_signs), neel_state(N));
      CHECK(below.plain > 0.01);
    }
  }
  CHECK_THROWS_AS(qdrift_eta_search(3, 1.0, 3.0, 1e-9, std::vector<double>{1, 1, 1}, 1024), ResourceError);
  CHECK_THROWS_AS(qdrift_eta_search(1, 1.0, 1.0, 0.01, std::vector<double>{1}), ValidationError);
}

TEST_CASE("error-scaling sweeps") {
  SweepConfig c;
  c.family = Family::ScramblerNonentangling;
  c.qubits = {4};
  c.depths = {6, 10};
  c.noise = NoiseSpec::depolarizing(0.01);
  c.magnetization = true;
  c.seed = 5;
  const auto rows = error_scaling_sweep(c);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    if (r.M == "inf") CHECK(*r.trace_distance < 1e-8);
    CHECK(*r.mag_error <= 2.0 * *r.trace_distance + 1e-9);
  }
  CHECK(rows == error_scaling_sweep(c));
  c.threads = 3;
  CHECK(rows == error_scaling_sweep(c));

  c.noise = NoiseSpec::depolarizing(0.0);
  for (const auto& r : error_scaling_sweep(c)) CHECK(*r.trace_distance < 1e-12);

  // Rate axis shares one circuit per qubit count; amp_damp_dephase splits the rate.
  SweepConfig a;
  a.family = Family::ScramblerEntangling;
  a.qubits = {3};
  a.axis = SweepAxis::Rate;
  a.depth = 8;
  a.rates = {1e-3, 2e-3};
  a.noise = NoiseSpec::amp_damp_dephase(0, 0);
  a.copies = {2};
  a.overhead = true;
  const auto ar = error_scaling_sweep(a);
  REQUIRE(ar.size() == 4);
  CHECK(ar[0].G == ar[2].G);
  CHECK(ar[0].expected_errors == doctest::Approx(2.0 * ar[0].G * 1e-3));
  CHECK(ar[0].overhead.has_value());
  CHECK_FALSE(ar[1].overhead.has_value());
}

TEST_CASE("distilled distances order and converge") {
  // Away from the floor, more copies never hurt.
  for (Family fam : {Family::ScramblerEntangling, Family::Heisenberg}) {
    SweepConfig c;
    c.family = fam;
    c.qubits = {4};
    c.depths = {20, 40};
    c.noise = NoiseSpec::depolarizing(2e-3);
    c.seed = 6;
    const auto rows = error_scaling_sweep(c);
    for (std::size_t i = 0; i < rows.size(); i += 4) {
      const double t2 = **find_td(rows, i, "2"), t3 = **find_td(rows, i, "3"), tinf = **find_td(rows, i, "inf");
      if (t2 > 10 * tinf && t3 > 10 * tinf) CHECK(t3 <= t2 + 1e-9);
      CHECK(**find_td(rows, i, "1") > t2);
    }
  }
  // T(M) approaches T(inf) monotonically for M = 4, 8, 16.
  Rng rng(7);
  for (int k = 0; k < 5; ++k) {
    Circuit c = gen_scrambler(3, 12, true, rng);
    const auto ideal = simulate_pure(c, PureStated::basis(3, 0));
    const auto rho = simulate_noisy(c, NoiseSpec::depolarizing(0.01), DensityMatrixd::basis(3, 0));
    const double tinf = trace_distance(dominant_eigenpair(rho).vector, ideal);
    double prev = 1e300;
    for (int M : {4, 8, 16}) {
      const double gap = std::abs(trace_distance(normalized_power(rho, M), ideal) - tinf);
      CHECK(gap <= prev);
      prev = gap;
    }
    CHECK(prev < 1e-6);
  }
}

TEST_CASE("slope fit") {
  CHECK(fit_loglog_slope({1, 10, 100}, {2, 200, 20000}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(fit_loglog_slope({1}, {1}), ValidationError);
  CHECK_THROWS_AS(fit_loglog_slope({1, 2}, {1, 0}), ValidationError);
}
