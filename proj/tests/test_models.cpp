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

#include "vdsim/circuit.hpp"
#include "vdsim/generators.hpp"
#include "vdsim/models.hpp"
#include "vdsim/random.hpp"
#include "vdsim/sweep.hpp"

using namespace vdsim;

namespace {

// Phenomenological model simulated directly: every error pattern over G gates
// leaves the register in its own orthogonal state, so the output is diagonal
// with one entry per pattern. Fidelity of rho^M/Tr(rho^M) with the error-free
// state is then read off the diagonal.
long double pattern_fidelity(long double p, int G, int M) {
  const std::uint64_t patterns = std::uint64_t{1} << G;
  long double total = 0.0L, ideal = 0.0L;
  for (std::uint64_t k = 0; k < patterns; ++k) {
    const int errors = __builtin_popcountll(k);
    const long double w = std::pow(p, static_cast<long double>(errors)) * std::pow(1.0L - p, static_cast<long double>(G - errors));
    const long double wm = std::pow(w, static_cast<long double>(M));
    total += wm;
    if (k == 0) ideal = wm;
  }
  return ideal / total;
}

DensityMatrixd plus_minus(double a) {
  ComplexVectord plus(2), minus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return DensityMatrixd::from_matrix(a * plus * plus.adjoint() + (1.0 - a) * minus * minus.adjoint());
}

}  // namespace

TEST_CASE("orthogonal error model") {
  const auto zero = orthogonal_model(0.0, 50, 2);
  CHECK(zero.fidelity == 1.0);
  CHECK(zero.purity == 1.0);
  CHECK(orthogonal_model(0.02, 30, 1).fidelity == doctest::Approx(std::pow(0.98, 30)).epsilon(1e-14));
  const auto r = orthogonal_model(0.01, 100, 2);
  // 40-digit evaluation of the closed form: 0.98984934912761421199...
  CHECK(std::abs(r.fidelity - 0.98984934912761421) < 1e-13);
  CHECK(r.first_order_fidelity == doctest::Approx(0.99));
  CHECK(r.sampling_factor == doctest::Approx(std::pow(0.99, -400)).epsilon(1e-12));
  for (int G : {1, 5, 12}) {
    for (int M : {1, 2, 3}) {
      for (double p : {0.001, 0.05, 0.2}) {
        CHECK(std::abs(orthogonal_model(p, G, M).fidelity - static_cast<double>(pattern_fidelity(p, G, M))) < 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(orthogonal_model(-0.1, 5, 2), ValidationError);
}

TEST_CASE("perturbation floor symmetry conditions") {
  const auto d = DensityMatrixd::from_matrix((ComplexMatrixd(2, 2) << 0.9, 0, 0, 0.1).finished());
  for (const auto& ch : {channels::bit_flip(0.01), channels::phase_flip(0.01)}) {
    const auto rep = perturbation_floor(d, ch);
    REQUIRE(rep.gamma.has_value());
    for (double g : *rep.gamma) CHECK(g == 0.0);
    CHECK(rep.predicted_trace_distance == 0.0);
    CHECK(rep.exact_trace_distance < 1e-15);
  }
  CHECK_THROWS_AS(perturbation_floor(DensityMatrixd::maximally_mixed(1), channels::bit_flip(0.1)), DegenerateError);
}

TEST_CASE("perturbation floor is first-order accurate") {
  const auto rho = plus_minus(0.9);
  std::vector<double> g, disc;
  double gamma1 = 1e-3;
  for (int k = 0; k < 5; ++k, gamma1 /= 2) {
    const auto rep = perturbation_floor(rho, channels::amplitude_damping(gamma1));
    CHECK(rep.warning.empty());
    CHECK(rep.predicted_trace_distance > 0.0);
    g.push_back(gamma1);
    disc.push_back(std::abs(rep.predicted_trace_distance - rep.exact_trace_distance));
  }
  CHECK(std::abs(fit_loglog_slope(g, disc) - 2.0) < 0.2);
  // Large perturbations relative to the gap are flagged.
  CHECK_FALSE(perturbation_floor(plus_minus(0.55), channels::amplitude_damping(0.3)).warning.empty());
}

TEST_CASE("non-entangling analytic state") {
  Rng rng(1);
  std::vector<PureStated> states;
  for (int q = 0; q < 4; ++q) states.push_back(random_pure_state<double>(1, rng));
  const auto pure = nonentangling_final_state(states, 0.0, 10);
  CHECK(std::abs(pure.purity() - 1.0) < 1e-14);
  const auto noisy = nonentangling_final_state(states, 0.1, 10);
  PureStated ideal = states[0];
  ComplexVectord v = states[0].amplitudes();
  for (int q = 1; q < 4; ++q) v = tensor(v, states[static_cast<std::size_t>(q)].amplitudes());
  ideal = PureStated::from_amplitudes(v);
  CHECK(trace_distance(dominant_eigenpair(noisy).vector, ideal) < 1e-10);
  CHECK(trace_distance(pure, ideal) < 1e-12);
  CHECK_THROWS_AS(nonentangling_final_state(states, 0.1, 3), ValidationError);
}

TEST_CASE("surface code trade-off") {
  const auto r = surface_code_tradeoff(200, 1000);
  CHECK(r.d1 == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(std::abs(r.one_minus_f1 - 0.2712) < 1e-3);
  CHECK(std::abs(r.one_minus_f2 - 3.79e-3) < 1e-5);
  CHECK(std::abs(r.c_s - 71.6) < 0.2);
  CHECK_FALSE(r.note.empty());
  // Long-double evaluation of 1 - f(d) with f(d) = (1 - 10^{-(d+3)/2})^{100 d G}.
  auto one_minus_f = [](long double d, long double G) {
    return -std::expm1(100.0L * d * G * std::log1p(-std::pow(10.0L, -(d + 3.0L) / 2.0L)));
  };
  for (double n : {50.0, 200.0, 450.0}) {
    for (long G : {10L, 1000L, 100000L}) {
      const auto s = surface_code_tradeoff(n, G);
      const long double a = one_minus_f(std::sqrt(n / 2.0L), G), b = one_minus_f(std::sqrt(static_cast<long double>(n)), G);
      CHECK(s.one_minus_f1 == doctest::Approx(static_cast<double>(a)).epsilon(1e-14));
      CHECK(s.one_minus_f2 == doctest::Approx(static_cast<double>(b)).epsilon(1e-14));
      CHECK(s.c_s == doctest::Approx(static_cast<double>(a / b)).epsilon(1e-14));
    }
  }
  const auto g0 = surface_code_tradeoff(200, 0);
  CHECK(g0.f1 == 1.0);
  CHECK(g0.f2 == 1.0);
  double prev = 0.0;
  for (double n = 50; n <= 800; n += 25) {
    const double c = surface_code_tradeoff(n, 1000).c_s;
    CHECK(c > prev);
    prev = c;
  }
  const auto rounded = surface_code_tradeoff(200, 1000, true);
  CHECK(rounded.d2 == 14.0);
}
