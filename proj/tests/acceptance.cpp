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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Every random draw derives from kSeed, one RNG stream per criterion.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "vdsim/channels.hpp"
#include "vdsim/circuit.hpp"
#include "vdsim/cli.hpp"
#include "vdsim/generators.hpp"
#include "vdsim/models.hpp"
#include "vdsim/qdrift.hpp"
#include "vdsim/random.hpp"
#include "vdsim/stats.hpp"
#include "vdsim/sweep.hpp"
#include "vdsim/vd.hpp"

using namespace vdsim;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20201215;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed sub-check; the first few are echoed in the summary line.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << " first failure: " << what << ";";
    pass = false;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// ---- AC1

void ac1(Outcome& o) {
  Rng rng(kSeed, 1);
  double worst_id = 0.0, worst_b2 = 0.0, worst_swap = 0.0;
  for (int N = 1; N <= 3; ++N) {
    for (int k = 0; k < 20; ++k) {
      const auto rho = random_density_matrix<double>(N, rng);
      const auto O = random_pauli(N, rng);
      for (int M = 1; M <= 4; ++M) worst_id = std::max(worst_id, trace_identity_residual(rho, O, M));
      const double tr2 = (rho.matrix() * rho.matrix()).trace().real();
      worst_swap = std::max(worst_swap, std::abs(shift_trace(rho, nullptr, 0, 2) - tr2));
    }
    const auto b = b2_diagonalization_residuals(N);
    worst_b2 = std::max({worst_b2, b.shift, b.z_shift});
  }
  o.require(worst_id < 1e-10, "trace identity residual " + fmt(worst_id));
  o.require(worst_b2 < 1e-12, "B2 residual " + fmt(worst_b2));
  o.require(worst_swap < 1e-12, "swap trace residual " + fmt(worst_swap));
  o.detail << " identity " << fmt(worst_id) << ", B2 " << fmt(worst_b2) << ", swap " << fmt(worst_swap);
}

// ---- AC2

struct Moments {
  double var_n, var_d, cov;
};

Moments brute_moments(const DensityMatrixd& rho, const PauliObservable& O) {
  const int N = rho.n_qubits();
  const ComplexMatrixd r2 = oracle::kron(rho.matrix(), rho.matrix());
  const ComplexMatrixd s = oracle::cyclic_shift(2, N);
  const ComplexMatrixd op = oracle::pauli_string(oracle::letters(O)) * O.coefficient();
  const ComplexMatrixd id = ComplexMatrixd::Identity(op.rows(), op.cols());
  const ComplexMatrixd a = 0.5 * (oracle::kron(op, id) + oracle::kron(id, op)) * s;
  auto tr = [&](const ComplexMatrixd& x) { return (r2 * x).trace().real(); };
  const double ea = tr(a), es = tr(s);
  return {tr(a * a) - ea * ea, tr(s * s) - es * es, tr(a * s) - ea * es};
}

void ac2(Outcome& o) {
  Rng rng(kSeed, 2);
  double worst = 0.0, worst_pure = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto rho = random_density_matrix<double>(1 + k % 2, rng);
    const auto O = random_pauli(rho.n_qubits(), rng);
    const Moments m = brute_moments(rho, O);
    worst = std::max({worst, std::abs(numerator_variance(rho, O) - m.var_n),
                      std::abs(denominator_variance(rho) - m.var_d), std::abs(num_den_covariance(rho, O) - m.cov)});
  }
  for (int k = 0; k < 100; ++k) {
    const auto psi = dm_from_pure(random_pure_state<double>(1 + k % 2, rng));
    const auto O = random_pauli(psi.n_qubits(), rng);
    const double e = expectation(psi, O);
    for (long R : {1L, 10L, 500L}) {
      worst_pure = std::max(worst_pure, std::abs(ratio_variance(psi, O, R) - (1.0 - e * e) / (2.0 * static_cast<double>(R))));
    }
  }
  o.require(worst < 1e-10, "closed form vs brute force " + fmt(worst));
  o.require(worst_pure < 1e-12, "pure-state ratio variance " + fmt(worst_pure));
  o.detail << " closed forms " << fmt(worst) << ", pure " << fmt(worst_pure);
}

// ---- AC3

bool within(double value, double target, double se, double k) { return std::abs(value - target) <= k * se + 1e-15; }

void ac3(Outcome& o) {
  Rng pick(kSeed, 30);
  Rng rng(kSeed, 3);
  double worst_sigma = 0.0;
  for (int N = 1; N <= 2; ++N) {
    const auto rho = random_density_matrix<double>(N, pick);
    const auto z0 = PauliObservable::single(N, 0, Pauli::Z);
    const int runs = 200;
    const long R = 500;
    std::vector<double> v;
    for (int k = 0; k < runs; ++k) v.push_back(vd_sample(rho, 2, R, rng).z[0].value);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= runs;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= runs - 1;
    const double se = var * std::sqrt(2.0 / (runs - 1));
    const double sigmas = std::abs(var - ratio_variance(rho, z0, R)) / se;
    worst_sigma = std::max(worst_sigma, sigmas);
    o.require(sigmas < 3.0, "empirical variance off by " + fmt(sigmas) + " sigma at N=" + std::to_string(N));
  }
  const std::uint64_t shots = 100000;
  double worst_se = 0.0;
  auto track = [&](const CorrectedEstimate& e, double exact, const std::string& what) {
    const double k = std::abs(e.value - exact) / e.standard_error;
    worst_se = std::max(worst_se, k);
    o.require(within(e.value, exact, e.standard_error, 4.0), what + " off by " + fmt(k) + " SE");
  };
  for (int M = 2; M <= 3; ++M) {
    const auto rho = random_density_matrix<double>(2, pick);
    const auto r = vd_sample(rho, M, shots, rng);
    const auto exact = vd_protocol_exact(rho, M);
    for (std::size_t q = 0; q < exact.size(); ++q) track(r.z[q], exact[q], "two-copy protocol M=" + std::to_string(M));
  }
  for (int k = 0; k < 3; ++k) {
    const auto rho = random_density_matrix<double>(2, pick);
    const auto P = random_pauli(2, rng);
    track(pauli_string_sample(rho, P, shots, rng), corrected_expectation_exact(rho, P, 2), "Pauli-string " + P.to_string());
    track(hadamard_test_sample(rho, P, shots, rng), corrected_expectation_exact(rho, P, 2), "Hadamard test " + P.to_string());
  }
  o.detail << " variance within " << fmt(worst_sigma) << " sigma, estimators within " << fmt(worst_se) << " SE";
}

// ---- AC4

void ac4(Outcome& o) {
  Rng rng(kSeed, 4);
  double worst_margin = 1e300, worst_mean = 0.0;
  for (int K = 1; K <= 2; ++K) {
    for (int N = 1; N <= 2; ++N) {
      for (int k = 0; k < 100; ++k) {
        const auto rho = random_density_matrix<double>(N, rng);
        const auto O = random_pauli(N, rng);
        const auto cv = collective_variance_bruteforce(rho, O, K);
        worst_margin = std::min(worst_margin, collective_variance_bound(rho, K) - cv.variance);
        worst_mean = std::max(worst_mean, std::abs(cv.mean - cv.target));
      }
    }
  }
  o.require(worst_margin >= -1e-10, "bound margin " + fmt(worst_margin));
  o.require(worst_mean < 1e-10, "collective mean " + fmt(worst_mean));
  o.detail << " min margin " << fmt(worst_margin) << ", mean residual " << fmt(worst_mean);
}

// ---- AC5

// Phenomenological model by explicit pattern enumeration: each of the 2^G error
// patterns is an orthogonal branch with weight p^e (1-p)^(G-e).
double pattern_fidelity(double p, int G, int M) {
  const std::uint64_t patterns = std::uint64_t{1} << G;
  std::vector<long double> wm(static_cast<std::size_t>(G) + 1);
  for (int e = 0; e <= G; ++e) {
    wm[static_cast<std::size_t>(e)] = std::pow(std::pow(static_cast<long double>(p), e) *
                                                   std::pow(1.0L - static_cast<long double>(p), G - e),
                                               static_cast<long double>(M));
  }
  long double total = 0.0L;
  for (std::uint64_t k = 0; k < patterns; ++k) total += wm[static_cast<std::size_t>(__builtin_popcountll(k))];
  return static_cast<double>(wm[0] / total);
}

std::vector<double> column(const std::vector<SweepRow>& rows, const std::string& M) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.M == M) out.push_back(*r.trace_distance);
  }
  return out;
}

void ac5(Outcome& o) {
  double worst = 0.0;
  for (int G : {1, 4, 8, 12, 16, 20}) {
    for (int M : {1, 2, 3}) {
      for (double p : {1e-3, 0.01, 0.05, 0.2}) {
        worst = std::max(worst, std::abs(orthogonal_model(p, G, M).fidelity - pattern_fidelity(p, G, M)));
      }
    }
  }
  o.require(worst < 1e-9, "orthogonal model vs enumeration " + fmt(worst));

  SweepConfig c;
  c.family = Family::ScramblerNonentangling;
  c.qubits = {6};
  c.axis = SweepAxis::Rate;
  c.depth = 20;
  c.noise = NoiseSpec::depolarizing(0.0);
  c.seed = kSeed;
  Rng layout(kSeed);
  const int G = gen_scrambler(6, c.depth, false, layout).two_qubit_count();
  for (double E : {0.03, 0.06, 0.1, 0.2, 0.3}) c.rates.push_back(E / (2.0 * G));
  const auto rows = error_scaling_sweep(c);
  std::vector<double> E;
  for (const auto& r : rows) {
    if (r.M == "1") E.push_back(r.expected_errors);
  }
  o.detail << " enumeration " << fmt(worst) << ", slopes";
  for (int M = 1; M <= 3; ++M) {
    const double s = fit_loglog_slope(E, column(rows, std::to_string(M)));
    o.detail << " " << fmt(s);
    o.require(std::abs(s - M) <= 0.15, "slope for M=" + std::to_string(M) + " is " + fmt(s));
  }
  const auto inf = column(rows, "inf");
  const double worst_inf = *std::max_element(inf.begin(), inf.end());
  o.require(worst_inf < 1e-8, "M=inf trace distance " + fmt(worst_inf));
  o.detail << ", M=inf " << fmt(worst_inf);
}

// ---- AC6

void ac6(Outcome& o) {
  ComplexVectord plus(2), minus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const auto rho = DensityMatrixd::from_matrix(0.9 * plus * plus.adjoint() + 0.1 * minus * minus.adjoint());
  std::vector<double> g, disc;
  double gamma1 = 1e-3;
  for (int k = 0; k < 5; ++k, gamma1 /= 2) {
    const auto rep = perturbation_floor(rho, channels::amplitude_damping(gamma1));
    g.push_back(gamma1);
    disc.push_back(std::abs(rep.predicted_trace_distance - rep.exact_trace_distance));
  }
  const double slope = fit_loglog_slope(g, disc);
  o.require(std::abs(slope - 2.0) <= 0.2, "discrepancy slope " + fmt(slope));
  o.detail << " discrepancy slope " << fmt(slope);

  const auto d = DensityMatrixd::from_matrix((ComplexMatrixd(2, 2) << 0.9, 0, 0, 0.1).finished());
  for (const auto& [name, ch] : {std::pair{"phase flip", channels::phase_flip(0.01)}, std::pair{"bit flip", channels::bit_flip(0.01)}}) {
    const auto rep = perturbation_floor(d, ch);
    bool zero = rep.gamma.has_value();
    if (zero) {
      for (double x : *rep.gamma) zero = zero && x == 0.0;
    }
    o.require(zero, std::string(name) + " gamma not exactly zero");
  }
  o.detail << ", symmetric channels give gamma = 0";
}

// ---- AC7

void ac7(Outcome& o) {
  struct Case {
    Family family;
    int depth;
    NoiseSpec noise;
  };
  std::vector<Case> cases;
  for (double p : {1e-4, 5e-4}) {
    cases.push_back({Family::ScramblerEntangling, 180, NoiseSpec::depolarizing(p)});
    cases.push_back({Family::Heisenberg, 90, NoiseSpec::depolarizing(p)});
    cases.push_back({Family::ScramblerEntangling, 180, NoiseSpec::amp_damp_dephase(p / 2, p / 2)});
    cases.push_back({Family::Heisenberg, 90, NoiseSpec::amp_damp_dephase(p / 2, p / 2)});
  }
  double worst_floor = 0.0, worst_sep = 1e300;
  for (const auto& cs : cases) {
    SweepConfig c;
    c.family = cs.family;
    c.qubits = {6};
    c.depths = {cs.depth};
    c.noise = cs.noise;
    c.seed = kSeed;
    const auto rows = error_scaling_sweep(c);
    const std::string tag = family_name(cs.family) + " " + rows.front().noise_kind + " " + fmt(rows.front().param);
    o.require(rows.front().G == 450, tag + " G=" + std::to_string(rows.front().G));
    const double t1 = column(rows, "1")[0], t2 = column(rows, "2")[0], t3 = column(rows, "3")[0],
                 tinf = column(rows, "inf")[0];
    worst_floor = std::max({worst_floor, t2 / tinf, t3 / tinf});
    worst_sep = std::min(worst_sep, t1 / t2);
    o.require(t2 <= 3.0 * tinf && t3 <= 3.0 * tinf, tag + " T2/Tinf " + fmt(t2 / tinf) + " T3/Tinf " + fmt(t3 / tinf));
    o.require(t1 / t2 >= 10.0, tag + " T1/T2 " + fmt(t1 / t2));
  }
  o.detail << " " << cases.size() << " configurations, max T(2|3)/T(inf) " << fmt(worst_floor) << ", min T1/T2 "
           << fmt(worst_sep);
}

// ---- AC8

void ac8(Outcome& o) {
  const int N = 6;
  const Circuit c = gen_heisenberg_trotter(N, 90, HeisenbergParams{});
  const NoiseSpec noise = NoiseSpec::depolarizing(5e-3);
  const auto ideal = simulate_pure(c, neel_state(N));
  const auto rho = simulate_noisy(c, noise, dm_from_pure(neel_state(N)));
  std::vector<double> exact;
  for (int q = 0; q < N; ++q) exact.push_back(corrected_expectation_exact(rho, PauliObservable::single(N, q, Pauli::Z), 2));
  SampleOptions opts;
  opts.measurement_noise = noise;
  const auto noisy = vd_protocol_exact(rho, 2, opts);
  double diff = 0.0;
  for (int q = 0; q < N; ++q) diff += std::abs(noisy[static_cast<std::size_t>(q)] - exact[static_cast<std::size_t>(q)]);
  diff /= N;
  o.require(diff <= 0.02, "noisy-measurement magnetization differs by " + fmt(diff));
  o.detail << " mean |dZ| " << fmt(diff) << " (mag error exact " << fmt(magnetization_error(exact, ideal)) << ", noisy "
           << fmt(magnetization_error(noisy, ideal)) << ")";

  // Finite-shot run of the same protocol, reported for context.
  Rng rng(kSeed, 8);
  const auto sampled = vd_sample(rho, 2, 1000000, rng, opts);
  std::vector<double> z;
  double se = 0.0;
  for (const auto& e : sampled.z) {
    z.push_back(e.value);
    se += e.standard_error / N;
  }
  o.detail << "; 1e6 shots: mag error " << fmt(magnetization_error(z, ideal)) << ", mean SE " << fmt(se);
}

// ---- AC9

void ac9(Outcome& o) {
  SweepConfig c;
  c.family = Family::Heisenberg;
  c.qubits = {6};
  c.axis = SweepAxis::Rate;
  c.depth = 90;
  c.rates = {1e-5, 5e-5, 1.1e-4, 1e-3, 3e-3, 6.7e-3, 1e-2};
  c.copies = {2};
  c.dominant = false;
  c.overhead = true;
  c.seed = kSeed;
  const auto rows = error_scaling_sweep(c);
  double prev = 0.0;
  bool monotone = true;
  for (const auto& r : rows) {
    if (!r.overhead) continue;
    const double ov = *r.overhead, E = r.expected_errors;
    o.detail << " E=" << fmt(E) << ":" << fmt(ov);
    if (E <= 0.1) o.require(ov <= 1.5, "overhead " + fmt(ov) + " at E=" + fmt(E));
    if (E >= 6.0) o.require(ov >= 10.0, "overhead " + fmt(ov) + " at E=" + fmt(E));
    monotone = monotone && ov >= prev;
    prev = ov;
  }
  o.require(monotone, "overhead not monotone in expected errors");
  o.require(rows.back().expected_errors >= 6.0, "sweep does not reach E=6");
}

// ---- AC10

void ac10(Outcome& o) {
  double worst = 1e300;
  for (int N = 3; N <= 6; ++N) {
    Rng rng(kSeed, 100 + static_cast<std::uint64_t>(N));
    for (int k = 0; k < 3; ++k) {
      const auto r = qdrift_eta_search(N, 1.0, static_cast<double>(N), 0.01, rng);
      worst = std::min(worst, r.ratio);
      o.require(r.eta_vd <= r.eta_plain, "eta_vd above eta_plain at N=" + std::to_string(N));
      o.require(r.ratio >= 8.0, "ratio " + fmt(r.ratio) + " at N=" + std::to_string(N));
      if (k == 0) o.detail << " N=" << N << ":" << r.eta_plain << "/" << r.eta_vd;
    }
  }
  o.detail << ", min ratio " << fmt(worst);
  // 1/eta convergence in the asymptotic window.
  std::vector<double> etas, dist;
  for (int k = 12; k <= 18; ++k) {
    const auto model = qdrift_ring_model(3, 1.0, 3.0, 1L << k, {1, -1, 1});
    etas.push_back(static_cast<double>(1L << k));
    dist.push_back(qdrift_distances(model, neel_state(3)).plain);
  }
  const double slope = fit_loglog_slope(etas, dist);
  o.require(std::abs(slope + 1.0) <= 0.15, "convergence slope " + fmt(slope));
  o.detail << ", slope " << fmt(slope);
}

// ---- AC11

void ac11(Outcome& o) {
  auto one_minus_f = [](long double d, long double G) {
    return -std::expm1(100.0L * d * G * std::log1p(-std::pow(10.0L, -(d + 3.0L) / 2.0L)));
  };
  double worst = 0.0;
  for (double n : {50.0, 100.0, 200.0, 450.0, 1000.0}) {
    for (long G : {1L, 100L, 1000L, 100000L}) {
      const auto s = surface_code_tradeoff(n, G);
      const long double d1 = std::sqrt(static_cast<long double>(n) / 2.0L), d2 = std::sqrt(static_cast<long double>(n));
      const long double a = one_minus_f(d1, G), b = one_minus_f(d2, G);
      auto rel = [](double got, long double want) { return static_cast<double>(std::abs((got - want) / want)); };
      worst = std::max({worst, rel(s.d1, d1), rel(s.d2, d2), rel(s.one_minus_f1, a), rel(s.one_minus_f2, b),
                        rel(s.c_s, a / b)});
    }
  }
  o.require(worst < 1e-14, "relative error " + fmt(worst));
  std::ostringstream out, err;
  const int code = cli::run({"surface-code", "--n", "200", "--gates", "1000", "--json"}, out, err);
  o.require(code == 0, "surface-code exit code " + std::to_string(code));
  const auto j = nlohmann::json::parse(out.str());
  const std::string note = j.value("note", "");
  o.require(!note.empty(), "note missing from report");
  o.detail << " max relative error " << fmt(worst) << ", c_s(200, 1000) = " << fmt(j.value("c_s", 0.0))
           << ", note present";
}

// ---- AC12

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ac12(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("vdsim_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string seed = std::to_string(kSeed);
  const std::vector<std::vector<std::string>> runs = {
      {"scrambler", "--qubits", "4", "--depths", "4,8", "--p", "2e-3", "--seed", seed, "--json"},
      {"heisenberg", "--qubits", "4", "--steps", "5,10", "--magnetization", "--overhead", "--seed", seed, "--json"},
      {"heisenberg", "--qubits", "3", "--steps", "4", "--noisy-measurement", "--noisy-shots", "2000", "--seed", seed},
      {"qdrift", "--qubits", "3", "--target", "0.01", "--seed", seed, "--json"},
      {"variance", "--states", "5", "--seed", seed, "--json"},
      {"surface-code", "--n", "200", "--gates", "1000", "--json"},
      {"floor", "--qubits", "2", "--channel", "amp_damp_dephase", "--gamma1", "1e-3", "--json"}};
  int compared = 0;
  for (const auto& args : runs) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out, err;
      std::vector<std::string> a = args;
      // Same path both times: the path itself appears in the output.
      const fs::path csv = dir / "run.csv";
      const bool sweep = args[0] == "scrambler" || args[0] == "heisenberg";
      if (sweep) {
        a.push_back("--csv");
        a.push_back(csv.string());
      }
      const int code = cli::run(a, out, err);
      o.require(code == 0, args[0] + " exit code " + std::to_string(code) + ": " + err.str());
      outputs[rep] = out.str() + (sweep ? slurp(csv) : std::string());
    }
    o.require(outputs[0] == outputs[1], args[0] + " output differs between runs");
    ++compared;
  }
  // The shipped binary, end to end, when the build tells us where it is.
  if (const char* bin = std::getenv("VDSIM_BIN")) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / "bin.txt";
      const fs::path csv = dir / "bin.csv";
      const std::string cmd = std::string(bin) + " heisenberg --qubits 4 --steps 6,12 --magnetization --seed " + seed +
                              " --csv " + csv.string() + " --json >" + out.string() + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "binary run failed");
      outputs[rep] = slurp(out) + slurp(csv);
    }
    o.require(outputs[0] == outputs[1], "binary output differs between runs");
    ++compared;
  }
  fs::remove_all(dir);
  o.detail << " " << compared << " command lines rerun" << (o.pass ? ", outputs byte-identical" : "");
}

}  // namespace

// Optional arguments name the criteria to run (e.g. "acceptance AC5 AC12"); default is all.
int main(int argc, char** argv) {
  const std::vector<std::string> only(argv + 1, argv + argc);
  struct Criterion {
    const char* name;
    double budget_s;  // 0 = no budget of its own
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", 30, ac1},  {"AC2", 0, ac2},  {"AC3", 0, ac3},   {"AC4", 0, ac4},   {"AC5", 300, ac5},  {"AC6", 0, ac6},
      {"AC7", 600, ac7}, {"AC8", 0, ac8},  {"AC9", 0, ac9},   {"AC10", 900, ac10}, {"AC11", 0, ac11}, {"AC12", 0, ac12},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) o.require(secs < c.budget_s, "runtime " + fmt(secs) + " s over " + fmt(c.budget_s) + " s budget");
    if (!o.pass) ++failed;
    std::cout << c.name << " " << (o.pass ? "PASS" : "FAIL") << " (" << fmt(secs) << " s)" << o.detail.str() << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
