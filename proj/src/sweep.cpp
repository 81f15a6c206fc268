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

#include "vdsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "vdsim/circuit.hpp"
#include "vdsim/errors.hpp"
#include "vdsim/stats.hpp"
#include "vdsim/vd.hpp"

namespace vdsim {

std::string family_name(Family f) {
  switch (f) {
    case Family::ScramblerEntangling: return "scrambler-entangling";
    case Family::ScramblerNonentangling: return "scrambler-nonentangling";
    case Family::Heisenberg: return "heisenberg";
  }
  return "heisenberg";
}

Family parse_family(const std::string& name) {
  if (name == "scrambler-entangling") return Family::ScramblerEntangling;
  if (name == "scrambler-nonentangling") return Family::ScramblerNonentangling;
  if (name == "heisenberg") return Family::Heisenberg;
  throw ValidationError("unknown family '" + name + "'");
}

void SweepConfig::validate() const {
  if (qubits.empty()) throw ValidationError("at least one qubit count is required");
  for (int n : qubits) {
    if (n < 1 || n > 10) throw ValidationError("qubit counts must lie in [1, 10]");
  }
  noise.validate();
  heisenberg.validate();
  if (axis == SweepAxis::Depth) {
    if (depths.empty()) throw ValidationError("depth sweep needs at least one depth");
    for (int d : depths) {
      if (d < 1) throw ValidationError("depths must be >= 1");
    }
  } else {
    if (rates.empty()) throw ValidationError("rate sweep needs at least one rate");
    if (depth < 1) throw ValidationError("depth must be >= 1");
    for (double r : rates) noise_at_rate(noise, r);
  }
  for (int m : copies) {
    if (m < 1 || m > 8) throw ValidationError("copies must lie in [1, 8]");
  }
  if (threads < 1) throw ValidationError("threads must be >= 1");
  if (noisy_measurement) {
    for (int n : qubits) {
      if (n > 6) throw ValidationError("noisy-measurement rows support at most 6 qubits");
    }
  }
}

NoiseSpec noise_at_rate(const NoiseSpec& base, double rate) {
  switch (base.kind) {
    case NoiseKind::None: return NoiseSpec::none();
    case NoiseKind::Depolarizing: return NoiseSpec::depolarizing(rate);
    case NoiseKind::BitFlip: return NoiseSpec::bit_flip(rate);
    case NoiseKind::PhaseFlip: return NoiseSpec::phase_flip(rate);
    case NoiseKind::AmpDampDephase: return NoiseSpec::amp_damp_dephase(rate / 2.0, rate / 2.0);
  }
  return NoiseSpec::none();
}

namespace {

struct GridPoint {
  int N;
  int depth;
  NoiseSpec noise;
  std::uint64_t stream;
};

std::vector<SweepRow> run_point(const SweepConfig& cfg, const GridPoint& pt) {
  Circuit circuit(pt.N);
  PureStated psi0 = PureStated::basis(pt.N, 0);
  if (cfg.family == Family::Heisenberg) {
    circuit = gen_heisenberg_trotter(pt.N, pt.depth, cfg.heisenberg);
    psi0 = neel_state(pt.N);
  } else {
    Rng rng(cfg.seed, pt.stream);
    circuit = gen_scrambler(pt.N, pt.depth, cfg.family == Family::ScramblerEntangling, rng);
  }
  const PureStated ideal = simulate_pure(circuit, psi0);
  const DensityMatrixd rho = simulate_noisy(circuit, pt.noise, dm_from_pure(psi0));

  SweepRow base;
  base.family = family_name(cfg.family);
  base.N = pt.N;
  base.G = circuit.two_qubit_count();
  base.noise_kind = pt.noise.kind_name();
  base.param = pt.noise.strength();
  base.expected_errors = expected_errors(circuit, pt.noise);
  base.seed = cfg.seed;

  std::vector<SweepRow> rows;
  for (int m : cfg.copies) {
    SweepRow row = base;
    row.M = std::to_string(m);
    const DensityMatrixd sigma = normalized_power(rho, m);
    row.trace_distance = trace_distance(sigma, ideal);
    if (cfg.magnetization) row.mag_error = magnetization_error(sigma, ideal);
    if (cfg.overhead && m == 2) {
      std::vector<PauliObservable> obs;
      for (int q = 0; q < pt.N; ++q) obs.push_back(PauliObservable::single(pt.N, q, Pauli::Z));
      row.overhead = overhead_ratio(rho, obs).ratio;
    }
    rows.push_back(std::move(row));
  }
  if (cfg.dominant) {
    SweepRow row = base;
    row.M = "inf";
    const auto top = dominant_eigenpair(rho);
    row.trace_distance = trace_distance(top.vector, ideal);
    if (cfg.magnetization) row.mag_error = magnetization_error(dm_from_pure(top.vector), ideal);
    rows.push_back(std::move(row));
  }
  if (cfg.noisy_measurement) {
    SweepRow row = base;
    row.M = "2-noisy";
    SampleOptions opts;
    opts.measurement_noise = pt.noise;
    std::vector<double> z;
    if (cfg.noisy_shots > 0) {
      Rng rng(cfg.seed, pt.stream ^ 0x5a5a5a5a00000000ULL);
      for (const auto& e : vd_sample(rho, 2, cfg.noisy_shots, rng, opts).z) z.push_back(e.value);
    } else {
      z = vd_protocol_exact(rho, 2, opts);
    }
    row.mag_error = magnetization_error(z, ideal);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> error_scaling_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<GridPoint> points;
  for (int n : config.qubits) {
    if (config.axis == SweepAxis::Depth) {
      for (int d : config.depths) {
        points.push_back({n, d, config.noise, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(d)});
      }
    } else {
      // One circuit per qubit count, shared across rates.
      const std::uint64_t stream = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(config.depth);
      for (double r : config.rates) points.push_back({n, config.depth, noise_at_rate(config.noise, r), stream});
    }
  }
  std::vector<std::vector<SweepRow>> results(points.size());
  if (config.threads == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) results[i] = run_point(config, points[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(points.size());
    for (int t = 0; t < config.threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
          try {
            results[i] = run_point(config, points[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<SweepRow> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope fit needs two or more paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw ValidationError("slope fit needs positive data");
    const double lx = std::log10(x[i]), ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("slope fit needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

}  // namespace vdsim
