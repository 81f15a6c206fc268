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

#ifndef VDSIM_SWEEP_HPP
#define VDSIM_SWEEP_HPP

// Error-scaling sweeps: for each grid point, simulate the noisy circuit and
// record the trace distance of rho^M/Tr(rho^M) (and of the dominant
// eigenvector) to the noiseless state.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vdsim/channels.hpp"
#include "vdsim/generators.hpp"

namespace vdsim {

enum class Family { ScramblerEntangling, ScramblerNonentangling, Heisenberg };
enum class SweepAxis { Depth, Rate };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct SweepConfig {
  Family family = Family::Heisenberg;
  std::vector<int> qubits{6};
  HeisenbergParams heisenberg;
  NoiseSpec noise = NoiseSpec::depolarizing(5e-3);
  SweepAxis axis = SweepAxis::Depth;
  std::vector<int> depths{90};      // layers (scramblers) or Trotter steps (Heisenberg)
  int depth = 90;                   // fixed depth on the rate axis
  std::vector<double> rates;        // error rates on the rate axis
  std::vector<int> copies{1, 2, 3}; // M values for rho^M/Tr(rho^M)
  bool dominant = true;             // M = inf row from the dominant eigenvector
  bool overhead = false;            // overhead ratio on the M = 2 row
  bool magnetization = false;       // mean |<Z_i>| error per row
  bool noisy_measurement = false;   // "2-noisy" row: two-copy protocol with noisy rotation layer
  std::uint64_t noisy_shots = 0;    // 0 means the infinite-shot limit
  std::uint64_t seed = 1;
  int threads = 1;
  std::string csv_path;

  void validate() const;
};

struct SweepRow {
  std::string family;
  int N = 0;
  int G = 0;
  std::string noise_kind;
  double param = 0.0;
  double expected_errors = 0.0;
  std::string M;  // "1", "2", "3", "inf" or "2-noisy"
  std::optional<double> trace_distance;
  std::optional<double> mag_error;
  std::optional<double> overhead;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Noise of the configured kind at error rate r. For amp_damp_dephase the rate
/// is split evenly, gamma1 = gamma2 = r/2, so that E = 2Gr in every case.
NoiseSpec noise_at_rate(const NoiseSpec& base, double rate);

/// Rows in config order: qubit counts, then grid points, then M labels.
std::vector<SweepRow> error_scaling_sweep(const SweepConfig& config);

/// Least-squares slope of log10(y) against log10(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace vdsim

#endif  // VDSIM_SWEEP_HPP
