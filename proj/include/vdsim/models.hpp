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

#ifndef VDSIM_MODELS_HPP
#define VDSIM_MODELS_HPP

// Analytic noise models: orthogonal errors, first-order eigenvector drift, the
// closed-form state of a non-entangling depolarized circuit, and the
// surface-code trade-off.

#include <optional>
#include <string>
#include <vector>

#include "vdsim/channels.hpp"
#include "vdsim/qcore.hpp"

namespace vdsim {

struct OrthogonalModelResult {
  double purity = 1.0;                // ((1-p)^M + p^M)^G
  double fidelity = 1.0;              // (1-p)^{MG} / ((1-p)^M + p^M)^G
  double first_order_fidelity = 1.0;  // 1 - G p^M
  double sampling_factor = 1.0;       // (1-p)^{-4G}
};

OrthogonalModelResult orthogonal_model(double p, int G, int M);

struct DriftReport {
  double first_order_norm_sq = 0.0;       // <0^(1)|0^(1)> built from E(rho) - rho
  double predicted_trace_distance = 0.0;  // sqrt(<0^(1)|0^(1)>)
  std::optional<std::vector<double>> gamma;  // |gamma_i| per excited eigenvector i >= 1
  double exact_trace_distance = 0.0;      // dominant eigenvector of E(rho) against that of rho
  double gap = 0.0;                       // lambda_0 - lambda_1 of rho
  double perturbation_norm = 0.0;         // ||E(rho) - rho||, spectral norm
  std::string warning;                    // set when perturbation_norm / gap > 0.1
};

/// First-order drift of the dominant eigenvector of rho under the channel,
/// applied once to each listed qubit (all qubits when empty).
DriftReport perturbation_floor(const DensityMatrixd& rho, const KrausChannel& channel, std::vector<int> qubits = {});

/// Product state of single-qubit depolarized pure states: qubit i ends in
/// (1 - 2pt_i/3)|phi_i><phi_i| + (2pt_i/3)|phi_i^perp><phi_i^perp| with
/// pt_i = effective_depolarizing(p, D_i); D_i = D for bulk qubits and D/2 for
/// the two end qubits.
DensityMatrixd nonentangling_final_state(const std::vector<PureStated>& states, double p, int D);

struct SurfaceCodeReport {
  double n = 0.0;
  long G = 0;
  double d1 = 0.0;
  double d2 = 0.0;
  double f1 = 1.0;
  double f2 = 1.0;
  double one_minus_f1 = 0.0;
  double one_minus_f2 = 0.0;
  double c_s = 0.0;
  bool rounded = false;
  std::string note;
};

/// f(d) = (1 - 10^{-(d+3)/2})^{100 d G} with d1 = sqrt(n/2) and d2 = sqrt(n);
/// c_s = (1 - f1)/(1 - f2). At G = 0 c_s is the G -> 0 limit.
SurfaceCodeReport surface_code_tradeoff(double n, long G, bool round_distance = false);

}  // namespace vdsim

#endif  // VDSIM_MODELS_HPP
