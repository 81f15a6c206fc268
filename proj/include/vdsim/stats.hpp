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

#ifndef VDSIM_STATS_HPP
#define VDSIM_STATS_HPP

// Closed-form variance of the two-copy estimator, overhead ratios and the
// collective-measurement operator.

#include <string>
#include <vector>

#include "vdsim/pauli.hpp"
#include "vdsim/qcore.hpp"

namespace vdsim {

struct VarianceReport {
  double var_numerator = 0.0;
  double var_denominator = 0.0;
  double covariance = 0.0;
  double ratio_variance_per_R = 0.0;  // multiply by 1/R
};

/// Var(S O^(2)) on rho (x) rho: 1/2 Tr(rho O^2) + 1/2 Tr(rho O)^2 - Tr(rho^2 O)^2.
double numerator_variance(const DensityMatrixd& rho, const PauliObservable& O);

/// Var(S) on rho (x) rho: 1 - Tr(rho^2)^2.
double denominator_variance(const DensityMatrixd& rho);

/// Cov(S O^(2), S): Tr(rho O) - Tr(rho^2 O) Tr(rho^2).
double num_den_covariance(const DensityMatrixd& rho, const PauliObservable& O);

/// First-order variance of the ratio estimator after R repetitions.
double ratio_variance(const DensityMatrixd& rho, const PauliObservable& O, long R);

VarianceReport variance_report(const DensityMatrixd& rho, const PauliObservable& O);

/// Tr(rho O^2) - Tr(rho O)^2.
double single_copy_variance(const DensityMatrixd& rho, const PauliObservable& O);

/// Cost of the two-copy estimate relative to unmitigated single-copy
/// measurement at equal precision. `copy_factor` counts the qubits consumed per
/// repetition (2 by default; pass 1 for a pure repetition count).
struct Overhead {
  double ratio = 0.0;
  double copy_factor = 2.0;
  std::string convention;  // recorded next to the value in every output
};

Overhead overhead_ratio(const DensityMatrixd& rho, const std::vector<PauliObservable>& observables,
                        double copy_factor = 2.0);

/// (1 + 7(K-1) t3) / (K(2K-1)) with t3 = Tr(rho^3).
double collective_variance_bound(double trace_rho_cubed, int K);
double collective_variance_bound(const DensityMatrixd& rho, int K);

/// (1/C(2K,2)) sum_{i<j} (O^i + O^j)/2 S^(i,j) on 2K copies of N qubits.
ComplexMatrixd collective_observable(const PauliObservable& O, int K, const ResourceLimits& limits = {});

struct CollectiveVariance {
  double variance = 0.0;   // Tr(rho^{(x)2K} Otilde^2) - Tr(rho^{(x)2K} Otilde)^2
  double mean = 0.0;       // Tr(rho^{(x)2K} Otilde)
  double target = 0.0;     // Tr(O rho^2)
};

/// Brute-force moments of the collective observable; throws if the mean misses
/// Tr(O rho^2) by more than 1e-10. The register is capped at max_register_qubits.
CollectiveVariance collective_variance_bruteforce(const DensityMatrixd& rho, const PauliObservable& O, int K,
                                                  int max_register_qubits = 8, const ResourceLimits& limits = {});

}  // namespace vdsim

#endif  // VDSIM_STATS_HPP
