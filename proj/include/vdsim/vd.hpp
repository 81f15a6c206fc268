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

#ifndef VDSIM_VD_HPP
#define VDSIM_VD_HPP

// Virtual distillation: exact corrected expectation values, the multi-copy
// trace identity, and shot-level simulation of the measurement protocols.
//
// Copy k of an M-copy register occupies qubits [kN, (k+1)N). The "tuple" of
// qubit i is (i, N+i, ..., (M-1)N+i), and the cyclic shift acts on each tuple
// as |b_1 b_2 ... b_M> -> |b_2 ... b_M b_1>.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "vdsim/channels.hpp"
#include "vdsim/pauli.hpp"
#include "vdsim/qcore.hpp"
#include "vdsim/rng.hpp"

namespace vdsim {

/// Permutation matrix of the cyclic shift on M copies of N qubits.
ComplexMatrixd cyclic_shift(int M, int N, const ResourceLimits& limits = {});

/// (1/M) sum_k O^k, the observable averaged over copies.
ComplexMatrixd symmetrized_observable(const PauliObservable& O, int M, const ResourceLimits& limits = {});

/// rho tensored with itself M times.
ComplexMatrixd multi_copy(const DensityMatrixd& rho, int M, const ResourceLimits& limits = {});

/// Tr(O rho^M) / Tr(rho^M).
double corrected_expectation_exact(const DensityMatrixd& rho, const PauliObservable& O, int M,
                                   const Tolerances& tol = {});

/// Re Tr(O rho_A rho_B) / Re Tr(rho_A rho_B).
double corrected_expectation_pair(const DensityMatrixd& rho_a, const DensityMatrixd& rho_b, const PauliObservable& O);

/// Tr(O^k S rho^{(x)M}) evaluated entry by entry from the Kronecker structure of
/// rho^{(x)M} and the permutation S, without forming either. `observable` may be
/// null for Tr(S rho^{(x)M}).
std::complex<double> shift_trace(const DensityMatrixd& rho, const ComplexMatrixd* observable, int copy, int M,
                                 const ResourceLimits& limits = {});

/// max of |Tr(O rho^M) - Tr(O^1 S rho^{(x)M})| and the residual of the
/// symmetrized ratio against Tr(O rho^M)/Tr(rho^M).
double trace_identity_residual(const DensityMatrixd& rho, const PauliObservable& O, int M,
                               const ResourceLimits& limits = {});

struct B2Residuals {
  double shift = 0.0;    // || B S_i B^dagger - (1 + Z^1 - Z^2 + Z^1 Z^2)/2 ||_max
  double z_shift = 0.0;  // || B Z_k S_k B^dagger - (Z^1 + Z^2)/2 ||_max
};

/// Checks the per-pair diagonalization identities of B^(2) on N qubit pairs.
B2Residuals b2_diagonalization_residuals(int N);

/// B^(2) expressed on a pair tuple in local order (copy 1, copy 2). The printed
/// matrix is indexed (copy 2, copy 1); this is it conjugated by SWAP.
ComplexMatrixd b2_on_pair();

/// Rotation that diagonalizes the per-tuple shift and the shifted symmetrized Z.
struct TupleBasis {
  int copies = 0;
  ComplexMatrixd rotation;                      // W: measured after applying W
  std::vector<std::complex<double>> shift;      // <m| W S W^dagger |m>
  std::vector<std::complex<double>> z_shift;    // <m| W Z^(M) S W^dagger |m>
  double residual = 0.0;                        // largest off-diagonal magnitude
};

/// M = 2 uses B^(2); M >= 3 uses a numerically computed simultaneous eigenbasis.
TupleBasis tuple_basis(int M);

/// Unitary W with W A W^dagger diagonal for a list of commuting normal matrices.
ComplexMatrixd simultaneous_diagonalizer(const std::vector<ComplexMatrixd>& normals, double* residual = nullptr);

/// Running sums of the two-copy protocol plus second moments for the ratio standard error.
struct ShotAccumulator {
  int n_qubits = 0;
  std::vector<double> E;   // per-qubit numerator sums
  double D = 0.0;          // denominator sum
  std::uint64_t shots = 0;
  std::vector<double> EE;  // sum e_i^2
  std::vector<double> ED;  // sum e_i d
  double DD = 0.0;         // sum d^2

  explicit ShotAccumulator(int n = 0) : n_qubits(n), E(n, 0.0), EE(n, 0.0), ED(n, 0.0) {}
  void merge(const ShotAccumulator& other);
};

struct CorrectedEstimate {
  double value = 0.0;
  double numerator = 0.0;    // mean numerator
  double denominator = 0.0;  // mean denominator
  std::uint64_t shots = 0;
  double standard_error = 0.0;
};

/// Ratio of means with the first-order (Taylor) standard error from sample moments.
CorrectedEstimate ratio_estimate(double sum_n, double sum_d, double sum_nn, double sum_dd, double sum_nd,
                                 std::uint64_t shots);

struct SampleOptions {
  int tasks = 1;                                 // independent RNG streams, merged in order
  std::optional<NoiseSpec> measurement_noise;    // channel after the rotation layer
  int max_register_qubits = 13;                  // cap on the simulated multi-copy register
  ResourceLimits limits;
};

struct VdSampleResult {
  std::vector<CorrectedEstimate> z;  // <Z_i>_corrected per qubit
  CorrectedEstimate purity;          // mean of D: Tr(S rho^{(x)M}) = Tr(rho^M)
  ShotAccumulator accumulator;
};

/// Sampled two-copy protocol (M = 2) and its three-copy generalization.
VdSampleResult vd_sample(const DensityMatrixd& rho, int M, std::uint64_t shots, Rng& rng,
                         const SampleOptions& options = {});

/// Infinite-shot limit of vd_sample: E_i/D from the exact outcome distribution.
std::vector<double> vd_protocol_exact(const DensityMatrixd& rho, int M, const SampleOptions& options = {});

/// Multi-qubit Pauli strings with two copies, numerator and denominator from
/// separate, evenly split batches.
CorrectedEstimate pauli_string_sample(const DensityMatrixd& rho, const PauliObservable& P, std::uint64_t shots,
                                      Rng& rng, const SampleOptions& options = {});

/// Ancilla-controlled swap followed by measurement of O on both copies.
CorrectedEstimate hadamard_test_sample(const DensityMatrixd& rho, const PauliObservable& O, std::uint64_t shots,
                                       Rng& rng, const SampleOptions& options = {});

}  // namespace vdsim

#endif  // VDSIM_VD_HPP
