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

#ifndef VDSIM_QDRIFT_HPP
#define VDSIM_QDRIFT_HPP

// qDRIFT: randomized product formulas and their averaged channel.
//
// The exact channel is evaluated in the Pauli basis. rho = (1/d) sum_Q c_Q Q,
// and conjugation by exp(-i tau P) maps a Pauli Q that anticommutes with P to
// cos(2 tau) Q - i sin(2 tau) P Q. Only the Paulis reachable from rho_0 are
// kept, and when a global Pauli (X..X, Y..Y or Z..Z) commutes with every term
// and stabilizes rho_0 the coefficient vector is folded onto one representative
// of each pair {Q, Q * that Pauli}.

#include <cstdint>
#include <vector>

#include "vdsim/pauli.hpp"
#include "vdsim/qcore.hpp"
#include "vdsim/rng.hpp"

namespace vdsim {

struct QDriftTerm {
  double weight = 0.0;  // h_i > 0
  PauliObservable op;   // unit norm; a sign may sit in the coefficient
};

struct QDriftModel {
  std::vector<QDriftTerm> terms;
  double lambda = 0.0;
  double t = 0.0;
  long eta = 1;

  /// Fills lambda from the weights and validates.
  static QDriftModel make(std::vector<QDriftTerm> terms, double t, long eta);
  void validate() const;
  int n_qubits() const { return terms.front().op.n_qubits(); }
};

/// Ring of N sites: XX, YY and ZZ on every bond (weight 1 each) and h_i Z_i with
/// weight h and sign field_signs[i]. lambda = 3N + N h.
QDriftModel qdrift_ring_model(int N, double h, double t, long eta, const std::vector<double>& field_signs);

std::vector<double> random_field_signs(int N, Rng& rng);

/// sum_i h_i H_i as a dense matrix.
ComplexMatrixd model_hamiltonian(const QDriftModel& model);

/// eta applications of E(rho) = sum_i (h_i/lambda) U_i rho U_i^dagger,
/// U_i = exp(-i (lambda t/eta) H_i).
DensityMatrixd qdrift_evolve_exact(const QDriftModel& model, const DensityMatrixd& rho0);

struct QDriftSampled {
  DensityMatrixd mean;
  double frobenius_standard_error = 0.0;  // standard error of the mean, Frobenius norm
};

/// Average of n_samples random product formulas, each drawing eta terms i.i.d.
/// with probability h_i/lambda.
QDriftSampled qdrift_evolve_sampled(const QDriftModel& model, const DensityMatrixd& rho0, long n_samples, Rng& rng);

struct QDriftDistances {
  double plain = 0.0;  // T(rho_eta, ideal)
  double vd = 0.0;     // T(rho_eta^2 / Tr(rho_eta^2), ideal)
};

/// Trace distances of the exact-channel output to exp(-iHt)|psi0>.
QDriftDistances qdrift_distances(const QDriftModel& model, const PureStated& psi0);

struct EtaSearchResult {
  long eta_plain = 0;
  long eta_vd = 0;
  double ratio = 0.0;
  double t_plain = 0.0;  // distance at eta_plain
  double t_vd = 0.0;     // VD distance at eta_vd
  std::vector<double> field_signs;
  int evaluations = 0;
};

/// Smallest eta with distance <= target for the plain and the M = 2 distilled
/// output, by doubling and then bisection (distance assumed non-increasing in
/// eta inside the final bracket). Ideal state: exp(-iHt)|0101...>.
EtaSearchResult qdrift_eta_search(int N, double h, double t, double target, const std::vector<double>& field_signs,
                                  long eta_cap = long{1} << 26);
EtaSearchResult qdrift_eta_search(int N, double h, double t, double target, Rng& rng, long eta_cap = long{1} << 26);

}  // namespace vdsim

#endif  // VDSIM_QDRIFT_HPP
