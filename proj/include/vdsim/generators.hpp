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

#ifndef VDSIM_GENERATORS_HPP
#define VDSIM_GENERATORS_HPP

// Circuit families: random scramblers and first-order Trotterized Heisenberg
// chains, plus the dense Hamiltonians used as exact references.

#include <map>
#include <string>
#include <vector>

#include "vdsim/circuit.hpp"
#include "vdsim/qcore.hpp"
#include "vdsim/rng.hpp"

namespace vdsim {

enum class Boundary { Open, Periodic };
enum class FieldPattern { UniformX, RandomSignZ };

struct HeisenbergParams {
  double Jx = 1.0;
  double Jy = 1.0;
  double Jz = 1.5;
  double h = 1.0;
  double dt = 0.2;
  Boundary boundary = Boundary::Open;
  FieldPattern field_pattern = FieldPattern::UniformX;
  std::vector<double> field_signs;  // per-site signs for RandomSignZ; empty means all +1

  void validate() const;
};

/// Alternating layers: random single-qubit gates from {X, Y, Z, SX, SY, SZ} on
/// every qubit, then two-qubit gates on pairs starting at qubit (layer % 2).
/// Sycamore when entangling, otherwise an identity placeholder that still
/// counts as a two-qubit gate. A final single-qubit layer closes the circuit.
Circuit gen_scrambler(int N, int depth, bool entangling, Rng& rng);

/// Per step: exp(-i h P_i dt) on each site, then exp(-i (Jx XX + Jy YY + Jz ZZ) dt)
/// on bonds (0,1), (2,3), ... and then on bonds (1,2), (3,4), ...
Circuit gen_heisenberg_trotter(int N, int steps, const HeisenbergParams& params);

/// Dense sum_bonds (Jx XX + Jy YY + Jz ZZ) + sum_i h s_i P_i.
ComplexMatrixd heisenberg_hamiltonian(int N, const HeisenbergParams& params);

/// exp(-i H t) for Hermitian H.
ComplexMatrixd expm_hermitian(const ComplexMatrixd& H, double t);

/// |0101...> (qubit 0 in |0>).
PureStated neel_state(int N);

/// Per-qubit final states of a circuit whose two-qubit gates are all identities.
std::vector<PureStated> product_state_factors(const Circuit& circuit);

/// Mean over sites of |<Z_i>_rho - <Z_i>_ideal|.
double magnetization_error(const DensityMatrixd& rho, const PureStated& ideal);
std::map<std::string, double> magnetization_error(const std::map<std::string, DensityMatrixd>& variants,
                                                  const PureStated& ideal);

/// Mean over sites of |z_i - <Z_i>_ideal| for externally estimated z_i.
double magnetization_error(const std::vector<double>& z, const PureStated& ideal);

}  // namespace vdsim

#endif  // VDSIM_GENERATORS_HPP
