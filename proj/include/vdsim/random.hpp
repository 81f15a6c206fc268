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

#ifndef VDSIM_RANDOM_HPP
#define VDSIM_RANDOM_HPP

// Random test objects: states, density matrices, unitaries and Pauli strings.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vdsim/pauli.hpp"
#include "vdsim/qcore.hpp"
#include "vdsim/rng.hpp"

namespace vdsim {

template <typename Real = double>
ComplexMatrix<Real> random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix<Real> g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = rng.normal(), im = rng.normal();
      g(r, c) = std::complex<Real>(Real(re), Real(im));
    }
  }
  return g;
}

/// Haar-random pure state.
template <typename Real = double>
PureState<Real> random_pure_state(int n_qubits, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return PureState<Real>::normalized(random_ginibre<Real>(dim, 1, rng).col(0));
}

/// G G^dagger / Tr for a Ginibre G with `rank` columns (full rank when rank <= 0).
template <typename Real = double>
DensityMatrix<Real> random_density_matrix(int n_qubits, Rng& rng, int rank = 0) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  const Eigen::Index k = rank > 0 ? rank : dim;
  const ComplexMatrix<Real> g = random_ginibre<Real>(dim, k, rng);
  ComplexMatrix<Real> m = g * g.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint()).eval() / Real(2);
  return DensityMatrix<Real>::from_trusted(n_qubits, std::move(m));
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
template <typename Real = double>
ComplexMatrix<Real> random_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix<Real> g = random_ginibre<Real>(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(g);
  ComplexMatrix<Real> q = qr.householderQ();
  const ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<Real> d = r(j, j);
    if (std::abs(d) > Real(0)) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Uniform Pauli string; redraws the all-identity string unless allowed.
inline PauliObservable random_pauli(int n_qubits, Rng& rng, bool allow_identity = false) {
  for (;;) {
    std::vector<Pauli> f(static_cast<std::size_t>(n_qubits));
    for (auto& p : f) p = static_cast<Pauli>(rng.below(4));
    PauliObservable o(std::move(f));
    if (allow_identity || o.weight() > 0) return o;
  }
}

}  // namespace vdsim

#endif  // VDSIM_RANDOM_HPP
