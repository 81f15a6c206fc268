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

#ifndef VDSIM_KERNELS_HPP
#define VDSIM_KERNELS_HPP

// In-place dense kernels shared by the gate and channel code. Qubit q maps to
// bit (n - 1 - q) of a basis index.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vdsim::detail {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Basis offsets of the addressed qubits, ordered so that qubits[0] is the most
/// significant bit of the local index, plus the complementary "base" indices.
struct QubitLayout {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> bases;

  QubitLayout(int n, std::span<const int> qubits) {
    const int k = static_cast<int>(qubits.size());
    const std::size_t local = std::size_t{1} << k;
    offsets.assign(local, 0);
    std::size_t mask = 0;
    for (std::size_t m = 0; m < local; ++m) {
      std::size_t off = 0;
      for (int j = 0; j < k; ++j) {
        if ((m >> (k - 1 - j)) & 1) off |= std::size_t{1} << (n - 1 - qubits[static_cast<std::size_t>(j)]);
      }
      offsets[m] = off;
    }
    for (int j = 0; j < k; ++j) mask |= std::size_t{1} << (n - 1 - qubits[static_cast<std::size_t>(j)]);
    const std::size_t dim = std::size_t{1} << n;
    bases.reserve(dim >> k);
    for (std::size_t b = 0; b < dim; ++b) {
      if ((b & mask) == 0) bases.push_back(b);
    }
  }
};

/// psi <- U psi with U acting on the listed qubits.
template <typename Real>
void apply_unitary_to_state(CVector<Real>& psi, int n, const CMatrix<Real>& u, std::span<const int> qubits) {
  const QubitLayout layout(n, qubits);
  const auto local = static_cast<Eigen::Index>(layout.offsets.size());
  CVector<Real> in(local);
  for (std::size_t base : layout.bases) {
    for (Eigen::Index m = 0; m < local; ++m) in(m) = psi(static_cast<Eigen::Index>(base + layout.offsets[m]));
    for (Eigen::Index r = 0; r < local; ++r) {
      std::complex<Real> acc(0);
      for (Eigen::Index m = 0; m < local; ++m) acc += u(r, m) * in(m);
      psi(static_cast<Eigen::Index>(base + layout.offsets[r])) = acc;
    }
  }
}

/// rho <- U rho U^dagger with U acting on the listed qubits.
template <typename Real>
void apply_unitary_to_matrix(CMatrix<Real>& rho, int n, const CMatrix<Real>& u, std::span<const int> qubits) {
  const QubitLayout layout(n, qubits);
  const auto local = static_cast<Eigen::Index>(layout.offsets.size());
  const Eigen::Index dim = rho.rows();
  // Rows: for every column, mix the addressed row groups.
  CVector<Real> in(local);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (std::size_t base : layout.bases) {
      for (Eigen::Index m = 0; m < local; ++m) in(m) = rho(static_cast<Eigen::Index>(base + layout.offsets[m]), c);
      for (Eigen::Index r = 0; r < local; ++r) {
        std::complex<Real> acc(0);
        for (Eigen::Index m = 0; m < local; ++m) acc += u(r, m) * in(m);
        rho(static_cast<Eigen::Index>(base + layout.offsets[r]), c) = acc;
      }
    }
  }
  // Columns: rho <- rho U^dagger, whole columns at a time.
  const CMatrix<Real> uc = u.conjugate();
  CMatrix<Real> cols(dim, local);
  for (std::size_t base : layout.bases) {
    for (Eigen::Index m = 0; m < local; ++m) cols.col(m) = rho.col(static_cast<Eigen::Index>(base + layout.offsets[m]));
    for (Eigen::Index r = 0; r < local; ++r) {
      auto target = rho.col(static_cast<Eigen::Index>(base + layout.offsets[r]));
      target.setZero();
      for (Eigen::Index m = 0; m < local; ++m) target += uc(r, m) * cols.col(m);
    }
  }
}

/// rho <- sum_j K_j rho K_j^dagger for 2x2 Kraus operators on one qubit.
template <typename Real>
void apply_kraus_to_matrix(CMatrix<Real>& rho, int n, std::span<const Eigen::Matrix<std::complex<Real>, 2, 2>> ops,
                           int qubit) {
  using C = std::complex<Real>;
  const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::Matrix<C, 2, 2> block, acc;
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & bit) continue;
    const auto c0 = static_cast<Eigen::Index>(c), c1 = static_cast<Eigen::Index>(c | bit);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & bit) continue;
      const auto r0 = static_cast<Eigen::Index>(r), r1 = static_cast<Eigen::Index>(r | bit);
      block << rho(r0, c0), rho(r0, c1), rho(r1, c0), rho(r1, c1);
      acc.setZero();
      for (const auto& k : ops) acc.noalias() += k * block * k.adjoint();
      rho(r0, c0) = acc(0, 0);
      rho(r0, c1) = acc(0, 1);
      rho(r1, c0) = acc(1, 0);
      rho(r1, c1) = acc(1, 1);
    }
  }
}

}  // namespace vdsim::detail

#endif  // VDSIM_KERNELS_HPP
