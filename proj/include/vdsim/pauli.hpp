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

#ifndef VDSIM_PAULI_HPP
#define VDSIM_PAULI_HPP

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vdsim/errors.hpp"

namespace vdsim {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Hermitian Pauli word in symplectic form.
///
/// Bit (n - 1 - q) of each mask refers to qubit q, so qubit 0 is the most
/// significant bit of a basis-state index. A qubit carries X when only its x bit
/// is set, Z when only its z bit is set and Y when both are set.
struct PauliWord {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

  bool commutes_with(const PauliWord& other) const {
    return (std::popcount((x & other.z) ^ (z & other.x)) & 1) == 0;
  }

  /// Exponent k in lhs * rhs = i^k * word(lhs.x ^ rhs.x, lhs.z ^ rhs.z).
  static int product_phase(const PauliWord& lhs, const PauliWord& rhs) {
    const std::uint64_t x3 = lhs.x ^ rhs.x;
    const std::uint64_t z3 = lhs.z ^ rhs.z;
    const int k = std::popcount(lhs.x & lhs.z) + std::popcount(rhs.x & rhs.z) +
                  2 * std::popcount(lhs.z & rhs.x) - std::popcount(x3 & z3);
    return ((k % 4) + 4) % 4;
  }

  /// Phase of the basis action: word |b> = phase(b) |b ^ x>.
  std::complex<double> basis_phase(std::uint64_t b) const {
    static constexpr std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int k = std::popcount(x & z);
    if (std::popcount(b & z) & 1) k += 2;
    return kPowers[k & 3];
  }
};

/// A Pauli string with a real coefficient, e.g. 0.5 * Z0 Z1.
class PauliObservable {
 public:
  PauliObservable() = default;

  explicit PauliObservable(std::vector<Pauli> factors, double coefficient = 1.0)
      : factors_(std::move(factors)), coefficient_(coefficient) {
    if (factors_.empty()) throw ValidationError("PauliObservable needs at least one qubit");
    if (factors_.size() > 62) throw ValidationError("PauliObservable supports at most 62 qubits");
  }

  /// Parses strings such as "ZZI", "-XY" or "+IZ"; one letter per qubit.
  static PauliObservable parse(std::string_view text) {
    double sign = 1.0;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
      sign = text.front() == '-' ? -1.0 : 1.0;
      text.remove_prefix(1);
    }
    std::vector<Pauli> f;
    for (char c : text) {
      switch (c) {
        case 'I': f.push_back(Pauli::I); break;
        case 'X': f.push_back(Pauli::X); break;
        case 'Y': f.push_back(Pauli::Y); break;
        case 'Z': f.push_back(Pauli::Z); break;
        default:
          throw ValidationError("invalid Pauli letter '" + std::string(1, c) + "'");
      }
    }
    return PauliObservable(std::move(f), sign);
  }

  static PauliObservable identity(int n_qubits) {
    return PauliObservable(std::vector<Pauli>(static_cast<std::size_t>(n_qubits), Pauli::I));
  }

  static PauliObservable single(int n_qubits, int qubit, Pauli p) {
    if (qubit < 0 || qubit >= n_qubits) throw ValidationError("qubit index out of range");
    std::vector<Pauli> f(static_cast<std::size_t>(n_qubits), Pauli::I);
    f[static_cast<std::size_t>(qubit)] = p;
    return PauliObservable(std::move(f));
  }

  int n_qubits() const { return static_cast<int>(factors_.size()); }
  std::span<const Pauli> factors() const { return factors_; }
  Pauli factor(int qubit) const { return factors_.at(static_cast<std::size_t>(qubit)); }
  double coefficient() const { return coefficient_; }
  double norm() const { return std::abs(coefficient_); }

  int weight() const {
    int w = 0;
    for (Pauli p : factors_) w += p != Pauli::I;
    return w;
  }

  PauliWord word() const {
    PauliWord w;
    const int n = n_qubits();
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      const Pauli p = factors_[static_cast<std::size_t>(q)];
      if (p == Pauli::X || p == Pauli::Y) w.x |= bit;
      if (p == Pauli::Z || p == Pauli::Y) w.z |= bit;
    }
    return w;
  }

  std::string to_string() const {
    std::string s = coefficient_ < 0 ? "-" : "";
    for (Pauli p : factors_) s += "IXYZ"[static_cast<int>(p)];
    if (std::abs(coefficient_) != 1.0) s = std::to_string(coefficient_) + "*" + s;
    return s;
  }

  template <typename Real = double>
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> matrix() const {
    using C = std::complex<Real>;
    const std::size_t dim = std::size_t{1} << factors_.size();
    Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
    const PauliWord w = word();
    for (std::size_t b = 0; b < dim; ++b) {
      const std::complex<double> ph = w.basis_phase(b) * coefficient_;
      m(static_cast<Eigen::Index>(b ^ w.x), static_cast<Eigen::Index>(b)) =
          C(static_cast<Real>(ph.real()), static_cast<Real>(ph.imag()));
    }
    return m;
  }

 private:
  std::vector<Pauli> factors_;
  double coefficient_ = 1.0;
};

}  // namespace vdsim

#endif  // VDSIM_PAULI_HPP
