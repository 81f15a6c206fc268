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

#ifndef VDSIM_CIRCUIT_HPP
#define VDSIM_CIRCUIT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vdsim/channels.hpp"
#include "vdsim/errors.hpp"
#include "vdsim/kernels.hpp"
#include "vdsim/qcore.hpp"

namespace vdsim {

/// Named one- or two-qubit unitary.
class Gate {
 public:
  static constexpr double kUnitaryTolerance = 1e-12;

  Gate(std::string name, ComplexMatrixd matrix) : name_(std::move(name)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || (matrix_.rows() != 2 && matrix_.rows() != 4)) {
      throw ValidationError("gate '" + name_ + "' must be 2x2 or 4x4");
    }
    if (!matrix_.allFinite()) throw ValidationError("gate '" + name_ + "' has non-finite entries");
    const auto dim = matrix_.rows();
    const double defect = (matrix_.adjoint() * matrix_ - ComplexMatrixd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (defect > kUnitaryTolerance) {
      throw ValidationError("gate '" + name_ + "' is not unitary (defect " + std::to_string(defect) + ")");
    }
  }

  const std::string& name() const { return name_; }
  const ComplexMatrixd& matrix() const { return matrix_; }
  int arity() const { return matrix_.rows() == 2 ? 1 : 2; }

  bool is_identity() const {
    return (matrix_ - ComplexMatrixd::Identity(matrix_.rows(), matrix_.cols())).cwiseAbs().maxCoeff() == 0.0;
  }

 private:
  std::string name_;
  ComplexMatrixd matrix_;
};

namespace gates {

using C = std::complex<double>;
inline constexpr C kI{0.0, 1.0};

/// Principal square root of a Pauli sigma: (I + sigma)/2 + i (I - sigma)/2.
inline ComplexMatrixd pauli_sqrt(const Eigen::Matrix2cd& sigma) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return 0.5 * (id + sigma) + kI * 0.5 * (id - sigma);
}

inline ComplexMatrixd b2() {
  const double r = std::numbers::sqrt2 / 2.0;
  ComplexMatrixd m(4, 4);
  m << 1, 0, 0, 0,
       0, r, -r, 0,
       0, r, r, 0,
       0, 0, 0, 1;
  return m;
}

inline ComplexMatrixd sycamore() {
  ComplexMatrixd m = ComplexMatrixd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 2) = -kI;
  m(2, 1) = -kI;
  m(3, 3) = std::polar(1.0, -std::numbers::pi / 6.0);
  return m;
}

}  // namespace gates

/// Looks up a named gate. Names: I X Y Z H S SX SY SZ (one qubit); I2 CNOT CZ
/// SWAP SYC B2 (two qubits).
inline Gate gate_matrix(const std::string& name) {
  using gates::C;
  using gates::kI;
  const Eigen::Matrix2cd x = channels::pauli_x(), y = channels::pauli_y(), z = channels::pauli_z();
  if (name == "I") return Gate(name, Eigen::Matrix2cd::Identity());
  if (name == "X") return Gate(name, x);
  if (name == "Y") return Gate(name, y);
  if (name == "Z") return Gate(name, z);
  if (name == "H") return Gate(name, (x + z) / std::numbers::sqrt2);
  if (name == "S") return Gate(name, (Eigen::Matrix2cd() << 1, 0, 0, kI).finished());
  if (name == "SX") return Gate(name, gates::pauli_sqrt(x));
  if (name == "SY") return Gate(name, gates::pauli_sqrt(y));
  if (name == "SZ") return Gate(name, gates::pauli_sqrt(z));
  if (name == "I2") return Gate(name, ComplexMatrixd::Identity(4, 4));
  if (name == "CNOT") {
    ComplexMatrixd m = ComplexMatrixd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return Gate(name, m);
  }
  if (name == "CZ") {
    ComplexMatrixd m = ComplexMatrixd::Identity(4, 4);
    m(3, 3) = -1.0;
    return Gate(name, m);
  }
  if (name == "SWAP") {
    ComplexMatrixd m = ComplexMatrixd::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return Gate(name, m);
  }
  if (name == "SYC") return Gate(name, gates::sycamore());
  if (name == "B2") return Gate(name, gates::b2());
  throw ValidationError("unknown gate '" + name + "'");
}

inline bool is_named_gate(const std::string& name) {
  static const char* const kNames[] = {"I", "X", "Y", "Z", "H", "S", "SX", "SY", "SZ",
                                       "I2", "CNOT", "CZ", "SWAP", "SYC", "B2"};
  for (const char* n : kNames) {
    if (name == n) return true;
  }
  return false;
}

struct Operation {
  Gate gate;
  std::vector<int> qubits;
};

/// Flat list of gate applications on n qubits.
class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) throw ValidationError("circuit qubit count out of range");
  }

  Circuit& add(Gate gate, std::vector<int> qubits) {
    if (static_cast<int>(qubits.size()) != gate.arity()) {
      throw ValidationError("gate '" + gate.name() + "' needs " + std::to_string(gate.arity()) + " qubit(s)");
    }
    for (int q : qubits) {
      if (q < 0 || q >= n_) throw ValidationError("qubit index " + std::to_string(q) + " out of range");
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) throw ValidationError("two-qubit gate on a repeated qubit");
    if (gate.arity() == 2) ++g_;
    ops_.push_back({std::move(gate), std::move(qubits)});
    return *this;
  }

  Circuit& add(const std::string& name, std::vector<int> qubits) { return add(gate_matrix(name), std::move(qubits)); }

  int n_qubits() const { return n_; }
  const std::vector<Operation>& ops() const { return ops_; }
  /// Number of two-qubit entries, identity placeholders included.
  int two_qubit_count() const { return g_; }

 private:
  int n_;
  int g_ = 0;
  std::vector<Operation> ops_;
};

template <typename Real>
DensityMatrix<Real> apply_gate(const DensityMatrix<Real>& rho, const Gate& gate, const std::vector<int>& qubits) {
  Circuit check(rho.n_qubits());
  check.add(gate, qubits);
  ComplexMatrix<Real> m = rho.matrix();
  detail::apply_unitary_to_matrix<Real>(m, rho.n_qubits(), gate.matrix().template cast<std::complex<Real>>(), qubits);
  return DensityMatrix<Real>::from_trusted(rho.n_qubits(), std::move(m));
}

/// Runs the circuit on rho0; after each two-qubit op the noise channel hits both
/// addressed qubits. One-qubit gates are noiseless.
template <typename Real>
DensityMatrix<Real> simulate_noisy(const Circuit& circuit, const NoiseSpec& noise, const DensityMatrix<Real>& rho0,
                                   const ResourceLimits& limits = {}) {
  if (rho0.n_qubits() != circuit.n_qubits()) throw ValidationError("simulate_noisy: qubit-count mismatch");
  limits.check_dim(rho0.dim(), "simulate_noisy");
  const KrausChannel channel = standard_channel(noise);
  const bool noisy = noise.kind != NoiseKind::None;
  const int n = circuit.n_qubits();
  ComplexMatrix<Real> m = rho0.matrix();
  for (const Operation& op : circuit.ops()) {
    if (!op.gate.is_identity()) {
      detail::apply_unitary_to_matrix<Real>(m, n, op.gate.matrix().template cast<std::complex<Real>>(), op.qubits);
    }
    if (noisy && op.gate.arity() == 2) {
      apply_channel_inplace<Real>(m, n, channel, op.qubits[0]);
      apply_channel_inplace<Real>(m, n, channel, op.qubits[1]);
    }
  }
  return DensityMatrix<Real>::from_trusted(n, std::move(m));
}

/// Noiseless state-vector evolution.
template <typename Real>
PureState<Real> simulate_pure(const Circuit& circuit, const PureState<Real>& psi0) {
  if (psi0.n_qubits() != circuit.n_qubits()) throw ValidationError("simulate_pure: qubit-count mismatch");
  ComplexVector<Real> v = psi0.amplitudes();
  for (const Operation& op : circuit.ops()) {
    if (op.gate.is_identity()) continue;
    detail::apply_unitary_to_state<Real>(v, circuit.n_qubits(), op.gate.matrix().template cast<std::complex<Real>>(),
                                         op.qubits);
  }
  return PureState<Real>::normalized(std::move(v));
}

/// Dense unitary of the whole circuit (small n only).
inline ComplexMatrixd circuit_unitary(const Circuit& circuit, const ResourceLimits& limits = {}) {
  const std::size_t dim = std::size_t{1} << circuit.n_qubits();
  limits.check_dim(dim, "circuit_unitary");
  ComplexMatrixd u = ComplexMatrixd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const Operation& op : circuit.ops()) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      ComplexVectord col = u.col(c);
      detail::apply_unitary_to_state<double>(col, circuit.n_qubits(), op.gate.matrix(), op.qubits);
      u.col(c) = col;
    }
  }
  return u;
}

/// Expected number of error events: 2pG, or 2G(gamma1 + gamma2) for damping.
inline double expected_errors(int two_qubit_count, const NoiseSpec& noise) {
  const double g = static_cast<double>(two_qubit_count);
  switch (noise.kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::Depolarizing:
    case NoiseKind::BitFlip:
    case NoiseKind::PhaseFlip: return 2.0 * noise.p * g;
    case NoiseKind::AmpDampDephase: return 2.0 * g * (noise.gamma1 + noise.gamma2);
  }
  return 0.0;
}

inline double expected_errors(const Circuit& circuit, const NoiseSpec& noise) {
  return expected_errors(circuit.two_qubit_count(), noise);
}

/// JSON document {n_qubits, ops: [{gate, qubits, matrix?}]}; matrices appear for
/// gates that are not in the named set, as row-major [re, im] pairs.
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);

}  // namespace vdsim

#endif  // VDSIM_CIRCUIT_HPP
