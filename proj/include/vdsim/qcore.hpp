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

#ifndef VDSIM_QCORE_HPP
#define VDSIM_QCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "vdsim/errors.hpp"
#include "vdsim/pauli.hpp"

namespace vdsim {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using ComplexMatrixd = ComplexMatrix<double>;
using ComplexVectord = ComplexVector<double>;

/// Numerical acceptance thresholds. Every function that checks a property takes
/// one of these, defaulting to the project-wide values below.
struct Tolerances {
  double hermitian = 1e-10;        // max |A - A^dagger| entrywise
  double trace = 1e-10;            // |Tr(rho) - 1|
  double min_eigenvalue = -1e-8;   // eigenvalues below this are a hard error
  double normalization = 1e-10;    // | ||psi|| - 1 |
  double imaginary = 1e-10;        // residual imaginary part of a real expectation
  double degenerate_gap = 1e-12;   // top-eigenvalue gap reported as degenerate
};

/// Dense-storage caps. max_dim bounds the side of any single matrix and
/// max_bytes the storage of one matrix.
struct ResourceLimits {
  std::size_t max_dim = std::size_t{1} << 16;
  std::size_t max_bytes = std::size_t{3} << 30;

  void check_dim(std::size_t dim, const std::string& what) const {
    if (dim > max_dim) {
      throw ResourceError(what + ": dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(max_dim));
    }
    const double bytes = static_cast<double>(dim) * static_cast<double>(dim) * 16.0;
    if (bytes > static_cast<double>(max_bytes)) {
      throw ResourceError(what + ": " + std::to_string(dim) + "x" + std::to_string(dim) +
                          " complex matrix exceeds memory cap of " + std::to_string(max_bytes) + " bytes");
    }
  }
};

namespace detail {

inline int qubits_for_dim(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) throw ValidationError("dimension must be a power of two");
  return std::countr_zero(dim);
}

template <typename Real>
Real max_hermitian_defect(const ComplexMatrix<Real>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Rotates the vector so that its largest-magnitude amplitude is real positive.
template <typename Real>
void fix_phase(ComplexVector<Real>& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const std::complex<Real> a = v(arg);
  if (std::abs(a) > Real(0)) v *= std::conj(a) / std::abs(a);
  v(arg) = std::complex<Real>(v(arg).real(), Real(0));
}

}  // namespace detail

/// Normalized state vector on n qubits.
template <typename Real>
class PureState {
 public:
  static PureState from_amplitudes(ComplexVector<Real> amplitudes, const Tolerances& tol = {}) {
    const int n = detail::qubits_for_dim(static_cast<std::size_t>(amplitudes.size()));
    if (n < 1) throw ValidationError("a pure state needs at least one qubit");
    if (!amplitudes.allFinite()) throw ValidationError("state amplitudes must be finite");
    const Real norm = amplitudes.norm();
    if (std::abs(norm - Real(1)) > Real(tol.normalization)) {
      throw ValidationError("state is not normalized (norm " + std::to_string(static_cast<double>(norm)) + ")");
    }
    return PureState(n, std::move(amplitudes));
  }

  /// Normalizes first; rejects the zero vector.
  static PureState normalized(ComplexVector<Real> amplitudes) {
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0))) throw ValidationError("cannot normalize a zero vector");
    amplitudes /= norm;
    return from_amplitudes(std::move(amplitudes));
  }

  static PureState basis(int n_qubits, std::uint64_t index) {
    if (n_qubits < 1 || n_qubits > 30) throw ValidationError("qubit count out of range");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    if (index >= static_cast<std::uint64_t>(dim)) throw ValidationError("basis index out of range");
    ComplexVector<Real> v = ComplexVector<Real>::Zero(dim);
    v(static_cast<Eigen::Index>(index)) = Real(1);
    return PureState(n_qubits, std::move(v));
  }

  int n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector<Real>& amplitudes() const { return amplitudes_; }

 private:
  PureState(int n, ComplexVector<Real> a) : n_(n), amplitudes_(std::move(a)) {}

  int n_ = 0;
  ComplexVector<Real> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on n qubits.
template <typename Real>
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and (optionally) the eigenvalue floor.
  static DensityMatrix from_matrix(ComplexMatrix<Real> m, const Tolerances& tol = {}, bool check_psd = true) {
    if (m.rows() != m.cols()) throw ValidationError("density matrix must be square");
    const int n = detail::qubits_for_dim(static_cast<std::size_t>(m.rows()));
    if (n < 1) throw ValidationError("a density matrix needs at least one qubit");
    if (!m.allFinite()) throw ValidationError("density matrix entries must be finite");
    if (detail::max_hermitian_defect<Real>(m) > Real(tol.hermitian)) {
      throw ValidationError("density matrix is not Hermitian");
    }
    const std::complex<Real> tr = m.trace();
    if (std::abs(tr.real() - Real(1)) > Real(tol.trace)) {
      throw ValidationError("density matrix trace " + std::to_string(static_cast<double>(tr.real())) + " != 1");
    }
    if (check_psd) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(m, Eigen::EigenvaluesOnly);
      if (es.eigenvalues()(0) < Real(tol.min_eigenvalue)) {
        throw ValidationError("density matrix has eigenvalue " + std::to_string(static_cast<double>(es.eigenvalues()(0))));
      }
    }
    return DensityMatrix(n, std::move(m));
  }

  /// Wraps the output of a completely positive trace-preserving map without
  /// re-validating it.
  static DensityMatrix from_trusted(int n_qubits, ComplexMatrix<Real> m) { return DensityMatrix(n_qubits, std::move(m)); }

  static DensityMatrix basis(int n_qubits, std::uint64_t index) {
    const auto psi = PureState<Real>::basis(n_qubits, index);
    return DensityMatrix(n_qubits, psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) throw ValidationError("qubit count out of range");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    ComplexMatrix<Real> m = ComplexMatrix<Real>::Identity(dim, dim) / Real(dim);
    return DensityMatrix(n_qubits, std::move(m));
  }

  int n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix<Real>& matrix() const { return matrix_; }

  /// Tr(rho^2), computed as the squared Frobenius norm.
  Real purity() const { return matrix_.squaredNorm(); }

  template <typename Other>
  DensityMatrix<Other> cast() const {
    return DensityMatrix<Other>::from_trusted(n_, matrix_.template cast<std::complex<Other>>());
  }

 private:
  DensityMatrix(int n, ComplexMatrix<Real> m) : n_(n), matrix_(std::move(m)) {}

  int n_ = 0;
  ComplexMatrix<Real> matrix_;
};

using PureStated = PureState<double>;
using DensityMatrixd = DensityMatrix<double>;

/// |psi><psi|.
template <typename Real>
DensityMatrix<Real> dm_from_pure(const PureState<Real>& psi) {
  return DensityMatrix<Real>::from_trusted(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

/// Kronecker product; the left operand occupies the more significant index block.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b, const ResourceLimits& limits = {}) {
  using Scalar = typename DerivedA::Scalar;
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  limits.check_dim(std::max(rows, cols), "tensor");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
DensityMatrix<Real> tensor(const DensityMatrix<Real>& a, const DensityMatrix<Real>& b, const ResourceLimits& limits = {}) {
  return DensityMatrix<Real>::from_trusted(a.n_qubits() + b.n_qubits(), tensor(a.matrix(), b.matrix(), limits));
}

/// Eigendecomposition of a density matrix with slightly negative eigenvalues
/// clamped to zero. Eigenvalues are in ascending order.
template <typename Real>
struct Spectrum {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> values;
  ComplexMatrix<Real> vectors;

  /// sum_i f(lambda_i) |i><i|
  template <typename F>
  ComplexMatrix<Real> apply(F&& f) const {
    Eigen::Matrix<Real, Eigen::Dynamic, 1> w = values.unaryExpr(std::forward<F>(f));
    return vectors * w.asDiagonal() * vectors.adjoint();
  }
};

template <typename Real>
Spectrum<Real> spectrum(const DensityMatrix<Real>& rho, const Tolerances& tol = {}) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho.matrix());
  if (es.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
  Spectrum<Real> s{es.eigenvalues(), es.eigenvectors()};
  if (s.values(0) < Real(tol.min_eigenvalue)) {
    throw ValidationError("invalid state: eigenvalue " + std::to_string(static_cast<double>(s.values(0))) +
                          " below " + std::to_string(tol.min_eigenvalue));
  }
  s.values = s.values.cwiseMax(Real(0));
  return s;
}

/// rho^M via the eigendecomposition, eigenvalues clamped at zero.
template <typename Real>
ComplexMatrix<Real> hermitian_power(const DensityMatrix<Real>& rho, int power, const Tolerances& tol = {}) {
  if (power < 1) throw ValidationError("power must be >= 1");
  if (power == 1) return rho.matrix();
  return spectrum(rho, tol).apply([power](Real x) { return std::pow(x, power); });
}

/// rho^M / Tr(rho^M) as a density matrix.
template <typename Real>
DensityMatrix<Real> normalized_power(const DensityMatrix<Real>& rho, int power, const Tolerances& tol = {}) {
  if (power < 1) throw ValidationError("power must be >= 1");
  if (power == 1) return rho;
  const Spectrum<Real> s = spectrum(rho, tol);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> w = s.values.array().pow(power);
  const Real total = w.sum();
  if (!(total > Real(1e-14))) throw DegenerateError("Tr(rho^M) vanishes");
  w /= total;
  ComplexMatrix<Real> m = s.vectors * w.asDiagonal() * s.vectors.adjoint();
  return DensityMatrix<Real>::from_trusted(rho.n_qubits(), std::move(m));
}

/// Half the trace norm of a Hermitian difference.
template <typename Real>
Real trace_norm_half(const ComplexMatrix<Real>& hermitian_difference) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(hermitian_difference, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum() / Real(2);
}

template <typename Real>
Real trace_distance(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("trace_distance: dimension mismatch");
  return std::min(Real(1), trace_norm_half<Real>(rho.matrix() - sigma.matrix()));
}

template <typename Real>
Real trace_distance(const DensityMatrix<Real>& rho, const PureState<Real>& psi) {
  return trace_distance(rho, dm_from_pure(psi));
}

/// sqrt(1 - |<a|b>|^2), the trace distance between two pure states. Computed
/// as the norm of the part of b orthogonal to a, which keeps full relative
/// precision when the states nearly coincide.
template <typename Real>
Real trace_distance(const PureState<Real>& a, const PureState<Real>& b) {
  if (a.dim() != b.dim()) throw ValidationError("trace_distance: dimension mismatch");
  const std::complex<Real> overlap = a.amplitudes().dot(b.amplitudes());
  const Real orth = (b.amplitudes() - overlap * a.amplitudes()).norm();
  return std::min(Real(1), orth);
}

template <typename Real>
struct DominantEigenpair {
  Real value;
  PureState<Real> vector;
  Real gap;          // lambda_0 - lambda_1 (infinite for a 1-dimensional space)
  bool degenerate;   // gap below the tolerance; vector is then solver-ordered
};

template <typename Real>
DominantEigenpair<Real> dominant_eigenpair(const DensityMatrix<Real>& rho, const Tolerances& tol = {}) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho.matrix());
  if (es.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
  const Eigen::Index top = es.eigenvalues().size() - 1;
  ComplexVector<Real> v = es.eigenvectors().col(top);
  detail::fix_phase(v);
  const Real gap = top > 0 ? es.eigenvalues()(top) - es.eigenvalues()(top - 1) : std::numeric_limits<Real>::infinity();
  return {es.eigenvalues()(top), PureState<Real>::normalized(std::move(v)), gap, gap < Real(tol.degenerate_gap)};
}

/// Tr(rho P) for a Pauli string, evaluated in O(dim) from the basis action of P.
template <typename Real>
Real expectation(const DensityMatrix<Real>& rho, const PauliObservable& obs, const Tolerances& tol = {}) {
  if (obs.n_qubits() != rho.n_qubits()) throw ValidationError("expectation: qubit-count mismatch");
  const PauliWord w = obs.word();
  std::complex<Real> acc(0);
  const auto& m = rho.matrix();
  for (std::size_t b = 0; b < rho.dim(); ++b) {
    const std::complex<double> ph = w.basis_phase(b);
    acc += std::complex<Real>(Real(ph.real()), Real(ph.imag())) *
           m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ w.x));
  }
  acc *= Real(obs.coefficient());
  if (std::abs(acc.imag()) > Real(tol.imaginary)) {
    throw ValidationError("expectation has imaginary residue " + std::to_string(static_cast<double>(acc.imag())));
  }
  return acc.real();
}

/// <psi|P|psi>.
template <typename Real>
Real expectation(const PureState<Real>& psi, const PauliObservable& obs) {
  if (obs.n_qubits() != psi.n_qubits()) throw ValidationError("expectation: qubit-count mismatch");
  const PauliWord w = obs.word();
  const auto& a = psi.amplitudes();
  std::complex<Real> acc(0);
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    const std::complex<double> ph = w.basis_phase(b);
    acc += std::conj(a(static_cast<Eigen::Index>(b ^ w.x))) * std::complex<Real>(Real(ph.real()), Real(ph.imag())) *
           a(static_cast<Eigen::Index>(b));
  }
  return acc.real() * Real(obs.coefficient());
}

}  // namespace vdsim

#endif  // VDSIM_QCORE_HPP
