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

#ifndef VDSIM_CHANNELS_HPP
#define VDSIM_CHANNELS_HPP

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vdsim/errors.hpp"
#include "vdsim/kernels.hpp"
#include "vdsim/qcore.hpp"

namespace vdsim {

enum class NoiseKind { None, Depolarizing, AmpDampDephase, BitFlip, PhaseFlip };

/// Parameters of a single-qubit noise model. Depolarizing p lives in [0, 3/4];
/// every other probability in [0, 1].
struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double p = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec depolarizing(double p) { return checked({NoiseKind::Depolarizing, p, 0, 0}); }
  static NoiseSpec amp_damp_dephase(double g1, double g2) { return checked({NoiseKind::AmpDampDephase, 0, g1, g2}); }
  static NoiseSpec bit_flip(double p) { return checked({NoiseKind::BitFlip, p, 0, 0}); }
  static NoiseSpec phase_flip(double p) { return checked({NoiseKind::PhaseFlip, p, 0, 0}); }

  void validate() const {
    auto in_range = [](double v, double hi, const char* name) {
      if (!(v >= 0.0 && v <= hi)) {
        throw ValidationError(std::string(name) + " = " + std::to_string(v) + " outside [0, " + std::to_string(hi) + "]");
      }
    };
    switch (kind) {
      case NoiseKind::None: break;
      case NoiseKind::Depolarizing: in_range(p, 0.75, "p"); break;
      case NoiseKind::BitFlip:
      case NoiseKind::PhaseFlip: in_range(p, 1.0, "p"); break;
      case NoiseKind::AmpDampDephase:
        in_range(gamma1, 1.0, "gamma1");
        in_range(gamma2, 1.0, "gamma2");
        break;
    }
  }

  /// Single scalar used as the sweep "param" column.
  double strength() const { return kind == NoiseKind::AmpDampDephase ? gamma1 + gamma2 : p; }

  std::string kind_name() const {
    switch (kind) {
      case NoiseKind::None: return "none";
      case NoiseKind::Depolarizing: return "depolarizing";
      case NoiseKind::AmpDampDephase: return "amp_damp_dephase";
      case NoiseKind::BitFlip: return "bit_flip";
      case NoiseKind::PhaseFlip: return "phase_flip";
    }
    return "none";
  }

  static NoiseKind parse_kind(const std::string& name) {
    if (name == "none") return NoiseKind::None;
    if (name == "depolarizing") return NoiseKind::Depolarizing;
    if (name == "amp_damp_dephase") return NoiseKind::AmpDampDephase;
    if (name == "bit_flip") return NoiseKind::BitFlip;
    if (name == "phase_flip") return NoiseKind::PhaseFlip;
    throw ValidationError("unknown noise kind '" + name + "'");
  }

 private:
  static NoiseSpec checked(NoiseSpec s) {
    s.validate();
    return s;
  }
};

/// Single-qubit channel stored as an explicit Kraus set.
class KrausChannel {
 public:
  static constexpr double kCompletenessTolerance = 1e-12;

  KrausChannel(std::vector<Eigen::Matrix2cd> ops, std::string label) : ops_(std::move(ops)), label_(std::move(label)) {
    if (ops_.empty()) throw ValidationError("a Kraus channel needs at least one operator");
    for (const auto& k : ops_) {
      if (!k.allFinite()) throw ValidationError("Kraus operator entries must be finite");
    }
    if (completeness_defect() > kCompletenessTolerance) {
      throw ValidationError("Kraus set for " + label_ + " is not complete (defect " +
                            std::to_string(completeness_defect()) + ")");
    }
  }

  static KrausChannel identity() { return KrausChannel({Eigen::Matrix2cd::Identity()}, "identity"); }

  int n_qubits_acted() const { return 1; }
  const std::vector<Eigen::Matrix2cd>& kraus_ops() const { return ops_; }
  const std::string& label() const { return label_; }

  /// max entry of |sum K^dagger K - I|.
  double completeness_defect() const {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    for (const auto& k : ops_) s += k.adjoint() * k;
    return (s - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  }

  /// Action on a single-qubit operator.
  Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const auto& k : ops_) out += k * rho * k.adjoint();
    return out;
  }

  /// True when the first operator is proportional to the identity.
  bool has_identity_operator(double tol = 1e-12) const {
    const Eigen::Matrix2cd& k = ops_.front();
    return std::abs(k(0, 1)) < tol && std::abs(k(1, 0)) < tol && std::abs(k(0, 0) - k(1, 1)) < tol;
  }

 private:
  std::vector<Eigen::Matrix2cd> ops_;
  std::string label_;
};

/// Channel that applies `first` then `second`; Kraus operators are the products.
inline KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  std::vector<Eigen::Matrix2cd> ops;
  for (const auto& b : second.kraus_ops()) {
    for (const auto& a : first.kraus_ops()) {
      Eigen::Matrix2cd k = b * a;
      if (k.cwiseAbs().maxCoeff() > 0.0) ops.push_back(k);
    }
  }
  return KrausChannel(std::move(ops), first.label() + "+" + second.label());
}

namespace channels {

inline Eigen::Matrix2cd pauli_x() { return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(); }
inline Eigen::Matrix2cd pauli_y() {
  return (Eigen::Matrix2cd() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0).finished();
}
inline Eigen::Matrix2cd pauli_z() { return (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(); }

inline KrausChannel depolarizing(double p) {
  NoiseSpec::depolarizing(p);
  if (p == 0.0) return KrausChannel({Eigen::Matrix2cd::Identity()}, "depolarizing(0)");
  const double a = std::sqrt(1.0 - p), b = std::sqrt(p / 3.0);
  return KrausChannel({a * Eigen::Matrix2cd::Identity(), b * pauli_x(), b * pauli_y(), b * pauli_z()},
                      "depolarizing(" + std::to_string(p) + ")");
}

inline KrausChannel amplitude_damping(double g1) {
  if (!(g1 >= 0.0 && g1 <= 1.0)) throw ValidationError("gamma1 outside [0, 1]");
  Eigen::Matrix2cd m0, m1;
  m0 << 1, 0, 0, std::sqrt(1.0 - g1);
  m1 << 0, std::sqrt(g1), 0, 0;
  return KrausChannel({m0, m1}, "amplitude_damping(" + std::to_string(g1) + ")");
}

/// gamma_tilde = 2 gamma2 - gamma2^2, the off-diagonal decay of the two-operator form.
inline double dephasing_gamma_tilde(double g2) { return 2.0 * g2 - g2 * g2; }

/// Two-operator dephasing: diag(1, sqrt(1 - gt)), diag(0, sqrt(gt)).
inline KrausChannel dephasing(double g2) {
  if (!(g2 >= 0.0 && g2 <= 1.0)) throw ValidationError("gamma2 outside [0, 1]");
  const double gt = dephasing_gamma_tilde(g2);
  Eigen::Matrix2cd m0 = Eigen::Matrix2cd::Zero(), m1 = Eigen::Matrix2cd::Zero();
  m0(0, 0) = 1.0;
  m0(1, 1) = std::sqrt(1.0 - gt);
  m1(1, 1) = std::sqrt(gt);
  return KrausChannel({m0, m1}, "dephasing(" + std::to_string(g2) + ")");
}

/// Three-operator dephasing: sqrt(1 - g2) I plus sqrt(g2) times each basis
/// projector. Same action as dephasing(g2).
inline KrausChannel dephasing_three_operator(double g2) {
  if (!(g2 >= 0.0 && g2 <= 1.0)) throw ValidationError("gamma2 outside [0, 1]");
  Eigen::Matrix2cd m1 = Eigen::Matrix2cd::Zero(), m2 = Eigen::Matrix2cd::Zero();
  m1(0, 0) = std::sqrt(g2);
  m2(1, 1) = std::sqrt(g2);
  return KrausChannel({std::sqrt(1.0 - g2) * Eigen::Matrix2cd::Identity(), m1, m2},
                      "dephasing3(" + std::to_string(g2) + ")");
}

inline KrausChannel bit_flip(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p outside [0, 1]");
  return KrausChannel({std::sqrt(1.0 - p) * Eigen::Matrix2cd::Identity(), std::sqrt(p) * pauli_x()},
                      "bit_flip(" + std::to_string(p) + ")");
}

inline KrausChannel phase_flip(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p outside [0, 1]");
  return KrausChannel({std::sqrt(1.0 - p) * Eigen::Matrix2cd::Identity(), std::sqrt(p) * pauli_z()},
                      "phase_flip(" + std::to_string(p) + ")");
}

}  // namespace channels

inline KrausChannel standard_channel(const NoiseSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case NoiseKind::None: return KrausChannel::identity();
    case NoiseKind::Depolarizing: return channels::depolarizing(spec.p);
    case NoiseKind::BitFlip: return channels::bit_flip(spec.p);
    case NoiseKind::PhaseFlip: return channels::phase_flip(spec.p);
    case NoiseKind::AmpDampDephase:
      return compose(channels::amplitude_damping(spec.gamma1), channels::dephasing(spec.gamma2));
  }
  return KrausChannel::identity();
}

/// p_tilde = 3/4 - 3/4 (1 - 4p/3)^D: D rounds of depolarizing(p) as a single one.
inline double effective_depolarizing(double p, int D) {
  if (!(p >= 0.0 && p <= 0.75)) throw ValidationError("p outside [0, 3/4]");
  if (D < 0) throw ValidationError("D must be non-negative");
  return 0.75 - 0.75 * std::pow(1.0 - 4.0 * p / 3.0, D);
}

/// In-place Kraus action on one qubit of an n-qubit operator.
template <typename Real>
void apply_channel_inplace(ComplexMatrix<Real>& rho, int n, const KrausChannel& ch, int qubit) {
  if (qubit < 0 || qubit >= n) throw ValidationError("channel qubit index " + std::to_string(qubit) + " out of range");
  std::vector<Eigen::Matrix<std::complex<Real>, 2, 2>> ops;
  ops.reserve(ch.kraus_ops().size());
  for (const auto& k : ch.kraus_ops()) ops.push_back(k.template cast<std::complex<Real>>());
  detail::apply_kraus_to_matrix<Real>(rho, n, ops, qubit);
}

template <typename Real>
DensityMatrix<Real> apply_channel(const DensityMatrix<Real>& rho, const KrausChannel& ch, int qubit) {
  ComplexMatrix<Real> m = rho.matrix();
  apply_channel_inplace<Real>(m, rho.n_qubits(), ch, qubit);
  return DensityMatrix<Real>::from_trusted(rho.n_qubits(), std::move(m));
}

}  // namespace vdsim

#endif  // VDSIM_CHANNELS_HPP
