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

#include "vdsim/generators.hpp"

#include <cmath>

#include "vdsim/errors.hpp"

namespace vdsim {
namespace {

constexpr const char* kScramblerSet[] = {"X", "Y", "Z", "SX", "SY", "SZ"};

void check_qubits(int N) {
  if (N < 1 || N > 16) throw ValidationError("qubit count must be in [1, 16]");
}

std::vector<std::pair<int, int>> bonds(int N, int offset, Boundary boundary) {
  std::vector<std::pair<int, int>> out;
  for (int q = offset; q + 1 < N; q += 2) out.emplace_back(q, q + 1);
  // The wrap-around bond (N-1, 0) joins the layer whose parity it matches.
  if (boundary == Boundary::Periodic && N > 2 && (N - 1) % 2 == offset) out.emplace_back(N - 1, 0);
  return out;
}

ComplexMatrixd bond_unitary(const HeisenbergParams& p) {
  const ComplexMatrixd h = p.Jx * PauliObservable::parse("XX").matrix() + p.Jy * PauliObservable::parse("YY").matrix() +
                           p.Jz * PauliObservable::parse("ZZ").matrix();
  return expm_hermitian(h, p.dt);
}

double field_sign(const HeisenbergParams& p, int i) {
  return p.field_signs.empty() ? 1.0 : p.field_signs[static_cast<std::size_t>(i)];
}

}  // namespace

void HeisenbergParams::validate() const {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  for (double s : field_signs) {
    if (s != 1.0 && s != -1.0) throw ValidationError("field signs must be +1 or -1");
  }
}

Circuit gen_scrambler(int N, int depth, bool entangling, Rng& rng) {
  check_qubits(N);
  if (depth < 1) throw ValidationError("depth must be >= 1");
  Circuit c(N);
  const Gate two = gate_matrix(entangling ? "SYC" : "I2");
  auto single_layer = [&] {
    for (int q = 0; q < N; ++q) c.add(kScramblerSet[rng.below(6)], {q});
  };
  for (int layer = 0; layer < depth; ++layer) {
    single_layer();
    for (const auto& [a, b] : bonds(N, layer % 2, Boundary::Open)) c.add(two, {a, b});
  }
  single_layer();
  return c;
}

Circuit gen_heisenberg_trotter(int N, int steps, const HeisenbergParams& params) {
  check_qubits(N);
  params.validate();
  if (steps < 1) throw ValidationError("steps must be >= 1");
  if (!params.field_signs.empty() && static_cast<int>(params.field_signs.size()) != N) {
    throw ValidationError("field_signs must have one entry per site");
  }
  Circuit c(N);
  const Gate bond("HB", bond_unitary(params));
  const Pauli axis = params.field_pattern == FieldPattern::UniformX ? Pauli::X : Pauli::Z;
  std::vector<Gate> field;
  for (int q = 0; q < N; ++q) {
    const ComplexMatrixd hq = params.h * field_sign(params, q) * PauliObservable::single(1, 0, axis).matrix();
    field.emplace_back("HF", expm_hermitian(hq, params.dt));
  }
  for (int s = 0; s < steps; ++s) {
    for (int q = 0; q < N; ++q) c.add(field[static_cast<std::size_t>(q)], {q});
    for (int offset : {0, 1}) {
      for (const auto& [a, b] : bonds(N, offset, params.boundary)) c.add(bond, {a, b});
    }
  }
  return c;
}

ComplexMatrixd heisenberg_hamiltonian(int N, const HeisenbergParams& params) {
  check_qubits(N);
  params.validate();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << N);
  ComplexMatrixd h = ComplexMatrixd::Zero(dim, dim);
  std::vector<std::pair<int, int>> all = bonds(N, 0, params.boundary);
  for (const auto& b : bonds(N, 1, params.boundary)) all.push_back(b);
  for (const auto& [a, b] : all) {
    for (auto [p, j] : {std::pair{Pauli::X, params.Jx}, std::pair{Pauli::Y, params.Jy}, std::pair{Pauli::Z, params.Jz}}) {
      std::vector<Pauli> f(static_cast<std::size_t>(N), Pauli::I);
      f[static_cast<std::size_t>(a)] = f[static_cast<std::size_t>(b)] = p;
      h += j * PauliObservable(std::move(f)).matrix();
    }
  }
  const Pauli axis = params.field_pattern == FieldPattern::UniformX ? Pauli::X : Pauli::Z;
  for (int q = 0; q < N; ++q) h += params.h * field_sign(params, q) * PauliObservable::single(N, q, axis).matrix();
  return h;
}

ComplexMatrixd expm_hermitian(const ComplexMatrixd& H, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> es(H);
  if (es.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
  ComplexVectord phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

PureStated neel_state(int N) {
  check_qubits(N);
  std::uint64_t index = 0;
  for (int q = 0; q < N; ++q) index = (index << 1) | static_cast<std::uint64_t>(q % 2);
  return PureStated::basis(N, index);
}

std::vector<PureStated> product_state_factors(const Circuit& circuit) {
  const int n = circuit.n_qubits();
  std::vector<Eigen::Vector2cd> states(static_cast<std::size_t>(n), Eigen::Vector2cd(1.0, 0.0));
  for (const Operation& op : circuit.ops()) {
    if (op.gate.arity() == 2) {
      if (!op.gate.is_identity()) throw ValidationError("circuit contains an entangling gate");
      continue;
    }
    auto& s = states[static_cast<std::size_t>(op.qubits[0])];
    s = (op.gate.matrix() * s).eval();
  }
  std::vector<PureStated> out;
  for (const auto& s : states) out.push_back(PureStated::normalized(s));
  return out;
}

double magnetization_error(const DensityMatrixd& rho, const PureStated& ideal) {
  const int n = rho.n_qubits();
  if (ideal.n_qubits() != n) throw ValidationError("magnetization_error: qubit-count mismatch");
  double total = 0.0;
  for (int q = 0; q < n; ++q) {
    const PauliObservable z = PauliObservable::single(n, q, Pauli::Z);
    total += std::abs(expectation(rho, z) - expectation(ideal, z));
  }
  return total / n;
}

std::map<std::string, double> magnetization_error(const std::map<std::string, DensityMatrixd>& variants,
                                                  const PureStated& ideal) {
  std::map<std::string, double> out;
  for (const auto& [label, rho] : variants) out[label] = magnetization_error(rho, ideal);
  return out;
}

double magnetization_error(const std::vector<double>& z, const PureStated& ideal) {
  const int n = ideal.n_qubits();
  if (static_cast<int>(z.size()) != n) throw ValidationError("magnetization_error: qubit-count mismatch");
  double total = 0.0;
  for (int q = 0; q < n; ++q) {
    total += std::abs(z[static_cast<std::size_t>(q)] - expectation(ideal, PauliObservable::single(n, q, Pauli::Z)));
  }
  return total / n;
}

}  // namespace vdsim
