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

#include "vdsim/vd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "vdsim/circuit.hpp"
#include "vdsim/errors.hpp"
#include "vdsim/kernels.hpp"

namespace vdsim {
namespace {

using C = std::complex<double>;

std::size_t pow2(int k) { return std::size_t{1} << k; }

C pauli_trace(const ComplexMatrixd& m, const PauliObservable& O) {
  const PauliWord w = O.word();
  C acc(0.0);
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    acc += w.basis_phase(static_cast<std::uint64_t>(b)) * m(b, b ^ static_cast<Eigen::Index>(w.x));
  }
  return acc * O.coefficient();
}

/// O placed on qubits [offset, offset + O.n) of an n-qubit register.
PauliObservable embed(const PauliObservable& O, int n, int offset) {
  std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
  for (int q = 0; q < O.n_qubits(); ++q) f[static_cast<std::size_t>(offset + q)] = O.factor(q);
  return PauliObservable(std::move(f), O.coefficient());
}

/// Local shift on M single qubits: |b_1 ... b_M> -> |b_2 ... b_M b_1>.
ComplexMatrixd local_shift(int M) {
  const std::size_t dim = pow2(M);
  ComplexMatrixd s = ComplexMatrixd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t target = ((b << 1) & (dim - 1)) | (b >> (M - 1));
    s(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return s;
}

/// (1/M) sum_j Z_j on M single qubits, as a diagonal matrix.
ComplexMatrixd local_symmetrized_z(int M) {
  const std::size_t dim = pow2(M);
  ComplexMatrixd z = ComplexMatrixd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const int ones = std::popcount(b);
    z(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = static_cast<double>(M - 2 * ones) / M;
  }
  return z;
}

ComplexMatrixd swap_matrix() { return gate_matrix("SWAP").matrix(); }

std::vector<int> tuple_qubits(int i, int N, int M, int offset = 0) {
  std::vector<int> q;
  for (int k = 0; k < M; ++k) q.push_back(offset + k * N + i);
  return q;
}

std::size_t local_index(std::size_t m, int n_total, const std::vector<int>& qubits) {
  std::size_t local = 0;
  for (int q : qubits) local = (local << 1) | ((m >> (n_total - 1 - q)) & 1);
  return local;
}

int bit_of(std::size_t m, int n_total, int q) { return static_cast<int>((m >> (n_total - 1 - q)) & 1); }

/// Outcome distribution after rotating each qubit group and, optionally,
/// applying a noise channel to the listed qubits.
std::vector<double> rotated_distribution(ComplexMatrixd register_state, int n_total,
                                         const std::vector<std::vector<int>>& groups,
                                         const std::vector<ComplexMatrixd>& rotations,
                                         const std::optional<NoiseSpec>& noise, const std::vector<int>& noisy_qubits) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    detail::apply_unitary_to_matrix<double>(register_state, n_total, rotations[g], groups[g]);
  }
  if (noise && noise->kind != NoiseKind::None) {
    const KrausChannel ch = standard_channel(*noise);
    for (int q : noisy_qubits) apply_channel_inplace<double>(register_state, n_total, ch, q);
  }
  std::vector<double> probs(static_cast<std::size_t>(register_state.rows()));
  for (Eigen::Index m = 0; m < register_state.rows(); ++m) {
    probs[static_cast<std::size_t>(m)] = std::max(0.0, register_state(m, m).real());
  }
  return probs;
}

/// Per-outcome numerator values (n_num per outcome) and denominator value.
struct OutcomeValues {
  int n_num = 0;
  std::vector<double> num;
  std::vector<double> den;
};

ShotAccumulator sample_range(const std::vector<double>& cdf, const OutcomeValues& v, std::uint64_t shots, Rng rng) {
  ShotAccumulator acc(v.n_num);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t m = rng.sample_cdf(cdf);
    const double d = v.den[m];
    acc.D += d;
    acc.DD += d * d;
    const double* e = v.num.data() + m * static_cast<std::size_t>(v.n_num);
    for (int i = 0; i < v.n_num; ++i) {
      acc.E[static_cast<std::size_t>(i)] += e[i];
      acc.EE[static_cast<std::size_t>(i)] += e[i] * e[i];
      acc.ED[static_cast<std::size_t>(i)] += e[i] * d;
    }
  }
  acc.shots = shots;
  return acc;
}

/// Draws `shots` outcomes split over independent streams (master, task); the
/// merge order is fixed, so the result depends only on the seed and task count.
ShotAccumulator sample_outcomes(const std::vector<double>& probs, const OutcomeValues& v, std::uint64_t shots,
                                Rng& rng, int tasks) {
  if (tasks < 1) throw ValidationError("task count must be >= 1");
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (std::size_t m = 0; m < probs.size(); ++m) cdf[m] = run += probs[m];
  if (!(run > 0.0)) throw DegenerateError("outcome distribution is empty");
  const std::uint64_t master = rng.next();
  std::vector<ShotAccumulator> parts(static_cast<std::size_t>(tasks), ShotAccumulator(v.n_num));
  auto task_shots = [&](int t) {
    const auto T = static_cast<std::uint64_t>(tasks);
    return shots / T + (static_cast<std::uint64_t>(t) < shots % T ? 1 : 0);
  };
  if (tasks == 1) {
    parts[0] = sample_range(cdf, v, shots, Rng(master, 0));
  } else {
    std::vector<std::thread> workers;
    for (int t = 0; t < tasks; ++t) {
      workers.emplace_back([&, t] { parts[static_cast<std::size_t>(t)] = sample_range(cdf, v, task_shots(t), Rng(master, static_cast<std::uint64_t>(t))); });
    }
    for (auto& w : workers) w.join();
  }
  ShotAccumulator total(v.n_num);
  for (const auto& p : parts) total.merge(p);
  return total;
}

void check_register(int n_total, const SampleOptions& options, const char* what) {
  if (n_total > options.max_register_qubits) {
    throw ResourceError(std::string(what) + ": " + std::to_string(n_total) + "-qubit register exceeds the cap of " +
                        std::to_string(options.max_register_qubits) + " qubits");
  }
  options.limits.check_dim(pow2(n_total), what);
}

/// Rotation taking a single-qubit Pauli to Z (R P R^dagger = Z).
ComplexMatrixd to_z_basis(Pauli p) {
  switch (p) {
    case Pauli::X: return gate_matrix("H").matrix();
    case Pauli::Y: {
      Eigen::Matrix2cd sdg;
      sdg << 1, 0, 0, C(0, -1);
      return gate_matrix("H").matrix() * sdg;
    }
    default: return Eigen::Matrix2cd::Identity();
  }
}

struct TwoCopyPlan {
  std::vector<std::vector<int>> groups;
  std::vector<ComplexMatrixd> rotations;
  std::vector<std::vector<C>> tables;
};

}  // namespace

void ShotAccumulator::merge(const ShotAccumulator& other) {
  if (other.n_qubits != n_qubits) throw ValidationError("accumulator size mismatch");
  for (std::size_t i = 0; i < E.size(); ++i) {
    E[i] += other.E[i];
    EE[i] += other.EE[i];
    ED[i] += other.ED[i];
  }
  D += other.D;
  DD += other.DD;
  shots += other.shots;
}

ComplexMatrixd cyclic_shift(int M, int N, const ResourceLimits& limits) {
  if (M < 2 || N < 1) throw ValidationError("cyclic_shift needs M >= 2 and N >= 1");
  if (static_cast<long>(M) * N > 30) throw ResourceError("cyclic_shift: register too large");
  const std::size_t dim = pow2(M * N);
  limits.check_dim(dim, "cyclic_shift");
  const std::size_t mask = dim - 1;
  ComplexMatrixd s = ComplexMatrixd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t target = ((b << N) & mask) | (b >> (N * (M - 1)));
    s(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return s;
}

ComplexMatrixd symmetrized_observable(const PauliObservable& O, int M, const ResourceLimits& limits) {
  if (M < 1) throw ValidationError("M must be >= 1");
  const int N = O.n_qubits();
  const std::size_t dim = pow2(M * N);
  limits.check_dim(dim, "symmetrized_observable");
  ComplexMatrixd out = ComplexMatrixd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (int k = 0; k < M; ++k) out += embed(O, M * N, k * N).matrix();
  return out / static_cast<double>(M);
}

ComplexMatrixd multi_copy(const DensityMatrixd& rho, int M, const ResourceLimits& limits) {
  if (M < 1) throw ValidationError("M must be >= 1");
  limits.check_dim(pow2(M * rho.n_qubits()), "multi_copy");
  ComplexMatrixd out = rho.matrix();
  for (int k = 1; k < M; ++k) out = tensor(out, rho.matrix(), limits);
  return out;
}

double corrected_expectation_exact(const DensityMatrixd& rho, const PauliObservable& O, int M, const Tolerances& tol) {
  if (O.n_qubits() != rho.n_qubits()) throw ValidationError("corrected_expectation_exact: qubit-count mismatch");
  if (M < 1) throw ValidationError("M must be >= 1");
  if (M == 1) return expectation(rho, O, tol);
  const ComplexMatrixd p = hermitian_power(rho, M, tol);
  const double den = p.trace().real();
  if (!(den > 1e-14)) throw DegenerateError("Tr(rho^M) vanishes");
  return pauli_trace(p, O).real() / den;
}

double corrected_expectation_pair(const DensityMatrixd& rho_a, const DensityMatrixd& rho_b, const PauliObservable& O) {
  if (rho_a.dim() != rho_b.dim() || O.n_qubits() != rho_a.n_qubits()) {
    throw ValidationError("corrected_expectation_pair: dimension mismatch");
  }
  const ComplexMatrixd prod = rho_a.matrix() * rho_b.matrix();
  const double den = prod.trace().real();
  if (!(den > 1e-14)) throw DegenerateError("Tr(rho_A rho_B) vanishes");
  return pauli_trace(prod, O).real() / den;
}

std::complex<double> shift_trace(const DensityMatrixd& rho, const ComplexMatrixd* observable, int copy, int M,
                                 const ResourceLimits& limits) {
  if (M < 1 || copy < 0 || copy >= M) throw ValidationError("shift_trace: bad copy index");
  const int N = rho.n_qubits();
  if (static_cast<long>(N) * M > 24) throw ResourceError("shift_trace: too many index tuples");
  limits.check_dim(pow2(N * M), "shift_trace");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  const auto& r = rho.matrix();
  // Entry of (O^k S rho^{(x)M}) at (b, b): sum over a_k of O(b_k, a_k) times the
  // product over copies j of rho(a_{j-1}, b_j), where a agrees with b off copy k.
  std::vector<Eigen::Index> b(static_cast<std::size_t>(M), 0);
  auto prev = [M](int j) { return (j + M - 1) % M; };
  const int after = (copy + 1) % M;  // the copy whose rho factor reads a_k
  C total(0.0);
  for (;;) {
    C rest(1.0);
    for (int j = 0; j < M; ++j) {
      if (j == after) continue;
      rest *= r(b[static_cast<std::size_t>(prev(j))], b[static_cast<std::size_t>(j)]);
    }
    const Eigen::Index bk = b[static_cast<std::size_t>(copy)], ba = b[static_cast<std::size_t>(after)];
    C inner(0.0);
    if (observable == nullptr) {
      inner = r(bk, ba);
    } else {
      for (Eigen::Index ak = 0; ak < d; ++ak) inner += (*observable)(bk, ak) * r(ak, ba);
    }
    total += inner * rest;
    int j = M - 1;
    while (j >= 0 && ++b[static_cast<std::size_t>(j)] == d) b[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  return total;
}

double trace_identity_residual(const DensityMatrixd& rho, const PauliObservable& O, int M,
                               const ResourceLimits& limits) {
  if (O.n_qubits() != rho.n_qubits()) throw ValidationError("trace_identity_residual: qubit-count mismatch");
  if (M < 1) throw ValidationError("M must be >= 1");
  if (M == 1) return 0.0;
  ComplexMatrixd power = rho.matrix();
  for (int k = 1; k < M; ++k) power = (power * rho.matrix()).eval();
  const C lhs = pauli_trace(power, O);
  const C tr_power = power.trace();
  const ComplexMatrixd o = O.matrix();
  double residual = std::abs(lhs - shift_trace(rho, &o, 0, M, limits));
  C sym(0.0);
  for (int k = 0; k < M; ++k) sym += shift_trace(rho, &o, k, M, limits);
  sym /= static_cast<double>(M);
  const C den = shift_trace(rho, nullptr, 0, M, limits);
  residual = std::max(residual, std::abs(den - tr_power));
  if (std::abs(den) > 1e-14 && std::abs(tr_power) > 1e-14) {
    residual = std::max(residual, std::abs(sym / den - lhs / tr_power));
  }
  return residual;
}

ComplexMatrixd b2_on_pair() {
  const ComplexMatrixd sw = swap_matrix();
  return sw * gates::b2() * sw;
}

B2Residuals b2_diagonalization_residuals(int N) {
  if (N < 1 || N > 5) throw ValidationError("b2_diagonalization_residuals: N out of range");
  const int n = 2 * N;
  const auto dim = static_cast<Eigen::Index>(pow2(n));
  const ComplexMatrixd b = gates::b2();
  auto z = [&](int q) { return PauliObservable::single(n, q, Pauli::Z).matrix(); };
  const ComplexMatrixd id = ComplexMatrixd::Identity(dim, dim);
  auto conjugate = [&](ComplexMatrixd m) {
    // The printed B^(2) is indexed (copy-2 qubit, copy-1 qubit).
    for (int i = 0; i < N; ++i) {
      const std::vector<int> pair{N + i, i};
      detail::apply_unitary_to_matrix<double>(m, n, b, pair);
    }
    return m;
  };
  B2Residuals out;
  for (int i = 0; i < N; ++i) {
    ComplexMatrixd s = ComplexMatrixd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto u = static_cast<std::size_t>(c);
      const int b1 = bit_of(u, n, i), b2 = bit_of(u, n, N + i);
      std::size_t t = u;
      if (b1 != b2) t ^= pow2(n - 1 - i) | pow2(n - 1 - (N + i));
      s(static_cast<Eigen::Index>(t), c) = 1.0;
    }
    const ComplexMatrixd z1 = z(i), z2 = z(N + i);
    const ComplexMatrixd want_s = 0.5 * (id + z1 - z2 + z1 * z2);
    const ComplexMatrixd want_zs = 0.5 * (z1 + z2);
    out.shift = std::max(out.shift, (conjugate(s) - want_s).cwiseAbs().maxCoeff());
    out.z_shift = std::max(out.z_shift, (conjugate(0.5 * (z1 + z2) * s) - want_zs).cwiseAbs().maxCoeff());
  }
  return out;
}

ComplexMatrixd simultaneous_diagonalizer(const std::vector<ComplexMatrixd>& normals, double* residual) {
  if (normals.empty()) throw ValidationError("simultaneous_diagonalizer: no matrices");
  const auto dim = normals.front().rows();
  // A generic real combination of the commuting Hermitian parts; its
  // eigenvectors diagonalize every input when the joint spectrum is resolved.
  ComplexMatrixd a = ComplexMatrixd::Zero(dim, dim);
  for (std::size_t k = 0; k < normals.size(); ++k) {
    const ComplexMatrixd& m = normals[k];
    const double cr = 0.7131 * std::sqrt(2.0 + static_cast<double>(k));
    const double ci = 0.4173 * std::sqrt(3.0 + static_cast<double>(k)) + 0.1;
    a += cr * 0.5 * (m + m.adjoint()) + ci * (m - m.adjoint()) * C(0.0, -0.5);
  }
  a = 0.5 * (a + a.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> es(a);
  ComplexMatrixd v = es.eigenvectors();
  for (Eigen::Index c = 0; c < dim; ++c) {
    ComplexVectord col = v.col(c);
    detail::fix_phase(col);
    v.col(c) = col;
  }
  const ComplexMatrixd w = v.adjoint();
  double worst = 0.0;
  for (const auto& m : normals) {
    ComplexMatrixd t = w * m * w.adjoint();
    t.diagonal().setZero();
    worst = std::max(worst, t.cwiseAbs().maxCoeff());
  }
  if (residual != nullptr) *residual = worst;
  if (worst > 1e-10) throw DegenerateError("simultaneous diagonalization failed (residual " + std::to_string(worst) + ")");
  return w;
}

TupleBasis tuple_basis(int M) {
  if (M < 2 || M > 6) throw ValidationError("tuple_basis: M must be in [2, 6]");
  TupleBasis tb;
  tb.copies = M;
  const ComplexMatrixd s = local_shift(M);
  const ComplexMatrixd zs = local_symmetrized_z(M) * s;
  if (M == 2) {
    tb.rotation = b2_on_pair();
  } else {
    tb.rotation = simultaneous_diagonalizer({s, zs});
  }
  const ComplexMatrixd ds = tb.rotation * s * tb.rotation.adjoint();
  const ComplexMatrixd dz = tb.rotation * zs * tb.rotation.adjoint();
  for (Eigen::Index m = 0; m < ds.rows(); ++m) {
    tb.shift.push_back(ds(m, m));
    tb.z_shift.push_back(dz(m, m));
  }
  ComplexMatrixd off_s = ds, off_z = dz;
  off_s.diagonal().setZero();
  off_z.diagonal().setZero();
  tb.residual = std::max(off_s.cwiseAbs().maxCoeff(), off_z.cwiseAbs().maxCoeff());
  return tb;
}

CorrectedEstimate ratio_estimate(double sum_n, double sum_d, double sum_nn, double sum_dd, double sum_nd,
                                 std::uint64_t shots) {
  if (shots == 0) throw ValidationError("ratio_estimate: no shots");
  if (sum_d == 0.0) {
    throw DegenerateError("denominator accumulator is zero after " + std::to_string(shots) + " shots");
  }
  const double k = static_cast<double>(shots);
  const double mn = sum_n / k, md = sum_d / k;
  double snn = 0.0, sdd = 0.0, snd = 0.0;
  if (shots > 1) {
    snn = (sum_nn - k * mn * mn) / (k - 1.0);
    sdd = (sum_dd - k * md * md) / (k - 1.0);
    snd = (sum_nd - k * mn * md) / (k - 1.0);
  }
  const double var = (snn / (md * md) - 2.0 * mn * snd / (md * md * md) + mn * mn * sdd / (md * md * md * md)) / k;
  return {mn / md, mn, md, shots, std::sqrt(std::max(0.0, var))};
}

namespace {

struct VdPlan {
  std::vector<double> probs;
  OutcomeValues values;
};

VdPlan vd_plan(const DensityMatrixd& rho, int M, const SampleOptions& options) {
  if (M != 2 && M != 3) throw ValidationError("vd_sample supports M = 2 or 3");
  const int N = rho.n_qubits();
  const int n_total = M * N;
  check_register(n_total, options, "vd_sample");
  const TupleBasis tb = tuple_basis(M);
  std::vector<std::vector<int>> groups;
  std::vector<ComplexMatrixd> rotations;
  for (int i = 0; i < N; ++i) {
    groups.push_back(tuple_qubits(i, N, M));
    rotations.push_back(tb.rotation);
  }
  std::vector<int> all(static_cast<std::size_t>(n_total));
  for (int q = 0; q < n_total; ++q) all[static_cast<std::size_t>(q)] = q;
  VdPlan plan;
  plan.probs = rotated_distribution(multi_copy(rho, M, options.limits), n_total, groups, rotations,
                                    options.measurement_noise, all);
  const std::size_t dim = plan.probs.size();
  plan.values.n_num = N;
  plan.values.num.assign(dim * static_cast<std::size_t>(N), 0.0);
  plan.values.den.assign(dim, 0.0);
  std::vector<std::size_t> local(static_cast<std::size_t>(N));
  for (std::size_t m = 0; m < dim; ++m) {
    C d(1.0);
    for (int i = 0; i < N; ++i) {
      local[static_cast<std::size_t>(i)] = local_index(m, n_total, groups[static_cast<std::size_t>(i)]);
      d *= tb.shift[local[static_cast<std::size_t>(i)]];
    }
    plan.values.den[m] = d.real();
    for (int i = 0; i < N; ++i) {
      C e = tb.z_shift[local[static_cast<std::size_t>(i)]];
      for (int j = 0; j < N; ++j) {
        if (j != i) e *= tb.shift[local[static_cast<std::size_t>(j)]];
      }
      plan.values.num[m * static_cast<std::size_t>(N) + static_cast<std::size_t>(i)] = e.real();
    }
  }
  return plan;
}

}  // namespace

VdSampleResult vd_sample(const DensityMatrixd& rho, int M, std::uint64_t shots, Rng& rng, const SampleOptions& options) {
  if (shots == 0) throw ValidationError("vd_sample: shots must be >= 1");
  const VdPlan plan = vd_plan(rho, M, options);
  VdSampleResult out{{}, {}, sample_outcomes(plan.probs, plan.values, shots, rng, options.tasks)};
  const ShotAccumulator& acc = out.accumulator;
  for (int i = 0; i < rho.n_qubits(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    out.z.push_back(ratio_estimate(acc.E[u], acc.D, acc.EE[u], acc.DD, acc.ED[u], acc.shots));
  }
  const double k = static_cast<double>(acc.shots);
  const double md = acc.D / k;
  const double sdd = acc.shots > 1 ? (acc.DD - k * md * md) / (k - 1.0) : 0.0;
  out.purity = {md, md, 1.0, acc.shots, std::sqrt(std::max(0.0, sdd) / k)};
  return out;
}

std::vector<double> vd_protocol_exact(const DensityMatrixd& rho, int M, const SampleOptions& options) {
  const VdPlan plan = vd_plan(rho, M, options);
  const int N = rho.n_qubits();
  std::vector<double> num(static_cast<std::size_t>(N), 0.0);
  double den = 0.0, total = 0.0;
  for (std::size_t m = 0; m < plan.probs.size(); ++m) {
    const double p = plan.probs[m];
    total += p;
    den += p * plan.values.den[m];
    for (int i = 0; i < N; ++i) {
      num[static_cast<std::size_t>(i)] += p * plan.values.num[m * static_cast<std::size_t>(N) + static_cast<std::size_t>(i)];
    }
  }
  if (!(std::abs(den) > 1e-14 * total)) throw DegenerateError("protocol denominator vanishes");
  for (double& v : num) v /= den;
  return num;
}

CorrectedEstimate pauli_string_sample(const DensityMatrixd& rho, const PauliObservable& P, std::uint64_t shots,
                                      Rng& rng, const SampleOptions& options) {
  const int N = rho.n_qubits();
  if (P.n_qubits() != N) throw ValidationError("pauli_string_sample: qubit-count mismatch");
  if (P.weight() < 2) {
    // Single-qubit (or identity) observables go through the Z protocol after rotating
    // the measured factor onto Z.
    int q = 0;
    Pauli f = Pauli::Z;
    for (int j = 0; j < N; ++j) {
      if (P.factor(j) != Pauli::I) {
        q = j;
        f = P.factor(j);
      }
    }
    ComplexMatrixd m = rho.matrix();
    detail::apply_unitary_to_matrix<double>(m, N, to_z_basis(f), std::vector<int>{q});
    const VdSampleResult r = vd_sample(DensityMatrixd::from_trusted(N, std::move(m)), 2, shots, rng, options);
    CorrectedEstimate e = r.z[static_cast<std::size_t>(q)];
    if (P.weight() == 0) e = {1.0, r.purity.value, r.purity.value, r.purity.shots, 0.0};
    e.value *= P.coefficient();
    e.numerator *= P.coefficient();
    e.standard_error *= std::abs(P.coefficient());
    return e;
  }
  if (shots < 2) throw ValidationError("pauli_string_sample: needs at least 2 shots");
  const int n_total = 2 * N;
  check_register(n_total, options, "pauli_string_sample");
  const std::uint64_t shots_num = (shots + 1) / 2, shots_den = shots / 2;
  const ComplexMatrixd sw = swap_matrix();
  const ComplexMatrixd b = b2_on_pair();
  std::vector<std::vector<int>> groups;
  std::vector<ComplexMatrixd> num_rot, den_rot;
  std::vector<std::vector<C>> num_tab, den_tab;
  for (int i = 0; i < N; ++i) {
    groups.push_back(tuple_qubits(i, N, 2));
    const ComplexMatrixd f = tensor(PauliObservable::single(1, 0, P.factor(i)).matrix(), ComplexMatrixd::Identity(2, 2)) * sw;
    const ComplexMatrixd w = P.factor(i) == Pauli::I ? b : simultaneous_diagonalizer({f});
    const ComplexMatrixd df = w * f * w.adjoint(), ds = b * sw * b.adjoint();
    num_rot.push_back(w);
    den_rot.push_back(b);
    num_tab.emplace_back();
    den_tab.emplace_back();
    for (Eigen::Index m = 0; m < 4; ++m) {
      num_tab.back().push_back(df(m, m));
      den_tab.back().push_back(ds(m, m));
    }
  }
  std::vector<int> all(static_cast<std::size_t>(n_total));
  for (int q = 0; q < n_total; ++q) all[static_cast<std::size_t>(q)] = q;
  const ComplexMatrixd two = multi_copy(rho, 2, options.limits);
  auto batch = [&](const std::vector<ComplexMatrixd>& rot, const std::vector<std::vector<C>>& tab, double scale,
                   std::uint64_t k) {
    const std::vector<double> probs = rotated_distribution(two, n_total, groups, rot, options.measurement_noise, all);
    OutcomeValues v;
    v.n_num = 1;
    v.num.resize(probs.size());
    v.den.assign(probs.size(), 1.0);
    for (std::size_t m = 0; m < probs.size(); ++m) {
      C prod(1.0);
      for (int i = 0; i < N; ++i) prod *= tab[static_cast<std::size_t>(i)][local_index(m, n_total, groups[static_cast<std::size_t>(i)])];
      v.num[m] = scale * prod.real();
    }
    return sample_outcomes(probs, v, k, rng, options.tasks);
  };
  const ShotAccumulator an = batch(num_rot, num_tab, P.coefficient(), shots_num);
  const ShotAccumulator ad = batch(den_rot, den_tab, 1.0, shots_den);
  if (ad.E[0] == 0.0) throw DegenerateError("denominator accumulator is zero after " + std::to_string(shots_den) + " shots");
  const double kn = static_cast<double>(shots_num), kd = static_cast<double>(shots_den);
  const double mn = an.E[0] / kn, md = ad.E[0] / kd;
  const double snn = shots_num > 1 ? (an.EE[0] - kn * mn * mn) / (kn - 1.0) : 0.0;
  const double sdd = shots_den > 1 ? (ad.EE[0] - kd * md * md) / (kd - 1.0) : 0.0;
  const double var = snn / (kn * md * md) + mn * mn * sdd / (kd * md * md * md * md);
  return {mn / md, mn, md, shots, std::sqrt(std::max(0.0, var))};
}

CorrectedEstimate hadamard_test_sample(const DensityMatrixd& rho, const PauliObservable& O, std::uint64_t shots,
                                       Rng& rng, const SampleOptions& options) {
  const int N = rho.n_qubits();
  if (O.n_qubits() != N) throw ValidationError("hadamard_test_sample: qubit-count mismatch");
  if (shots == 0) throw ValidationError("hadamard_test_sample: shots must be >= 1");
  const int n_total = 2 * N + 1;
  check_register(n_total, options, "hadamard_test_sample");
  ComplexMatrixd anc = ComplexMatrixd::Zero(2, 2);
  anc(0, 0) = 1.0;
  ComplexMatrixd reg = tensor(anc, multi_copy(rho, 2, options.limits), options.limits);
  const ComplexMatrixd h = gate_matrix("H").matrix();
  ComplexMatrixd fredkin = ComplexMatrixd::Identity(8, 8);
  fredkin(5, 5) = fredkin(6, 6) = 0.0;
  fredkin(5, 6) = fredkin(6, 5) = 1.0;
  std::vector<std::vector<int>> groups{{0}};
  std::vector<ComplexMatrixd> rotations{h};
  for (int j = 0; j < N; ++j) {
    groups.push_back({0, 1 + j, 1 + N + j});
    rotations.push_back(fredkin);
  }
  groups.push_back({0});
  rotations.push_back(h);
  std::vector<int> support;
  for (int j = 0; j < N; ++j) {
    if (O.factor(j) == Pauli::I) continue;
    support.push_back(j);
    for (int q : {1 + j, 1 + N + j}) {
      groups.push_back({q});
      rotations.push_back(to_z_basis(O.factor(j)));
    }
  }
  std::vector<int> all(static_cast<std::size_t>(n_total));
  for (int q = 0; q < n_total; ++q) all[static_cast<std::size_t>(q)] = q;
  const std::vector<double> probs =
      rotated_distribution(std::move(reg), n_total, groups, rotations, options.measurement_noise, all);
  OutcomeValues v;
  v.n_num = 1;
  v.num.resize(probs.size());
  v.den.resize(probs.size());
  for (std::size_t m = 0; m < probs.size(); ++m) {
    const double x = bit_of(m, n_total, 0) ? -1.0 : 1.0;
    int p1 = 0, p2 = 0;
    for (int j : support) {
      p1 ^= bit_of(m, n_total, 1 + j);
      p2 ^= bit_of(m, n_total, 1 + N + j);
    }
    const double o = O.coefficient() * 0.5 * ((p1 ? -1.0 : 1.0) + (p2 ? -1.0 : 1.0));
    v.num[m] = x * o;
    v.den[m] = x;
  }
  const ShotAccumulator acc = sample_outcomes(probs, v, shots, rng, options.tasks);
  return ratio_estimate(acc.E[0], acc.D, acc.EE[0], acc.DD, acc.ED[0], acc.shots);
}

}  // namespace vdsim
