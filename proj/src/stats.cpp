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

#include "vdsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "vdsim/errors.hpp"
#include "vdsim/vd.hpp"

namespace vdsim {
namespace {

double tr_real(const ComplexMatrixd& m) { return m.trace().real(); }

struct Moments {
  double t_o;    // Tr(rho O)
  double t_o2;   // Tr(rho O^2)
  double t_r2o;  // Tr(rho^2 O)
  double p;      // Tr(rho^2)
};

Moments moments(const DensityMatrixd& rho, const PauliObservable& O) {
  if (O.n_qubits() != rho.n_qubits()) throw ValidationError("observable and state qubit counts differ");
  const ComplexMatrixd o = O.matrix();
  const ComplexMatrixd& r = rho.matrix();
  const ComplexMatrixd r2 = r * r;
  return {tr_real(r * o), tr_real(r * o * o), tr_real(r2 * o), tr_real(r2)};
}

/// Permutation exchanging copies i and j of an M-copy register of N qubits.
ComplexMatrixd copy_swap(int i, int j, int M, int N) {
  const int n = M * N;
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t block = (std::size_t{1} << N) - 1;
  const int si = (M - 1 - i) * N, sj = (M - 1 - j) * N;
  ComplexMatrixd s = ComplexMatrixd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t bi = (b >> si) & block, bj = (b >> sj) & block;
    std::size_t t = b & ~((block << si) | (block << sj));
    t |= (bi << sj) | (bj << si);
    s(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return s;
}

}  // namespace

double numerator_variance(const DensityMatrixd& rho, const PauliObservable& O) {
  const Moments m = moments(rho, O);
  return std::max(0.0, 0.5 * m.t_o2 + 0.5 * m.t_o * m.t_o - m.t_r2o * m.t_r2o);
}

double denominator_variance(const DensityMatrixd& rho) {
  const double p = rho.purity();
  return std::clamp(1.0 - p * p, 0.0, 1.0);
}

double num_den_covariance(const DensityMatrixd& rho, const PauliObservable& O) {
  const Moments m = moments(rho, O);
  return m.t_o - m.t_r2o * m.p;
}

VarianceReport variance_report(const DensityMatrixd& rho, const PauliObservable& O) {
  const Moments m = moments(rho, O);
  if (!(m.p > 1e-14)) throw DegenerateError("purity vanishes");
  VarianceReport r;
  r.var_numerator = std::max(0.0, 0.5 * m.t_o2 + 0.5 * m.t_o * m.t_o - m.t_r2o * m.t_r2o);
  r.var_denominator = std::clamp(1.0 - m.p * m.p, 0.0, 1.0);
  r.covariance = m.t_o - m.t_r2o * m.p;
  const double p2 = m.p * m.p;
  r.ratio_variance_per_R = r.var_numerator / p2 - 2.0 * m.t_r2o / (p2 * m.p) * r.covariance +
                           m.t_r2o * m.t_r2o / (p2 * p2) * r.var_denominator;
  return r;
}

double ratio_variance(const DensityMatrixd& rho, const PauliObservable& O, long R) {
  if (R < 1) throw ValidationError("R must be >= 1");
  return variance_report(rho, O).ratio_variance_per_R / static_cast<double>(R);
}

double single_copy_variance(const DensityMatrixd& rho, const PauliObservable& O) {
  const Moments m = moments(rho, O);
  return std::max(0.0, m.t_o2 - m.t_o * m.t_o);
}

Overhead overhead_ratio(const DensityMatrixd& rho, const std::vector<PauliObservable>& observables,
                        double copy_factor) {
  if (observables.empty()) throw ValidationError("overhead_ratio needs at least one observable");
  double mitigated = 0.0, plain = 0.0;
  for (const auto& o : observables) {
    mitigated += ratio_variance(rho, o, 1);
    plain += single_copy_variance(rho, o);
  }
  if (!(plain > 0.0)) throw DegenerateError("unmitigated variance is zero for every observable");
  Overhead out;
  out.copy_factor = copy_factor;
  out.ratio = copy_factor * mitigated / plain;
  out.convention = copy_factor == 2.0 ? "shots x copies (2 copies per repetition)"
                                      : "shots x " + std::to_string(copy_factor);
  return out;
}

double collective_variance_bound(double trace_rho_cubed, int K) {
  if (K < 1) throw ValidationError("K must be >= 1");
  const double k = K;
  return (1.0 + 7.0 * (k - 1.0) * trace_rho_cubed) / (k * (2.0 * k - 1.0));
}

double collective_variance_bound(const DensityMatrixd& rho, int K) {
  const ComplexMatrixd& r = rho.matrix();
  return collective_variance_bound(tr_real(r * r * r), K);
}

ComplexMatrixd collective_observable(const PauliObservable& O, int K, const ResourceLimits& limits) {
  if (K < 1) throw ValidationError("K must be >= 1");
  const int N = O.n_qubits();
  const int M = 2 * K;
  const std::size_t dim = std::size_t{1} << (M * N);
  limits.check_dim(dim, "collective_observable");
  std::vector<ComplexMatrixd> embedded;
  for (int c = 0; c < M; ++c) {
    std::vector<Pauli> f(static_cast<std::size_t>(M * N), Pauli::I);
    for (int q = 0; q < N; ++q) f[static_cast<std::size_t>(c * N + q)] = O.factor(q);
    embedded.push_back(PauliObservable(std::move(f), O.coefficient()).matrix());
  }
  ComplexMatrixd out = ComplexMatrixd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) out += 0.5 * (embedded[i] + embedded[j]) * copy_swap(i, j, M, N);
  }
  return out / (M * (M - 1) / 2.0);
}

CollectiveVariance collective_variance_bruteforce(const DensityMatrixd& rho, const PauliObservable& O, int K,
                                                  int max_register_qubits, const ResourceLimits& limits) {
  if (O.n_qubits() != rho.n_qubits()) throw ValidationError("observable and state qubit counts differ");
  if (2 * K * rho.n_qubits() > max_register_qubits) {
    throw ResourceError("collective_variance_bruteforce: " + std::to_string(2 * K * rho.n_qubits()) +
                        "-qubit register exceeds the cap of " + std::to_string(max_register_qubits));
  }
  const ComplexMatrixd ot = collective_observable(O, K, limits);
  const ComplexMatrixd big = multi_copy(rho, 2 * K, limits);
  const ComplexMatrixd bo = big * ot;
  CollectiveVariance out;
  out.mean = tr_real(bo);
  out.variance = std::max(0.0, tr_real(bo * ot) - out.mean * out.mean);
  out.target = moments(rho, O).t_r2o;
  if (std::abs(out.mean - out.target) > 1e-10) {
    throw DegenerateError("collective observable mean " + std::to_string(out.mean) + " differs from Tr(O rho^2) " +
                          std::to_string(out.target));
  }
  return out;
}

}  // namespace vdsim
