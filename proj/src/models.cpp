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

#include "vdsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vdsim/errors.hpp"

namespace vdsim {

OrthogonalModelResult orthogonal_model(double p, int G, int M) {
  if (!(p >= 0.0 && p < 1.0)) throw ValidationError("p must lie in [0, 1)");
  if (G < 0 || M < 1) throw ValidationError("G must be >= 0 and M >= 1");
  OrthogonalModelResult r;
  const double g = G;
  const double log_q = std::log1p(-p);
  // (1-p)^M + p^M, kept in log form for large G
  const double log_sector = std::log(std::exp(M * log_q) + std::pow(p, M));
  r.purity = std::exp(g * log_sector);
  r.fidelity = std::exp(g * (M * log_q - log_sector));
  r.first_order_fidelity = 1.0 - g * std::pow(p, M);
  r.sampling_factor = std::exp(-4.0 * g * log_q);
  return r;
}

DriftReport perturbation_floor(const DensityMatrixd& rho, const KrausChannel& channel, std::vector<int> qubits) {
  const int n = rho.n_qubits();
  if (qubits.empty()) {
    for (int q = 0; q < n; ++q) qubits.push_back(q);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> es(rho.matrix());
  const Eigen::Index dim = es.eigenvalues().size();
  if (dim < 2) throw DegenerateError("perturbation_floor needs at least two eigenvalues");
  // Descending order: index 0 is the dominant eigenvector.
  std::vector<double> lambda(static_cast<std::size_t>(dim));
  ComplexMatrixd vecs(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    lambda[static_cast<std::size_t>(i)] = es.eigenvalues()(dim - 1 - i);
    vecs.col(i) = es.eigenvectors().col(dim - 1 - i);
  }
  DriftReport rep;
  rep.gap = lambda[0] - lambda[1];
  if (!(rep.gap > 1e-10)) throw DegenerateError("spectral gap " + std::to_string(rep.gap) + " too small");

  ComplexMatrixd evolved = rho.matrix();
  for (int q : qubits) apply_channel_inplace<double>(evolved, n, channel, q);
  const ComplexMatrixd dv = evolved - rho.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> dv_es(dv, Eigen::EigenvaluesOnly);
  rep.perturbation_norm = dv_es.eigenvalues().cwiseAbs().maxCoeff();
  if (rep.perturbation_norm / rep.gap > 0.1) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "perturbation norm %.3g exceeds 0.1 of the gap %.3g; first order may be inaccurate",
                  rep.perturbation_norm, rep.gap);
    rep.warning = buf;
  }

  const ComplexVectord v0 = vecs.col(0);
  const ComplexVectord dv0 = dv * v0;
  double norm_sq = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    const std::complex<double> amp = vecs.col(i).dot(dv0) / (lambda[0] - lambda[static_cast<std::size_t>(i)]);
    norm_sq += std::norm(amp);
  }
  rep.first_order_norm_sq = norm_sq;
  rep.predicted_trace_distance = std::sqrt(norm_sq);

  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> ev_es(0.5 * (evolved + evolved.adjoint()));
  const ComplexVectord top = ev_es.eigenvectors().col(dim - 1);
  // Norm of the component orthogonal to v0; avoids the sqrt(1 - |overlap|^2) cancellation.
  rep.exact_trace_distance = std::min(1.0, (top - v0 * v0.dot(top)).norm());

  // gamma_i needs the composite Kraus set with a leading operator proportional
  // to the identity; it is built explicitly for registers of up to 4 qubits.
  if (channel.has_identity_operator() && n <= 4) {
    std::vector<ComplexMatrixd> ops{ComplexMatrixd::Identity(dim, dim)};
    for (int q : qubits) {
      std::vector<ComplexMatrixd> next;
      for (const auto& k : channel.kraus_ops()) {
        ComplexMatrixd embedded = ComplexMatrixd::Identity(1, 1);
        for (int j = 0; j < n; ++j) {
          const ComplexMatrixd f = j == q ? ComplexMatrixd(k) : ComplexMatrixd::Identity(2, 2);
          embedded = tensor(embedded, f);
        }
        for (const auto& o : ops) next.push_back(embedded * o);
      }
      ops = std::move(next);
    }
    std::vector<double> gamma(static_cast<std::size_t>(dim - 1), 0.0);
    for (Eigen::Index i = 1; i < dim; ++i) {
      std::complex<double> acc(0.0);
      for (std::size_t j = 1; j < ops.size(); ++j) {
        const ComplexVectord kv0 = ops[j] * v0;
        acc += vecs.col(i).dot(kv0) * std::conj(v0.dot(kv0));
      }
      gamma[static_cast<std::size_t>(i - 1)] = std::abs(acc);
    }
    rep.gamma = std::move(gamma);
  }
  return rep;
}

DensityMatrixd nonentangling_final_state(const std::vector<PureStated>& states, double p, int D) {
  if (states.empty()) throw ValidationError("need at least one qubit");
  if (D < 0 || D % 2 != 0) throw ValidationError("D must be a non-negative even integer");
  const int n = static_cast<int>(states.size());
  ComplexMatrixd out = ComplexMatrixd::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    const PureStated& phi = states[static_cast<std::size_t>(i)];
    if (phi.n_qubits() != 1) throw ValidationError("nonentangling_final_state takes single-qubit states");
    int depth = (i == 0 || i == n - 1) ? D / 2 : D;
    if (n == 1) depth = 0;
    const double pt = effective_depolarizing(p, depth);
    const ComplexMatrixd proj = phi.amplitudes() * phi.amplitudes().adjoint();
    const ComplexMatrixd local =
        (1.0 - 2.0 * pt / 3.0) * proj + (2.0 * pt / 3.0) * (ComplexMatrixd::Identity(2, 2) - proj);
    out = tensor(out, local);
  }
  return DensityMatrixd::from_trusted(n, std::move(out));
}

SurfaceCodeReport surface_code_tradeoff(double n, long G, bool round_distance) {
  if (!(n > 0.0)) throw ValidationError("n must be positive");
  if (G < 0) throw ValidationError("G must be non-negative");
  SurfaceCodeReport r;
  r.n = n;
  r.G = G;
  r.rounded = round_distance;
  r.d1 = std::sqrt(n / 2.0);
  r.d2 = std::sqrt(n);
  if (round_distance) {
    r.d1 = std::round(r.d1);
    r.d2 = std::round(r.d2);
  }
  // log f = 100 d G log(1 - eps(d)), evaluated with log1p/expm1 so that 1 - f
  // keeps full precision when it is small.
  auto log_f_per_gate = [](double d) { return 100.0 * d * std::log1p(-std::pow(10.0, -(d + 3.0) / 2.0)); };
  const double l1 = log_f_per_gate(r.d1), l2 = log_f_per_gate(r.d2);
  const double g = static_cast<double>(G);
  r.one_minus_f1 = -std::expm1(g * l1);
  r.one_minus_f2 = -std::expm1(g * l2);
  r.f1 = std::exp(g * l1);
  r.f2 = std::exp(g * l2);
  r.c_s = G == 0 ? l1 / l2 : r.one_minus_f1 / r.one_minus_f2;
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "closed forms give 1-f1 = %.4g and 1-f2 = %.4g; the rough figures of 1e-1 and 1e-5 sometimes quoted "
                "for n = 200, G = 1000 are not reproduced by these formulas (they give about 2.7e-1 and 3.8e-3 there)",
                r.one_minus_f1, r.one_minus_f2);
  r.note = buf;
  return r;
}

}  // namespace vdsim
