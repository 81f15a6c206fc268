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

#include "vdsim/qdrift.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>

#include <Eigen/Sparse>

#include "vdsim/errors.hpp"
#include "vdsim/generators.hpp"

namespace vdsim {
namespace {

using C = std::complex<double>;

std::uint64_t key_of(const PauliWord& w) { return (w.x << 32) | w.z; }

PauliWord word_of(std::uint64_t key) { return {key >> 32, key & 0xffffffffULL}; }

/// Tr(rho Q) for the Hermitian Pauli word Q.
double pauli_coefficient(const ComplexMatrixd& rho, const PauliWord& w) {
  C acc(0.0);
  for (Eigen::Index b = 0; b < rho.rows(); ++b) {
    acc += w.basis_phase(static_cast<std::uint64_t>(b)) * rho(b, b ^ static_cast<Eigen::Index>(w.x));
  }
  return acc.real();
}

/// Sign of -i * i^k for odd k.
double rotation_sign(int k) { return (k + 3) % 4 == 0 ? 1.0 : -1.0; }

/// Pauli-basis form of the averaged qDRIFT channel,
/// Phi(tau) = A + cos(2 tau) B + sin(2 tau) S on the reachable (folded) Paulis.
class PauliTransfer {
 public:
  PauliTransfer(const QDriftModel& model, const DensityMatrixd& rho0) : n_(model.n_qubits()) {
    if (n_ > 12) throw ResourceError("qDRIFT exact channel supports at most 12 qubits");
    for (const auto& t : model.terms) {
      terms_.push_back({t.op.word(), t.op.coefficient() > 0 ? 1.0 : -1.0, t.weight / model.lambda});
    }
    choose_symmetry(rho0);
    // Initial support.
    std::vector<std::pair<std::uint64_t, double>> support;
    const std::uint64_t full = std::uint64_t{1} << n_;
    for (std::uint64_t x = 0; x < full; ++x) {
      for (std::uint64_t z = 0; z < full; ++z) {
        const PauliWord w{x, z};
        if (folded_ && key_of(canonical(w)) != key_of(w)) continue;
        const double c = pauli_coefficient(rho0.matrix(), w);
        if (std::abs(c) > 1e-14) support.emplace_back(key_of(w), c);
      }
    }
    std::deque<std::uint64_t> queue;
    for (const auto& [k, c] : support) {
      index(k, queue);
    }
    std::vector<Eigen::Triplet<double>> ta, tb, ts;
    while (!queue.empty()) {
      const std::uint64_t k = queue.front();
      queue.pop_front();
      const int col = index_.at(k);
      const PauliWord q = word_of(k);
      std::vector<std::pair<PauliWord, double>> members{{q, 1.0}};
      if (folded_) members.emplace_back(partner(q), partner_sign(q));
      for (const auto& [m, f] : members) {
        for (const auto& term : terms_) {
          if (term.word.commutes_with(m)) {
            if (is_canonical(m)) ta.emplace_back(index(key_of(m), queue), col, term.weight * f);
            continue;
          }
          if (is_canonical(m)) tb.emplace_back(index(key_of(m), queue), col, term.weight * f);
          const PauliWord r{term.word.x ^ m.x, term.word.z ^ m.z};
          const double sign = rotation_sign(PauliWord::product_phase(term.word, m));
          const int row = index(key_of(canonical(r)), queue);
          if (is_canonical(r)) ts.emplace_back(row, col, term.weight * f * term.sign * sign);
        }
      }
    }
    const auto dim = static_cast<Eigen::Index>(basis_.size());
    a_.resize(dim, dim);
    b_.resize(dim, dim);
    s_.resize(dim, dim);
    a_.setFromTriplets(ta.begin(), ta.end());
    b_.setFromTriplets(tb.begin(), tb.end());
    s_.setFromTriplets(ts.begin(), ts.end());
    initial_ = Eigen::VectorXd::Zero(dim);
    for (const auto& [k, c] : support) initial_(index_.at(k)) = c;
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }

  Eigen::VectorXd evolve(double tau, long eta) const {
    const Eigen::SparseMatrix<double> phi = a_ + std::cos(2.0 * tau) * b_ + std::sin(2.0 * tau) * s_;
    const double d = static_cast<double>(dim());
    // Sparse products run far below dense GEMM throughput; weight them accordingly.
    const double sparse_cost = 8.0 * static_cast<double>(eta) * static_cast<double>(phi.nonZeros());
    const double dense_cost = std::log2(static_cast<double>(eta) + 1.0) * 2.0 * d * d * d;
    Eigen::VectorXd v = initial_;
    if (sparse_cost <= dense_cost) {
      Eigen::VectorXd next(v.size());
      for (long s = 0; s < eta; ++s) {
        next.noalias() = phi * v;
        v.swap(next);
      }
      return v;
    }
    Eigen::MatrixXd power = Eigen::MatrixXd(phi);
    unsigned long e = static_cast<unsigned long>(eta);
    while (e > 0) {
      if (e & 1UL) v = (power * v).eval();
      e >>= 1;
      if (e > 0) power = (power * power).eval();
    }
    return v;
  }

  ComplexMatrixd density(const Eigen::VectorXd& v) const {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_);
    ComplexMatrixd rho = ComplexMatrixd::Zero(d, d);
    auto add = [&](const PauliWord& w, double c) {
      for (Eigen::Index b = 0; b < d; ++b) {
        rho(b ^ static_cast<Eigen::Index>(w.x), b) += w.basis_phase(static_cast<std::uint64_t>(b)) * c;
      }
    };
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double c = v(static_cast<Eigen::Index>(i)) / static_cast<double>(d);
      if (c == 0.0) continue;
      add(basis_[i], c);
      if (folded_) add(partner(basis_[i]), c * partner_sign(basis_[i]));
    }
    return 0.5 * (rho + rho.adjoint());
  }

 private:
  struct Term {
    PauliWord word;
    double sign;
    double weight;
  };

  void choose_symmetry(const DensityMatrixd& rho0) {
    const std::uint64_t all = (std::uint64_t{1} << n_) - 1;
    const PauliWord candidates[] = {{0, all}, {all, 0}, {all, all}};
    for (const PauliWord& s : candidates) {
      bool commutes = true;
      for (const auto& t : terms_) commutes = commutes && t.word.commutes_with(s);
      if (!commutes) continue;
      // rho0 S = xi rho0 is read off from Tr(rho0 S) = xi.
      const double xi = pauli_coefficient(rho0.matrix(), s);
      if (std::abs(std::abs(xi) - 1.0) > 1e-12) continue;
      sym_ = s;
      xi_ = xi > 0 ? 1.0 : -1.0;
      folded_ = true;
      return;
    }
  }

  PauliWord partner(const PauliWord& q) const { return {q.x ^ sym_.x, q.z ^ sym_.z}; }

  /// c_{Q'} = phi xi c_Q where Q S = phi Q'.
  double partner_sign(const PauliWord& q) const {
    const int k = PauliWord::product_phase(q, sym_);
    return (k == 0 ? 1.0 : -1.0) * xi_;
  }

  bool is_canonical(const PauliWord& q) const { return !folded_ || key_of(q) <= key_of(partner(q)); }

  PauliWord canonical(const PauliWord& q) const { return is_canonical(q) ? q : partner(q); }

  int index(std::uint64_t k, std::deque<std::uint64_t>& queue) {
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    const int i = static_cast<int>(basis_.size());
    index_.emplace(k, i);
    basis_.push_back(word_of(k));
    queue.push_back(k);
    return i;
  }

  int n_;
  std::vector<Term> terms_;
  bool folded_ = false;
  PauliWord sym_;
  double xi_ = 1.0;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<PauliWord> basis_;
  Eigen::SparseMatrix<double> a_, b_, s_;
  Eigen::VectorXd initial_;
};

/// rho <- U rho U^dagger with U = cos(a) I - i sin(a) P.
void apply_pauli_rotation(ComplexMatrixd& rho, const PauliWord& w, double a) {
  const Eigen::Index d = rho.rows();
  const double c = std::cos(a), s = std::sin(a);
  const auto x = static_cast<Eigen::Index>(w.x);
  ComplexMatrixd out(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    const C pc = w.basis_phase(static_cast<std::uint64_t>(col));
    for (Eigen::Index r = 0; r < d; ++r) {
      const C pr = w.basis_phase(static_cast<std::uint64_t>(r ^ x));
      const C p_rho = pr * rho(r ^ x, col);          // (P rho)(r, col)
      const C rho_p = rho(r, col ^ x) * pc;          // (rho P)(r, col)
      const C prp = pr * rho(r ^ x, col ^ x) * pc;   // (P rho P)(r, col)
      out(r, col) = c * c * rho(r, col) + s * s * prp + C(0.0, -c * s) * p_rho + C(0.0, c * s) * rho_p;
    }
  }
  rho = std::move(out);
}

double distance_to_pure(const ComplexMatrixd& rho, const ComplexVectord& psi) {
  return trace_norm_half<double>(rho - psi * psi.adjoint());
}

}  // namespace

QDriftModel QDriftModel::make(std::vector<QDriftTerm> terms, double t, long eta) {
  QDriftModel m;
  m.terms = std::move(terms);
  m.t = t;
  m.eta = eta;
  for (const auto& term : m.terms) m.lambda += term.weight;
  m.validate();
  return m;
}

void QDriftModel::validate() const {
  if (terms.empty()) throw ValidationError("qDRIFT model needs at least one term");
  if (eta < 1) throw ValidationError("eta must be >= 1");
  if (!(t >= 0.0)) throw ValidationError("t must be non-negative");
  double sum = 0.0;
  const int n = terms.front().op.n_qubits();
  for (const auto& term : terms) {
    if (!(term.weight > 0.0)) throw ValidationError("qDRIFT weights must be positive");
    if (std::abs(term.op.norm() - 1.0) > 1e-12) throw ValidationError("qDRIFT terms must have unit norm");
    if (term.op.n_qubits() != n) throw ValidationError("qDRIFT terms act on different qubit counts");
    sum += term.weight;
  }
  if (std::abs(sum - lambda) > 1e-12) throw ValidationError("lambda must equal the sum of the weights");
}

QDriftModel qdrift_ring_model(int N, double h, double t, long eta, const std::vector<double>& field_signs) {
  if (N < 2) throw ValidationError("the ring needs N >= 2");
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  if (static_cast<int>(field_signs.size()) != N) throw ValidationError("need one field sign per site");
  std::vector<QDriftTerm> terms;
  const int n_bonds = N == 2 ? 1 : N;
  for (int i = 0; i < n_bonds; ++i) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      std::vector<Pauli> f(static_cast<std::size_t>(N), Pauli::I);
      f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>((i + 1) % N)] = p;
      terms.push_back({1.0, PauliObservable(std::move(f))});
    }
  }
  for (int i = 0; i < N; ++i) {
    const double s = field_signs[static_cast<std::size_t>(i)];
    if (s != 1.0 && s != -1.0) throw ValidationError("field signs must be +1 or -1");
    terms.push_back({h, PauliObservable::single(N, i, Pauli::Z)});
    terms.back().op = PauliObservable(std::vector<Pauli>(terms.back().op.factors().begin(), terms.back().op.factors().end()), s);
  }
  return QDriftModel::make(std::move(terms), t, eta);
}

std::vector<double> random_field_signs(int N, Rng& rng) {
  std::vector<double> s(static_cast<std::size_t>(N));
  for (auto& v : s) v = rng.below(2) ? 1.0 : -1.0;
  return s;
}

ComplexMatrixd model_hamiltonian(const QDriftModel& model) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << model.n_qubits());
  ComplexMatrixd h = ComplexMatrixd::Zero(d, d);
  for (const auto& term : model.terms) h += term.weight * term.op.matrix();
  return h;
}

DensityMatrixd qdrift_evolve_exact(const QDriftModel& model, const DensityMatrixd& rho0) {
  model.validate();
  if (rho0.n_qubits() != model.n_qubits()) throw ValidationError("qdrift_evolve: qubit-count mismatch");
  const PauliTransfer pt(model, rho0);
  const double tau = model.lambda * model.t / static_cast<double>(model.eta);
  return DensityMatrixd::from_trusted(model.n_qubits(), pt.density(pt.evolve(tau, model.eta)));
}

QDriftSampled qdrift_evolve_sampled(const QDriftModel& model, const DensityMatrixd& rho0, long n_samples, Rng& rng) {
  model.validate();
  if (rho0.n_qubits() != model.n_qubits()) throw ValidationError("qdrift_evolve: qubit-count mismatch");
  if (n_samples < 2) throw ValidationError("sampled mode needs at least 2 samples");
  std::vector<double> cdf;
  double run = 0.0;
  for (const auto& term : model.terms) cdf.push_back(run += term.weight);
  const double tau = model.lambda * model.t / static_cast<double>(model.eta);
  const auto d = rho0.matrix().rows();
  ComplexMatrixd sum = ComplexMatrixd::Zero(d, d);
  double sum_sq = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    ComplexMatrixd rho = rho0.matrix();
    for (long k = 0; k < model.eta; ++k) {
      const auto& term = model.terms[rng.sample_cdf(cdf)];
      apply_pauli_rotation(rho, term.op.word(), tau * term.op.coefficient());
    }
    sum += rho;
    sum_sq += rho.squaredNorm();
  }
  const double n = static_cast<double>(n_samples);
  ComplexMatrixd mean = sum / n;
  // E||rho_s - mean||_F^2 / (n - 1), divided by n for the mean.
  const double var = std::max(0.0, (sum_sq / n - mean.squaredNorm()) * n / (n - 1.0));
  mean = (0.5 * (mean + mean.adjoint())).eval();
  return {DensityMatrixd::from_trusted(model.n_qubits(), std::move(mean)), std::sqrt(var / n)};
}

QDriftDistances qdrift_distances(const QDriftModel& model, const PureStated& psi0) {
  const ComplexVectord ideal = expm_hermitian(model_hamiltonian(model), model.t) * psi0.amplitudes();
  const DensityMatrixd rho = qdrift_evolve_exact(model, dm_from_pure(psi0));
  const ComplexMatrixd sq = rho.matrix() * rho.matrix();
  return {distance_to_pure(rho.matrix(), ideal), distance_to_pure(sq / sq.trace().real(), ideal)};
}

EtaSearchResult qdrift_eta_search(int N, double h, double t, double target, const std::vector<double>& field_signs,
                                  long eta_cap) {
  if (!(target > 0.0)) throw ValidationError("target distance must be positive");
  const QDriftModel base = qdrift_ring_model(N, h, t, 1, field_signs);
  const PureStated psi0 = neel_state(N);
  const DensityMatrixd rho0 = dm_from_pure(psi0);
  const PauliTransfer pt(base, rho0);
  const ComplexVectord ideal = expm_hermitian(model_hamiltonian(base), t) * psi0.amplitudes();
  EtaSearchResult out;
  out.field_signs = field_signs;
  std::map<long, QDriftDistances> cache;
  auto eval = [&](long eta) -> const QDriftDistances& {
    auto it = cache.find(eta);
    if (it != cache.end()) return it->second;
    ++out.evaluations;
    const ComplexMatrixd rho = pt.density(pt.evolve(base.lambda * t / static_cast<double>(eta), eta));
    const ComplexMatrixd sq = rho * rho;
    return cache[eta] = {distance_to_pure(rho, ideal), distance_to_pure(sq / sq.trace().real(), ideal)};
  };
  // Doubling to a bracket, then secant steps in log-log space (distance falls roughly as a power of eta).
  // Each step probes floor and ceil of the predicted crossing; bisection takes over when steps stop moving
  // the bracket. Assumes the distance is monotone in eta and returns the smallest eta meeting the target.
  auto search = [&](bool vd) {
    auto dist = [&](long eta) { return vd ? eval(eta).vd : eval(eta).plain; };
    long lo = 0, hi = 1;
    while (dist(hi) > target) {
      const long prev = lo;
      lo = hi;
      long next = 2 * hi;
      // Jump ahead along the local power law once two points are known.
      if (prev > 0 && dist(hi) < dist(prev)) {
        const double slope = std::log(dist(hi) / dist(prev)) / std::log(static_cast<double>(hi) / static_cast<double>(prev));
        if (slope < -0.25) {
          const double guess = static_cast<double>(hi) * std::pow(target / dist(hi), 1.0 / slope) * 1.02;
          if (guess < static_cast<double>(eta_cap)) next = std::max(next, static_cast<long>(std::ceil(guess)));
        }
      }
      if (lo >= eta_cap) {
        throw ResourceError("eta search cap " + std::to_string(eta_cap) + " exceeded (" + (vd ? "vd" : "plain") +
                            " distance " + std::to_string(dist(lo)) + " at eta " + std::to_string(lo) +
                            ", target " + std::to_string(target) + ")");
      }
      hi = std::min(next, eta_cap);
    }
    // Secant steps in log-log space on the two most recent points, kept inside the bracket.
    long p0 = lo, p1 = hi;
    auto shrink = [&](long eta) {
      if (eta <= lo || eta >= hi) return;
      p0 = p1;
      p1 = eta;
      if (dist(eta) <= target) {
        hi = eta;
      } else {
        lo = eta;
      }
    };
    int stalled = 0;
    while (hi - lo > 1) {
      const long width = hi - lo;
      const double d0 = p0 > 0 ? dist(p0) : 0.0, d1 = dist(p1);
      if (stalled < 2 && p0 > 0 && d0 > 0.0 && d1 > 0.0 && d0 != d1) {
        const double x0 = std::log(static_cast<double>(p0)), x1 = std::log(static_cast<double>(p1));
        const double x = x1 + (std::log(target) - std::log(d1)) * (x1 - x0) / (std::log(d1) - std::log(d0));
        const double g = std::clamp(std::exp(x), static_cast<double>(lo), static_cast<double>(hi));
        shrink(static_cast<long>(std::floor(g)));
        shrink(static_cast<long>(std::ceil(g)));
        stalled = hi - lo == width ? stalled + 1 : 0;
      } else {
        shrink(lo + (hi - lo) / 2);
        stalled = 0;
      }
    }
    return hi;
  };
  out.eta_plain = search(false);
  out.eta_vd = search(true);
  out.t_plain = eval(out.eta_plain).plain;
  out.t_vd = eval(out.eta_vd).vd;
  out.ratio = static_cast<double>(out.eta_plain) / static_cast<double>(out.eta_vd);
  return out;
}

EtaSearchResult qdrift_eta_search(int N, double h, double t, double target, Rng& rng, long eta_cap) {
  return qdrift_eta_search(N, h, t, target, random_field_signs(N, rng), eta_cap);
}

}  // namespace vdsim
