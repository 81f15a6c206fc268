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

#include "vdsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vdsim/channels.hpp"
#include "vdsim/config.hpp"
#include "vdsim/csv.hpp"
#include "vdsim/errors.hpp"
#include "vdsim/models.hpp"
#include "vdsim/qdrift.hpp"
#include "vdsim/random.hpp"
#include "vdsim/stats.hpp"
#include "vdsim/sweep.hpp"
#include "vdsim/vd.hpp"

#ifndef VDSIM_VERSION
#define VDSIM_VERSION "0.0.0"
#endif

namespace vdsim::cli {

using nlohmann::json;

std::string version() { return VDSIM_VERSION; }

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kB2Tol = 1e-12;
constexpr double kSwapTol = 1e-12;

std::string num(double x) { return format_double(x); }

json manifest(const std::string& subcommand, std::uint64_t seed) {
  return json{{"subcommand", subcommand}, {"seed", seed}, {"version", version()}, {"rng", Rng::kAlgorithm}};
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---- identity-check -------------------------------------------------------

struct IdentityOpts {
  int max_qubits = 3;
  int max_copies = 4;
  int states = 20;
};

int cmd_identity(const IdentityOpts& o, std::uint64_t seed, bool as_json, std::ostream& out) {
  if (o.max_qubits < 1 || o.max_qubits > 4) throw ValidationError("--max-qubits must lie in [1, 4]");
  if (o.max_copies < 1 || o.max_copies > 4) throw ValidationError("--max-copies must lie in [1, 4]");
  if (o.states < 1) throw ValidationError("--states must be >= 1");
  Rng rng(seed);
  double trace_res = 0.0, swap_res = 0.0, b2_res = 0.0;
  long checks = 0;
  for (int n = 1; n <= o.max_qubits; ++n) {
    const B2Residuals b = b2_diagonalization_residuals(n);
    b2_res = std::max({b2_res, b.shift, b.z_shift});
    for (int m = 1; m <= o.max_copies; ++m) {
      for (int s = 0; s < o.states; ++s) {
        // Every third state is pure; the rest are full rank.
        const DensityMatrixd rho = random_density_matrix<double>(n, rng, s % 3 == 0 ? 1 : 0);
        const PauliObservable obs = random_pauli(n, rng);
        trace_res = std::max(trace_res, trace_identity_residual(rho, obs, m));
        if (m == 2) {
          const std::complex<double> st = shift_trace(rho, nullptr, 0, 2);
          swap_res = std::max(swap_res, std::abs(st - (rho.matrix() * rho.matrix()).trace()));
        }
        ++checks;
      }
    }
  }
  const bool pass = trace_res < kIdentityTol && b2_res < kB2Tol && swap_res < kSwapTol;
  if (as_json) {
    json j = manifest("identity-check", seed);
    j["max_qubits"] = o.max_qubits;
    j["max_copies"] = o.max_copies;
    j["states"] = o.states;
    j["checks"] = checks;
    j["max_trace_identity_residual"] = trace_res;
    j["max_b2_residual"] = b2_res;
    j["max_swap_trace_residual"] = swap_res;
    j["pass"] = pass;
    emit_json(out, j);
  } else {
    out << "identity-check N<=" << o.max_qubits << " M<=" << o.max_copies << " states=" << o.states
        << " seed=" << seed << "\n";
    out << "  checks                     " << checks << "\n";
    out << "  max trace-identity residual " << num(trace_res) << "\n";
    out << "  max B2 residual             " << num(b2_res) << "\n";
    out << "  max swap-trace residual     " << num(swap_res) << "\n";
    out << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kCheckFailed;
}

// ---- sweeps ---------------------------------------------------------------

struct SweepFlags {
  std::string config;
  std::string kind = "entangling";
  std::vector<int> qubits;
  std::vector<int> depths;
  std::string axis = "depth";
  std::vector<double> rates;
  int depth = 0;
  std::string noise = "depolarizing";
  std::optional<double> p;
  std::optional<double> gamma1, gamma2;
  std::vector<int> copies;
  bool no_dominant = false;
  bool overhead = false;
  bool magnetization = false;
  bool noisy_measurement = false;
  std::uint64_t noisy_shots = 0;
  int threads = 0;
  std::string csv;
  std::string field_pattern;
  std::string boundary;
};

SweepConfig sweep_config_from_flags(const SweepFlags& f, Family family) {
  SweepConfig cfg;
  cfg.family = family;
  if (!f.qubits.empty()) cfg.qubits = f.qubits;
  cfg.axis = f.axis == "rate" ? SweepAxis::Rate : SweepAxis::Depth;
  if (f.axis != "rate" && f.axis != "depth") throw ValidationError("--axis must be depth or rate");
  if (!f.depths.empty()) cfg.depths = f.depths;
  if (f.depth > 0) cfg.depth = f.depth;
  cfg.rates = f.rates;
  const NoiseKind kind = NoiseSpec::parse_kind(f.noise);
  switch (kind) {
    case NoiseKind::AmpDampDephase:
      if (f.p) throw ValidationError("--p does not apply to amp_damp_dephase");
      cfg.noise = NoiseSpec::amp_damp_dephase(f.gamma1.value_or(0.0), f.gamma2.value_or(0.0));
      break;
    case NoiseKind::Depolarizing: cfg.noise = NoiseSpec::depolarizing(f.p.value_or(5e-3)); break;
    case NoiseKind::BitFlip: cfg.noise = NoiseSpec::bit_flip(f.p.value_or(5e-3)); break;
    case NoiseKind::PhaseFlip: cfg.noise = NoiseSpec::phase_flip(f.p.value_or(5e-3)); break;
    case NoiseKind::None: cfg.noise = NoiseSpec::none(); break;
  }
  if (!f.copies.empty()) cfg.copies = f.copies;
  cfg.dominant = !f.no_dominant;
  cfg.overhead = f.overhead;
  cfg.magnetization = f.magnetization;
  cfg.noisy_measurement = f.noisy_measurement;
  cfg.noisy_shots = f.noisy_shots;
  if (!f.boundary.empty()) {
    if (f.boundary == "open") cfg.heisenberg.boundary = Boundary::Open;
    else if (f.boundary == "periodic") cfg.heisenberg.boundary = Boundary::Periodic;
    else throw ValidationError("--boundary must be open or periodic");
  }
  if (!f.field_pattern.empty()) {
    if (f.field_pattern == "uniform-x") cfg.heisenberg.field_pattern = FieldPattern::UniformX;
    else if (f.field_pattern == "random-sign-z") cfg.heisenberg.field_pattern = FieldPattern::RandomSignZ;
    else throw ValidationError("--field-pattern must be uniform-x or random-sign-z");
  }
  return cfg;
}

json row_json(const SweepRow& r) {
  json j{{"family", r.family}, {"N", r.N},          {"G", r.G}, {"noise_kind", r.noise_kind},
         {"param", r.param},   {"expected_errors", r.expected_errors}, {"M", r.M}, {"seed", r.seed}};
  j["trace_distance"] = r.trace_distance ? json(*r.trace_distance) : json(nullptr);
  j["mag_error"] = r.mag_error ? json(*r.mag_error) : json(nullptr);
  j["overhead"] = r.overhead ? json(*r.overhead) : json(nullptr);
  return j;
}

int cmd_sweep(const std::string& name, const SweepFlags& f, std::optional<std::uint64_t> seed, bool as_json,
              std::ostream& out) {
  SweepConfig cfg;
  if (!f.config.empty()) {
    cfg = parse_config(f.config);
    const bool heis = cfg.family == Family::Heisenberg;
    if (heis != (name == "heisenberg")) {
      throw ValidationError("config family '" + family_name(cfg.family) + "' does not match subcommand '" + name + "'");
    }
  } else {
    Family fam = Family::Heisenberg;
    if (name == "scrambler") {
      if (f.kind == "entangling") fam = Family::ScramblerEntangling;
      else if (f.kind == "nonentangling") fam = Family::ScramblerNonentangling;
      else throw ValidationError("--kind must be entangling or nonentangling");
    }
    cfg = sweep_config_from_flags(f, fam);
  }
  if (seed) cfg.seed = *seed;
  if (f.threads > 0) cfg.threads = f.threads;
  if (!f.csv.empty()) cfg.csv_path = f.csv;
  const std::vector<SweepRow> rows = error_scaling_sweep(cfg);

  CsvMeta meta;
  meta.seed = cfg.seed;
  meta.version = version();
  meta.rng = Rng::kAlgorithm;
  if (cfg.overhead) meta.extra.push_back({"overhead", "two-copy shots x 2 qubits per repetition over single-copy shots"});
  if (!cfg.csv_path.empty()) write_csv(rows, cfg.csv_path, meta);

  if (as_json) {
    json j = manifest(name, cfg.seed);
    j["family"] = family_name(cfg.family);
    if (!cfg.csv_path.empty()) j["csv"] = cfg.csv_path;
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back(row_json(r));
    emit_json(out, j);
  } else if (!cfg.csv_path.empty()) {
    out << "wrote " << rows.size() << " rows to " << cfg.csv_path << "\n";
  } else {
    out << rows_to_csv(rows, meta);
  }
  return kOk;
}

// ---- qdrift ---------------------------------------------------------------

struct QDriftOpts {
  int qubits = 4;
  double target = 0.01;
  std::optional<double> t;
  double h = 1.0;
  int patterns = 1;
  double min_ratio = 0.0;
  long cap = long{1} << 26;
};

int cmd_qdrift(const QDriftOpts& o, std::uint64_t seed, bool as_json, std::ostream& out) {
  if (o.patterns < 1) throw ValidationError("--patterns must be >= 1");
  const double t = o.t.value_or(static_cast<double>(o.qubits));
  Rng rng(seed);
  std::vector<EtaSearchResult> results;
  for (int k = 0; k < o.patterns; ++k) results.push_back(qdrift_eta_search(o.qubits, o.h, t, o.target, rng, o.cap));
  double worst = results.front().ratio;
  for (const auto& r : results) worst = std::min(worst, r.ratio);
  const bool pass = worst >= o.min_ratio;
  if (as_json) {
    json j = manifest("qdrift", seed);
    j["N"] = o.qubits;
    j["t"] = t;
    j["h"] = o.h;
    j["target"] = o.target;
    j["lambda"] = qdrift_ring_model(o.qubits, o.h, t, 1, results.front().field_signs).lambda;
    const auto& r0 = results.front();
    j["eta_plain"] = r0.eta_plain;
    j["eta_vd"] = r0.eta_vd;
    j["ratio"] = r0.ratio;
    j["t_plain"] = r0.t_plain;
    j["t_vd"] = r0.t_vd;
    j["field_signs"] = r0.field_signs;
    j["min_ratio"] = worst;
    j["patterns"] = json::array();
    for (const auto& r : results) {
      j["patterns"].push_back({{"field_signs", r.field_signs},
                               {"eta_plain", r.eta_plain},
                               {"eta_vd", r.eta_vd},
                               {"ratio", r.ratio},
                               {"t_plain", r.t_plain},
                               {"t_vd", r.t_vd}});
    }
    j["pass"] = pass;
    emit_json(out, j);
  } else {
    out << "qdrift N=" << o.qubits << " t=" << num(t) << " h=" << num(o.h) << " target=" << num(o.target)
        << " seed=" << seed << "\n";
    for (const auto& r : results) {
      out << "  signs [";
      for (std::size_t i = 0; i < r.field_signs.size(); ++i) out << (i ? " " : "") << (r.field_signs[i] > 0 ? "+" : "-");
      out << "]  eta_plain=" << r.eta_plain << " eta_vd=" << r.eta_vd << " ratio=" << num(r.ratio) << "\n";
    }
    if (o.min_ratio > 0.0) out << (pass ? "PASS" : "FAIL") << " (min ratio " << num(o.min_ratio) << ")\n";
  }
  return pass ? kOk : kCheckFailed;
}

// ---- variance -------------------------------------------------------------

struct VarianceOpts {
  int max_qubits = 2;
  int states = 100;
  long shots = 500;
};

int cmd_variance(const VarianceOpts& o, std::uint64_t seed, bool as_json, std::ostream& out) {
  if (o.max_qubits < 1 || o.max_qubits > 2) throw ValidationError("--max-qubits must be 1 or 2");
  if (o.states < 1 || o.shots < 1) throw ValidationError("--states and --shots must be >= 1");
  Rng rng(seed);
  double closed_form_err = 0.0, pure_err = 0.0, bound_margin = 1e300, collective_mean_err = 0.0;
  for (int n = 1; n <= o.max_qubits; ++n) {
    const ComplexMatrixd swap = cyclic_shift(2, n);
    for (int s = 0; s < o.states; ++s) {
      const DensityMatrixd rho = random_density_matrix<double>(n, rng);
      const PauliObservable obs = random_pauli(n, rng);
      // Brute-force operator moments on rho (x) rho.
      const ComplexMatrixd r2 = multi_copy(rho, 2);
      const ComplexMatrixd num_op = swap * symmetrized_observable(obs, 2);
      auto tr = [&](const ComplexMatrixd& a) { return (r2 * a).trace().real(); };
      const double en = tr(num_op), ed = tr(swap);
      const double vn = tr(num_op * num_op) - en * en;
      const double vd = tr(swap * swap) - ed * ed;
      const double cv = 0.5 * (tr(num_op * swap) + tr(swap * num_op)) - en * ed;
      const VarianceReport rep = variance_report(rho, obs);
      closed_form_err = std::max({closed_form_err, std::abs(vn - rep.var_numerator), std::abs(vd - rep.var_denominator),
                                  std::abs(cv - rep.covariance)});

      const DensityMatrixd pure = dm_from_pure(random_pure_state<double>(n, rng));
      const double e = expectation(pure, obs), e2 = 1.0;  // Pauli: O^2 = I
      pure_err = std::max(pure_err, std::abs(ratio_variance(pure, obs, o.shots) - (e2 - e * e) / (2.0 * o.shots)));

      for (int k = 1; k <= 2; ++k) {
        const CollectiveVariance cvb = collective_variance_bruteforce(rho, obs, k);
        bound_margin = std::min(bound_margin, collective_variance_bound(rho, k) - cvb.variance);
        collective_mean_err = std::max(collective_mean_err, std::abs(cvb.mean - cvb.target));
      }
    }
  }
  const bool pass = closed_form_err < 1e-10 && pure_err < 1e-12 && bound_margin >= -1e-10 && collective_mean_err < 1e-10;
  if (as_json) {
    json j = manifest("variance", seed);
    j["max_qubits"] = o.max_qubits;
    j["states"] = o.states;
    j["shots"] = o.shots;
    j["max_closed_form_error"] = closed_form_err;
    j["max_pure_state_error"] = pure_err;
    j["min_collective_bound_margin"] = bound_margin;
    j["max_collective_mean_error"] = collective_mean_err;
    j["pass"] = pass;
    emit_json(out, j);
  } else {
    out << "variance N<=" << o.max_qubits << " states=" << o.states << " R=" << o.shots << " seed=" << seed << "\n";
    out << "  closed forms vs brute force   " << num(closed_form_err) << "\n";
    out << "  pure-state ratio variance     " << num(pure_err) << "\n";
    out << "  collective bound margin (min) " << num(bound_margin) << "\n";
    out << "  collective mean error         " << num(collective_mean_err) << "\n";
    out << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kOk : kCheckFailed;
}

// ---- surface-code ---------------------------------------------------------

int cmd_surface(double n, long gates, bool round, bool as_json, std::ostream& out) {
  const SurfaceCodeReport r = surface_code_tradeoff(n, gates, round);
  if (as_json) {
    json j{{"subcommand", "surface-code"}, {"version", version()}};
    j["n"] = r.n;
    j["G"] = r.G;
    j["rounded"] = r.rounded;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["f1"] = r.f1;
    j["f2"] = r.f2;
    j["one_minus_f1"] = r.one_minus_f1;
    j["one_minus_f2"] = r.one_minus_f2;
    j["c_s"] = r.c_s;
    j["note"] = r.note;
    emit_json(out, j);
  } else {
    out << "surface-code n=" << num(r.n) << " G=" << r.G << (r.rounded ? " (rounded distances)" : "") << "\n";
    out << "  single copy: d1=" << num(r.d1) << " 1-f1=" << num(r.one_minus_f1) << "\n";
    out << "  two copies:  d2=" << num(r.d2) << " 1-f2=" << num(r.one_minus_f2) << "\n";
    out << "  c_s=" << num(r.c_s) << "\n";
    out << "note: " << r.note << "\n";
  }
  return kOk;
}

// ---- floor ----------------------------------------------------------------

struct FloorOpts {
  int qubits = 2;
  std::string channel = "depolarizing";
  double p = 1e-2;
  double gamma1 = 1e-2;
  double gamma2 = 1e-2;
  double mix = 0.1;
};

int cmd_floor(const FloorOpts& o, std::uint64_t seed, bool as_json, std::ostream& out) {
  if (o.qubits < 1 || o.qubits > 8) throw ValidationError("--qubits must lie in [1, 8]");
  if (!(o.mix >= 0.0 && o.mix < 0.5)) throw ValidationError("--mix must lie in [0, 0.5)");
  const NoiseKind kind = NoiseSpec::parse_kind(o.channel);
  NoiseSpec spec;
  switch (kind) {
    case NoiseKind::AmpDampDephase: spec = NoiseSpec::amp_damp_dephase(o.gamma1, o.gamma2); break;
    case NoiseKind::Depolarizing: spec = NoiseSpec::depolarizing(o.p); break;
    case NoiseKind::BitFlip: spec = NoiseSpec::bit_flip(o.p); break;
    case NoiseKind::PhaseFlip: spec = NoiseSpec::phase_flip(o.p); break;
    case NoiseKind::None: spec = NoiseSpec::none(); break;
  }
  Rng rng(seed);
  // A noisy state with a well separated dominant eigenvector.
  const DensityMatrixd pure = dm_from_pure(random_pure_state<double>(o.qubits, rng));
  const DensityMatrixd bg = random_density_matrix<double>(o.qubits, rng);
  const DensityMatrixd rho =
      DensityMatrixd::from_trusted(o.qubits, (1.0 - o.mix) * pure.matrix() + o.mix * bg.matrix());
  const DriftReport r = perturbation_floor(rho, standard_channel(spec));
  if (as_json) {
    json j = manifest("floor", seed);
    j["N"] = o.qubits;
    j["channel"] = spec.kind_name();
    j["strength"] = spec.strength();
    j["mix"] = o.mix;
    j["first_order_norm_sq"] = r.first_order_norm_sq;
    j["predicted_trace_distance"] = r.predicted_trace_distance;
    j["exact_trace_distance"] = r.exact_trace_distance;
    j["gap"] = r.gap;
    j["perturbation_norm"] = r.perturbation_norm;
    j["gamma"] = r.gamma ? json(*r.gamma) : json(nullptr);
    j["warning"] = r.warning;
    emit_json(out, j);
  } else {
    out << "floor N=" << o.qubits << " channel=" << spec.kind_name() << " strength=" << num(spec.strength())
        << " seed=" << seed << "\n";
    out << "  predicted trace distance " << num(r.predicted_trace_distance) << "\n";
    out << "  exact trace distance     " << num(r.exact_trace_distance) << "\n";
    out << "  gap                      " << num(r.gap) << "\n";
    out << "  ||E(rho) - rho||         " << num(r.perturbation_norm) << "\n";
    if (r.gamma) {
      double g = 0.0;
      for (double x : *r.gamma) g = std::max(g, x);
      out << "  max |gamma_i|            " << num(g) << "\n";
    }
    if (!r.warning.empty()) out << "warning: " << r.warning << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vdsim: virtual distillation density-matrix simulator", "vdsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", version());

  bool as_json = false;
  std::optional<std::uint64_t> seed;
  app.add_flag("--json", as_json, "Emit JSON instead of human-readable text");
  app.add_option("--seed", seed, "Master seed (64-bit unsigned)");

  IdentityOpts id;
  auto* c_id = app.add_subcommand("identity-check", "Trace identities and B2 diagonalization checks");
  c_id->add_option("--max-qubits", id.max_qubits, "Largest qubit count")->capture_default_str();
  c_id->add_option("--max-copies", id.max_copies, "Largest copy number M")->capture_default_str();
  c_id->add_option("--states", id.states, "Random states per (N, M)")->capture_default_str();
  c_id->footer("JSON keys: subcommand seed version rng max_qubits max_copies states checks "
               "max_trace_identity_residual max_b2_residual max_swap_trace_residual pass");

  SweepFlags sf;
  auto add_sweep_flags = [&](CLI::App* c, bool scrambler) {
    c->add_option("--config", sf.config, "TOML sweep config")->check(CLI::ExistingFile);
    if (scrambler) c->add_option("--kind", sf.kind, "entangling or nonentangling")->capture_default_str();
    c->add_option("--qubits", sf.qubits, "Qubit counts")->delimiter(',');
    c->add_option(scrambler ? "--depths" : "--steps", sf.depths, scrambler ? "Circuit depths" : "Trotter steps")
        ->delimiter(',');
    c->add_option("--axis", sf.axis, "depth or rate")->capture_default_str();
    c->add_option("--rates", sf.rates, "Error rates on the rate axis")->delimiter(',');
    c->add_option("--depth", sf.depth, "Fixed depth on the rate axis");
    c->add_option("--noise", sf.noise, "depolarizing, amp_damp_dephase, bit_flip, phase_flip, none")
        ->capture_default_str();
    c->add_option("--p", sf.p, "Error probability");
    c->add_option("--gamma1", sf.gamma1, "Amplitude damping strength");
    c->add_option("--gamma2", sf.gamma2, "Dephasing strength");
    c->add_option("--copies", sf.copies, "Copy numbers M")->delimiter(',');
    c->add_flag("--no-dominant", sf.no_dominant, "Skip the dominant-eigenvector row");
    c->add_flag("--overhead", sf.overhead, "Overhead ratio on M=2 rows");
    c->add_flag("--magnetization", sf.magnetization, "Magnetization error per row");
    c->add_flag("--noisy-measurement", sf.noisy_measurement, "Add the 2-noisy protocol row");
    c->add_option("--noisy-shots", sf.noisy_shots, "Shots for the 2-noisy row (0: infinite-shot limit)");
    c->add_option("--threads", sf.threads, "Worker threads");
    c->add_option("--csv", sf.csv, "Write rows to this CSV file");
    if (!scrambler) {
      c->add_option("--boundary", sf.boundary, "open or periodic");
      c->add_option("--field-pattern", sf.field_pattern, "uniform-x or random-sign-z");
    }
    c->footer("JSON keys: subcommand seed version rng family csv rows[family N G noise_kind param expected_errors "
              "M trace_distance mag_error overhead seed]");
  };
  auto* c_scr = app.add_subcommand("scrambler", "Error-scaling sweep over random scrambling circuits");
  add_sweep_flags(c_scr, true);
  auto* c_heis = app.add_subcommand("heisenberg", "Error-scaling sweep over Trotterized Heisenberg evolution");
  add_sweep_flags(c_heis, false);

  QDriftOpts qd;
  auto* c_qd = app.add_subcommand("qdrift", "Coherent qDRIFT step counts with and without distillation");
  c_qd->set_help_flag("--help", "Print this help message and exit");  // frees --h for the field
  c_qd->add_option("--qubits", qd.qubits, "Ring size N")->capture_default_str();
  c_qd->add_option("--target", qd.target, "Target trace distance")->capture_default_str();
  c_qd->add_option("--t", qd.t, "Evolution time (default N)");
  c_qd->add_option("--h", qd.h, "Field strength")->capture_default_str();
  c_qd->add_option("--patterns", qd.patterns, "Random field-sign patterns")->capture_default_str();
  c_qd->add_option("--min-ratio", qd.min_ratio, "Fail (exit 3) if any eta_plain/eta_vd is below this");
  c_qd->add_option("--cap", qd.cap, "Largest eta tried")->capture_default_str();
  c_qd->footer("JSON keys: subcommand seed version rng N t h target lambda eta_plain eta_vd ratio t_plain t_vd "
               "field_signs min_ratio patterns[] pass");

  VarianceOpts vo;
  auto* c_var = app.add_subcommand("variance", "Closed-form variance and collective-bound checks");
  c_var->add_option("--max-qubits", vo.max_qubits, "Largest qubit count (1 or 2)")->capture_default_str();
  c_var->add_option("--states", vo.states, "Random states per qubit count")->capture_default_str();
  c_var->add_option("--shots", vo.shots, "Repetitions R")->capture_default_str();
  c_var->footer("JSON keys: subcommand seed version rng max_qubits states shots max_closed_form_error "
                "max_pure_state_error min_collective_bound_margin max_collective_mean_error pass");

  double sc_n = 200;
  long sc_g = 1000;
  bool sc_round = false;
  auto* c_sc = app.add_subcommand("surface-code", "Two-copy versus single-copy surface code trade-off");
  c_sc->add_option("--n", sc_n, "Physical qubits available")->capture_default_str();
  c_sc->add_option("--gates", sc_g, "Logical gate count G")->capture_default_str();
  c_sc->add_flag("--round", sc_round, "Round code distances down to integers");
  c_sc->footer("JSON keys: subcommand version n G rounded d1 d2 f1 f2 one_minus_f1 one_minus_f2 c_s note");

  FloorOpts fo;
  auto* c_fl = app.add_subcommand("floor", "First-order drift of the dominant eigenvector");
  c_fl->add_option("--qubits", fo.qubits, "Qubit count")->capture_default_str();
  c_fl->add_option("--channel", fo.channel, "Noise channel kind")->capture_default_str();
  c_fl->add_option("--p", fo.p, "Error probability")->capture_default_str();
  c_fl->add_option("--gamma1", fo.gamma1, "Amplitude damping strength")->capture_default_str();
  c_fl->add_option("--gamma2", fo.gamma2, "Dephasing strength")->capture_default_str();
  c_fl->add_option("--mix", fo.mix, "Weight of the random mixed background")->capture_default_str();
  c_fl->footer("JSON keys: subcommand seed version rng N channel strength mix first_order_norm_sq "
               "predicted_trace_distance exact_trace_distance gap perturbation_norm gamma warning");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  const std::uint64_t s = seed.value_or(1);
  try {
    if (*c_id) return cmd_identity(id, s, as_json, out);
    if (*c_scr) return cmd_sweep("scrambler", sf, seed, as_json, out);
    if (*c_heis) return cmd_sweep("heisenberg", sf, seed, as_json, out);
    if (*c_qd) return cmd_qdrift(qd, s, as_json, out);
    if (*c_var) return cmd_variance(vo, s, as_json, out);
    if (*c_sc) return cmd_surface(sc_n, sc_g, sc_round, as_json, out);
    if (*c_fl) return cmd_floor(fo, s, as_json, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  err << app.help();
  return kValidation;
}

}  // namespace vdsim::cli
