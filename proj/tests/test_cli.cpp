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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vdsim/cli.hpp"
#include "vdsim/config.hpp"
#include "vdsim/csv.hpp"
#include "vdsim/errors.hpp"

using namespace vdsim;
namespace fs = std::filesystem;

namespace {

const char* kMinimalHeisenberg = R"(# Heisenberg chain, six sites
[family]
name = "heisenberg"
qubits = 6

[noise]
kind = "depolarizing"
p = 5e-3

[sweep]
steps = 90
)";

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "cfg.toml");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("vdsim_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the real binary; returns its exit status and stdout.
RunResult run_binary(const std::string& args) {
  const char* bin = std::getenv("VDSIM_BIN");
  REQUIRE(bin != nullptr);
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(bin) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("config: minimal Heisenberg document") {
  const SweepConfig cfg = parse_config_text(kMinimalHeisenberg);
  CHECK(cfg.family == Family::Heisenberg);
  CHECK(cfg.qubits == std::vector<int>{6});
  CHECK(cfg.depths == std::vector<int>{90});
  CHECK(cfg.noise.kind == NoiseKind::Depolarizing);
  CHECK(cfg.noise.p == 5e-3);
  CHECK(cfg.copies == std::vector<int>{1, 2, 3});
}

TEST_CASE("config: full document") {
  const SweepConfig cfg = parse_config_text(R"(
[family]
name = "scrambler-entangling"   # comment after a value
qubits = [4, 6]
[noise]
kind = "amp_damp_dephase"
gamma1 = 1e-3
gamma2 = 2e-3
[sweep]
axis = "rate"
depth = 40
rates = [
  1e-4,
  2e-4,   # trailing comma allowed
]
copies = [1, 2]
dominant = false
overhead = true
seed = 12345
threads = 2
[output]
csv = "out.csv"
)");
  CHECK(cfg.family == Family::ScramblerEntangling);
  CHECK(cfg.qubits == std::vector<int>{4, 6});
  CHECK(cfg.axis == SweepAxis::Rate);
  CHECK(cfg.rates == std::vector<double>{1e-4, 2e-4});
  CHECK(cfg.noise.gamma2 == 2e-3);
  CHECK_FALSE(cfg.dominant);
  CHECK(cfg.overhead);
  CHECK(cfg.seed == 12345);
  CHECK(cfg.csv_path == "out.csv");
}

TEST_CASE("config: rejections name the key and line") {
  std::string text = kMinimalHeisenberg;
  const auto neg = error_of(text.replace(text.find("p = 5e-3"), 8, "p = -0.1"));
  CHECK(neg.find("[noise].p") != std::string::npos);
  CHECK(neg.find("cfg.toml:8") != std::string::npos);

  const auto typo = error_of(std::string(kMinimalHeisenberg) + "dephts = [10]\n");
  CHECK(typo.find("unknown key [sweep].dephts") != std::string::npos);

  CHECK(error_of("[family]\nname = \"heisenberg\"\n").find("[family].qubits") != std::string::npos);
  CHECK(error_of("[famly]\n").find("unknown section") != std::string::npos);
  CHECK(error_of("name = 1\n").find("before any section") != std::string::npos);
  CHECK(error_of("[family]\nname = \"heisenberg\nqubits = 6\n").find("unterminated") != std::string::npos);
  std::string dup = kMinimalHeisenberg;
  CHECK(error_of(dup + "steps = 3\n").find("duplicate key") != std::string::npos);
  std::string kind = kMinimalHeisenberg;
  CHECK(error_of(kind.replace(kind.find("\"depolarizing\""), 14, "\"depol\"")).find("[noise].kind") != std::string::npos);
  std::string q = kMinimalHeisenberg;
  CHECK(error_of(q.replace(q.find("qubits = 6"), 10, "qubits = 6.5")).find("[family].qubits") != std::string::npos);
  CHECK_THROWS_AS(parse_config("/nonexistent/path.toml"), ValidationError);
}

TEST_CASE("csv: header, round trip and determinism") {
  CsvMeta meta{7, "1.2.3", "gen", {}};
  const std::string empty = rows_to_csv({}, meta);
  CHECK(empty == "# seed=7\n# version=1.2.3\n# rng=gen\n" + std::string(kCsvHeader) + "\n");
  CHECK(parse_csv(empty).empty());

  SweepRow a{"heisenberg", 6, 450, "depolarizing", 5e-3, 4.5, "2", 0.1 + 0.2, std::nullopt, 1.0 / 3.0, 7};
  SweepRow b{"scrambler-entangling", 4, 25, "amp_damp_dephase", 2e-3, 0.1, "inf", 1e-300, 5e-324, std::nullopt, 7};
  const std::vector<SweepRow> rows{a, b};
  const std::string text = rows_to_csv(rows, meta);
  CHECK(parse_csv(text) == rows);
  CHECK(text == rows_to_csv(rows, meta));
  CHECK(text.find("0.30000000000000004") != std::string::npos);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(4.5) == "4.5");

  const fs::path p = scratch_dir() / "rows.csv";
  write_csv(rows, p.string(), meta);
  CHECK(read_csv(p.string()) == rows);
  CHECK_THROWS(write_csv(rows, "/nonexistent/dir/rows.csv", meta));
  CHECK_THROWS_AS(parse_csv("a,b\n"), ValidationError);
}

TEST_CASE("cli: in-process subcommands") {
  const auto id = run_cli({"identity-check", "--max-qubits", "3", "--max-copies", "4", "--seed", "7"});
  CHECK(id.code == 0);
  CHECK(id.out.find("PASS") != std::string::npos);

  const auto sc = run_cli({"surface-code", "--n", "200", "--gates", "1000", "--json"});
  REQUIRE(sc.code == 0);
  const auto j = nlohmann::json::parse(sc.out);
  CHECK(j["d1"].get<double>() == doctest::Approx(10.0));
  CHECK(std::abs(j["one_minus_f1"].get<double>() - 0.2712) < 1e-3);
  CHECK(std::abs(j["one_minus_f2"].get<double>() - 0.00379) < 1e-5);
  CHECK(std::abs(j["c_s"].get<double>() - 71.6) < 0.2);
  CHECK_FALSE(j["note"].get<std::string>().empty());

  const auto qd = run_cli({"qdrift", "--qubits", "4", "--target", "0.01", "--seed", "11", "--json"});
  REQUIRE(qd.code == 0);
  const auto q = nlohmann::json::parse(qd.out);
  CHECK(q["ratio"].get<double>() >= 8.0);
  CHECK(q["eta_vd"].get<long>() <= q["eta_plain"].get<long>());
  CHECK(q["seed"].get<std::uint64_t>() == 11);

  CHECK(run_cli({"variance", "--states", "5"}).code == 0);
  CHECK(run_cli({"floor", "--qubits", "2", "--channel", "amp_damp_dephase"}).code == 0);
  const auto fl = run_cli({"floor", "--channel", "bit_flip", "--json", "--mix", "0.0"});
  CHECK(fl.code == 0);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli({}).code == cli::kValidation);
  CHECK(run_cli({"bogus"}).code == cli::kValidation);
  CHECK(run_cli({"surface-code", "--nope"}).code == cli::kValidation);
  CHECK(run_cli({"surface-code", "--n", "-5"}).code == cli::kValidation);
  CHECK(run_cli({"qdrift", "--qubits", "3", "--target", "1e-9", "--cap", "64"}).code == cli::kResource);
  CHECK(run_cli({"qdrift", "--qubits", "3", "--min-ratio", "1e9"}).code == cli::kCheckFailed);
  CHECK(run_cli({"scrambler", "--qubits", "11"}).code == cli::kValidation);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("cli: sweeps write seeded CSV") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "heis.toml";
  {
    std::ofstream out(cfg);
    out << "[family]\nname = \"heisenberg\"\nqubits = 3\n[noise]\nkind = \"depolarizing\"\np = 1e-3\n"
           "[sweep]\nsteps = [2, 4]\nmagnetization = true\n[output]\ncsv = \""
        << (dir / "cfg_out.csv").string() << "\"\n";
  }
  const auto r = run_cli({"heisenberg", "--config", cfg.string(), "--seed", "9"});
  REQUIRE(r.code == 0);
  const std::string text = slurp(dir / "cfg_out.csv");
  CHECK(text.rfind("# seed=9\n# version=" + cli::version() + "\n", 0) == 0);
  CHECK(read_csv((dir / "cfg_out.csv").string()).size() == 8);

  const auto wrong = run_cli({"scrambler", "--config", cfg.string()});
  CHECK(wrong.code == cli::kValidation);

  const auto flags = run_cli({"scrambler", "--kind", "nonentangling", "--qubits", "3", "--depths", "4,8", "--p", "1e-3",
                              "--json", "--seed", "3"});
  REQUIRE(flags.code == 0);
  const auto j = nlohmann::json::parse(flags.out);
  CHECK(j["rows"].size() == 8);
  CHECK(j["seed"].get<std::uint64_t>() == 3);
}

TEST_CASE("binary: exit codes and byte-identical reruns") {
  CHECK(run_binary("identity-check --max-qubits 3 --max-copies 4 --seed 7").code == 0);
  CHECK(run_binary("no-such-command").code == 1);
  const auto a = run_binary("scrambler --qubits 3 --depths 4,6 --p 2e-3 --seed 21 --json");
  const auto b = run_binary("scrambler --qubits 3 --depths 4,6 --p 2e-3 --seed 21 --json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const fs::path dir = scratch_dir();
  const std::string c1 = (dir / "run1.csv").string(), c2 = (dir / "run2.csv").string();
  CHECK(run_binary("heisenberg --qubits 3 --steps 3 --seed 5 --csv " + c1).code == 0);
  CHECK(run_binary("heisenberg --qubits 3 --steps 3 --seed 5 --csv " + c2).code == 0);
  CHECK(slurp(c1) == slurp(c2));
  CHECK_FALSE(slurp(c1).empty());
}
