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

#include "vdsim/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vdsim/errors.hpp"

namespace vdsim {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf.data(), p);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, int line) {
  double x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return x;
}

template <class Int>
Int to_int(const std::string& s, int line) {
  Int x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError("csv line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return x;
}

}  // namespace

std::string rows_to_csv(const std::vector<SweepRow>& rows, const CsvMeta& meta) {
  std::ostringstream out;
  out << "# seed=" << meta.seed << "\n";
  out << "# version=" << meta.version << "\n";
  out << "# rng=" << meta.rng << "\n";
  for (const auto& [k, v] : meta.extra) out << "# " << k << "=" << v << "\n";
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    for (const std::string* s : {&r.family, &r.noise_kind, &r.M}) {
      if (s->find_first_of(",\n\"") != std::string::npos) throw ValidationError("csv field contains a separator: " + *s);
    }
    out << r.family << ',' << r.N << ',' << r.G << ',' << r.noise_kind << ',' << format_double(r.param) << ','
        << format_double(r.expected_errors) << ',' << r.M << ',' << opt(r.trace_distance) << ',' << opt(r.mag_error)
        << ',' << opt(r.overhead) << ',' << r.seed << "\n";
  }
  return out.str();
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path, const CsvMeta& meta) {
  const std::string text = rows_to_csv(rows, meta);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader) throw ValidationError("csv line " + std::to_string(line_no) + ": unexpected header");
      header = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 11) throw ValidationError("csv line " + std::to_string(line_no) + ": expected 11 fields");
    SweepRow r;
    r.family = f[0];
    r.N = to_int<int>(f[1], line_no);
    r.G = to_int<int>(f[2], line_no);
    r.noise_kind = f[3];
    r.param = to_double(f[4], line_no);
    r.expected_errors = to_double(f[5], line_no);
    r.M = f[6];
    if (!f[7].empty()) r.trace_distance = to_double(f[7], line_no);
    if (!f[8].empty()) r.mag_error = to_double(f[8], line_no);
    if (!f[9].empty()) r.overhead = to_double(f[9], line_no);
    r.seed = to_int<std::uint64_t>(f[10], line_no);
    rows.push_back(std::move(r));
  }
  if (!header) throw ValidationError("csv: missing header line");
  return rows;
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace vdsim
