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

#include "vdsim/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "vdsim/errors.hpp"

namespace vdsim {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw ValidationError(source + ":" + std::to_string(line) + ": " + msg);
}

std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && in_str) {
      ++i;
      continue;
    }
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class ValueParser {
 public:
  ValueParser(const std::string& text, const std::string& source, int line) : t_(text), src_(source), line_(line) {}

  ConfigValue parse() {
    ConfigValue v = value();
    skip_ws();
    if (pos_ != t_.size()) fail(src_, line_, "unexpected trailing characters after value");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < t_.size() && (t_[pos_] == ' ' || t_[pos_] == '\t' || t_[pos_] == '\n' || t_[pos_] == '\r')) ++pos_;
  }

  ConfigValue value() {
    skip_ws();
    if (pos_ >= t_.size()) fail(src_, line_, "missing value");
    ConfigValue v;
    v.line = line_;
    const char c = t_[pos_];
    if (c == '"') {
      v.kind = ConfigValue::Kind::String;
      v.s = string();
      return v;
    }
    if (c == '[') {
      ++pos_;
      v.kind = ConfigValue::Kind::Array;
      skip_ws();
      if (pos_ < t_.size() && t_[pos_] == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        skip_ws();
        if (pos_ >= t_.size()) fail(src_, line_, "unterminated array");
        if (t_[pos_] == ',') {
          ++pos_;
          skip_ws();
          if (pos_ < t_.size() && t_[pos_] == ']') {
            ++pos_;
            return v;
          }
          continue;
        }
        if (t_[pos_] == ']') {
          ++pos_;
          return v;
        }
        fail(src_, line_, "expected ',' or ']' in array");
      }
    }
    std::size_t end = pos_;
    while (end < t_.size() && t_[end] != ',' && t_[end] != ']' && t_[end] != ' ' && t_[end] != '\t' && t_[end] != '\n') ++end;
    std::string tok = t_.substr(pos_, end - pos_);
    pos_ = end;
    if (tok == "true" || tok == "false") {
      v.kind = ConfigValue::Kind::Bool;
      v.b = tok == "true";
      return v;
    }
    std::string digits;
    for (char ch : tok) {
      if (ch != '_') digits += ch;
    }
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    const bool looks_float = digits.find_first_of(".eE") != std::string::npos || digits == "inf" || digits == "nan";
    if (!looks_float) {
      long long x = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), x);
      if (ec == std::errc() && p == digits.data() + digits.size() && !digits.empty()) {
        v.kind = ConfigValue::Kind::Int;
        v.i = x;
        v.f = static_cast<double>(x);
        return v;
      }
    } else {
      double x = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), x);
      if (ec == std::errc() && p == digits.data() + digits.size()) {
        v.kind = ConfigValue::Kind::Float;
        v.f = x;
        return v;
      }
    }
    fail(src_, line_, "cannot parse value '" + tok + "'");
  }

  std::string string() {
    ++pos_;
    std::string out;
    while (pos_ < t_.size() && t_[pos_] != '"') {
      char c = t_[pos_++];
      if (c == '\\') {
        if (pos_ >= t_.size()) break;
        const char e = t_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(src_, line_, std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    if (pos_ >= t_.size()) fail(src_, line_, "unterminated string");
    ++pos_;
    return out;
  }

  const std::string& t_;
  const std::string& src_;
  int line_;
  std::size_t pos_ = 0;
};

int bracket_balance(const std::string& s) {
  int depth = 0;
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_str && s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '"') in_str = !in_str;
    if (in_str) continue;
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
  }
  return depth;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

// Typed accessors that remember which keys were consumed.
class Reader {
 public:
  Reader(const ConfigDocument& doc, const std::string& source) : doc_(doc), src_(source) {}

  const ConfigValue* find(const std::string& sec, const std::string& key) {
    used_.insert(sec + "." + key);
    auto s = doc_.find(sec);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  [[noreturn]] void bad(const std::string& sec, const std::string& key, const ConfigValue& v, const std::string& msg) {
    fail(src_, v.line, "[" + sec + "]." + key + " " + msg);
  }

  [[noreturn]] void missing(const std::string& sec, const std::string& key) {
    throw ValidationError(src_ + ": missing required key [" + sec + "]." + key);
  }

  std::string str(const std::string& sec, const std::string& key, const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::String) bad(sec, key, v, "must be a string");
    return v.s;
  }
  double num(const std::string& sec, const std::string& key, const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::Float && v.kind != ConfigValue::Kind::Int) bad(sec, key, v, "must be a number");
    return v.f;
  }
  long long integer(const std::string& sec, const std::string& key, const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::Int) bad(sec, key, v, "must be an integer");
    return v.i;
  }
  bool boolean(const std::string& sec, const std::string& key, const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::Bool) bad(sec, key, v, "must be true or false");
    return v.b;
  }
  // A scalar integer is accepted where a list is expected.
  std::vector<int> int_list(const std::string& sec, const std::string& key, const ConfigValue& v) {
    std::vector<int> out;
    if (v.kind == ConfigValue::Kind::Array) {
      for (const auto& it : v.items) out.push_back(static_cast<int>(integer(sec, key, it)));
    } else {
      out.push_back(static_cast<int>(integer(sec, key, v)));
    }
    return out;
  }
  std::vector<double> num_list(const std::string& sec, const std::string& key, const ConfigValue& v) {
    std::vector<double> out;
    if (v.kind == ConfigValue::Kind::Array) {
      for (const auto& it : v.items) out.push_back(num(sec, key, it));
    } else {
      out.push_back(num(sec, key, v));
    }
    return out;
  }

  void reject_unknown() {
    for (const auto& [sec, keys] : doc_) {
      for (const auto& [key, v] : keys) {
        if (!used_.count(sec + "." + key)) fail(src_, v.line, "unknown key [" + sec + "]." + key);
      }
    }
  }

 private:
  const ConfigDocument& doc_;
  std::string src_;
  std::set<std::string> used_;
};

}  // namespace

ConfigDocument parse_toml(const std::string& text, const std::string& source) {
  static const std::set<std::string> kSections{"family", "noise", "sweep", "output"};
  ConfigDocument doc;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(source, line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section)) fail(source, line_no, "unknown section [" + section + "]");
      if (doc.count(section)) fail(source, line_no, "duplicate section [" + section + "]");
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(source, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) fail(source, line_no, "invalid key '" + key + "'");
    if (section.empty()) fail(source, line_no, "key '" + key + "' appears before any section");
    std::string rhs = trim(line.substr(eq + 1));
    const int start = line_no;
    while (bracket_balance(rhs) > 0 && std::getline(in, raw)) {
      ++line_no;
      rhs += "\n" + trim(strip_comment(raw));
    }
    auto& sec = doc[section];
    if (sec.count(key)) fail(source, start, "duplicate key [" + section + "]." + key);
    sec[key] = ValueParser(rhs, source, start).parse();
  }
  return doc;
}

SweepConfig config_from_document(const ConfigDocument& doc, const std::string& source) {
  Reader r(doc, source);
  SweepConfig cfg;

  // [family]
  const ConfigValue* v = r.find("family", "name");
  if (!v) r.missing("family", "name");
  try {
    cfg.family = parse_family(r.str("family", "name", *v));
  } catch (const ValidationError& e) {
    r.bad("family", "name", *v, e.what());
  }
  if (!(v = r.find("family", "qubits"))) r.missing("family", "qubits");
  cfg.qubits = r.int_list("family", "qubits", *v);
  for (int n : cfg.qubits) {
    if (n < 1 || n > 10) r.bad("family", "qubits", *v, "entries must lie in [1, 10]");
  }
  const bool heis = cfg.family == Family::Heisenberg;
  for (const char* key : {"jx", "jy", "jz", "h", "dt", "boundary", "field_pattern", "field_signs"}) {
    const ConfigValue* hv = r.find("family", key);
    if (!hv) continue;
    if (!heis) r.bad("family", key, *hv, "only applies to the heisenberg family");
    const std::string k = key;
    auto& hp = cfg.heisenberg;
    if (k == "jx") hp.Jx = r.num("family", k, *hv);
    if (k == "jy") hp.Jy = r.num("family", k, *hv);
    if (k == "jz") hp.Jz = r.num("family", k, *hv);
    if (k == "h") hp.h = r.num("family", k, *hv);
    if (k == "dt") {
      hp.dt = r.num("family", k, *hv);
      if (!(hp.dt > 0.0)) r.bad("family", k, *hv, "must be positive");
    }
    if (k == "boundary") {
      const std::string b = r.str("family", k, *hv);
      if (b == "open") hp.boundary = Boundary::Open;
      else if (b == "periodic") hp.boundary = Boundary::Periodic;
      else r.bad("family", k, *hv, "must be \"open\" or \"periodic\"");
    }
    if (k == "field_pattern") {
      const std::string f = r.str("family", k, *hv);
      if (f == "uniform-x") hp.field_pattern = FieldPattern::UniformX;
      else if (f == "random-sign-z") hp.field_pattern = FieldPattern::RandomSignZ;
      else r.bad("family", k, *hv, "must be \"uniform-x\" or \"random-sign-z\"");
    }
    if (k == "field_signs") {
      hp.field_signs.clear();
      for (int s : r.int_list("family", k, *hv)) {
        if (s != 1 && s != -1) r.bad("family", k, *hv, "entries must be +1 or -1");
        hp.field_signs.push_back(s);
      }
    }
  }

  // [noise]
  if (!(v = r.find("noise", "kind"))) r.missing("noise", "kind");
  NoiseKind kind;
  try {
    kind = NoiseSpec::parse_kind(r.str("noise", "kind", *v));
  } catch (const ValidationError& e) {
    r.bad("noise", "kind", *v, e.what());
  }
  const ConfigValue* pv = r.find("noise", "p");
  const ConfigValue* g1 = r.find("noise", "gamma1");
  const ConfigValue* g2 = r.find("noise", "gamma2");
  auto check_prob = [&](const char* key, const ConfigValue* cv, double hi) {
    const double x = r.num("noise", key, *cv);
    if (!(x >= 0.0 && x <= hi)) {
      std::ostringstream msg;
      msg << "must lie in [0, " << hi << "] (got " << x << ")";
      r.bad("noise", key, *cv, msg.str());
    }
    return x;
  };
  if (kind == NoiseKind::AmpDampDephase) {
    if (pv) r.bad("noise", "p", *pv, "does not apply to amp_damp_dephase; use gamma1 and gamma2");
    const double a = g1 ? check_prob("gamma1", g1, 1.0) : 0.0;
    const double b = g2 ? check_prob("gamma2", g2, 1.0) : 0.0;
    cfg.noise = NoiseSpec::amp_damp_dephase(a, b);
  } else {
    if (g1) r.bad("noise", "gamma1", *g1, "only applies to amp_damp_dephase");
    if (g2) r.bad("noise", "gamma2", *g2, "only applies to amp_damp_dephase");
    double p = 0.0;
    if (pv) p = check_prob("p", pv, kind == NoiseKind::Depolarizing ? 0.75 : 1.0);
    else if (kind != NoiseKind::None) r.missing("noise", "p");
    switch (kind) {
      case NoiseKind::Depolarizing: cfg.noise = NoiseSpec::depolarizing(p); break;
      case NoiseKind::BitFlip: cfg.noise = NoiseSpec::bit_flip(p); break;
      case NoiseKind::PhaseFlip: cfg.noise = NoiseSpec::phase_flip(p); break;
      default: cfg.noise = NoiseSpec::none(); break;
    }
  }

  // [sweep]
  if ((v = r.find("sweep", "axis"))) {
    const std::string a = r.str("sweep", "axis", *v);
    if (a == "depth") cfg.axis = SweepAxis::Depth;
    else if (a == "rate") cfg.axis = SweepAxis::Rate;
    else r.bad("sweep", "axis", *v, "must be \"depth\" or \"rate\"");
  }
  const ConfigValue* dv = r.find("sweep", "depths");
  const ConfigValue* sv = r.find("sweep", "steps");
  if (dv && sv) r.bad("sweep", "steps", *sv, "conflicts with [sweep].depths");
  const ConfigValue* rv = r.find("sweep", "rates");
  const ConfigValue* fixed = r.find("sweep", "depth");
  if (cfg.axis == SweepAxis::Depth) {
    const char* key = dv ? "depths" : "steps";
    const ConfigValue* list = dv ? dv : sv;
    if (!list) r.missing("sweep", heis ? "steps" : "depths");
    cfg.depths = r.int_list("sweep", key, *list);
    if (cfg.depths.empty()) r.bad("sweep", key, *list, "must not be empty");
    for (int d : cfg.depths) {
      if (d < 1) r.bad("sweep", key, *list, "entries must be >= 1");
    }
    if (rv) r.bad("sweep", "rates", *rv, "only applies when [sweep].axis = \"rate\"");
    if (fixed) r.bad("sweep", "depth", *fixed, "only applies when [sweep].axis = \"rate\"");
  } else {
    if (!rv) r.missing("sweep", "rates");
    if (!fixed) r.missing("sweep", "depth");
    cfg.rates = r.num_list("sweep", "rates", *rv);
    if (cfg.rates.empty()) r.bad("sweep", "rates", *rv, "must not be empty");
    for (double x : cfg.rates) {
      if (!(x >= 0.0 && x <= (kind == NoiseKind::Depolarizing ? 0.75 : 1.0))) r.bad("sweep", "rates", *rv, "entries out of range");
    }
    cfg.depth = static_cast<int>(r.integer("sweep", "depth", *fixed));
    if (cfg.depth < 1) r.bad("sweep", "depth", *fixed, "must be >= 1");
    if (dv) r.bad("sweep", "depths", *dv, "only applies when [sweep].axis = \"depth\"");
    if (sv) r.bad("sweep", "steps", *sv, "only applies when [sweep].axis = \"depth\"");
  }
  if ((v = r.find("sweep", "copies"))) {
    cfg.copies = r.int_list("sweep", "copies", *v);
    for (int m : cfg.copies) {
      if (m < 1 || m > 8) r.bad("sweep", "copies", *v, "entries must lie in [1, 8]");
    }
  }
  if ((v = r.find("sweep", "dominant"))) cfg.dominant = r.boolean("sweep", "dominant", *v);
  if ((v = r.find("sweep", "overhead"))) cfg.overhead = r.boolean("sweep", "overhead", *v);
  if ((v = r.find("sweep", "magnetization"))) cfg.magnetization = r.boolean("sweep", "magnetization", *v);
  if ((v = r.find("sweep", "noisy_measurement"))) cfg.noisy_measurement = r.boolean("sweep", "noisy_measurement", *v);
  if ((v = r.find("sweep", "noisy_shots"))) {
    const long long s = r.integer("sweep", "noisy_shots", *v);
    if (s < 0) r.bad("sweep", "noisy_shots", *v, "must be >= 0");
    cfg.noisy_shots = static_cast<std::uint64_t>(s);
  }
  if ((v = r.find("sweep", "seed"))) {
    const long long s = r.integer("sweep", "seed", *v);
    if (s < 0) r.bad("sweep", "seed", *v, "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if ((v = r.find("sweep", "threads"))) {
    cfg.threads = static_cast<int>(r.integer("sweep", "threads", *v));
    if (cfg.threads < 1) r.bad("sweep", "threads", *v, "must be >= 1");
  }

  // [output]
  if ((v = r.find("output", "csv"))) cfg.csv_path = r.str("output", "csv", *v);

  r.reject_unknown();
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return cfg;
}

SweepConfig parse_config_text(const std::string& text, const std::string& source) {
  return config_from_document(parse_toml(text, source), source);
}

SweepConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace vdsim
