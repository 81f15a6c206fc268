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

#ifndef VDSIM_CONFIG_HPP
#define VDSIM_CONFIG_HPP

// Sweep configuration files. The accepted syntax is a TOML subset: [section]
// headers, key = value lines, '#' comments, and values that are strings,
// booleans, integers, floats or (possibly multi-line) arrays of those.

#include <map>
#include <string>
#include <vector>

#include "vdsim/sweep.hpp"

namespace vdsim {

struct ConfigValue {
  enum class Kind { Bool, Int, Float, String, Array };
  Kind kind = Kind::Int;
  bool b = false;
  long long i = 0;
  double f = 0.0;
  std::string s;
  std::vector<ConfigValue> items;
  int line = 0;
};

using ConfigSection = std::map<std::string, ConfigValue>;
using ConfigDocument = std::map<std::string, ConfigSection>;

/// Parse the TOML subset. Errors are ValidationError prefixed "source:line:".
ConfigDocument parse_toml(const std::string& text, const std::string& source = "<config>");

/// Build and validate a sweep config; unknown keys are rejected by key path.
SweepConfig config_from_document(const ConfigDocument& doc, const std::string& source = "<config>");

SweepConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
SweepConfig parse_config(const std::string& path);

}  // namespace vdsim

#endif  // VDSIM_CONFIG_HPP
