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

#include <string>

#include "json.hpp"
#include "vdsim/circuit.hpp"

namespace vdsim {

using nlohmann::json;

std::string circuit_to_json(const Circuit& circuit) {
  json doc;
  doc["n_qubits"] = circuit.n_qubits();
  json ops = json::array();
  for (const Operation& op : circuit.ops()) {
    json o;
    o["gate"] = op.gate.name();
    o["qubits"] = op.qubits;
    const bool named = is_named_gate(op.gate.name()) && gate_matrix(op.gate.name()).matrix() == op.gate.matrix();
    if (!named) {
      json m = json::array();
      const auto& u = op.gate.matrix();
      for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) m.push_back({u(r, c).real(), u(r, c).imag()});
      }
      o["matrix"] = std::move(m);
    }
    ops.push_back(std::move(o));
  }
  doc["ops"] = std::move(ops);
  return doc.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("circuit JSON: ") + e.what());
  }
  try {
    Circuit circuit(doc.at("n_qubits").get<int>());
    for (const json& o : doc.at("ops")) {
      const std::string name = o.at("gate").get<std::string>();
      std::vector<int> qubits = o.at("qubits").get<std::vector<int>>();
      if (o.contains("matrix")) {
        const json& m = o.at("matrix");
        const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(m.size()))));
        if (dim * dim != static_cast<Eigen::Index>(m.size())) throw ValidationError("gate '" + name + "': matrix is not square");
        ComplexMatrixd u(dim, dim);
        for (Eigen::Index k = 0; k < dim * dim; ++k) {
          const json& e = m.at(static_cast<std::size_t>(k));
          u(k / dim, k % dim) = {e.at(0).get<double>(), e.at(1).get<double>()};
        }
        circuit.add(Gate(name, std::move(u)), std::move(qubits));
      } else {
        circuit.add(gate_matrix(name), std::move(qubits));
      }
    }
    return circuit;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace vdsim
