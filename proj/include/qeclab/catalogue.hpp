// Copyright 2026 The qeclab Authors
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

#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qeclab/code.hpp"
#include "qeclab/pauli.hpp"

namespace qeclab {

// Text form of a code:
//   n k family params          (params "-" when empty, else key=value;...)
//   S:  stabilizer generator
//   R:  redundant measured check
//   GX: / GZ: / G:  gauge generator (pure X, pure Z, mixed)
//   LX: / LZ:  logical pair, X then Z for each logical qubit

inline void write_catalogue_entry(std::ostream& os, const StabilizerCode& code) {
  std::string params = code.param_string();
  os << code.n() << ' ' << code.k() << ' ' << code.family() << ' ' << (params.empty() ? "-" : params) << '\n';
  for (const auto& s : code.stabilizers()) os << "S: " << format_pauli(s) << '\n';
  for (const auto& r : code.redundant_checks()) os << "R: " << format_pauli(r) << '\n';
  for (const auto& g : code.gauge()) {
    const char* tag = g.is_x_type() ? "GX" : (g.is_z_type() ? "GZ" : "G");
    os << tag << ": " << format_pauli(g) << '\n';
  }
  for (const auto& l : code.logicals()) {
    os << "LX: " << format_pauli(l.x) << '\n';
    os << "LZ: " << format_pauli(l.z) << '\n';
  }
}

inline std::string catalogue_entry(const StabilizerCode& code) {
  std::ostringstream os;
  write_catalogue_entry(os, code);
  return os.str();
}

inline StabilizerCode read_catalogue_entry(std::istream& is) {
  std::string line;
  auto fail = [](const std::string& why) { throw CodeError("catalogue: " + why); };
  while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  if (!is && line.empty()) fail("empty input");
  CodeData d;
  std::size_t k = 0;
  std::string params;
  {
    std::istringstream hs(line);
    if (!(hs >> d.n >> k >> d.family >> params)) fail("malformed header '" + line + "'");
  }
  if (params != "-") {
    std::stringstream ps(params);
    std::string kv;
    while (std::getline(ps, kv, ';')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail("malformed parameter '" + kv + "'");
      d.params[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
    }
  }
  std::optional<PauliOp> pending_x;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) break;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("line without tag: '" + line + "'");
    std::string tag = line.substr(0, colon);
    std::string body = line.substr(colon + 1);
    body.erase(0, body.find_first_not_of(" \t"));
    PauliOp p = parse_pauli(body);
    if (p.num_qubits() != d.n) fail("operator '" + body + "' does not act on " + std::to_string(d.n) + " qubits");
    if (tag == "S") d.stabilizers.push_back(p);
    else if (tag == "R") d.redundant_checks.push_back(p);
    else if (tag == "GX" || tag == "GZ" || tag == "G") d.gauge.push_back(p);
    else if (tag == "LX") {
      if (pending_x) fail("LX without a following LZ");
      pending_x = p;
    } else if (tag == "LZ") {
      if (!pending_x) fail("LZ without a preceding LX");
      d.logicals.push_back({*pending_x, p});
      pending_x.reset();
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  if (pending_x) fail("LX without a following LZ");
  if (d.logicals.size() != k) fail("header announces k=" + std::to_string(k) + " but lists " +
                                   std::to_string(d.logicals.size()) + " logical pairs");
  return StabilizerCode(std::move(d));
}

}  // namespace qeclab
