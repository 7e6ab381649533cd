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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qeclab/code.hpp"

namespace qeclab {

/// CSS code with Z-checks from the rows of h1 and X-checks from the rows of h2.
inline StabilizerCode css_from_classical(const ClassicalCode& h1, const ClassicalCode& h2,
                                         std::string family = "css", std::map<std::string, int> params = {}) {
  if (h1.n() != h2.n()) throw DimensionError("classical codes have different lengths");
  std::size_t n = h1.n();
  for (std::size_t i = 0; i < h1.rows().size(); ++i) {
    for (std::size_t j = 0; j < h2.rows().size(); ++j) {
      if (h1.rows()[i].dot(h2.rows()[j])) {
        throw CodeError("row " + std::to_string(i + 1) + " of H1 and row " + std::to_string(j + 1) +
                        " of H2 overlap on an odd number of positions");
      }
    }
  }
  CodeData d;
  d.n = n;
  for (const auto& r : h1.rows()) d.stabilizers.emplace_back(BitVec(n), r);
  for (const auto& r : h2.rows()) d.stabilizers.emplace_back(r, BitVec(n));
  d.logicals = complete_logicals(n, d.stabilizers);
  d.family = std::move(family);
  d.params = std::move(params);
  return StabilizerCode(std::move(d));
}

/// Image of an outer-code operator when each outer qubit is replaced by a
/// logical qubit of an inner block. block_of[q] / slot_of[q] locate outer qubit q.
namespace detail {
inline PauliOp encode_through(const PauliOp& outer, const StabilizerCode& inner, const std::vector<std::size_t>& block_of,
                              const std::vector<std::size_t>& slot_of, std::size_t nblocks) {
  std::size_t n = nblocks * inner.n();
  auto lift = [&](const PauliOp& p, std::size_t block) {
    PauliOp r(n);
    for (std::size_t q = 0; q < inner.n(); ++q) r.set_letter(block * inner.n() + q, p.letter(q));
    r.set_phase(p.phase());
    return r;
  };
  PauliOp out(n);
  out.set_phase(outer.phase());
  for (std::size_t q = 0; q < outer.num_qubits(); ++q) {
    char c = outer.letter(q);
    if (c == 'I') continue;
    const auto& lp = inner.logicals()[slot_of[q]];
    std::size_t b = block_of[q];
    if (c == 'X') {
      out *= lift(lp.x, b);
    } else if (c == 'Z') {
      out *= lift(lp.z, b);
    } else {
      // Y = i X Z
      PauliOp y = lift(lp.x, b) * lift(lp.z, b);
      y.set_phase(static_cast<std::uint8_t>(y.phase() + 1));
      out *= y;
    }
  }
  return out;
}
}  // namespace detail

/// Replaces the outer code's qubits, grouped into blocks of inner.k(), by
/// inner-code blocks. Block b's logical j stands for outer qubit grouping[b][j];
/// block b occupies final qubits [b*inner.n(), (b+1)*inner.n()). Checks are the
/// inner checks block by block followed by the encoded outer checks.
inline StabilizerCode concatenate(const StabilizerCode& outer, const StabilizerCode& inner,
                                  std::vector<std::vector<std::size_t>> grouping = {}) {
  if (outer.is_subsystem() || inner.is_subsystem()) throw CodeError("concatenation of subsystem codes is not supported");
  if (inner.k() == 0) throw CodeError("inner code encodes no qubits");
  if (grouping.empty()) {
    if (outer.n() % inner.k() != 0) throw CodeError("outer qubit count is not a multiple of inner k");
    for (std::size_t b = 0; b < outer.n() / inner.k(); ++b) {
      std::vector<std::size_t> g;
      for (std::size_t j = 0; j < inner.k(); ++j) g.push_back(b * inner.k() + j);
      grouping.push_back(std::move(g));
    }
  }
  std::vector<std::size_t> block_of(outer.n(), SIZE_MAX), slot_of(outer.n(), SIZE_MAX);
  for (std::size_t b = 0; b < grouping.size(); ++b) {
    if (grouping[b].size() != inner.k()) {
      throw CodeError("block " + std::to_string(b) + " has " + std::to_string(grouping[b].size()) +
                      " outer qubits, inner code encodes " + std::to_string(inner.k()));
    }
    for (std::size_t j = 0; j < grouping[b].size(); ++j) {
      std::size_t q = grouping[b][j];
      if (q >= outer.n() || block_of[q] != SIZE_MAX) throw CodeError("grouping is not a partition of the outer qubits");
      block_of[q] = b;
      slot_of[q] = j;
    }
  }
  for (std::size_t q = 0; q < outer.n(); ++q) {
    if (block_of[q] == SIZE_MAX) throw CodeError("grouping is not a partition of the outer qubits");
  }
  std::size_t nb = grouping.size();
  CodeData d;
  d.n = nb * inner.n();
  for (std::size_t b = 0; b < nb; ++b) {
    for (const auto& s : inner.stabilizers()) {
      PauliOp r(d.n);
      for (std::size_t q = 0; q < inner.n(); ++q) r.set_letter(b * inner.n() + q, s.letter(q));
      r.set_phase(s.phase());
      d.stabilizers.push_back(std::move(r));
    }
  }
  for (const auto& s : outer.stabilizers()) {
    d.stabilizers.push_back(detail::encode_through(s, inner, block_of, slot_of, nb));
  }
  for (const auto& l : outer.logicals()) {
    d.logicals.push_back({detail::encode_through(l.x, inner, block_of, slot_of, nb),
                          detail::encode_through(l.z, inner, block_of, slot_of, nb)});
  }
  d.family = outer.family() + "*" + inner.family();
  return StabilizerCode(std::move(d));
}

namespace families {

inline PauliOp ops(const std::string& s) { return parse_pauli(s); }

inline StabilizerCode from_strings(const std::vector<std::string>& stabs,
                                   const std::vector<std::pair<std::string, std::string>>& logicals, std::string family,
                                   std::map<std::string, int> params = {}) {
  CodeData d;
  d.n = parse_pauli(stabs.front()).num_qubits();
  for (const auto& s : stabs) d.stabilizers.push_back(parse_pauli(s));
  for (const auto& [x, z] : logicals) d.logicals.push_back({parse_pauli(x), parse_pauli(z)});
  d.family = std::move(family);
  d.params = std::move(params);
  return StabilizerCode(std::move(d));
}

/// The trivial [[1,1,1]] code: no checks, X-bar = X, Z-bar = Z.
inline StabilizerCode trivial() {
  CodeData d;
  d.n = 1;
  d.logicals.push_back({parse_pauli("X"), parse_pauli("Z")});
  d.family = "trivial";
  return StabilizerCode(std::move(d));
}

/// Repetition code against bit flips (Z-checks Z_i Z_{i+1}) or, with
/// phase = true, against phase flips (X-checks X_i X_{i+1}).
inline StabilizerCode repetition(std::size_t n, bool phase = false) {
  if (n < 2) throw CodeError("repetition code needs n >= 2");
  CodeData d;
  d.n = n;
  char check = phase ? 'X' : 'Z';
  for (std::size_t i = 0; i + 1 < n; ++i) d.stabilizers.push_back(PauliOp::on(n, std::vector<std::size_t>{i, i + 1}, check));
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (phase) {
    d.logicals.push_back({PauliOp::single(n, 0, 'X'), PauliOp::on(n, all, 'Z')});
  } else {
    d.logicals.push_back({PauliOp::on(n, all, 'X'), PauliOp::single(n, 0, 'Z')});
  }
  d.family = phase ? "repetition_phase" : "repetition";
  d.params = {{"n", static_cast<int>(n)}};
  return StabilizerCode(std::move(d));
}

/// Shor's code, built by concatenating the phase-flip and bit-flip repetition codes.
inline StabilizerCode shor9() {
  auto c = concatenate(repetition(3, true), repetition(3, false));
  CodeData d = c.data();
  d.family = "shor9";
  return StabilizerCode(std::move(d));
}

inline ClassicalCode hamming743() {
  return ClassicalCode::from_strings({"0001111", "0110011", "1010101"});
}

inline StabilizerCode steane7() { return css_from_classical(hamming743(), hamming743(), "steane7"); }

/// The cyclic [[5,1,3]] code with checks XZZXI and its shifts.
inline StabilizerCode five_one_three() {
  return from_strings({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}, {{"XXXXX", "ZZZZZ"}}, "five_one_three");
}

inline StabilizerCode two_qubit() { return from_strings({"XX"}, {{"XI", "ZZ"}}, "two_qubit"); }

inline StabilizerCode four_two_two() {
  return from_strings({"XXXX", "ZZZZ"}, {{"XXII", "ZIZI"}, {"IXIX", "IIZZ"}}, "four_two_two");
}

/// [[4,2,2]] read as a subsystem code: logical qubit 1 kept, qubit 2 as gauge.
inline StabilizerCode four_two_two_subsystem() {
  CodeData d;
  d.n = 4;
  d.stabilizers = {ops("XXXX"), ops("ZZZZ")};
  d.gauge = {ops("ZZII"), ops("IIZZ"), ops("XIXI"), ops("IXIX")};
  d.logicals = {{ops("XXII"), ops("ZIZI")}};
  d.family = "four_two_two_subsystem";
  return StabilizerCode(std::move(d));
}

/// C6 with the logical operators exactly as commonly printed. Note that
/// Z-bar_1 anticommutes with X-bar_2 in this choice; logical classes account
/// for that through the full commutation matrix.
inline StabilizerCode c6() {
  return from_strings({"XIIXXX", "XXXIIX", "ZIIZZZ", "ZZZIIZ"}, {{"IXXIII", "ZZIZII"}, {"XXIXII", "IIIZZI"}}, "c6");
}

/// C6 concatenated with C4 = [[4,2,2]] on the qubit pairs (12), (34), (56).
inline StabilizerCode c6_c4() {
  auto c = concatenate(c6(), four_two_two(), {{0, 1}, {2, 3}, {4, 5}});
  CodeData d = c.data();
  // Order X-type checks before Z-type checks, keeping relative order.
  std::vector<PauliOp> xs, zs;
  for (auto& s : d.stabilizers) (s.is_x_type() ? xs : zs).push_back(s);
  d.stabilizers = xs;
  d.stabilizers.insert(d.stabilizers.end(), zs.begin(), zs.end());
  d.family = "c6_c4";
  return StabilizerCode(std::move(d));
}

/// Planar surface code [[L^2+(L-1)^2, 1, L]]. Qubits sit at (x, y) with x+y
/// even on a (2L-1)x(2L-1) grid, y growing southward. Z-plaquettes sit at odd
/// x / even y, X-stars at even x / odd y. North and south are rough
/// (Z-bar runs north-south along x = 0), east and west smooth (X-bar along y = 0).
inline StabilizerCode surface(int L) {
  if (L < 2) throw CodeError("surface code needs L >= 2");
  int w = 2 * L - 1;
  std::map<std::pair<int, int>, std::size_t> index;
  CodeData d;
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) {
      if ((x + y) % 2 == 0) {
        index[{x, y}] = d.coords.size();
        d.coords.push_back({x, y});
      }
    }
  }
  d.n = d.coords.size();
  auto around = [&](int x, int y, char letter) {
    PauliOp p(d.n);
    const int dx[4] = {-1, 1, 0, 0}, dy[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      auto it = index.find({x + dx[k], y + dy[k]});
      if (it != index.end()) p.set_letter(it->second, letter);
    }
    return p;
  };
  for (int y = 0; y < w; y += 2) {
    for (int x = 1; x < w; x += 2) d.stabilizers.push_back(around(x, y, 'Z'));
  }
  for (int y = 1; y < w; y += 2) {
    for (int x = 0; x < w; x += 2) d.stabilizers.push_back(around(x, y, 'X'));
  }
  PauliOp xbar(d.n), zbar(d.n);
  for (int x = 0; x < w; x += 2) xbar.set_letter(index[{x, 0}], 'X');
  for (int y = 0; y < w; y += 2) zbar.set_letter(index[{0, y}], 'Z');
  d.logicals.push_back({xbar, zbar});
  d.family = "surface";
  d.params = {{"L", L}};
  return StabilizerCode(std::move(d));
}

/// Toric code on an L x L torus, [[2L^2, 2, L]]. Qubits at (x, y) with x+y odd
/// on a periodic 2L x 2L grid; Z-plaquettes at (odd, odd), X-stars at (even, even).
/// The last plaquette and last star are redundant and kept as measured checks.
inline StabilizerCode toric(int L) {
  if (L < 2) throw CodeError("toric code needs L >= 2");
  int w = 2 * L;
  std::map<std::pair<int, int>, std::size_t> index;
  CodeData d;
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) {
      if ((x + y) % 2 == 1) {
        index[{x, y}] = d.coords.size();
        d.coords.push_back({x, y});
      }
    }
  }
  d.n = d.coords.size();
  auto wrap = [w](int v) { return ((v % w) + w) % w; };
  auto around = [&](int x, int y, char letter) {
    PauliOp p(d.n);
    const int dx[4] = {-1, 1, 0, 0}, dy[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) p.set_letter(index.at({wrap(x + dx[k]), wrap(y + dy[k])}), letter);
    return p;
  };
  std::vector<PauliOp> plaq, star;
  for (int y = 1; y < w; y += 2) {
    for (int x = 1; x < w; x += 2) plaq.push_back(around(x, y, 'Z'));
  }
  for (int y = 0; y < w; y += 2) {
    for (int x = 0; x < w; x += 2) star.push_back(around(x, y, 'X'));
  }
  d.stabilizers.assign(plaq.begin(), plaq.end() - 1);
  d.stabilizers.insert(d.stabilizers.end(), star.begin(), star.end() - 1);
  d.redundant_checks = {plaq.back(), star.back()};
  PauliOp x1(d.n), z1(d.n), x2(d.n), z2(d.n);
  for (int y = 0; y < w; y += 2) x1.set_letter(index.at({1, y}), 'X');
  for (int x = 1; x < w; x += 2) z1.set_letter(index.at({x, 0}), 'Z');
  for (int x = 0; x < w; x += 2) x2.set_letter(index.at({x, 1}), 'X');
  for (int y = 1; y < w; y += 2) z2.set_letter(index.at({0, y}), 'Z');
  d.logicals = {{x1, z1}, {x2, z2}};
  d.family = "toric";
  d.params = {{"L", L}};
  d.periodic = true;
  return StabilizerCode(std::move(d));
}

/// Bacon-Shor [[n^2, 1, n]] on an n x n array, qubit (row r, column c) at r*n + c.
/// Gauge group: vertical XX links and horizontal ZZ links. Stabilizers: the
/// double-column Z operators followed by the double-row X operators.
inline StabilizerCode bacon_shor(int n) {
  if (n < 2) throw CodeError("Bacon-Shor code needs n >= 2");
  std::size_t N = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  auto at = [n](int r, int c) { return static_cast<std::size_t>(r * n + c); };
  CodeData d;
  d.n = N;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) d.coords.push_back({c, r});
  }
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r + 1 < n; ++r) d.gauge.push_back(PauliOp::on(N, std::vector<std::size_t>{at(r, c), at(r + 1, c)}, 'X'));
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c + 1 < n; ++c) d.gauge.push_back(PauliOp::on(N, std::vector<std::size_t>{at(r, c), at(r, c + 1)}, 'Z'));
  }
  for (int c = 0; c + 1 < n; ++c) {
    std::vector<std::size_t> q;
    for (int r = 0; r < n; ++r) {
      q.push_back(at(r, c));
      q.push_back(at(r, c + 1));
    }
    d.stabilizers.push_back(PauliOp::on(N, q, 'Z'));
  }
  for (int r = 0; r + 1 < n; ++r) {
    std::vector<std::size_t> q;
    for (int c = 0; c < n; ++c) {
      q.push_back(at(r, c));
      q.push_back(at(r + 1, c));
    }
    d.stabilizers.push_back(PauliOp::on(N, q, 'X'));
  }
  std::vector<std::size_t> row0, col0;
  for (int i = 0; i < n; ++i) {
    row0.push_back(at(0, i));
    col0.push_back(at(i, 0));
  }
  d.logicals.push_back({PauliOp::on(N, row0, 'X'), PauliOp::on(N, col0, 'Z')});
  d.family = "bacon_shor";
  d.params = {{"n", n}};
  return StabilizerCode(std::move(d));
}

/// Subsystem surface code with three-qubit gauge operators on an L x L array
/// of square plaquettes: 3L^2+4L+1 qubits on plaquette corners and edges.
/// Doubled coordinates: corners at (even, even), edge midpoints at
/// (odd, even) / (even, odd), plaquette centres at (odd, odd), y southward.
/// In every plaquette the Z-triangles sit at the north-west and south-east
/// corners, the X-triangles at the north-east and south-west corners; a
/// triangle is the corner qubit plus its two adjacent edge qubits. The
/// plaquette stabilizers are the products of each same-type triangle pair.
/// Boundary: weight-2 Z operators along north and south, weight-2 X
/// operators along west and east (cut-off triangles of the missing
/// plaquettes); these are both gauge generators and stabilizers. The
/// shortest dressed logical operator has weight L + 1.
inline StabilizerCode subsystem_surface(int L) {
  if (L < 2) throw CodeError("subsystem surface code needs L >= 2");
  int w = 2 * L + 1;
  std::map<std::pair<int, int>, std::size_t> index;
  CodeData d;
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x % 2 == 1 && y % 2 == 1) continue;
      index[{x, y}] = d.coords.size();
      d.coords.push_back({x, y});
    }
  }
  d.n = d.coords.size();
  auto make = [&](std::vector<std::pair<int, int>> sites, char letter) {
    PauliOp p(d.n);
    for (const auto& s : sites) p.set_letter(index.at(s), letter);
    return p;
  };
  std::vector<PauliOp> ztri, xtri, zplaq, xplaq;
  for (int py = 1; py < w; py += 2) {
    for (int px = 1; px < w; px += 2) {
      // corners
      std::pair<int, int> nw{px - 1, py - 1}, ne{px + 1, py - 1}, sw{px - 1, py + 1}, se{px + 1, py + 1};
      // edges
      std::pair<int, int> n{px, py - 1}, s{px, py + 1}, wst{px - 1, py}, e{px + 1, py};
      ztri.push_back(make({nw, n, wst}, 'Z'));
      ztri.push_back(make({se, s, e}, 'Z'));
      xtri.push_back(make({ne, n, e}, 'X'));
      xtri.push_back(make({sw, s, wst}, 'X'));
      zplaq.push_back(make({nw, n, wst, se, s, e}, 'Z'));
      xplaq.push_back(make({ne, n, e, sw, s, wst}, 'X'));
    }
  }
  std::vector<PauliOp> zbnd, xbnd;
  for (int px = 1; px < w; px += 2) {
    zbnd.push_back(make({{px + 1, 0}, {px, 0}}, 'Z'));          // north: NE corner + N edge of top row
    zbnd.push_back(make({{px - 1, w - 1}, {px, w - 1}}, 'Z'));  // south: SW corner + S edge of bottom row
  }
  for (int py = 1; py < w; py += 2) {
    xbnd.push_back(make({{0, py - 1}, {0, py}}, 'X'));          // west: NW corner + W edge of left column
    xbnd.push_back(make({{w - 1, py + 1}, {w - 1, py}}, 'X'));  // east: SE corner + E edge of right column
  }
  d.stabilizers = zplaq;
  d.stabilizers.insert(d.stabilizers.end(), zbnd.begin(), zbnd.end());
  d.stabilizers.insert(d.stabilizers.end(), xplaq.begin(), xplaq.end());
  d.stabilizers.insert(d.stabilizers.end(), xbnd.begin(), xbnd.end());
  d.gauge = ztri;
  d.gauge.insert(d.gauge.end(), zbnd.begin(), zbnd.end());
  d.gauge.insert(d.gauge.end(), xtri.begin(), xtri.end());
  d.gauge.insert(d.gauge.end(), xbnd.begin(), xbnd.end());
  d.logicals = complete_logicals(d.n, d.stabilizers, d.gauge);
  d.family = "subsystem_surface";
  d.params = {{"L", L}};
  return StabilizerCode(std::move(d));
}

struct FamilyInfo {
  std::string name;
  std::string param;  // empty when the family has no size parameter
  std::string description;
};

inline const std::vector<FamilyInfo>& catalogue() {
  static const std::vector<FamilyInfo> kFamilies = {
      {"trivial", "", "[[1,1,1]] unencoded qubit"},
      {"repetition", "n", "bit-flip repetition code, Z-checks"},
      {"repetition_phase", "n", "phase-flip repetition code, X-checks"},
      {"two_qubit", "", "[[2,1,1]] code stabilized by XX"},
      {"four_two_two", "", "[[4,2,2]] error-detecting code (C4)"},
      {"four_two_two_subsystem", "", "[[4,2,2]] viewed as a subsystem code with one gauge qubit"},
      {"c6", "", "[[6,2,2]] code C6"},
      {"c6_c4", "", "C6 concatenated with C4, [[12,2,4]]"},
      {"shor9", "", "Shor's [[9,1,3]] code"},
      {"steane7", "", "Steane's [[7,1,3]] CSS code"},
      {"five_one_three", "", "cyclic [[5,1,3]] code"},
      {"surface", "L", "planar surface code [[L^2+(L-1)^2,1,L]]"},
      {"toric", "L", "toric code [[2L^2,2,L]]"},
      {"bacon_shor", "n", "Bacon-Shor subsystem code [[n^2,1,n]]"},
      {"subsystem_surface", "L", "subsystem surface code with 3-qubit gauge operators, [[3L^2+4L+1,1,L+1]]"},
  };
  return kFamilies;
}

}  // namespace families

/// Builds a catalogue code by family name. `size` is L or n where the family
/// takes a size parameter and is ignored otherwise.
inline StabilizerCode build_named_code(const std::string& family, int size = 0) {
  using namespace families;
  auto need = [&](int min) {
    if (size < min) throw CodeError("family " + family + " needs size >= " + std::to_string(min));
  };
  if (family == "trivial") return trivial();
  if (family == "repetition") return need(2), repetition(static_cast<std::size_t>(size), false);
  if (family == "repetition_phase") return need(2), repetition(static_cast<std::size_t>(size), true);
  if (family == "two_qubit") return two_qubit();
  if (family == "four_two_two") return four_two_two();
  if (family == "four_two_two_subsystem") return four_two_two_subsystem();
  if (family == "c6") return c6();
  if (family == "c6_c4") return c6_c4();
  if (family == "shor9") return shor9();
  if (family == "steane7") return steane7();
  if (family == "five_one_three") return five_one_three();
  if (family == "surface") return need(2), surface(size);
  if (family == "toric") return need(2), toric(size);
  if (family == "bacon_shor") return need(2), bacon_shor(size);
  if (family == "subsystem_surface") return need(2), subsystem_surface(size);
  throw CodeError("unknown code family '" + family + "'");
}

}  // namespace qeclab
