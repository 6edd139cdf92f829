// Copyright 2026 The qop Authors.
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

#include "qop/clifford.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qop/error.hpp"

namespace qop {

namespace {

// Image of X_q (want_x) or Z_q under W^dagger . W, as a signed string.
PauliProduct image(const CliffordGate& g, int n, int q, bool want_x) {
  auto term = [n](int qubit, char p) { return PauliTerm::single(n, qubit, p); };
  auto times = [](const PauliTerm& a, const PauliTerm& b) { return multiply(a, b); };
  const char letter = want_x ? 'X' : 'Z';
  switch (g.kind) {
    case CliffordGate::Kind::kH:
      if (q == g.q0) return {0, term(q, want_x ? 'Z' : 'X')};
      break;
    case CliffordGate::Kind::kS:
      // S^dagger X S = -Y, S^dagger Z S = Z
      if (q == g.q0 && want_x) return {2, term(q, 'Y')};
      break;
    case CliffordGate::Kind::kCZ:
      if (want_x && q == g.q0) return times(term(g.q0, 'X'), term(g.q1, 'Z'));
      if (want_x && q == g.q1) return times(term(g.q0, 'Z'), term(g.q1, 'X'));
      break;
    case CliffordGate::Kind::kCNOT:
      if (want_x && q == g.q0) return times(term(g.q0, 'X'), term(g.q1, 'X'));
      if (!want_x && q == g.q1) return times(term(g.q0, 'Z'), term(g.q1, 'Z'));
      break;
  }
  return {0, term(q, letter)};
}

}  // namespace

void CliffordGate::validate(int num_qubits) const {
  require(q0 >= 0 && q0 < num_qubits,
          "gate " + to_string() + ": qubit index out of range for n=" + std::to_string(num_qubits));
  if (is_two_qubit()) {
    require(q1 >= 0 && q1 < num_qubits,
            "gate " + to_string() + ": qubit index out of range for n=" + std::to_string(num_qubits));
    require(q0 != q1, "gate " + to_string() + ": qubits must differ");
  }
}

std::string CliffordGate::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kCZ: os << "CZ " << q0 << ' ' << q1; break;
    case Kind::kCNOT: os << "CNOT " << q0 << ' ' << q1; break;
    case Kind::kH: os << "H " << q0; break;
    case Kind::kS: os << "S " << q0; break;
  }
  return os.str();
}

CliffordGate CliffordGate::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string name;
  is >> name;
  CliffordGate g;
  if (name == "CZ") g.kind = Kind::kCZ;
  else if (name == "CNOT" || name == "CX") g.kind = Kind::kCNOT;
  else if (name == "H") g.kind = Kind::kH;
  else if (name == "S") g.kind = Kind::kS;
  else throw ValidationError("unknown fixed gate \"" + std::string(text) + "\"");
  require(static_cast<bool>(is >> g.q0), "missing qubit index in \"" + std::string(text) + "\"");
  if (g.is_two_qubit())
    require(static_cast<bool>(is >> g.q1), "missing second qubit in \"" + std::string(text) + "\"");
  std::string rest;
  require(!(is >> rest), "trailing tokens in \"" + std::string(text) + "\"");
  return g;
}

Eigen::MatrixXcd CliffordGate::to_matrix(int num_qubits) const {
  validate(num_qubits);
  const std::size_t d = std::size_t{1} << num_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    apply(std::span<cplx>(m.col(c).data(), d), num_qubits);
  }
  return m;
}

void CliffordGate::apply(std::span<cplx> amps, int num_qubits) const {
  const std::size_t d = std::size_t{1} << num_qubits;
  require(amps.size() == d, "state size does not match qubit count");
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = is_two_qubit() ? std::size_t{1} << q1 : 0;
  switch (kind) {
    case Kind::kCZ:
      for (std::size_t b = 0; b < d; ++b)
        if ((b & m0) && (b & m1)) amps[b] = -amps[b];
      break;
    case Kind::kCNOT:
      for (std::size_t b = 0; b < d; ++b)
        if ((b & m0) && !(b & m1)) std::swap(amps[b], amps[b | m1]);
      break;
    case Kind::kH: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t b = 0; b < d; ++b) {
        if (b & m0) continue;
        const cplx a0 = amps[b], a1 = amps[b | m0];
        amps[b] = r * (a0 + a1);
        amps[b | m0] = r * (a0 - a1);
      }
      break;
    }
    case Kind::kS:
      for (std::size_t b = 0; b < d; ++b)
        if (b & m0) amps[b] *= cplx(0, 1);
      break;
  }
}

PauliProduct conjugate_by_clifford(const PauliTerm& p, const CliffordGate& gate) {
  gate.validate(p.n);
  // P = i^{|x&z|} (prod_q X_q^{x_q}) (prod_q Z_q^{z_q}); map each factor.
  PauliProduct acc{std::popcount(p.x & p.z) & 3, PauliTerm(p.n, 0, 0)};
  auto fold = [&acc](const PauliProduct& f) {
    const PauliProduct m = multiply(acc.term, f.term);
    acc.phase = (acc.phase + f.phase + m.phase) & 3;
    acc.term = m.term;
  };
  for (int q = 0; q < p.n; ++q)
    if ((p.x >> q) & 1) fold(image(gate, p.n, q, true));
  for (int q = 0; q < p.n; ++q)
    if ((p.z >> q) & 1) fold(image(gate, p.n, q, false));
  return acc;
}

PauliSum conjugate_by_clifford(const PauliSum& p, const CliffordGate& gate) {
  PauliSum out(p.num_qubits());
  for (const auto& [t, c] : p.terms()) {
    const PauliProduct img = conjugate_by_clifford(t, gate);
    if (img.phase != 0 && img.phase != 2)
      throw ComputationError("Clifford conjugation produced a non-Hermitian phase");
    out.add_term(img.term, img.phase == 0 ? mpq_class(c) : mpq_class(-c));
  }
  return out;
}

}  // namespace qop
