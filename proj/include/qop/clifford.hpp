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

#pragma once

#include <span>
#include <string>
#include <string_view>

#include "qop/pauli.hpp"

namespace qop {

/// Fixed (non-parametrized) Clifford gate.
struct CliffordGate {
  enum class Kind { kCZ, kCNOT, kH, kS };

  Kind kind = Kind::kH;
  int q0 = 0;   // control for CNOT
  int q1 = -1;  // target for CNOT, unused for one-qubit gates

  static CliffordGate cz(int a, int b) { return {Kind::kCZ, a, b}; }
  static CliffordGate cnot(int control, int target) { return {Kind::kCNOT, control, target}; }
  static CliffordGate h(int q) { return {Kind::kH, q, -1}; }
  static CliffordGate s(int q) { return {Kind::kS, q, -1}; }

  bool is_two_qubit() const { return kind == Kind::kCZ || kind == Kind::kCNOT; }
  void validate(int num_qubits) const;

  /// "CZ 0 1", "CNOT 0 1", "H 2", "S 0"
  std::string to_string() const;
  static CliffordGate parse(std::string_view text);

  Eigen::MatrixXcd to_matrix(int num_qubits) const;

  /// In-place application to a 2^n amplitude vector.
  void apply(std::span<cplx> amplitudes, int num_qubits) const;

  bool operator==(const CliffordGate&) const = default;
};

/// Returns W^dagger P W for a single Pauli string, as (phase, term).
PauliProduct conjugate_by_clifford(const PauliTerm& p, const CliffordGate& gate);

/// Returns W^dagger P W. Exact; the term count is preserved.
PauliSum conjugate_by_clifford(const PauliSum& p, const CliffordGate& gate);

}  // namespace qop
