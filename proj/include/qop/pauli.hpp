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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Dense>

namespace qop {

using cplx = std::complex<double>;

/// Hard limit imposed by the 64-bit symplectic encoding.
inline constexpr int kMaxQubits = 63;

/**
 * An n-qubit Pauli string in symplectic form.
 *
 * Bit q of `x` and `z` describe qubit q. The represented operator is
 * P = i^{popcount(x & z)} X^x Z^z, which makes every string Hermitian with
 * eigenvalues +-1 (X where x=1,z=0; Z where x=0,z=1; Y where x=z=1).
 */
struct PauliTerm {
  int n = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  PauliTerm() = default;
  PauliTerm(int num_qubits, std::uint64_t x_bits, std::uint64_t z_bits);

  /// Single-qubit Pauli ('I', 'X', 'Y' or 'Z') on `qubit`.
  static PauliTerm single(int num_qubits, int qubit, char pauli);

  /// Parses "XIZY" with qubit 0 leftmost.
  static PauliTerm parse(std::string_view text);

  bool is_identity() const { return x == 0 && z == 0; }
  bool commutes_with(const PauliTerm& other) const;
  char pauli_at(int qubit) const;
  std::string to_string() const;

  /// Dense 2^n x 2^n matrix, basis index bit q = qubit q.
  Eigen::MatrixXcd to_matrix() const;

  auto operator<=>(const PauliTerm&) const = default;
};

/// Result of multiplying two strings: a * b = i^phase * term.
struct PauliProduct {
  int phase = 0;  // exponent of i, in [0, 4)
  PauliTerm term;
};

PauliProduct multiply(const PauliTerm& a, const PauliTerm& b);

/// Applies P to `in`, writing into `out` (sizes 2^n, must not alias).
void apply_pauli(const PauliTerm& p, std::span<const cplx> in, std::span<cplx> out);

/// Same as apply_pauli but accumulates coeff * P|in> into `out`.
void accumulate_pauli(const PauliTerm& p, cplx coeff, std::span<const cplx> in,
                      std::span<cplx> out);

/**
 * Real linear combination of Pauli strings with exact rational coefficients.
 *
 * Represents a Hermitian operator; the associated Lie algebra element is
 * i times this operator. Zero coefficients are never stored.
 */
class PauliSum {
 public:
  using TermMap = std::map<PauliTerm, mpq_class>;

  PauliSum() = default;
  explicit PauliSum(int num_qubits);
  PauliSum(const PauliTerm& term, const mpq_class& coeff = 1);

  int num_qubits() const { return n_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Adds coeff * term, pruning the entry if it cancels.
  void add_term(const PauliTerm& term, const mpq_class& coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(const mpq_class& scalar);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, const mpq_class& s) { return a *= s; }
  friend PauliSum operator*(const mpq_class& s, PauliSum a) { return a *= s; }

  bool operator==(const PauliSum& other) const = default;

  /// True when the sum contains the identity string.
  bool has_identity() const;

  /// True when all terms pairwise commute.
  bool terms_commute() const;

  /// Terms with double-precision coefficients, in map order.
  std::vector<std::pair<double, PauliTerm>> numeric_terms() const;

  /// out = (this) |in>
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

  Eigen::MatrixXcd to_matrix() const;

  /// Lines "coeff\tstring", coefficients as exact rationals ("1/2").
  std::string to_string() const;

  /**
   * Parses one "coeff\tstring" (or "coeff string") entry per line. Coefficients
   * may be integers, fractions, or decimals ("0.5", "-1e-1"); decimals are
   * converted exactly. Blank lines and lines starting with '#' are skipped.
   */
  static PauliSum parse(std::string_view text);

 private:
  int n_ = 0;
  TermMap terms_;

  void check_compatible(const PauliSum& other) const;
};

/**
 * Commutator in the stored real convention: returns C with [A, B] = i C.
 *
 * For anticommuting strings P Q = i^k R with k odd, so [P, Q] = 2 i^k R and
 * the contribution to C is 2 i^{k-1} R, a real multiple of R. Commuting
 * strings contribute nothing.
 */
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Parses a decimal or fractional literal exactly.
mpq_class parse_rational(std::string_view text);

}  // namespace qop
