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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qop/pauli.hpp"

namespace qop {

/**
 * Linearly independent set of Hermitian Pauli sums with an exact
 * reduced-row-echelon certificate over the Pauli-string index set.
 *
 * Each echelon row has a pivot string that appears in no other row, so a
 * vector reduces in one pass over its own pivot entries.
 */
class LieBasis {
 public:
  LieBasis() = default;
  explicit LieBasis(int num_qubits);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return elements_.size(); }
  const std::vector<PauliSum>& elements() const { return elements_; }
  const std::vector<PauliSum>& reduced() const { return rows_; }

  /// True when the closure stopped because dim reached the cap.
  bool cap_hit() const { return cap_hit_; }

  /// Residual of `v` after eliminating every pivot of the basis.
  PauliSum reduce(const PauliSum& v) const;

  bool contains(const PauliSum& v) const { return reduce(v).empty(); }

  /// Appends `v` if it is independent; returns whether it was added.
  bool insert(const PauliSum& v);

  /// Every pairwise commutator reduces to zero.
  bool is_closed() const;

  /// "n=<n> dim=<dim>" header, then each element as "coeff\tstring" lines
  /// separated by a line holding "---".
  void write(std::ostream& os) const;

 private:
  friend LieBasis lie_closure(const std::vector<PauliSum>&, std::optional<std::size_t>);

  int n_ = 0;
  std::vector<PauliSum> elements_;
  std::vector<PauliSum> rows_;
  std::map<PauliTerm, std::size_t> pivot_row_;
  bool cap_hit_ = false;
};

/// 4^n - 1, the dimension of su(2^n). Saturates for n >= 32.
std::size_t su_dimension(int num_qubits);

/**
 * Breadth-first Lie closure of i*generators.
 *
 * Generators are seeded in order (dependent ones skipped); every accepted
 * element enqueues its pairs with all earlier elements; each popped pair is
 * commuted and reduced, and a nonzero residual is appended. Stops when the
 * queue drains or dim reaches `dim_cap` (default 4^n - 1, flagged on the
 * result).
 *
 * Throws ValidationError for an empty list, mismatched qubit counts, or a
 * generator that is zero or has an identity component.
 */
LieBasis lie_closure(const std::vector<PauliSum>& generators,
                     std::optional<std::size_t> dim_cap = std::nullopt);

/**
 * Orthonormal basis (columns) of the smallest subspace containing `state`
 * that is invariant under every element of `basis`.
 */
Eigen::MatrixXcd cyclic_subspace(const LieBasis& basis, const Eigen::VectorXcd& state,
                                 double tol = 1e-10);

/**
 * Dimension of the algebra restricted to the subspace spanned by the
 * orthonormal columns of `isometry` (rank of {Q^dagger S Q}). With the cyclic
 * subspace of a training state this is dim(g_S).
 */
std::size_t restricted_dimension(const LieBasis& basis, const Eigen::MatrixXcd& isometry,
                                 double tol = 1e-8);

}  // namespace qop
