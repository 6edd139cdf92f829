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
#include <vector>

#include <Eigen/Dense>

#include "qop/ansatz.hpp"

namespace qop {

using StateVector = Eigen::VectorXcd;
using UnitaryMatrix = Eigen::MatrixXcd;
using ParamVector = Eigen::VectorXd;

/// Largest qubit count for which full d x d matrices are built.
inline constexpr int kMaxDenseQubits = 12;

/**
 * Offset added to the angle of one generator term: that term is applied as
 * e^{-i c (theta_param + offset) P} while the other terms keep theta_param.
 * Used by the per-term parameter-shift rules.
 */
struct TermShift {
  int param = 0;
  int term = 0;
  double offset = 0;
};

/// e^{-i phi P} applied in place to every column of `states`.
void apply_pauli_rotation(Eigen::Ref<Eigen::MatrixXcd> states, const PauliTerm& p, double phi);

/// Applies program()[op] (or its inverse) in place to every column.
void apply_op(const AnsatzSpec& a, std::size_t op, const ParamVector& theta,
              Eigen::Ref<Eigen::MatrixXcd> states, bool inverse = false);

/// out = H_j |in> column by column, H_j the generator of parameter j.
void apply_generator(const AnsatzSpec& a, int param, const Eigen::MatrixXcd& in,
                     Eigen::MatrixXcd& out);

/// Throws ValidationError unless theta has length M and finite entries.
void check_params(const AnsatzSpec& a, const ParamVector& theta);

/// U(theta) applied to each column of `states` (a single state is one column).
Eigen::MatrixXcd apply_ansatz(const AnsatzSpec& a, const ParamVector& theta,
                              const Eigen::MatrixXcd& states,
                              std::span<const TermShift> shifts = {});

StateVector apply_ansatz(const AnsatzSpec& a, const ParamVector& theta, const StateVector& psi,
                         std::span<const TermShift> shifts = {});

/// d/d theta_j of U(theta)|psi>, unnormalized.
StateVector derivative_state(const AnsatzSpec& a, const ParamVector& theta,
                             const StateVector& psi, int j);

/// Column j holds derivative_state(a, theta, psi, j). One forward sweep for
/// the prefix states, then the tail of the circuit per parameter.
Eigen::MatrixXcd derivative_states(const AnsatzSpec& a, const ParamVector& theta,
                                   const StateVector& psi);

/// U(theta) as a dense matrix; n <= 12.
UnitaryMatrix full_unitary(const AnsatzSpec& a, const ParamVector& theta,
                           std::span<const TermShift> shifts = {});

/// Per-parameter derivative matrices dU/d theta_j; n <= 12.
std::vector<Eigen::MatrixXcd> unitary_derivatives(const AnsatzSpec& a, const ParamVector& theta);

/// Computational basis state |index>.
StateVector basis_state(int num_qubits, std::size_t index);

}  // namespace qop
