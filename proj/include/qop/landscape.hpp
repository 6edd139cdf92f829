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

#include <string>
#include <vector>

#include "qop/simulate.hpp"

namespace qop {

enum class LossKind { kVqe, kLinear, kCompileL1, kCompileL2, kAutoencoder };

std::string to_string(LossKind k);

/**
 * A training objective. VQE, linear and autoencoder losses share the form
 * offset + sum_mu c_mu <psi_mu|U^dagger O U|psi_mu>; the compile losses are
 * functions of T = Tr[V^dagger U].
 */
class LossSpec {
 public:
  /// <psi|H|psi> with psi = U|input>; an empty `input` means the ansatz input.
  static LossSpec vqe(PauliSum hamiltonian, StateVector input = {});

  /// sum_mu c_mu Tr[U rho_mu U^dagger O] with rho_mu = |psi_mu><psi_mu|.
  static LossSpec linear(std::vector<StateVector> states, std::vector<double> weights,
                         Eigen::MatrixXcd observable);

  /// 2d - 2 Re Tr[V^dagger U].
  static LossSpec compile_l1(Eigen::MatrixXcd target);

  /// 1 - |Tr[V^dagger U]|^2 / d^2.
  static LossSpec compile_l2(Eigen::MatrixXcd target);

  /// sum_mu (1 - F_mu / |S|), F_mu the probability of |0..0> on qubits
  /// 0..n_B-1 after U. Floor |S| - 1.
  static LossSpec autoencoder(std::vector<StateVector> states, int trash_qubits);

  LossKind kind() const { return kind_; }
  bool is_compile() const { return kind_ == LossKind::kCompileL1 || kind_ == LossKind::kCompileL2; }
  const std::vector<StateVector>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }
  const PauliSum& hamiltonian() const { return hamiltonian_; }
  const Eigen::MatrixXcd& target() const { return target_; }
  int trash_qubits() const { return trash_; }
  double offset() const { return offset_; }

  /// Training states for the linear form; the ansatz input for a VQE spec
  /// built without one.
  std::vector<StateVector> input_states(const AnsatzSpec& a) const;

  /// out = O |in> for the linear form.
  void apply_observable(const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) const;

  /// Dense O for the linear form; n <= 12.
  Eigen::MatrixXcd observable_matrix(int num_qubits) const;

  /// Known global minimum: ground energy, 0 for compilation, |S| - 1 for the
  /// autoencoder. Linear losses have none (throws).
  double optimum(int num_qubits) const;

  /// Throws ValidationError unless the spec fits the ansatz.
  void check(const AnsatzSpec& a) const;

 private:
  LossKind kind_ = LossKind::kVqe;
  PauliSum hamiltonian_;
  std::vector<StateVector> states_;
  std::vector<double> weights_;
  Eigen::MatrixXcd observable_;
  Eigen::MatrixXcd target_;
  int trash_ = 0;
  double offset_ = 0;
};

enum class GradientMethod { kExact, kParameterShift };

double loss(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
            std::span<const TermShift> shifts = {});

/// Adjoint-mode exact gradient or per-term parameter shift.
Eigen::VectorXd gradient(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
                         GradientMethod method = GradientMethod::kExact);

/// Loss value and exact gradient in one adjoint sweep.
double loss_and_gradient(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
                         Eigen::VectorXd& grad);

/// Exact Hessian of a linear-form loss (VQE, linear, autoencoder).
Eigen::MatrixXd hessian_linear(const LossSpec& spec, const AnsatzSpec& a,
                               const ParamVector& theta);

/// Exact Hessian of a compile loss at any point.
Eigen::MatrixXd hessian_compile(const LossSpec& spec, const AnsatzSpec& a,
                                const ParamVector& theta);

/// Dispatches to hessian_linear or hessian_compile.
Eigen::MatrixXd hessian(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta);

/// Hessian from doubly shifted loss evaluations, per generator term.
Eigen::MatrixXd hessian_shift_rule(const LossSpec& spec, const AnsatzSpec& a,
                                   const ParamVector& theta);

/**
 * Closed forms valid where U(theta) = V: 2 Re Tr[H~_i H~_j] for L1 and
 * (2/d) Re Tr[H~_i H~_j] - (2/d^2) Re(Tr H~_i Tr H~_j) for L2.
 */
Eigen::MatrixXd hessian_compile_at_optimum(const LossSpec& spec, const AnsatzSpec& a,
                                           const ParamVector& theta);

/// H = -sum Z_i Z_{i+1} - h sum X_i on an open or periodic chain.
PauliSum tfim_hamiltonian(int num_qubits, Boundary boundary, const mpq_class& field = 1);

/// Smallest eigenvalue by dense diagonalization; n <= 12.
double ground_energy(const PauliSum& h);

/// r = min(rank(sum c_mu rho_mu), rank(O)) for the linear form.
int linear_loss_rank(const LossSpec& spec, const AnsatzSpec& a, double tol = 1e-8);

/// min(dla_dim, 2 d r - r^2 - r).
long long hessian_rank_bound(std::size_t dla_dim, std::size_t d, int r);

}  // namespace qop
