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

#include <json.hpp>

#include "qop/clifford.hpp"
#include "qop/lie.hpp"
#include "qop/pauli.hpp"

namespace qop {

enum class Family { kHvaTfim, kHea, kCustom };
enum class Boundary { kOpen, kClosed };
enum class InputState { kZero, kPlus, kCustom };

std::string to_string(Family f);
std::string to_string(Boundary b);
std::string to_string(InputState s);
Family parse_family(const std::string& s);
Boundary parse_boundary(const std::string& s);
InputState parse_input_state(const std::string& s);

/// One entry of a layer: e^{-i theta H} with its own angle, or a fixed gate.
struct Slot {
  enum class Kind { kParam, kFixed };

  Kind kind = Kind::kParam;
  PauliSum generator;
  CliffordGate gate;

  static Slot param(PauliSum generator);
  static Slot fixed(CliffordGate gate);
  bool is_param() const { return kind == Kind::kParam; }
};

/// Flattened circuit instruction. Rotations carry their Pauli terms with
/// double coefficients; `param` is the index into the parameter vector.
struct GateOp {
  int param = -1;
  std::vector<std::pair<double, PauliTerm>> terms;
  CliffordGate gate;

  bool is_rotation() const { return param >= 0; }
};

/**
 * Periodic ansatz U(theta) = prod_l prod_k e^{-i theta_lk H_k}, optionally
 * preceded by a non-repeated prefix block (the hardware-efficient ansatz has
 * one). Parameters are numbered in application order: prefix first, then
 * layer by layer.
 */
class AnsatzSpec {
 public:
  AnsatzSpec(int num_qubits, std::vector<Slot> prefix, std::vector<Slot> layer, int layers,
             InputState input = InputState::kZero, Family family = Family::kCustom,
             Boundary boundary = Boundary::kOpen);

  /// Generators 1/2 sum Z_i Z_{i+1} then 1/2 sum X_i, input |+>^n.
  static AnsatzSpec hva_tfim(int num_qubits, int layers, Boundary boundary);

  /// Ry,Rx on every qubit, then per layer CZ on (0,1),(2,3),.. followed by
  /// Ry,Rx on the touched qubits, then CZ on (1,2),(3,4),.. followed by Ry,Rx
  /// on the touched qubits. M = 2n + L(4n - 4). Input |0>^n.
  static AnsatzSpec hea(int num_qubits, int layers);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  int layers() const { return layers_; }
  int params_per_layer() const { return per_layer_; }
  int prefix_params() const { return prefix_params_; }
  int num_params() const { return prefix_params_ + per_layer_ * layers_; }
  Family family() const { return family_; }
  Boundary boundary() const { return boundary_; }
  InputState input() const { return input_; }
  const std::vector<Slot>& prefix() const { return prefix_; }
  const std::vector<Slot>& layer() const { return layer_; }
  const std::vector<GateOp>& program() const { return program_; }

  /// Index into program() of the rotation carrying parameter `param`.
  int op_index(int param) const { return param_op_.at(static_cast<std::size_t>(param)); }

  /// Same structure with a different layer count.
  AnsatzSpec with_layers(int layers) const;

  /// |0>^n or |+>^n; throws for InputState::kCustom.
  Eigen::VectorXcd input_state() const;

  /// Parametrized generators, each conjugated through the fixed gates that
  /// precede it within its block (prefix or one layer period).
  std::vector<PauliSum> effective_generators() const;

  nlohmann::json to_json() const;

  /// Reads {family, n, L, boundary} or a custom {n, L, input_state, prefix,
  /// layer}. Unknown fields are rejected.
  static AnsatzSpec from_json(const nlohmann::json& j);

 private:
  int n_;
  std::vector<Slot> prefix_;
  std::vector<Slot> layer_;
  int layers_;
  InputState input_;
  Family family_;
  Boundary boundary_;
  int prefix_params_ = 0;
  int per_layer_ = 0;
  std::vector<GateOp> program_;
  std::vector<int> param_op_;
};

/// Closure dimension over the ansatz's effective generator set.
std::size_t dla_dimension(const AnsatzSpec& ansatz);

/// Closure of the ansatz's effective generator set.
LieBasis ansatz_closure(const AnsatzSpec& ansatz);

}  // namespace qop
