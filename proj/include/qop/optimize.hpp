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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qop/landscape.hpp"

namespace qop {

struct AdamConfig {
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon_hat = 1e-7;
  int max_iters = 10000;
  double stop_gap = 1e-12;
  double success_tol = 1e-7;
  std::optional<double> target_value;

  void validate() const;
  nlohmann::json to_json() const;

  /// Reads the fields above; unknown fields are rejected.
  static AdamConfig from_json(const nlohmann::json& j);
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long long t = 0;

  explicit AdamState(Eigen::Index size = 0)
      : m(Eigen::VectorXd::Zero(size)), v(Eigen::VectorXd::Zero(size)) {}
};

/// One bias-corrected Adam update of theta in place. Throws ComputationError
/// on a non-finite gradient.
void adam_step(const AdamConfig& cfg, AdamState& state, Eigen::VectorXd& theta,
               const Eigen::VectorXd& grad);

struct RunRecord {
  std::uint64_t seed = 0;
  int num_params = 0;
  std::vector<double> loss_trace;
  double final_loss = 0;
  double target = 0;
  int iterations = 0;
  bool success = false;
  bool failed = false;  // non-finite loss or gradient
  std::string error;
  double wall_time = 0;
  ParamVector theta;

  double gap() const { return final_loss - target; }
};

/// Independent angles uniform on [-pi, pi).
ParamVector random_params(int count, std::mt19937_64& rng);

/// Uniform double on [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

/**
 * Full-batch Adam from a seeded uniform initialization (or `initial`) until
 * |loss - target| < stop_gap or max_iters updates. Without a target the run
 * always uses max_iters and success is false.
 */
RunRecord train(const LossSpec& spec, const AnsatzSpec& a, const AdamConfig& cfg,
                std::uint64_t seed, const std::optional<ParamVector>& initial = std::nullopt);

struct RefineResult {
  ParamVector theta;
  double gradient_norm = 0;
  int steps = 0;
};

/**
 * Newton polish of a converged point: steps -H^+ g over the Hessian
 * eigenvectors with eigenvalue above `cutoff` * lambda_max, accepted while
 * the exact gradient norm keeps shrinking. Moves a point whose loss gap is
 * ~1e-12 onto the optimal manifold to rounding precision, which the loss
 * value alone cannot resolve.
 */
RefineResult refine_optimum(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
                            int max_steps = 30, double cutoff = 1e-6);

}  // namespace qop
