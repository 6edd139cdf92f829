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

#include "qop/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "qop/error.hpp"

namespace qop {

void AdamConfig::validate() const {
  require(learning_rate > 0, "learning_rate must be positive");
  require(beta1 > 0 && beta1 < 1, "beta1 must lie in (0, 1)");
  require(beta2 > 0 && beta2 < 1, "beta2 must lie in (0, 1)");
  require(epsilon_hat > 0, "epsilon_hat must be positive");
  require(max_iters >= 0, "max_iters must be non-negative");
  require(stop_gap >= 0, "stop_gap must be non-negative");
  require(success_tol > 0, "success_tol must be positive");
}

nlohmann::json AdamConfig::to_json() const {
  nlohmann::json j{{"learning_rate", learning_rate}, {"beta1", beta1},
                   {"beta2", beta2},                 {"epsilon_hat", epsilon_hat},
                   {"max_iters", max_iters},         {"stop_gap", stop_gap},
                   {"success_tol", success_tol}};
  if (target_value) j["target_value"] = *target_value;
  return j;
}

AdamConfig AdamConfig::from_json(const nlohmann::json& j) {
  require(j.is_object(), "adam config must be a JSON object");
  static const std::set<std::string> known{"learning_rate", "beta1",    "beta2",
                                           "epsilon_hat",   "max_iters", "stop_gap",
                                           "success_tol",   "target_value"};
  for (const auto& [key, _] : j.items())
    require(known.count(key) > 0, "unknown adam field \"" + key + "\"");
  AdamConfig c;
  try {
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.beta1 = j.value("beta1", c.beta1);
    c.beta2 = j.value("beta2", c.beta2);
    c.epsilon_hat = j.value("epsilon_hat", c.epsilon_hat);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.stop_gap = j.value("stop_gap", c.stop_gap);
    c.success_tol = j.value("success_tol", c.success_tol);
    if (j.contains("target_value")) c.target_value = j.at("target_value").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad adam field type: ") + e.what());
  }
  c.validate();
  return c;
}

void adam_step(const AdamConfig& cfg, AdamState& state, Eigen::VectorXd& theta,
               const Eigen::VectorXd& grad) {
  require(grad.size() == theta.size(), "gradient length does not match parameters");
  if (!grad.allFinite()) throw ComputationError("non-finite gradient");
  if (state.m.size() != theta.size()) state = AdamState(theta.size());
  ++state.t;
  state.m = cfg.beta1 * state.m + (1 - cfg.beta1) * grad;
  state.v = cfg.beta2 * state.v + (1 - cfg.beta2) * grad.cwiseAbs2();
  const double c1 = 1 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double c2 = 1 - std::pow(cfg.beta2, static_cast<double>(state.t));
  theta.array() -= cfg.learning_rate * (state.m.array() / c1) /
                   ((state.v.array() / c2).sqrt() + cfg.epsilon_hat);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ParamVector random_params(int count, std::mt19937_64& rng) {
  ParamVector theta(count);
  for (int i = 0; i < count; ++i) theta(i) = std::numbers::pi * (2 * uniform01(rng) - 1);
  return theta;
}

RunRecord train(const LossSpec& spec, const AnsatzSpec& a, const AdamConfig& cfg,
                std::uint64_t seed, const std::optional<ParamVector>& initial) {
  cfg.validate();
  spec.check(a);
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.seed = seed;
  rec.num_params = a.num_params();
  rec.target = cfg.target_value.value_or(std::numeric_limits<double>::quiet_NaN());
  if (initial) {
    check_params(a, *initial);
    rec.theta = *initial;
  } else {
    std::mt19937_64 rng(seed);
    rec.theta = random_params(a.num_params(), rng);
  }
  AdamState state(a.num_params());
  Eigen::VectorXd grad;
  rec.loss_trace.reserve(static_cast<std::size_t>(cfg.max_iters) + 1);
  try {
    for (;;) {
      const double value = loss_and_gradient(spec, a, rec.theta, grad);
      if (!std::isfinite(value)) throw ComputationError("non-finite loss");
      rec.loss_trace.push_back(value);
      if (cfg.target_value && std::abs(value - *cfg.target_value) < cfg.stop_gap) break;
      if (rec.iterations >= cfg.max_iters) break;
      adam_step(cfg, state, rec.theta, grad);
      ++rec.iterations;
    }
  } catch (const ComputationError& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  rec.final_loss = rec.loss_trace.empty() ? std::numeric_limits<double>::quiet_NaN()
                                          : rec.loss_trace.back();
  // A failed run keeps the last finite value; its trace ends there.
  if (rec.failed && rec.loss_trace.size() != static_cast<std::size_t>(rec.iterations) + 1)
    rec.iterations = std::max(0, static_cast<int>(rec.loss_trace.size()) - 1);
  rec.success = !rec.failed && cfg.target_value &&
                std::abs(rec.final_loss - *cfg.target_value) < cfg.success_tol;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

RefineResult refine_optimum(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
                            int max_steps, double cutoff) {
  require(max_steps >= 0, "max_steps must be non-negative");
  RefineResult out;
  out.theta = theta;
  Eigen::VectorXd grad;
  loss_and_gradient(spec, a, out.theta, grad);
  out.gradient_norm = grad.norm();
  for (int step = 0; step < max_steps && out.gradient_norm > 0; ++step) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian(spec, a, out.theta));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(theta.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev(k) <= cutoff * top) continue;
      const Eigen::VectorXd v = es.eigenvectors().col(k);
      delta -= v * (v.dot(grad) / ev(k));
    }
    const ParamVector next = out.theta + delta;
    Eigen::VectorXd next_grad;
    loss_and_gradient(spec, a, next, next_grad);
    if (!(next_grad.norm() < out.gradient_norm)) break;
    out.theta = next;
    grad = next_grad;
    out.gradient_norm = next_grad.norm();
    ++out.steps;
  }
  return out;
}

}  // namespace qop
