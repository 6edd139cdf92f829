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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qop/info_geometry.hpp"
#include "qop/optimize.hpp"

namespace qop {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Per-run seed: mix64 chained over (master, depth, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t depth, std::uint64_t index);

/// Standard normal by Box-Muller from two uniform01 draws.
double standard_normal(std::mt19937_64& rng);

/// Haar-random d x d unitary: Ginibre, QR, then Q times the phases of diag(R).
UnitaryMatrix haar_unitary(int d, std::uint64_t seed);

/// Haar-random unit vector in C^d.
StateVector haar_state(int d, std::mt19937_64& rng);

/**
 * `count` Haar-random states inside one Haar-random 2^{n - n_B}-dimensional
 * subspace of n qubits, so a perfect encoder onto |0>^{n_B} exists.
 */
std::vector<StateVector> compressible_dataset(int n, int trash_qubits, int count,
                                              std::uint64_t seed);

/// Runs fn(0..count-1) on up to `jobs` threads. Exceptions are rethrown.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

enum class Task { kVqe, kCompile, kAutoencoder };

std::string to_string(Task t);
Task parse_task(const std::string& s);

struct RankScanConfig {
  bool enabled = false;
  int points_per_depth = 30;
  bool at_optima = false;
};

struct ExperimentConfig {
  Task task = Task::kVqe;
  int n = 4;
  Boundary boundary = Boundary::kOpen;
  Family family = Family::kHvaTfim;  // hva_tfim for vqe, hea otherwise
  double field = 1.0;                // TFIM transverse field
  LossKind compile_loss = LossKind::kCompileL2;
  int trash_qubits = 2;
  int dataset_size = 4;
  std::vector<int> depth_list;
  int seeds_per_point = 50;
  AdamConfig adam;
  RankScanConfig rank_scan;
  std::filesystem::path output_dir = "out";
  std::uint64_t master_seed = 0;
  bool write_traces = false;
  bool dump_spectra = false;
  int jobs = 1;

  void validate() const;
  nlohmann::json to_json() const;

  /// All fields optional except task, n and depth_list; unknown fields are
  /// rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

/// The objective and ansatz family a config describes, built once per sweep.
struct Problem {
  LossSpec loss;
  AnsatzSpec base;  // layers = 1; use with_layers(depth)
  double target = 0;
  std::vector<StateVector> rank_states;  // states whose QFIM is ranked
};

Problem make_problem(const ExperimentConfig& cfg);

struct RankRow {
  int depth = 0;
  int num_params = 0;
  std::string point_kind;  // random | optimum
  std::string matrix;      // qfim | hessian
  SpectrumReport report;
};

struct DepthSummary {
  int depth = 0;
  int num_params = 0;
  int successes = 0;
  int runs = 0;
  double success_probability = 0;
  double mean_rank = 0;
  double stddev_rank = 0;
  bool saturated = false;
};

struct SweepResult {
  std::size_t dla_dim = 0;
  std::vector<std::pair<int, RunRecord>> runs;  // (depth, record), sorted
  std::vector<DepthSummary> depths;
  std::vector<RankRow> ranks;
  int bound_violations = 0;
};

/**
 * QFIM spectra at uniformly random points for one depth; one report per
 * (point, rank state). For compilation the unitary QFIM is used.
 */
std::vector<SpectrumReport> rank_scan(const ExperimentConfig& cfg, const Problem& problem,
                                      int depth);

/// True when every report has the same rank.
bool saturated(const std::vector<SpectrumReport>& reports);

/// Runs every (depth, seed), aggregates, and writes the CSV outputs.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// Writes runs.csv, success.csv and ranks.csv into cfg.output_dir.
void write_sweep_outputs(const ExperimentConfig& cfg, const SweepResult& result);

/// "iteration,loss" rows.
void write_trace(const std::filesystem::path& path, const RunRecord& rec);

}  // namespace qop
