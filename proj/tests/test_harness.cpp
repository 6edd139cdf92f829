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

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qop/error.hpp"
#include "qop/harness.hpp"
#include "qop/io.hpp"

using namespace qop;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qop_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

}  // namespace

TEST_CASE("mix64 is splitmix64") {
  CHECK(mix64(0) == 0xe220a8397b1dcdafull);
  CHECK(mix64(0x9e3779b97f4a7c15ull) == 0x6e789e6aa1b965f4ull);
}

TEST_CASE("derived seeds are stable and distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t d = 1; d <= 10; ++d)
    for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(7, d, i));
  CHECK(seen.size() == 500);
  CHECK(derive_seed(7, 3, 4) == mix64(mix64(mix64(7) ^ 3) ^ 4));
}

TEST_CASE("Haar unitaries are unitary and seed-determined") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const UnitaryMatrix u = haar_unitary(8, s);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(haar_unitary(4, 5) == haar_unitary(4, 5));
  CHECK(haar_unitary(4, 5) != haar_unitary(4, 6));
}

TEST_CASE("Haar moments at d = 4 (20000 samples)") {
  const int samples = 20000;
  double s1 = 0, q1 = 0, s2 = 0, q2 = 0;
  for (int k = 0; k < samples; ++k) {
    const UnitaryMatrix u = haar_unitary(4, mix64(1000 + static_cast<std::uint64_t>(k)));
    const double a = std::norm(u(0, 0)), b = std::norm(u.trace());
    s1 += a;
    q1 += a * a;
    s2 += b;
    q2 += b * b;
  }
  const double m1 = s1 / samples, m2 = s2 / samples;
  const double se1 = std::sqrt((q1 / samples - m1 * m1) / (samples - 1));
  const double se2 = std::sqrt((q2 / samples - m2 * m2) / (samples - 1));
  CHECK(std::abs(m1 - 0.25) < 3 * se1);
  CHECK(std::abs(m2 - 1.0) < 3 * se2);
}

TEST_CASE("compressible dataset lives in a 2^{n - n_B} dimensional subspace") {
  const auto data = compressible_dataset(4, 2, 6, 11);
  REQUIRE(data.size() == 6);
  Eigen::MatrixXcd cols(16, 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(data[static_cast<std::size_t>(i)].norm() - 1) < 1e-13);
    cols.col(i) = data[static_cast<std::size_t>(i)];
  }
  const Eigen::MatrixXcd gram = cols.adjoint() * cols;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  int rank = 0;
  for (int i = 0; i < 6; ++i) rank += es.eigenvalues()(i) > 1e-10 ? 1 : 0;
  CHECK(rank == 4);
  CHECK_THROWS_AS(compressible_dataset(4, 4, 2, 1), ValidationError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](int i) { hits[static_cast<std::size_t>(i)]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](int i) {
                                 if (i == 7) throw ComputationError("boom");
                               }),
                  ComputationError);
}

TEST_CASE("experiment config JSON") {
  const nlohmann::json j{{"task", "compile"},
                         {"n", 2},
                         {"depth_list", {2, 4}},
                         {"seeds_per_point", 3},
                         {"adam", {{"max_iters", 50}}},
                         {"rank_scan", {{"points_per_depth", 2}}},
                         {"master_seed", 9}};
  const ExperimentConfig c = ExperimentConfig::from_json(j);
  CHECK(c.task == Task::kCompile);
  CHECK(c.family == Family::kHea);
  CHECK(c.rank_scan.enabled);
  CHECK(c.compile_loss == LossKind::kCompileL2);
  CHECK(ExperimentConfig::from_json(c.to_json()).to_json() == c.to_json());
  nlohmann::json bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ValidationError);
  bad = j;
  bad["depth_list"] = {4, 2};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ValidationError);
  bad = j;
  bad.erase("n");
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ValidationError);
  bad = j;
  bad["seeds_per_point"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ValidationError);
  bad = j;
  bad["n"] = "two";
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), ValidationError);
}

TEST_CASE("rank scan below and above saturation") {
  ExperimentConfig cfg = ExperimentConfig::from_json(
      {{"task", "vqe"}, {"n", 4}, {"depth_list", {2, 20}}, {"rank_scan", {{"points_per_depth", 6}}}});
  const Problem p = make_problem(cfg);
  const auto low = rank_scan(cfg, p, 2);
  REQUIRE(low.size() == 6);
  for (const auto& r : low) CHECK(r.rank == 4);
  CHECK(saturated(low));
  const auto high = rank_scan(cfg, p, 20);
  CHECK(saturated(high));
  CHECK(high.front().rank <= 16);
}

TEST_CASE("sweep outputs: headers, determinism and parallel independence") {
  const fs::path a = scratch("sweep_a"), b = scratch("sweep_b");
  nlohmann::json j{{"task", "vqe"},
                   {"n", 2},
                   {"depth_list", {1, 3}},
                   {"seeds_per_point", 4},
                   {"rank_scan", {{"points_per_depth", 2}, {"at_optima", true}}},
                   {"write_traces", true},
                   {"dump_spectra", true},
                   {"master_seed", 5}};
  ExperimentConfig ca = ExperimentConfig::from_json(j);
  ca.output_dir = a;
  ca.jobs = 1;
  ExperimentConfig cb = ca;
  cb.output_dir = b;
  cb.jobs = 3;
  const SweepResult ra = run_sweep(ca);
  run_sweep(cb);
  CHECK(first_line(a / "runs.csv") == "task,n,boundary,depth,M,seed,final_loss,gap,iterations,success");
  CHECK(first_line(a / "success.csv") == "depth,M,success_probability,n_runs");
  CHECK(first_line(a / "ranks.csv") == "depth,M,point_kind,matrix,rank,gap,lambda_max");
  CHECK(first_line(a / "trace_1_0.csv") == "iteration,loss");
  CHECK(fs::exists(a / "config.json"));
  for (const char* f : {"runs.csv", "success.csv", "ranks.csv", "trace_3_2.csv"})
    CHECK(slurp(a / f) == slurp(b / f));
  REQUIRE(ra.depths.size() == 2);
  for (const auto& d : ra.depths) {
    CHECK(d.success_probability >= 0);
    CHECK(d.success_probability <= 1);
    CHECK(d.runs == 4);
  }
  CHECK(ra.depths.back().success_probability >= ra.depths.front().success_probability);
  CHECK(ra.bound_violations == 0);
  bool spectrum = false;
  for (const auto& e : fs::directory_iterator(a))
    spectrum = spectrum || e.path().filename().string().rfind("spectrum_", 0) == 0;
  CHECK(spectrum);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("autoencoder problem targets the analytic floor") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(
      {{"task", "autoencoder"}, {"n", 3}, {"trash_qubits", 1}, {"dataset_size", 3}, {"depth_list", {1}}});
  const Problem p = make_problem(cfg);
  CHECK(p.target == 2);
  CHECK(p.rank_states.size() == 3);
  CHECK(p.base.family() == Family::kHea);
}

// ---- io ---------------------------------------------------------------------

TEST_CASE("doubles round trip with 17 significant digits") {
  for (double v : {0.1, -2.2360679774997898, 1e-300, 12345.678901234567}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("point hash is stable and sensitive") {
  Eigen::VectorXd a(3), b(3);
  a << 0.1, 0.2, 0.3;
  b << 0.1, 0.2, 0.30000000000000004;
  CHECK(point_hash(a) == point_hash(a));
  CHECK(point_hash(a) != point_hash(b));
  CHECK(point_hash(a).size() == 16);
}

TEST_CASE("matrix CSV with sidecar") {
  const fs::path dir = scratch("io");
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.5, 0.5, 2;
  Eigen::VectorXd theta(2);
  theta << 0.3, -0.1;
  write_matrix_with_sidecar(dir / "h.csv", m, theta, "vqe_energy");
  CHECK(slurp(dir / "h.csv") == "1,0.5\n0.5,2\n");
  const nlohmann::json side = read_json(dir / "h.csv.json");
  CHECK(side["M"] == 2);
  CHECK(side["loss_kind"] == "vqe_energy");
  CHECK(side["point_hash"] == point_hash(theta));
  std::ofstream(dir / "bad.json") << "{not json";
  CHECK_THROWS_AS(read_json(dir / "bad.json"), ValidationError);
  CHECK_THROWS_AS(read_json(dir / "missing.json"), ValidationError);
  fs::remove_all(dir);
}
