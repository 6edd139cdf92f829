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

#include "qop/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include <Eigen/QR>

#include "qop/error.hpp"
#include "qop/io.hpp"

namespace qop {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t depth, std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ depth) ^ index);
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

UnitaryMatrix haar_unitary(int d, std::uint64_t seed) {
  require(d >= 1 && d <= (1 << kMaxDenseQubits), "haar_unitary dimension out of range");
  std::mt19937_64 rng(seed);
  const double s = std::sqrt(0.5);
  Eigen::MatrixXcd g(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = standard_normal(rng);
      g(r, c) = cplx(s * re, s * standard_normal(rng));
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const cplx diag = r(i, i);
    const double mag = std::abs(diag);
    q.col(i) *= mag > 0 ? diag / mag : cplx(1);
  }
  return q;
}

StateVector haar_state(int d, std::mt19937_64& rng) {
  StateVector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = standard_normal(rng);
    v(i) = cplx(re, standard_normal(rng));
  }
  return v / v.norm();
}

std::vector<StateVector> compressible_dataset(int n, int trash_qubits, int count,
                                              std::uint64_t seed) {
  require(n >= 2 && n <= kMaxDenseQubits, "dataset qubit count out of range");
  require(trash_qubits >= 1 && trash_qubits < n, "trash qubit count must be in [1, n)");
  require(count >= 1, "dataset size must be positive");
  const int d = 1 << n;
  const int k = 1 << (n - trash_qubits);
  const UnitaryMatrix w = haar_unitary(d, seed);
  std::mt19937_64 rng(mix64(seed ^ 0x5eedull));
  std::vector<StateVector> out;
  for (int i = 0; i < count; ++i) {
    const StateVector s = w.leftCols(k) * haar_state(k, rng);
    out.push_back(s / s.norm());
  }
  return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  jobs = std::clamp(jobs, 1, count);
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string to_string(Task t) {
  switch (t) {
    case Task::kVqe: return "vqe";
    case Task::kCompile: return "compile";
    case Task::kAutoencoder: return "autoencoder";
  }
  return "vqe";
}

Task parse_task(const std::string& s) {
  if (s == "vqe") return Task::kVqe;
  if (s == "compile") return Task::kCompile;
  if (s == "autoencoder") return Task::kAutoencoder;
  throw ValidationError("unknown task \"" + s + "\" (expected vqe, compile, autoencoder)");
}

void ExperimentConfig::validate() const {
  require(n >= 2 && n <= 10, "n must be in [2, 10]");
  require(!depth_list.empty(), "depth_list must be nonempty");
  require(std::is_sorted(depth_list.begin(), depth_list.end()) &&
              std::adjacent_find(depth_list.begin(), depth_list.end()) == depth_list.end(),
          "depth_list must be strictly ascending");
  require(depth_list.front() >= 1, "depths must be positive");
  require(seeds_per_point >= 1, "seeds_per_point must be at least 1");
  require(rank_scan.points_per_depth >= 1, "rank_scan.points_per_depth must be at least 1");
  require(jobs >= 1, "jobs must be at least 1");
  require(compile_loss == LossKind::kCompileL1 || compile_loss == LossKind::kCompileL2,
          "compile_loss must be l1 or l2");
  if (task == Task::kCompile) require(n <= 6, "compile tasks need n <= 6");
  if (task == Task::kAutoencoder) {
    require(trash_qubits >= 1 && trash_qubits < n, "trash_qubits must be in [1, n)");
    require(dataset_size >= 1, "dataset_size must be positive");
  }
  adam.validate();
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"task", to_string(task)},
                   {"n", n},
                   {"boundary", to_string(boundary)},
                   {"family", to_string(family)},
                   {"field", field},
                   {"compile_loss", compile_loss == LossKind::kCompileL1 ? "l1" : "l2"},
                   {"trash_qubits", trash_qubits},
                   {"dataset_size", dataset_size},
                   {"depth_list", depth_list},
                   {"seeds_per_point", seeds_per_point},
                   {"adam", adam.to_json()},
                   {"rank_scan",
                    {{"enabled", rank_scan.enabled},
                     {"points_per_depth", rank_scan.points_per_depth},
                     {"at_optima", rank_scan.at_optima}}},
                   {"output_dir", output_dir.string()},
                   {"master_seed", master_seed},
                   {"write_traces", write_traces},
                   {"dump_spectra", dump_spectra},
                   {"jobs", jobs}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  require(j.is_object(), "experiment config must be a JSON object");
  static const std::set<std::string> known{
      "task",       "n",         "boundary",        "family",      "field",
      "compile_loss", "trash_qubits", "dataset_size", "depth_list", "seeds_per_point",
      "adam",       "rank_scan", "output_dir",      "master_seed", "write_traces",
      "dump_spectra", "jobs"};
  for (const auto& [key, _] : j.items())
    require(known.count(key) > 0, "unknown config field \"" + key + "\"");
  for (const char* key : {"task", "n", "depth_list"})
    require(j.contains(key), std::string("config field \"") + key + "\" is required");
  ExperimentConfig c;
  try {
    c.task = parse_task(j.at("task").get<std::string>());
    c.family = c.task == Task::kVqe ? Family::kHvaTfim : Family::kHea;
    c.n = j.at("n").get<int>();
    c.depth_list = j.at("depth_list").get<std::vector<int>>();
    if (j.contains("boundary")) c.boundary = parse_boundary(j.at("boundary").get<std::string>());
    if (j.contains("family")) c.family = parse_family(j.at("family").get<std::string>());
    c.field = j.value("field", c.field);
    if (j.contains("compile_loss")) {
      const auto s = j.at("compile_loss").get<std::string>();
      require(s == "l1" || s == "l2", "compile_loss must be \"l1\" or \"l2\"");
      c.compile_loss = s == "l1" ? LossKind::kCompileL1 : LossKind::kCompileL2;
    }
    c.trash_qubits = j.value("trash_qubits", c.trash_qubits);
    c.dataset_size = j.value("dataset_size", c.dataset_size);
    c.seeds_per_point = j.value("seeds_per_point", c.seeds_per_point);
    if (j.contains("adam")) c.adam = AdamConfig::from_json(j.at("adam"));
    if (j.contains("rank_scan")) {
      const auto& r = j.at("rank_scan");
      require(r.is_object(), "rank_scan must be an object");
      for (const auto& [key, _] : r.items())
        require(key == "enabled" || key == "points_per_depth" || key == "at_optima",
                "unknown rank_scan field \"" + key + "\"");
      c.rank_scan.enabled = r.value("enabled", true);
      c.rank_scan.points_per_depth = r.value("points_per_depth", c.rank_scan.points_per_depth);
      c.rank_scan.at_optima = r.value("at_optima", c.rank_scan.at_optima);
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.master_seed = j.value("master_seed", c.master_seed);
    c.write_traces = j.value("write_traces", c.write_traces);
    c.dump_spectra = j.value("dump_spectra", c.dump_spectra);
    c.jobs = j.value("jobs", c.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config field type: ") + e.what());
  }
  require(c.family != Family::kCustom, "sweeps support the hva_tfim and hea families");
  c.validate();
  return c;
}

Problem make_problem(const ExperimentConfig& cfg) {
  const AnsatzSpec base = cfg.family == Family::kHvaTfim
                              ? AnsatzSpec::hva_tfim(cfg.n, 1, cfg.boundary)
                              : AnsatzSpec::hea(cfg.n, 1);
  const std::uint64_t problem_seed = mix64(cfg.master_seed ^ 0x7a59e7ull);
  switch (cfg.task) {
    case Task::kVqe: {
      const mpq_class h(cfg.field);
      LossSpec loss = LossSpec::vqe(tfim_hamiltonian(cfg.n, cfg.boundary, h));
      const double target = loss.optimum(cfg.n);
      return Problem{std::move(loss), base, target, {base.input_state()}};
    }
    case Task::kCompile: {
      const UnitaryMatrix v = haar_unitary(1 << cfg.n, problem_seed);
      LossSpec loss = cfg.compile_loss == LossKind::kCompileL1 ? LossSpec::compile_l1(v)
                                                                : LossSpec::compile_l2(v);
      return Problem{std::move(loss), base, 0.0, {}};
    }
    case Task::kAutoencoder: {
      auto data = compressible_dataset(cfg.n, cfg.trash_qubits, cfg.dataset_size, problem_seed);
      LossSpec loss = LossSpec::autoencoder(data, cfg.trash_qubits);
      const double target = loss.optimum(cfg.n);
      return Problem{std::move(loss), base, target, std::move(data)};
    }
  }
  throw ValidationError("unknown task");
}

namespace {

constexpr std::uint64_t kRankStream = 0x72616e6bull;

std::vector<SpectrumReport> qfim_reports(const Problem& p, const AnsatzSpec& a,
                                         const ParamVector& theta) {
  std::vector<SpectrumReport> out;
  if (p.loss.is_compile()) {
    out.push_back(spectrum_report(qfim_unitary(a, theta)));
  } else {
    for (const auto& psi : p.rank_states) out.push_back(spectrum_report(qfim(a, theta, psi)));
  }
  return out;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ComputationError("cannot write " + path.string());
  return os;
}

}  // namespace

std::vector<SpectrumReport> rank_scan(const ExperimentConfig& cfg, const Problem& problem,
                                      int depth) {
  const AnsatzSpec a = problem.base.with_layers(depth);
  std::vector<std::vector<SpectrumReport>> per_point(
      static_cast<std::size_t>(cfg.rank_scan.points_per_depth));
  parallel_for(cfg.rank_scan.points_per_depth, cfg.jobs, [&](int i) {
    std::mt19937_64 rng(derive_seed(cfg.master_seed ^ kRankStream, static_cast<std::uint64_t>(depth),
                                    static_cast<std::uint64_t>(i)));
    per_point[static_cast<std::size_t>(i)] = qfim_reports(problem, a, random_params(a.num_params(), rng));
  });
  std::vector<SpectrumReport> out;
  for (auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

bool saturated(const std::vector<SpectrumReport>& reports) {
  if (reports.empty()) return false;
  return std::all_of(reports.begin(), reports.end(),
                     [&](const SpectrumReport& r) { return r.rank == reports.front().rank; });
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const Problem problem = make_problem(cfg);
  SweepResult result;
  result.dla_dim = dla_dimension(problem.base);

  AdamConfig adam = cfg.adam;
  adam.target_value = problem.target;

  struct Job {
    int depth;
    int index;
  };
  std::vector<Job> jobs;
  for (int depth : cfg.depth_list)
    for (int s = 0; s < cfg.seeds_per_point; ++s) jobs.push_back({depth, s});

  std::vector<RunRecord> records(jobs.size());
  std::vector<std::vector<RankRow>> optimum_rows(jobs.size());
  long long hessian_bound = static_cast<long long>(result.dla_dim);
  if (!problem.loss.is_compile()) {
    const int r = linear_loss_rank(problem.loss, problem.base);
    hessian_bound = hessian_rank_bound(result.dla_dim, problem.base.dim(), r);
  }

  parallel_for(static_cast<int>(jobs.size()), cfg.jobs, [&](int k) {
    const Job& job = jobs[static_cast<std::size_t>(k)];
    const AnsatzSpec a = problem.base.with_layers(job.depth);
    const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(job.depth),
                                           static_cast<std::uint64_t>(job.index));
    RunRecord rec;
    try {
      rec = train(problem.loss, a, adam, seed);
    } catch (const std::exception& e) {
      rec.seed = seed;
      rec.num_params = a.num_params();
      rec.failed = true;
      rec.error = e.what();
      rec.final_loss = std::numeric_limits<double>::quiet_NaN();
      rec.target = problem.target;
    }
    if (cfg.rank_scan.enabled && cfg.rank_scan.at_optima && rec.success) {
      const ParamVector opt = refine_optimum(problem.loss, a, rec.theta).theta;
      for (auto& rep : qfim_reports(problem, a, opt))
        optimum_rows[static_cast<std::size_t>(k)].push_back(
            {job.depth, a.num_params(), "optimum", "qfim", rep});
      optimum_rows[static_cast<std::size_t>(k)].push_back(
          {job.depth, a.num_params(), "optimum", "hessian",
           spectrum_report(hessian(problem.loss, a, opt))});
    }
    if (cfg.write_traces)
      write_trace(cfg.output_dir / ("trace_" + std::to_string(job.depth) + "_" +
                                    std::to_string(job.index) + ".csv"),
                  rec);
    records[static_cast<std::size_t>(k)] = std::move(rec);
  });

  for (std::size_t k = 0; k < jobs.size(); ++k)
    result.runs.emplace_back(jobs[k].depth, std::move(records[k]));

  for (int depth : cfg.depth_list) {
    DepthSummary s;
    s.depth = depth;
    s.num_params = problem.base.with_layers(depth).num_params();
    for (const auto& [d, rec] : result.runs) {
      if (d != depth) continue;
      ++s.runs;
      if (rec.success) ++s.successes;
    }
    s.success_probability = static_cast<double>(s.successes) / s.runs;
    if (cfg.rank_scan.enabled) {
      const auto reports = rank_scan(cfg, problem, depth);
      double sum = 0, sq = 0;
      for (const auto& rep : reports) {
        sum += rep.rank;
        sq += static_cast<double>(rep.rank) * rep.rank;
        result.ranks.push_back({depth, s.num_params, "random", "qfim", rep});
      }
      const double count = static_cast<double>(reports.size());
      s.mean_rank = sum / count;
      s.stddev_rank = std::sqrt(std::max(0.0, sq / count - s.mean_rank * s.mean_rank));
      s.saturated = saturated(reports);
    }
    result.depths.push_back(s);
  }
  for (auto& rows : optimum_rows)
    for (auto& row : rows) result.ranks.push_back(std::move(row));

  for (const auto& row : result.ranks) {
    const long long bound = row.matrix == "hessian" ? hessian_bound
                                                    : static_cast<long long>(result.dla_dim);
    if (row.report.rank > bound) ++result.bound_violations;
  }
  write_sweep_outputs(cfg, result);
  if (result.bound_violations > 0)
    throw ComputationError(std::to_string(result.bound_violations) +
                           " recorded ranks exceed the Lie-algebraic bound (dim g = " +
                           std::to_string(result.dla_dim) + ")");
  return result;
}

void write_sweep_outputs(const ExperimentConfig& cfg, const SweepResult& result) {
  const auto& dir = cfg.output_dir;
  const std::string boundary = cfg.task == Task::kVqe ? to_string(cfg.boundary) : "none";
  {
    std::ofstream os = open_csv(dir / "runs.csv");
    os << "task,n,boundary,depth,M,seed,final_loss,gap,iterations,success\n";
    for (const auto& [depth, rec] : result.runs)
      os << to_string(cfg.task) << ',' << cfg.n << ',' << boundary << ',' << depth << ','
         << rec.num_params << ',' << rec.seed << ',' << format_double(rec.final_loss) << ','
         << format_double(rec.gap()) << ',' << rec.iterations << ',' << (rec.success ? 1 : 0)
         << '\n';
  }
  {
    std::ofstream os = open_csv(dir / "success.csv");
    os << "depth,M,success_probability,n_runs\n";
    for (const auto& s : result.depths)
      os << s.depth << ',' << s.num_params << ',' << format_double(s.success_probability) << ','
         << s.runs << '\n';
  }
  {
    std::ofstream os = open_csv(dir / "ranks.csv");
    os << "depth,M,point_kind,matrix,rank,gap,lambda_max\n";
    for (const auto& r : result.ranks)
      os << r.depth << ',' << r.num_params << ',' << r.point_kind << ',' << r.matrix << ','
         << r.report.rank << ',' << format_double(r.report.gap) << ','
         << format_double(r.report.lambda_max) << '\n';
  }
  if (cfg.dump_spectra) {
    for (std::size_t i = 0; i < result.ranks.size(); ++i) {
      const auto& r = result.ranks[i];
      std::ofstream os = open_csv(dir / ("spectrum_" + r.matrix + "_" + r.point_kind + "_" +
                                         std::to_string(r.depth) + "_" + std::to_string(i) +
                                         ".csv"));
      r.report.write_csv(os);
    }
  }
  write_json(dir / "config.json", cfg.to_json());
}

void write_trace(const std::filesystem::path& path, const RunRecord& rec) {
  std::ofstream os = open_csv(path);
  os << "iteration,loss\n";
  for (std::size_t i = 0; i < rec.loss_trace.size(); ++i)
    os << i << ',' << format_double(rec.loss_trace[i]) << '\n';
}

}  // namespace qop
