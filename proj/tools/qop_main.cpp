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

// qop: command-line frontend.
//
//   qop dla --family hva_tfim --n 6 --boundary open
//   qop train --task vqe --n 4 --L 8 --seed 3 --out runs/a
//   qop sweep --config sweep.json
//   qop qfim --family hva_tfim --n 2 --L 1 --theta 0,0
//   qop hessian --task compile --n 2 --L 4 --seed 1
//   qop rank-scan --n 4 --depths 2,4,6 --points 30
//   qop haar-check --d 4 --samples 100000
//
// Exit status: 0 success, 1 invalid input, 2 computation failure.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qop/error.hpp"
#include "qop/harness.hpp"
#include "qop/io.hpp"
#include "qop/lie.hpp"

namespace fs = std::filesystem;
using namespace qop;

namespace {

constexpr const char* kOutputEnv = "QOP_OUTPUT_DIR";

// Flags shared by the problem-building subcommands. Only flags given on the
// command line enter the experiment JSON; a --config file is merged over
// them.
struct ProblemFlags {
  std::string task = "vqe";
  std::string family;
  std::string boundary = "open";
  int n = 0;
  int layers = 1;
  std::string depths;
  double field = 1.0;
  std::string compile_loss;
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  int jobs = 0;

  CLI::Option* task_opt = nullptr;
  CLI::Option* family_opt = nullptr;
  CLI::Option* boundary_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* layers_opt = nullptr;
  CLI::Option* depths_opt = nullptr;
  CLI::Option* field_opt = nullptr;
  CLI::Option* loss_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f, bool with_task, bool with_depths) {
  if (with_task)
    f.task_opt = cmd->add_option("--task", f.task, "vqe | compile | autoencoder");
  f.family_opt = cmd->add_option("--family", f.family, "hva_tfim | hea");
  f.boundary_opt = cmd->add_option("--boundary", f.boundary, "open | closed");
  f.n_opt = cmd->add_option("--n", f.n, "number of qubits");
  f.layers_opt = cmd->add_option("--L", f.layers, "number of layers");
  if (with_depths)
    f.depths_opt = cmd->add_option("--depths", f.depths, "comma-separated layer counts");
  f.field_opt = cmd->add_option("--field", f.field, "TFIM transverse field");
  if (with_task)
    f.loss_opt = cmd->add_option("--compile-loss", f.compile_loss, "l1 | l2");
  f.seed_opt = cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--config", f.config, "experiment JSON; its fields override flags");
  cmd->add_option("--out", f.out, std::string("output directory (default $") + kOutputEnv +
                                      " or ./out)");
  cmd->add_option("--jobs", f.jobs, "worker threads (default: logical cores)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      require(used == item.size(), "");
    } catch (const std::exception&) {
      throw ValidationError("not an integer list: '" + text + "'");
    }
  }
  require(!out.empty(), "empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      require(used == item.size(), "");
    } catch (const std::exception&) {
      throw ValidationError("not a number list: '" + text + "'");
    }
  }
  return out;
}

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputEnv); env && *env) return env;
  return "out";
}

// Execution settings: the flag wins, then the config file, then the default.
void apply_runtime(ExperimentConfig& cfg, const nlohmann::json& j, const std::string& out,
                   int jobs) {
  cfg.output_dir = resolve_out(out.empty() && j.contains("output_dir")
                                   ? j["output_dir"].get<std::string>()
                                   : out);
  require(jobs >= 0, "--jobs must be positive");
  if (jobs > 0)
    cfg.jobs = jobs;
  else if (!j.contains("jobs"))
    cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  cfg.validate();
}

ExperimentConfig build_config(const ProblemFlags& f) {
  nlohmann::json j = nlohmann::json::object();
  j["task"] = f.task;
  if (f.n_opt->count()) j["n"] = f.n;
  if (f.family_opt->count()) j["family"] = f.family;
  if (f.boundary_opt->count()) j["boundary"] = f.boundary;
  if (f.field_opt->count()) j["field"] = f.field;
  if (f.loss_opt && f.loss_opt->count()) j["compile_loss"] = f.compile_loss;
  if (f.seed_opt->count()) j["master_seed"] = f.seed;
  if (f.depths_opt && f.depths_opt->count())
    j["depth_list"] = parse_int_list(f.depths);
  else
    j["depth_list"] = {f.layers};
  if (!f.config.empty()) j.update(read_json(f.config));
  ExperimentConfig cfg = ExperimentConfig::from_json(j);
  apply_runtime(cfg, j, f.out, f.jobs);
  return cfg;
}

ParamVector resolve_theta(const std::string& flag, const std::string& file, int count,
                          std::uint64_t seed) {
  std::vector<double> values;
  if (!file.empty()) {
    std::ifstream is(file);
    require(static_cast<bool>(is), "cannot read " + file);
    std::string text, line;
    while (std::getline(is, line)) text += (text.empty() ? "" : ",") + line;
    values = parse_double_list(text);
  } else if (!flag.empty()) {
    values = parse_double_list(flag);
  } else {
    std::mt19937_64 rng(seed);
    return random_params(count, rng);
  }
  require(static_cast<int>(values.size()) == count,
          "theta has " + std::to_string(values.size()) + " entries, the ansatz has " +
              std::to_string(count) + " parameters");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), count);
}

void dump_spectrum(const fs::path& path, const SpectrumReport& rep) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ComputationError("cannot write " + path.string());
  rep.write_csv(os);
}

nlohmann::json theta_json(const ParamVector& theta) {
  return std::vector<double>(theta.data(), theta.data() + theta.size());
}

// ---- dla --------------------------------------------------------------------

struct DlaFlags {
  std::string family = "hva_tfim";
  std::string boundary = "open";
  int n = 0;
  std::string dump;
};

int run_dla(const DlaFlags& f) {
  const Family family = parse_family(f.family);
  require(family != Family::kCustom, "dla needs --family hva_tfim or hea");
  const AnsatzSpec a = family == Family::kHvaTfim
                           ? AnsatzSpec::hva_tfim(f.n, 1, parse_boundary(f.boundary))
                           : AnsatzSpec::hea(f.n, 1);
  const LieBasis basis = ansatz_closure(a);
  std::cout << "dim=" << basis.dim() << '\n';
  if (a.num_qubits() <= kMaxDenseQubits) {
    const Eigen::MatrixXcd q = cyclic_subspace(basis, a.input_state());
    std::cout << "dim_S=" << restricted_dimension(basis, q) << '\n';
  }
  if (basis.cap_hit()) std::cout << "cap_hit=1\n";
  if (!f.dump.empty()) {
    std::ofstream os(f.dump);
    if (!os) throw ComputationError("cannot write " + f.dump);
    basis.write(os);
  }
  return 0;
}

// ---- train ------------------------------------------------------------------

int run_train(const ProblemFlags& f) {
  const ExperimentConfig cfg = build_config(f);
  require(cfg.depth_list.size() == 1, "train takes a single --L");
  const Problem p = make_problem(cfg);
  const AnsatzSpec a = p.base.with_layers(cfg.depth_list.front());
  AdamConfig adam = cfg.adam;
  adam.target_value = p.target;
  const RunRecord rec = train(p.loss, a, adam, cfg.master_seed);

  fs::create_directories(cfg.output_dir);
  write_trace(cfg.output_dir / "trace.csv", rec);
  nlohmann::json j{{"seed", rec.seed},
                   {"M", rec.num_params},
                   {"final_loss", rec.final_loss},
                   {"target", rec.target},
                   {"gap", rec.gap()},
                   {"iterations", rec.iterations},
                   {"success", rec.success},
                   {"failed", rec.failed},
                   {"theta", theta_json(rec.theta)}};
  if (!rec.error.empty()) j["error"] = rec.error;
  write_json(cfg.output_dir / "run.json", j);
  std::cout << "M=" << rec.num_params << " final_loss=" << format_double(rec.final_loss)
            << " gap=" << format_double(rec.gap()) << " iterations=" << rec.iterations
            << " success=" << (rec.success ? 1 : 0) << '\n';
  if (rec.failed) throw ComputationError("training failed: " + rec.error);
  return 0;
}

// ---- sweep ------------------------------------------------------------------

struct SweepFlags {
  std::string config;
  std::string out;
  int jobs = 0;
};

int run_sweep_cmd(const SweepFlags& f) {
  const nlohmann::json j = read_json(f.config);
  ExperimentConfig cfg = ExperimentConfig::from_json(j);
  apply_runtime(cfg, j, f.out, f.jobs);
  const SweepResult r = run_sweep(cfg);
  std::cout << "dim=" << r.dla_dim << '\n';
  for (const auto& s : r.depths) {
    std::cout << "depth=" << s.depth << " M=" << s.num_params
              << " success_probability=" << format_double(s.success_probability);
    if (cfg.rank_scan.enabled)
      std::cout << " mean_rank=" << format_double(s.mean_rank)
                << " saturated=" << (s.saturated ? 1 : 0);
    std::cout << '\n';
  }
  return 0;
}

// ---- qfim / hessian ---------------------------------------------------------

struct PointFlags {
  std::string theta;
  std::string theta_file;
  bool unitary = false;
  bool refine = false;
};

int run_qfim(const ProblemFlags& f, const PointFlags& pf) {
  const ExperimentConfig cfg = build_config(f);
  require(cfg.depth_list.size() == 1, "qfim takes a single --L");
  const AnsatzSpec a = make_problem(cfg).base.with_layers(cfg.depth_list.front());
  const ParamVector theta = resolve_theta(pf.theta, pf.theta_file, a.num_params(), cfg.master_seed);
  const Eigen::MatrixXd f_mat = pf.unitary ? qfim_unitary(a, theta)
                                           : qfim(a, theta, a.input_state());
  const SpectrumReport rep = spectrum_report(f_mat);
  write_matrix_with_sidecar(cfg.output_dir / "qfim.csv", f_mat, theta,
                            pf.unitary ? "qfim_unitary" : "qfim");
  dump_spectrum(cfg.output_dir / "spectrum_qfim.csv", rep);
  nlohmann::json j = rep.summary();
  j["M"] = a.num_params();
  std::cout << j.dump() << '\n';
  if (rep.ambiguous()) std::cerr << "warning: spectral gap below 1e3, rank is ambiguous\n";
  return 0;
}

int run_hessian(const ProblemFlags& f, const PointFlags& pf) {
  const ExperimentConfig cfg = build_config(f);
  require(cfg.depth_list.size() == 1, "hessian takes a single --L");
  const Problem p = make_problem(cfg);
  const AnsatzSpec a = p.base.with_layers(cfg.depth_list.front());
  ParamVector theta = resolve_theta(pf.theta, pf.theta_file, a.num_params(), cfg.master_seed);
  if (pf.refine) theta = refine_optimum(p.loss, a, theta).theta;
  const Eigen::MatrixXd h = hessian(p.loss, a, theta);
  const SpectrumReport rep = spectrum_report(h);
  write_matrix_with_sidecar(cfg.output_dir / "hessian.csv", h, theta, to_string(p.loss.kind()));
  dump_spectrum(cfg.output_dir / "spectrum_hessian.csv", rep);
  nlohmann::json j = rep.summary();
  j["M"] = a.num_params();
  j["loss"] = loss(p.loss, a, theta);
  std::cout << j.dump() << '\n';
  if (rep.ambiguous()) std::cerr << "warning: spectral gap below 1e3, rank is ambiguous\n";
  return 0;
}

// ---- rank-scan --------------------------------------------------------------

int run_rank_scan(const ProblemFlags& f, int points) {
  ExperimentConfig cfg = build_config(f);
  require(points >= 1, "--points must be positive");
  cfg.rank_scan.enabled = true;
  cfg.rank_scan.points_per_depth = points;
  const Problem p = make_problem(cfg);
  const std::size_t dim = dla_dimension(p.base);
  fs::create_directories(cfg.output_dir);
  std::ofstream os(cfg.output_dir / "ranks.csv");
  if (!os) throw ComputationError("cannot write ranks.csv");
  os << "depth,M,point_kind,matrix,rank,gap,lambda_max\n";
  std::cout << "dim=" << dim << '\n';
  int violations = 0;
  for (int depth : cfg.depth_list) {
    const int m = p.base.with_layers(depth).num_params();
    const auto reports = rank_scan(cfg, p, depth);
    double sum = 0;
    for (const auto& r : reports) {
      os << depth << ',' << m << ",random,qfim," << r.rank << ',' << format_double(r.gap) << ','
         << format_double(r.lambda_max) << '\n';
      sum += r.rank;
      if (r.rank > static_cast<long long>(dim)) ++violations;
    }
    std::cout << "depth=" << depth << " M=" << m
              << " mean_rank=" << format_double(sum / static_cast<double>(reports.size()))
              << " saturated=" << (saturated(reports) ? 1 : 0) << '\n';
  }
  if (violations > 0)
    throw ComputationError(std::to_string(violations) + " QFIM ranks exceed dim g = " +
                           std::to_string(dim));
  return 0;
}

// ---- haar-check -------------------------------------------------------------

struct HaarFlags {
  int d = 4;
  int samples = 100000;
  std::uint64_t seed = 0;
};

int run_haar_check(const HaarFlags& f) {
  require(f.d >= 1 && f.d <= 4096, "--d out of range");
  require(f.samples >= 2, "--samples must be at least 2");
  double s1 = 0, q1 = 0, s2 = 0, q2 = 0, worst = 0;
  for (int k = 0; k < f.samples; ++k) {
    const UnitaryMatrix u = haar_unitary(f.d, mix64(f.seed + static_cast<std::uint64_t>(k)));
    worst = std::max(worst, (u.adjoint() * u - UnitaryMatrix::Identity(f.d, f.d)).norm());
    const double a = std::norm(u(0, 0));
    const double b = std::norm(u.trace());
    s1 += a;
    q1 += a * a;
    s2 += b;
    q2 += b * b;
  }
  const double n = f.samples;
  const double m1 = s1 / n, m2 = s2 / n;
  const double se1 = std::sqrt((q1 / n - m1 * m1) / (n - 1));
  const double se2 = std::sqrt((q2 / n - m2 * m2) / (n - 1));
  const bool ok1 = std::abs(m1 - 1.0 / f.d) <= 3 * se1;
  const bool ok2 = std::abs(m2 - 1.0) <= 3 * se2;
  const bool ok3 = worst <= 1e-10;
  std::cout << "E|U00|^2=" << format_double(m1) << " expected=" << format_double(1.0 / f.d)
            << " se=" << format_double(se1) << (ok1 ? " ok" : " FAIL") << '\n'
            << "E|TrU|^2=" << format_double(m2) << " expected=1 se=" << format_double(se2)
            << (ok2 ? " ok" : " FAIL") << '\n'
            << "max|U^dag U - 1|=" << format_double(worst) << (ok3 ? " ok" : " FAIL") << '\n';
  if (!(ok1 && ok2 && ok3)) throw ComputationError("Haar moment check failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-algebraic analysis of variational quantum circuits"};
  app.require_subcommand(1);

  DlaFlags dla_flags;
  auto* dla = app.add_subcommand("dla", "closure dimension of an ansatz generator set");
  dla->add_option("--family", dla_flags.family, "hva_tfim | hea");
  dla->add_option("--n", dla_flags.n, "number of qubits")->required();
  dla->add_option("--boundary", dla_flags.boundary, "open | closed");
  dla->add_option("--dump", dla_flags.dump, "write the basis to this file");

  ProblemFlags train_flags;
  auto* train_cmd = app.add_subcommand("train", "one Adam run; writes run.json and trace.csv");
  add_problem_flags(train_cmd, train_flags, true, false);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "depth x seed sweep from a JSON config");
  sweep->add_option("--config", sweep_flags.config, "experiment JSON")->required();
  sweep->add_option("--out", sweep_flags.out, "output directory (overrides the config)");
  sweep->add_option("--jobs", sweep_flags.jobs, "worker threads (default: logical cores)");

  ProblemFlags qfim_flags;
  PointFlags qfim_point;
  auto* qfim_cmd = app.add_subcommand("qfim", "QFIM of the ansatz input state at one point");
  add_problem_flags(qfim_cmd, qfim_flags, false, false);
  qfim_cmd->add_option("--theta", qfim_point.theta, "comma-separated radians");
  qfim_cmd->add_option("--theta-file", qfim_point.theta_file, "radians, overrides --theta");
  qfim_cmd->add_flag("--unitary", qfim_point.unitary, "QFIM of the unitary map instead");

  ProblemFlags hess_flags;
  PointFlags hess_point;
  auto* hess_cmd = app.add_subcommand("hessian", "loss Hessian at one point");
  add_problem_flags(hess_cmd, hess_flags, true, false);
  hess_cmd->add_option("--theta", hess_point.theta, "comma-separated radians");
  hess_cmd->add_option("--theta-file", hess_point.theta_file, "radians, overrides --theta");
  hess_cmd->add_flag("--refine", hess_point.refine, "Newton-polish the point first");

  ProblemFlags scan_flags;
  int scan_points = 30;
  auto* scan = app.add_subcommand("rank-scan", "QFIM ranks at random points per depth");
  add_problem_flags(scan, scan_flags, true, true);
  scan->add_option("--points", scan_points, "random points per depth");

  HaarFlags haar_flags;
  auto* haar = app.add_subcommand("haar-check", "Monte-Carlo moments of the Haar sampler");
  haar->add_option("--d", haar_flags.d, "matrix dimension");
  haar->add_option("--samples", haar_flags.samples, "number of samples");
  haar->add_option("--seed", haar_flags.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*dla) return run_dla(dla_flags);
    if (*train_cmd) return run_train(train_flags);
    if (*sweep) return run_sweep_cmd(sweep_flags);
    if (*qfim_cmd) return run_qfim(qfim_flags, qfim_point);
    if (*hess_cmd) return run_hessian(hess_flags, hess_point);
    if (*scan) return run_rank_scan(scan_flags, scan_points);
    if (*haar) return run_haar_check(haar_flags);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
