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

// End-to-end tests of the qop binary. QOP_CLI is the path of the built
// executable, injected by the build.

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QOP_CLI + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qop_cli_" + name);
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

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  std::string l;
  while (std::getline(is, l))
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("dla prints closure dimensions") {
  const Result open = run("dla --family hva_tfim --n 6 --boundary open");
  CHECK(open.code == 0);
  CHECK(has_line(open.out, "dim=36"));
  const Result closed = run("dla --family hva_tfim --n 6 --boundary closed");
  CHECK(closed.code == 0);
  CHECK(has_line(closed.out, "dim=17"));
  CHECK(has_line(closed.out, "dim_S=9"));
  const Result hea = run("dla --family hea --n 2");
  CHECK(has_line(hea.out, "dim=15"));
}

TEST_CASE("dla dumps the basis") {
  const fs::path dir = scratch("dla");
  fs::create_directories(dir);
  CHECK(run("dla --n 3 --dump " + (dir / "basis.txt").string()).code == 0);
  CHECK(first_line(dir / "basis.txt") == "n=3 dim=9");
  fs::remove_all(dir);
}

TEST_CASE("qfim at a supplied point dumps a finite 2x2 spectrum") {
  const fs::path dir = scratch("qfim");
  const Result r = run("qfim --family hva_tfim --n 2 --L 1 --theta 0,0 --out " + dir.string());
  CHECK(r.code == 0);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary["M"] == 2);
  CHECK(first_line(dir / "spectrum_qfim.csv") == "index,eigenvalue");
  std::ifstream is(dir / "spectrum_qfim.csv");
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::isfinite(std::stod(line.substr(line.find(',') + 1))));
  }
  CHECK(rows == 2);
  const auto side = nlohmann::json::parse(slurp(dir / "qfim.csv.json"));
  CHECK(side["M"] == 2);
  CHECK(side["loss_kind"] == "qfim");
  fs::remove_all(dir);
}

TEST_CASE("train writes a record and a trace, determined by the seed") {
  const fs::path a = scratch("train_a"), b = scratch("train_b");
  const std::string args = "train --task vqe --n 2 --L 2 --seed 4 --out ";
  const Result ra = run(args + a.string());
  const Result rb = run(args + b.string());
  CHECK(ra.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(first_line(a / "trace.csv") == "iteration,loss");
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  const auto rec = nlohmann::json::parse(slurp(a / "run.json"));
  CHECK(rec["success"] == true);
  CHECK(rec["M"] == 4);
  CHECK(std::abs(rec["final_loss"].get<double>() + std::sqrt(5.0)) < 1e-7);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("sweep from a config file") {
  const fs::path dir = scratch("sweep");
  fs::create_directories(dir);
  std::ofstream(dir / "cfg.json") << R"({"task": "compile", "n": 2, "depth_list": [1, 4],
    "seeds_per_point": 2, "adam": {"max_iters": 200}, "rank_scan": {"points_per_depth": 2}})";
  const Result r = run("sweep --config " + (dir / "cfg.json").string() + " --out " +
                       (dir / "out").string() + " --jobs 2");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "dim=15"));
  CHECK(first_line(dir / "out" / "runs.csv") ==
        "task,n,boundary,depth,M,seed,final_loss,gap,iterations,success");
  CHECK(first_line(dir / "out" / "success.csv") == "depth,M,success_probability,n_runs");
  CHECK(first_line(dir / "out" / "ranks.csv") == "depth,M,point_kind,matrix,rank,gap,lambda_max");
  fs::remove_all(dir);
}

TEST_CASE("hessian and rank-scan subcommands") {
  const fs::path dir = scratch("hess");
  const Result h = run("hessian --task compile --n 2 --L 1 --seed 3 --out " + dir.string());
  CHECK(h.code == 0);
  const auto summary = nlohmann::json::parse(h.out);
  CHECK(summary["M"] == 8);
  CHECK(first_line(dir / "spectrum_hessian.csv") == "index,eigenvalue");
  CHECK(nlohmann::json::parse(slurp(dir / "hessian.csv.json"))["loss_kind"] == "compile_l2");
  const Result s = run("rank-scan --n 4 --depths 2,6 --points 3", "QOP_OUTPUT_DIR=" + dir.string());
  CHECK(s.code == 0);
  CHECK(has_line(s.out, "depth=2 M=4 mean_rank=4 saturated=1"));
  CHECK(first_line(dir / "ranks.csv") == "depth,M,point_kind,matrix,rank,gap,lambda_max");
  fs::remove_all(dir);
}

TEST_CASE("haar-check passes") {
  const Result r = run("haar-check --d 4 --samples 20000 --seed 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("invalid input exits with status 1") {
  CHECK(run("").code == 1);
  CHECK(run("dla --n 4 --bogus").code == 1);
  CHECK(run("qfim --n 2 --L 1 --theta 0").code == 1);
  CHECK(run("qfim --n 2 --L 1 --theta a,b").code == 1);
  CHECK(run("train --task compile --n 9 --L 1").code == 1);
  CHECK(run("train --task nope --n 2").code == 1);
  CHECK(run("sweep --config /nonexistent/cfg.json").code == 1);
  const fs::path dir = scratch("bad");
  fs::create_directories(dir);
  std::ofstream(dir / "cfg.json") << R"({"task": "vqe", "n": 2, "depth_list": [1], "typo": 3})";
  CHECK(run("sweep --config " + (dir / "cfg.json").string()).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("computation failure exits with status 2") {
  CHECK(run("qfim --n 2 --L 1 --out /proc/qop_forbidden").code == 2);
}
