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

#include "qop/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "qop/error.hpp"

namespace qop {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_hash(const Eigen::VectorXd& theta) {
  std::uint64_t h = 1469598103934665603ull;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    unsigned char bytes[sizeof(double)];
    const double v = theta(i);
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ComputationError("cannot write " + path.string());
  return os;
}

}  // namespace

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream os = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ',';
      os << format_double(m(r, c));
    }
    os << '\n';
  }
}

void write_matrix_with_sidecar(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                               const Eigen::VectorXd& theta, const std::string& kind) {
  write_matrix_csv(path, m);
  write_json(path.string() + ".json",
             {{"M", m.rows()}, {"point_hash", point_hash(theta)}, {"loss_kind", kind}});
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream os = open_out(path);
  os << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), "cannot open " + path.string());
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace qop
