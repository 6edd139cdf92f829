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
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace qop {

/// %.17g, enough to round-trip a double.
std::string format_double(double v);

/// Stable 64-bit FNV-1a hash of the raw parameter bytes, as 16 hex digits.
std::string point_hash(const Eigen::VectorXd& theta);

/// Row-major CSV dump of a real matrix.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// Matrix CSV plus "<path>.json" sidecar {M, point_hash, loss_kind}.
void write_matrix_with_sidecar(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                               const Eigen::VectorXd& theta, const std::string& kind);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Reads and parses a JSON file; ValidationError on I/O or syntax errors.
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace qop
