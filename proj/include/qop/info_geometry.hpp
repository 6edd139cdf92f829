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

#include <iosfwd>
#include <limits>
#include <vector>

#include <json.hpp>

#include "qop/lie.hpp"
#include "qop/simulate.hpp"

namespace qop {

/// Default relative rank tolerance.
inline constexpr double kRankTolerance = 1e-8;

/// Gaps below this are flagged as ambiguous rank calls.
inline constexpr double kGapWarning = 1e3;

struct SpectrumReport {
  Eigen::VectorXd eigenvalues;  // descending
  int rank = 0;
  double gap = std::numeric_limits<double>::infinity();
  double tolerance = kRankTolerance;
  double lambda_max = 0;

  bool ambiguous() const { return gap < kGapWarning; }

  /// {rank, gap, tolerance, lambda_max}; an infinite gap is written as null.
  nlohmann::json summary() const;

  /// "index,eigenvalue" rows with 17 significant digits.
  void write_csv(std::ostream& os) const;
};

/**
 * Eigen-decomposes a real symmetric matrix. rank counts eigenvalues above
 * tol * lambda_max (zero if lambda_max <= 0); gap is the smallest counted
 * eigenvalue over the largest discarded one, infinite when nothing is
 * discarded. Throws ValidationError if asymmetry exceeds 1e-8.
 */
SpectrumReport spectrum_report(const Eigen::MatrixXd& matrix, double tol = kRankTolerance);

/// 4 Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>] from derivative states.
Eigen::MatrixXd qfim(const AnsatzSpec& a, const ParamVector& theta, const StateVector& psi);

/**
 * QFIM from fidelity evaluations only: F = 2 * Hessian in theta' of
 * 1 - |<psi(theta')|psi(theta)>|^2 at theta' = theta, each second derivative
 * taken by shifting individual generator terms (shift pi / (4|c|) for a term
 * with coefficient c).
 */
Eigen::MatrixXd qfim_shift_rule(const AnsatzSpec& a, const ParamVector& theta,
                                const StateVector& psi);

/**
 * QFIM assembled as 4 sum_m (R_m R_m^T + I_m I_m^T) over an orthonormal basis
 * {m} completing psi, with R_m(i) + i I_m(i) = <m|H~_i|psi>. At most 2d - 2
 * rank-one summands.
 */
Eigen::MatrixXd qfim_rank_one_form(const AnsatzSpec& a, const ParamVector& theta,
                                   const StateVector& psi);

/**
 * QFIM of the map theta -> U(theta) (the Choi state (U x 1)|Phi+>):
 * 4 [Re Tr(H~_i H~_j)/d - Tr H~_i Tr H~_j / d^2]. Rank at most d^2 - 1.
 */
Eigen::MatrixXd qfim_unitary(const AnsatzSpec& a, const ParamVector& theta);

/// Classical Fisher information of computational-basis measurement of U|psi>.
/// Outcomes with p_z <= 1e-12 are skipped.
Eigen::MatrixXd classical_fim(const AnsatzSpec& a, const ParamVector& theta,
                              const StateVector& psi);

/// Real dimension (modulo global phase) of the orbit of psi under the group
/// generated by `basis`.
int orbit_dimension(const LieBasis& basis, const StateVector& psi, double tol = kRankTolerance);

/// Mean QFIM rank over the dataset (uniform weights).
double effective_dimension_d1(const AnsatzSpec& a, const ParamVector& theta,
                              const std::vector<StateVector>& dataset,
                              double tol = kRankTolerance);

/// Numerical rank of an arbitrary real matrix by singular values.
int numerical_rank(const Eigen::MatrixXd& m, double tol = kRankTolerance);

}  // namespace qop
