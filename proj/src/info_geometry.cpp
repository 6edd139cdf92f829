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

#include "qop/info_geometry.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qop/error.hpp"
#include "qop/io.hpp"

namespace qop {

nlohmann::json SpectrumReport::summary() const {
  nlohmann::json j{{"rank", rank}, {"tolerance", tolerance}, {"lambda_max", lambda_max}};
  j["gap"] = std::isfinite(gap) ? nlohmann::json(gap) : nlohmann::json(nullptr);
  return j;
}

void SpectrumReport::write_csv(std::ostream& os) const {
  os << "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    os << i << ',' << format_double(eigenvalues(i)) << '\n';
}

SpectrumReport spectrum_report(const Eigen::MatrixXd& matrix, double tol) {
  require(matrix.rows() == matrix.cols(), "spectrum_report needs a square matrix");
  require(tol > 0, "rank tolerance must be positive");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  require((matrix - matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-8 * scale,
          "spectrum_report needs a symmetric matrix");
  SpectrumReport r;
  r.tolerance = tol;
  if (matrix.size() == 0) return r;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (matrix + matrix.transpose()),
                                                    Eigen::EigenvaluesOnly);
  r.eigenvalues = es.eigenvalues().reverse();
  r.lambda_max = r.eigenvalues(0);
  if (r.lambda_max <= 0) {
    r.gap = std::numeric_limits<double>::infinity();
    return r;
  }
  const double cut = tol * r.lambda_max;
  while (r.rank < r.eigenvalues.size() && r.eigenvalues(r.rank) > cut) ++r.rank;
  if (r.rank < r.eigenvalues.size()) {
    const double discarded = std::abs(r.eigenvalues(r.rank));
    const double counted = r.eigenvalues(r.rank - 1);
    r.gap = discarded > 0 ? counted / discarded : std::numeric_limits<double>::infinity();
  }
  return r;
}

Eigen::MatrixXd qfim(const AnsatzSpec& a, const ParamVector& theta, const StateVector& psi) {
  const Eigen::MatrixXcd dpsi = derivative_states(a, theta, psi);
  const StateVector out = apply_ansatz(a, theta, psi);
  const Eigen::VectorXcd overlap = dpsi.adjoint() * out;  // <d_i psi|psi>
  const Eigen::MatrixXcd gram = dpsi.adjoint() * dpsi;
  Eigen::MatrixXd f = 4.0 * (gram - overlap * overlap.adjoint()).real();
  return 0.5 * (f + f.transpose());
}

namespace {

double fidelity(const AnsatzSpec& a, const ParamVector& theta, const StateVector& psi,
                const StateVector& ref, std::span<const TermShift> shifts) {
  return std::norm(ref.dot(apply_ansatz(a, theta, psi, shifts)));
}

}  // namespace

Eigen::MatrixXd qfim_shift_rule(const AnsatzSpec& a, const ParamVector& theta,
                                const StateVector& psi) {
  check_params(a, theta);
  const int m = a.num_params();
  const StateVector ref = apply_ansatz(a, theta, psi);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& ti = a.program()[static_cast<std::size_t>(a.op_index(i))].terms;
    for (int j = i; j < m; ++j) {
      const auto& tj = a.program()[static_cast<std::size_t>(a.op_index(j))].terms;
      double h = 0;
      for (std::size_t s = 0; s < ti.size(); ++s) {
        const double wi = 2 * std::abs(ti[s].first);
        const double si = std::numbers::pi / (2 * wi);
        for (std::size_t t = 0; t < tj.size(); ++t) {
          const double wj = 2 * std::abs(tj[t].first);
          const double sj = std::numbers::pi / (2 * wj);
          double acc = 0;
          for (int a_sign : {1, -1}) {
            for (int b_sign : {1, -1}) {
              const TermShift shifts[2] = {{i, static_cast<int>(s), a_sign * si},
                                           {j, static_cast<int>(t), b_sign * sj}};
              acc += a_sign * b_sign * (1.0 - fidelity(a, theta, psi, ref, shifts));
            }
          }
          h += wi * wj / 4.0 * acc;
        }
      }
      f(i, j) = f(j, i) = 2.0 * h;
    }
  }
  return f;
}

Eigen::MatrixXd qfim_rank_one_form(const AnsatzSpec& a, const ParamVector& theta,
                                   const StateVector& psi) {
  const Eigen::MatrixXcd dpsi = derivative_states(a, theta, psi);
  const StateVector out = apply_ansatz(a, theta, psi);
  // U H~_i psi = i * d_i psi; the basis is rotated by U as a whole, which
  // leaves every inner product unchanged.
  const Eigen::MatrixXcd w = cplx(0, 1) * dpsi;
  const Eigen::MatrixXcd out_col = out;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(out_col);
  const Eigen::MatrixXcd basis = qr.householderQ();
  const Eigen::MatrixXcd coeffs = basis.adjoint() * w;  // row m: <m|U H~_i psi>
  const int m = a.num_params();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index row = 1; row < coeffs.rows(); ++row) {
    const Eigen::VectorXd r = coeffs.row(row).real().transpose();
    const Eigen::VectorXd im = coeffs.row(row).imag().transpose();
    f += 4.0 * (r * r.transpose() + im * im.transpose());
  }
  return f;
}

Eigen::MatrixXd qfim_unitary(const AnsatzSpec& a, const ParamVector& theta) {
  const std::vector<Eigen::MatrixXcd> du = unitary_derivatives(a, theta);
  const UnitaryMatrix u = full_unitary(a, theta);
  const double d = static_cast<double>(a.dim());
  const int m = a.num_params();
  // H~_i = i U^dagger D_i
  std::vector<Eigen::MatrixXcd> ht(du.size());
  Eigen::VectorXcd tr(m);
  for (int i = 0; i < m; ++i) {
    ht[i] = cplx(0, 1) * (u.adjoint() * du[i]);
    tr(i) = ht[i].trace();
  }
  Eigen::MatrixXd f(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double tij = (ht[i].transpose().cwiseProduct(ht[j])).sum().real();
      f(i, j) = f(j, i) = 4.0 * (tij / d - (tr(i) * tr(j)).real() / (d * d));
    }
  }
  return f;
}

Eigen::MatrixXd classical_fim(const AnsatzSpec& a, const ParamVector& theta,
                              const StateVector& psi) {
  const Eigen::MatrixXcd dpsi = derivative_states(a, theta, psi);
  const StateVector out = apply_ansatz(a, theta, psi);
  const int m = a.num_params();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd dp(m);
  for (Eigen::Index z = 0; z < out.size(); ++z) {
    const double p = std::norm(out(z));
    if (p <= 1e-12) continue;
    for (int i = 0; i < m; ++i) dp(i) = 2.0 * (std::conj(dpsi(z, i)) * out(z)).real();
    f += dp * dp.transpose() / p;
  }
  return f;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

int orbit_dimension(const LieBasis& basis, const StateVector& psi, double tol) {
  const std::size_t d = std::size_t{1} << basis.num_qubits();
  require(static_cast<std::size_t>(psi.size()) == d, "state dimension does not match basis");
  if (basis.dim() == 0) return 0;
  const StateVector unit = psi / psi.norm();
  Eigen::MatrixXd cols(2 * static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(basis.dim()));
  StateVector v(static_cast<Eigen::Index>(d));
  for (std::size_t e = 0; e < basis.dim(); ++e) {
    basis.elements()[e].apply(std::span<const cplx>(unit.data(), d), std::span<cplx>(v.data(), d));
    v -= unit * unit.dot(v);
    cols.col(static_cast<Eigen::Index>(e)) << v.real(), v.imag();
  }
  return numerical_rank(cols, tol);
}

double effective_dimension_d1(const AnsatzSpec& a, const ParamVector& theta,
                              const std::vector<StateVector>& dataset, double tol) {
  require(!dataset.empty(), "effective dimension needs a nonempty dataset");
  double total = 0;
  for (const auto& psi : dataset) total += spectrum_report(qfim(a, theta, psi), tol).rank;
  return total / static_cast<double>(dataset.size());
}

}  // namespace qop
