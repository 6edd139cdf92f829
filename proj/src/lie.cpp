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

#include "qop/lie.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/SVD>

#include "qop/error.hpp"

namespace qop {

LieBasis::LieBasis(int num_qubits) : n_(num_qubits) {
  require(num_qubits >= 1 && num_qubits <= kMaxQubits, "qubit count must be in [1, 63]");
}

PauliSum LieBasis::reduce(const PauliSum& v) const {
  require(v.empty() || v.num_qubits() == n_, "vector qubit count does not match basis");
  PauliSum r = v;
  // Rows never contain another row's pivot, so the pivot coefficients of v
  // are unchanged by the other subtractions.
  std::vector<std::pair<std::size_t, mpq_class>> hits;
  for (const auto& [t, c] : v.terms()) {
    auto it = pivot_row_.find(t);
    if (it != pivot_row_.end()) hits.emplace_back(it->second, c);
  }
  for (const auto& [row, c] : hits) r -= rows_[row] * c;
  return r;
}

bool LieBasis::insert(const PauliSum& v) {
  PauliSum r = reduce(v);
  if (r.empty()) return false;
  const auto& [pivot, lead] = *r.terms().begin();
  const PauliTerm pivot_term = pivot;
  r *= mpq_class(1) / lead;
  for (auto& row : rows_) {
    auto it = row.terms().find(pivot_term);
    if (it != row.terms().end()) {
      const mpq_class c = it->second;
      row -= r * c;
    }
  }
  pivot_row_.emplace(pivot_term, rows_.size());
  rows_.push_back(std::move(r));
  elements_.push_back(v);
  return true;
}

bool LieBasis::is_closed() const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (!contains(commutator(elements_[i], elements_[j]))) return false;
  return true;
}

void LieBasis::write(std::ostream& os) const {
  os << "n=" << n_ << " dim=" << dim() << '\n';
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i > 0) os << "---\n";
    os << elements_[i].to_string();
  }
}

std::size_t su_dimension(int num_qubits) {
  if (num_qubits >= 32) return std::numeric_limits<std::size_t>::max();
  return (std::size_t{1} << (2 * num_qubits)) - 1;
}

LieBasis lie_closure(const std::vector<PauliSum>& generators,
                     std::optional<std::size_t> dim_cap) {
  require(!generators.empty(), "lie_closure needs at least one generator");
  const int n = generators.front().num_qubits();
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& gen = generators[g];
    require(!gen.empty(), "generator " + std::to_string(g) + " is zero");
    require(gen.num_qubits() == n, "generator " + std::to_string(g) +
                                       " acts on a different number of qubits");
    require(!gen.has_identity(), "generator " + std::to_string(g) +
                                     " has an identity component (generators must be traceless)");
  }
  const std::size_t cap = dim_cap.value_or(su_dimension(n));
  require(cap >= 1, "dim_cap must be at least 1");

  LieBasis basis(n);
  for (const auto& gen : generators) {
    if (basis.dim() >= cap) break;
    basis.insert(gen);
  }
  // Pair queue: element k pairs with all i < k, visited in insertion order.
  for (std::size_t k = 1; k < basis.dim() && basis.dim() < cap; ++k) {
    for (std::size_t i = 0; i < k && basis.dim() < cap; ++i) {
      PauliSum c = commutator(basis.elements_[i], basis.elements_[k]);
      if (!c.empty()) basis.insert(c);
    }
  }
  basis.cap_hit_ = basis.dim() >= cap;
  return basis;
}

Eigen::MatrixXcd cyclic_subspace(const LieBasis& basis, const Eigen::VectorXcd& state,
                                 double tol) {
  const std::size_t d = std::size_t{1} << basis.num_qubits();
  require(static_cast<std::size_t>(state.size()) == d, "state dimension does not match basis");
  const double norm = state.norm();
  require(norm > 0, "zero state has no cyclic subspace");

  std::vector<Eigen::VectorXcd> q{state / norm};
  std::size_t frontier = 0;
  Eigen::VectorXcd w(d);
  auto orthogonalize = [&q](Eigen::VectorXcd& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) v -= u * u.dot(v);
  };
  // Residuals are judged against the coefficient 1-norm of each element, an
  // upper bound on its operator norm, so cancellation inside S|q> does not
  // inflate rounding noise into new directions.
  std::vector<double> scale;
  for (const auto& s : basis.elements()) {
    double l1 = 0;
    for (const auto& [c, t] : s.numeric_terms()) l1 += std::abs(c);
    scale.push_back(l1);
  }
  while (frontier < q.size() && q.size() < d) {
    const std::size_t end = q.size();
    for (; frontier < end; ++frontier) {
      for (std::size_t e = 0; e < basis.dim(); ++e) {
        const Eigen::VectorXcd src = q[frontier];
        basis.elements()[e].apply(std::span<const cplx>(src.data(), d),
                                  std::span<cplx>(w.data(), d));
        orthogonalize(w);
        const double rest = w.norm();
        if (rest > tol * scale[e]) q.push_back(w / rest);
        if (q.size() == d) break;
      }
      if (q.size() == d) break;
    }
  }
  Eigen::MatrixXcd out(d, q.size());
  for (std::size_t j = 0; j < q.size(); ++j) out.col(j) = q[j];
  return out;
}

std::size_t restricted_dimension(const LieBasis& basis, const Eigen::MatrixXcd& isometry,
                                 double tol) {
  const std::size_t d = std::size_t{1} << basis.num_qubits();
  require(static_cast<std::size_t>(isometry.rows()) == d, "isometry row count must be 2^n");
  const Eigen::Index k = isometry.cols();
  if (basis.dim() == 0 || k == 0) return 0;
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(basis.dim()), 2 * k * k);
  Eigen::MatrixXcd image(d, k);
  for (std::size_t e = 0; e < basis.dim(); ++e) {
    for (Eigen::Index c = 0; c < k; ++c) {
      const Eigen::VectorXcd col = isometry.col(c);
      basis.elements()[e].apply(std::span<const cplx>(col.data(), d),
                                std::span<cplx>(image.col(c).data(), d));
    }
    const Eigen::MatrixXcd r = isometry.adjoint() * image;
    for (Eigen::Index i = 0; i < k * k; ++i) {
      stacked(static_cast<Eigen::Index>(e), i) = r.data()[i].real();
      stacked(static_cast<Eigen::Index>(e), k * k + i) = r.data()[i].imag();
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

}  // namespace qop
