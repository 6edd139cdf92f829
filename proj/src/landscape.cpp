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

#include "qop/landscape.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qop/error.hpp"

namespace qop {

std::string to_string(LossKind k) {
  switch (k) {
    case LossKind::kVqe: return "vqe_energy";
    case LossKind::kLinear: return "linear";
    case LossKind::kCompileL1: return "compile_l1";
    case LossKind::kCompileL2: return "compile_l2";
    case LossKind::kAutoencoder: return "autoencoder";
  }
  return "unknown";
}

namespace {

void check_unitary(const Eigen::MatrixXcd& v) {
  require(v.rows() == v.cols() && v.rows() > 0, "compile target must be a square matrix");
  const Eigen::Index d = v.rows();
  require((d & (d - 1)) == 0, "compile target dimension must be a power of two");
  const double err = (v.adjoint() * v - Eigen::MatrixXcd::Identity(d, d)).norm();
  require(err < 1e-10, "compile target is not unitary (||V^dagger V - 1|| = " +
                           std::to_string(err) + ")");
}

void check_states_list(const std::vector<StateVector>& states) {
  require(!states.empty(), "dataset is empty");
  for (const auto& s : states) {
    require(s.size() == states.front().size(), "dataset states differ in dimension");
    require(std::abs(s.norm() - 1.0) < 1e-10, "dataset state is not normalized");
  }
}

// T = Tr[V^dagger U]
cplx trace_overlap(const Eigen::MatrixXcd& v, const Eigen::MatrixXcd& u) {
  return v.conjugate().cwiseProduct(u).sum();
}

cplx trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.transpose().cwiseProduct(b).sum();
}

// Frequency of a term with coefficient c: the compile L1 loss is linear in
// U, everything else quadratic.
double term_frequency(const LossSpec& spec, double c) {
  return spec.kind() == LossKind::kCompileL1 ? std::abs(c) : 2 * std::abs(c);
}

Eigen::MatrixXcd stack(const std::vector<StateVector>& states) {
  Eigen::MatrixXcd m(states.front().size(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = states[i];
  return m;
}

const std::vector<std::pair<double, PauliTerm>>& terms_of(const AnsatzSpec& a, int param) {
  return a.program()[static_cast<std::size_t>(a.op_index(param))].terms;
}

}  // namespace

LossSpec LossSpec::vqe(PauliSum hamiltonian, StateVector input) {
  require(!hamiltonian.empty(), "VQE Hamiltonian is zero");
  LossSpec s;
  s.kind_ = LossKind::kVqe;
  s.hamiltonian_ = std::move(hamiltonian);
  if (input.size() > 0) {
    check_states_list({input});
    s.states_.push_back(std::move(input));
  }
  s.weights_ = {1.0};
  return s;
}

LossSpec LossSpec::linear(std::vector<StateVector> states, std::vector<double> weights,
                          Eigen::MatrixXcd observable) {
  check_states_list(states);
  require(weights.size() == states.size(), "one weight per dataset state is required");
  for (double w : weights) require(std::isfinite(w), "linear loss weights must be finite");
  require(observable.rows() == observable.cols() && observable.rows() == states.front().size(),
          "observable dimension does not match the states");
  require((observable - observable.adjoint()).norm() < 1e-10, "observable is not Hermitian");
  LossSpec s;
  s.kind_ = LossKind::kLinear;
  s.states_ = std::move(states);
  s.weights_ = std::move(weights);
  s.observable_ = std::move(observable);
  return s;
}

LossSpec LossSpec::compile_l1(Eigen::MatrixXcd target) {
  check_unitary(target);
  LossSpec s;
  s.kind_ = LossKind::kCompileL1;
  s.target_ = std::move(target);
  return s;
}

LossSpec LossSpec::compile_l2(Eigen::MatrixXcd target) {
  check_unitary(target);
  LossSpec s;
  s.kind_ = LossKind::kCompileL2;
  s.target_ = std::move(target);
  return s;
}

LossSpec LossSpec::autoencoder(std::vector<StateVector> states, int trash_qubits) {
  check_states_list(states);
  const Eigen::Index d = states.front().size();
  require(trash_qubits >= 1 && (Eigen::Index{1} << trash_qubits) < d,
          "trash qubit count must be in [1, n)");
  LossSpec s;
  s.kind_ = LossKind::kAutoencoder;
  const double count = static_cast<double>(states.size());
  s.weights_.assign(states.size(), -1.0 / count);
  s.offset_ = count;
  s.states_ = std::move(states);
  s.trash_ = trash_qubits;
  return s;
}

std::vector<StateVector> LossSpec::input_states(const AnsatzSpec& a) const {
  require(!is_compile(), "compile losses have no input states");
  if (kind_ == LossKind::kVqe && states_.empty()) return {a.input_state()};
  return states_;
}

void LossSpec::apply_observable(const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) const {
  const std::size_t d = static_cast<std::size_t>(in.rows());
  out.resize(in.rows(), in.cols());
  switch (kind_) {
    case LossKind::kVqe:
      for (Eigen::Index c = 0; c < in.cols(); ++c)
        hamiltonian_.apply(std::span<const cplx>(in.col(c).data(), d),
                           std::span<cplx>(out.col(c).data(), d));
      return;
    case LossKind::kLinear:
      out = observable_ * in;
      return;
    case LossKind::kAutoencoder: {
      const std::size_t mask = (std::size_t{1} << trash_) - 1;
      for (Eigen::Index c = 0; c < in.cols(); ++c)
        for (std::size_t b = 0; b < d; ++b)
          out(static_cast<Eigen::Index>(b), c) =
              (b & mask) == 0 ? in(static_cast<Eigen::Index>(b), c) : cplx(0);
      return;
    }
    case LossKind::kCompileL1:
    case LossKind::kCompileL2:
      break;
  }
  throw ValidationError("compile losses have no observable");
}

Eigen::MatrixXcd LossSpec::observable_matrix(int num_qubits) const {
  require(num_qubits <= kMaxDenseQubits, "observable_matrix needs n <= 12");
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXcd out;
  apply_observable(Eigen::MatrixXcd::Identity(d, d), out);
  return out;
}

double LossSpec::optimum(int num_qubits) const {
  switch (kind_) {
    case LossKind::kVqe:
      require(hamiltonian_.num_qubits() == num_qubits, "Hamiltonian qubit count mismatch");
      return ground_energy(hamiltonian_);
    case LossKind::kCompileL1:
    case LossKind::kCompileL2:
      return 0.0;
    case LossKind::kAutoencoder:
      return offset_ - 1.0;
    case LossKind::kLinear:
      break;
  }
  throw ValidationError("a general linear loss has no known optimum");
}

void LossSpec::check(const AnsatzSpec& a) const {
  const Eigen::Index d = static_cast<Eigen::Index>(a.dim());
  if (is_compile()) {
    require(target_.rows() == d, "compile target dimension does not match the ansatz");
    require(a.num_qubits() <= kMaxDenseQubits, "compile losses need n <= 12");
    return;
  }
  if (kind_ == LossKind::kVqe)
    require(hamiltonian_.num_qubits() == a.num_qubits(),
            "Hamiltonian acts on " + std::to_string(hamiltonian_.num_qubits()) +
                " qubits, ansatz has " + std::to_string(a.num_qubits()));
  for (const auto& s : states_)
    require(s.size() == d, "dataset state dimension does not match the ansatz");
}

double loss(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
            std::span<const TermShift> shifts) {
  spec.check(a);
  if (spec.is_compile()) {
    const cplx t = trace_overlap(spec.target(), full_unitary(a, theta, shifts));
    const double d = static_cast<double>(a.dim());
    if (spec.kind() == LossKind::kCompileL1) return 2 * d - 2 * t.real();
    return 1 - std::norm(t) / (d * d);
  }
  const auto inputs = spec.input_states(a);
  const Eigen::MatrixXcd out = apply_ansatz(a, theta, stack(inputs), shifts);
  Eigen::MatrixXcd o;
  spec.apply_observable(out, o);
  double v = spec.offset();
  for (Eigen::Index c = 0; c < out.cols(); ++c)
    v += spec.weights()[static_cast<std::size_t>(c)] * out.col(c).dot(o.col(c)).real();
  return v;
}

double loss_and_gradient(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
                         Eigen::VectorXd& grad) {
  spec.check(a);
  check_params(a, theta);
  const int m = a.num_params();
  grad.setZero(m);
  Eigen::MatrixXcd phi, lambda, h;
  double value = 0;
  if (spec.is_compile()) {
    phi = full_unitary(a, theta);
    lambda = spec.target();
  } else {
    phi = apply_ansatz(a, theta, stack(spec.input_states(a)));
    spec.apply_observable(phi, lambda);
    value = spec.offset();
    for (Eigen::Index c = 0; c < phi.cols(); ++c)
      value += spec.weights()[static_cast<std::size_t>(c)] * phi.col(c).dot(lambda.col(c)).real();
  }
  // dT_j = -i sum_c <lambda_c| H_j |phi_c> with phi = U_{<=k}, lambda = U_{>k}^dagger V
  Eigen::VectorXcd dt = Eigen::VectorXcd::Zero(m);
  const cplx t = spec.is_compile() ? trace_overlap(lambda, phi) : cplx(0);
  for (std::size_t k = a.program().size(); k-- > 0;) {
    const GateOp& op = a.program()[k];
    if (op.is_rotation()) {
      apply_generator(a, op.param, phi, h);
      if (spec.is_compile()) {
        dt(op.param) = cplx(0, -1) * lambda.conjugate().cwiseProduct(h).sum();
      } else {
        double g = 0;
        for (Eigen::Index c = 0; c < phi.cols(); ++c)
          g += 2 * spec.weights()[static_cast<std::size_t>(c)] * lambda.col(c).dot(h.col(c)).imag();
        grad(op.param) = g;
      }
    }
    apply_op(a, k, theta, phi, true);
    apply_op(a, k, theta, lambda, true);
  }
  if (spec.is_compile()) {
    const double d = static_cast<double>(a.dim());
    if (spec.kind() == LossKind::kCompileL1) {
      grad = -2 * dt.real();
      value = 2 * d - 2 * t.real();
    } else {
      grad = -(2 / (d * d)) * (std::conj(t) * dt).real();
      value = 1 - std::norm(t) / (d * d);
    }
  }
  return value;
}

Eigen::VectorXd gradient(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta,
                         GradientMethod method) {
  Eigen::VectorXd grad;
  if (method == GradientMethod::kExact) {
    loss_and_gradient(spec, a, theta, grad);
    return grad;
  }
  check_params(a, theta);
  const int m = a.num_params();
  grad.setZero(m);
  for (int j = 0; j < m; ++j) {
    const auto& terms = terms_of(a, j);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const double w = term_frequency(spec, terms[t].first);
      const double s = std::numbers::pi / (2 * w);
      const TermShift plus[1] = {{j, static_cast<int>(t), s}};
      const TermShift minus[1] = {{j, static_cast<int>(t), -s}};
      grad(j) += w / 2 * (loss(spec, a, theta, plus) - loss(spec, a, theta, minus));
    }
  }
  return grad;
}

Eigen::MatrixXd hessian_linear(const LossSpec& spec, const AnsatzSpec& a,
                               const ParamVector& theta) {
  require(!spec.is_compile(), "hessian_linear needs a VQE, linear or autoencoder loss");
  spec.check(a);
  check_params(a, theta);
  const int m = a.num_params();
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m, m);
  const auto inputs = spec.input_states(a);
  Eigen::MatrixXcd od;
  for (std::size_t mu = 0; mu < inputs.size(); ++mu) {
    const StateVector& psi0 = inputs[mu];
    // phi0 = U^dagger O U psi0
    Eigen::MatrixXcd phi0;
    spec.apply_observable(apply_ansatz(a, theta, Eigen::MatrixXcd(psi0)), phi0);
    for (std::size_t k = a.program().size(); k-- > 0;) apply_op(a, k, theta, phi0, true);
    const Eigen::MatrixXcd dpsi = derivative_states(a, theta, psi0);
    const Eigen::MatrixXcd dphi = derivative_states(a, theta, phi0.col(0));
    spec.apply_observable(dpsi, od);
    // d_i d_j <O> = 2 Re[<d_i|O|d_j> - <d_j(phi0)|d_i(psi0)>] for i <= j
    const Eigen::MatrixXcd first = dpsi.adjoint() * od;
    const Eigen::MatrixXcd second = dphi.adjoint() * dpsi;  // (j, i) -> <d_j phi|d_i psi>
    const double c = spec.weights()[mu];
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        const double v = 2 * c * (first(i, j) - second(j, i)).real();
        hess(i, j) += v;
        if (j != i) hess(j, i) += v;
      }
  }
  return hess;
}

Eigen::MatrixXd hessian_compile(const LossSpec& spec, const AnsatzSpec& a,
                                const ParamVector& theta) {
  require(spec.is_compile(), "hessian_compile needs a compile loss");
  spec.check(a);
  const int m = a.num_params();
  const std::vector<Eigen::MatrixXcd> du = unitary_derivatives(a, theta);
  const UnitaryMatrix u = full_unitary(a, theta);
  const Eigen::MatrixXcd& v = spec.target();
  const double d = static_cast<double>(a.dim());
  const cplx t = trace_overlap(v, u);
  std::vector<Eigen::MatrixXcd> left(du.size()), right(du.size());
  Eigen::VectorXcd dt(m);
  for (int i = 0; i < m; ++i) {
    left[i] = v.adjoint() * du[i];
    right[i] = u.adjoint() * du[i];
    dt(i) = left[i].trace();
  }
  Eigen::MatrixXd hess(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // d_i d_j U = D_j U^dagger D_i for i <= j
      const cplx ddt = trace_product(left[j], right[i]);
      double val;
      if (spec.kind() == LossKind::kCompileL1) {
        val = -2 * ddt.real();
      } else {
        val = -(2 * (ddt * std::conj(t)).real() + 2 * (dt(i) * std::conj(dt(j))).real()) / (d * d);
      }
      hess(i, j) = hess(j, i) = val;
    }
  }
  return hess;
}

Eigen::MatrixXd hessian(const LossSpec& spec, const AnsatzSpec& a, const ParamVector& theta) {
  return spec.is_compile() ? hessian_compile(spec, a, theta) : hessian_linear(spec, a, theta);
}

Eigen::MatrixXd hessian_shift_rule(const LossSpec& spec, const AnsatzSpec& a,
                                   const ParamVector& theta) {
  check_params(a, theta);
  const int m = a.num_params();
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& ti = terms_of(a, i);
    for (int j = i; j < m; ++j) {
      const auto& tj = terms_of(a, j);
      double h = 0;
      for (std::size_t s = 0; s < ti.size(); ++s) {
        const double wi = term_frequency(spec, ti[s].first);
        const double si = std::numbers::pi / (2 * wi);
        for (std::size_t t = 0; t < tj.size(); ++t) {
          const double wj = term_frequency(spec, tj[t].first);
          const double sj = std::numbers::pi / (2 * wj);
          double acc = 0;
          for (int p : {1, -1}) {
            for (int q : {1, -1}) {
              const TermShift shifts[2] = {{i, static_cast<int>(s), p * si},
                                           {j, static_cast<int>(t), q * sj}};
              acc += p * q * loss(spec, a, theta, shifts);
            }
          }
          h += wi * wj / 4 * acc;
        }
      }
      hess(i, j) = hess(j, i) = h;
    }
  }
  return hess;
}

Eigen::MatrixXd hessian_compile_at_optimum(const LossSpec& spec, const AnsatzSpec& a,
                                           const ParamVector& theta) {
  require(spec.is_compile(), "closed-form compile Hessian needs a compile loss");
  spec.check(a);
  const int m = a.num_params();
  const std::vector<Eigen::MatrixXcd> du = unitary_derivatives(a, theta);
  const UnitaryMatrix u = full_unitary(a, theta);
  const double d = static_cast<double>(a.dim());
  std::vector<Eigen::MatrixXcd> ht(du.size());
  Eigen::VectorXcd tr(m);
  for (int i = 0; i < m; ++i) {
    ht[i] = cplx(0, 1) * (u.adjoint() * du[i]);
    tr(i) = ht[i].trace();
  }
  Eigen::MatrixXd hess(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const double tij = trace_product(ht[i], ht[j]).real();
      hess(i, j) = hess(j, i) = spec.kind() == LossKind::kCompileL1
                                    ? 2 * tij
                                    : 2 * tij / d - 2 * (tr(i) * tr(j)).real() / (d * d);
    }
  return hess;
}

PauliSum tfim_hamiltonian(int num_qubits, Boundary boundary, const mpq_class& field) {
  require(num_qubits >= 2, "TFIM needs at least 2 qubits");
  const int n = num_qubits;
  PauliSum h(n);
  const int bonds = boundary == Boundary::kOpen ? n - 1 : n;
  for (int i = 0; i < bonds; ++i) {
    const int j = (i + 1) % n;
    h.add_term(PauliTerm(n, 0, (std::uint64_t{1} << i) | (std::uint64_t{1} << j)), -1);
  }
  for (int i = 0; i < n; ++i) h.add_term(PauliTerm::single(n, i, 'X'), -field);
  return h;
}

double ground_energy(const PauliSum& h) {
  require(h.num_qubits() <= kMaxDenseQubits, "ground_energy needs n <= 12");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

int hermitian_rank(const Eigen::MatrixXcd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
  const double top = ev.maxCoeff();
  if (top <= 0) return 0;
  return static_cast<int>((ev.array() > tol * top).count());
}

}  // namespace

int linear_loss_rank(const LossSpec& spec, const AnsatzSpec& a, double tol) {
  require(!spec.is_compile(), "rank r is defined for linear-form losses");
  const auto inputs = spec.input_states(a);
  const Eigen::Index d = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t mu = 0; mu < inputs.size(); ++mu)
    rho += spec.weights()[mu] * inputs[mu] * inputs[mu].adjoint();
  return std::min(hermitian_rank(rho, tol),
                  hermitian_rank(spec.observable_matrix(a.num_qubits()), tol));
}

long long hessian_rank_bound(std::size_t dla_dim, std::size_t d, int r) {
  const long long dd = static_cast<long long>(d);
  const long long bound = 2 * dd * r - static_cast<long long>(r) * r - r;
  return std::min(static_cast<long long>(dla_dim), bound);
}

}  // namespace qop
