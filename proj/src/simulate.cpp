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

#include "qop/simulate.hpp"

#include <bit>
#include <cmath>

#include "qop/error.hpp"

namespace qop {

namespace {

// Sign of <b ^ x| P |b> relative to the phase i^{|x&z|}: (-1)^{|z&b|}.
inline double zsign(std::uint64_t z, std::size_t b) {
  return (std::popcount(z & b) & 1) ? -1.0 : 1.0;
}

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void rotate_column(cplx* amps, std::size_t d, const PauliTerm& p, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  if (p.x == 0) {
    const cplx plus(c, -s), minus(c, s);
    for (std::size_t b = 0; b < d; ++b) amps[b] *= zsign(p.z, b) > 0 ? plus : minus;
    return;
  }
  // P|b> = i^{|x&z|} (-1)^{|z&b|} |b^x>
  const cplx ph = kIPow[std::popcount(p.x & p.z) & 3];
  const cplx mis = cplx(0, -s) * ph;
  const std::size_t high = std::bit_floor(p.x);
  for (std::size_t b = 0; b < d; ++b) {
    if (b & high) continue;
    const std::size_t f = b ^ p.x;
    const cplx a0 = amps[b], a1 = amps[f];
    amps[b] = c * a0 + mis * zsign(p.z, f) * a1;
    amps[f] = c * a1 + mis * zsign(p.z, b) * a0;
  }
}

void apply_gate_inverse(const CliffordGate& g, std::span<cplx> amps, int n) {
  if (g.kind != CliffordGate::Kind::kS) {
    g.apply(amps, n);
    return;
  }
  const std::size_t m = std::size_t{1} << g.q0;
  for (std::size_t b = 0; b < amps.size(); ++b)
    if (b & m) amps[b] *= cplx(0, -1);
}

double term_offset(std::span<const TermShift> shifts, int param, std::size_t term) {
  double off = 0;
  for (const auto& s : shifts)
    if (s.param == param && static_cast<std::size_t>(s.term) == term) off += s.offset;
  return off;
}

void apply_op_shifted(const AnsatzSpec& a, std::size_t k, const ParamVector& theta,
                      Eigen::Ref<Eigen::MatrixXcd> states, bool inverse,
                      std::span<const TermShift> shifts) {
  const GateOp& op = a.program()[k];
  const std::size_t d = static_cast<std::size_t>(states.rows());
  const int n = a.num_qubits();
  for (Eigen::Index col = 0; col < states.cols(); ++col) {
    cplx* amps = states.col(col).data();
    if (!op.is_rotation()) {
      if (inverse) apply_gate_inverse(op.gate, std::span<cplx>(amps, d), n);
      else op.gate.apply(std::span<cplx>(amps, d), n);
      continue;
    }
    const double angle = theta(op.param);
    for (std::size_t t = 0; t < op.terms.size(); ++t) {
      const auto& [coeff, term] = op.terms[t];
      const double phi = coeff * (angle + term_offset(shifts, op.param, t));
      rotate_column(amps, d, term, inverse ? -phi : phi);
    }
  }
}

void check_states(const AnsatzSpec& a, Eigen::Index rows) {
  require(static_cast<std::size_t>(rows) == a.dim(),
          "state dimension " + std::to_string(rows) + " does not match 2^" +
              std::to_string(a.num_qubits()));
}

}  // namespace

void apply_pauli_rotation(Eigen::Ref<Eigen::MatrixXcd> states, const PauliTerm& p, double phi) {
  const std::size_t d = static_cast<std::size_t>(states.rows());
  require(d == (std::size_t{1} << p.n), "state dimension does not match Pauli string");
  for (Eigen::Index col = 0; col < states.cols(); ++col)
    rotate_column(states.col(col).data(), d, p, phi);
}

void apply_op(const AnsatzSpec& a, std::size_t op, const ParamVector& theta,
              Eigen::Ref<Eigen::MatrixXcd> states, bool inverse) {
  apply_op_shifted(a, op, theta, states, inverse, {});
}

void apply_generator(const AnsatzSpec& a, int param, const Eigen::MatrixXcd& in,
                     Eigen::MatrixXcd& out) {
  require(param >= 0 && param < a.num_params(), "parameter index out of range");
  const GateOp& op = a.program()[static_cast<std::size_t>(a.op_index(param))];
  const std::size_t d = static_cast<std::size_t>(in.rows());
  out.setZero(in.rows(), in.cols());
  for (Eigen::Index col = 0; col < in.cols(); ++col) {
    std::span<const cplx> src(in.col(col).data(), d);
    std::span<cplx> dst(out.col(col).data(), d);
    for (const auto& [coeff, term] : op.terms) accumulate_pauli(term, coeff, src, dst);
  }
}

void check_params(const AnsatzSpec& a, const ParamVector& theta) {
  require(theta.size() == a.num_params(), "parameter vector has length " +
                                              std::to_string(theta.size()) + ", ansatz needs " +
                                              std::to_string(a.num_params()));
  require(theta.allFinite(), "parameter vector has non-finite entries");
}

Eigen::MatrixXcd apply_ansatz(const AnsatzSpec& a, const ParamVector& theta,
                              const Eigen::MatrixXcd& states, std::span<const TermShift> shifts) {
  check_params(a, theta);
  check_states(a, states.rows());
  Eigen::MatrixXcd out = states;
  for (std::size_t k = 0; k < a.program().size(); ++k)
    apply_op_shifted(a, k, theta, out, false, shifts);
  return out;
}

StateVector apply_ansatz(const AnsatzSpec& a, const ParamVector& theta, const StateVector& psi,
                         std::span<const TermShift> shifts) {
  return apply_ansatz(a, theta, Eigen::MatrixXcd(psi), shifts).col(0);
}

StateVector derivative_state(const AnsatzSpec& a, const ParamVector& theta,
                             const StateVector& psi, int j) {
  check_params(a, theta);
  check_states(a, psi.rows());
  require(j >= 0 && j < a.num_params(), "parameter index " + std::to_string(j) +
                                            " out of range [0, " +
                                            std::to_string(a.num_params()) + ")");
  const std::size_t kj = static_cast<std::size_t>(a.op_index(j));
  Eigen::MatrixXcd phi = psi;
  for (std::size_t k = 0; k <= kj; ++k) apply_op(a, k, theta, phi);
  Eigen::MatrixXcd h;
  apply_generator(a, j, phi, h);
  phi = cplx(0, -1) * h;
  for (std::size_t k = kj + 1; k < a.program().size(); ++k) apply_op(a, k, theta, phi);
  return phi.col(0);
}

Eigen::MatrixXcd derivative_states(const AnsatzSpec& a, const ParamVector& theta,
                                   const StateVector& psi) {
  check_params(a, theta);
  check_states(a, psi.rows());
  const int m = a.num_params();
  const std::size_t ops = a.program().size();
  Eigen::MatrixXcd out(psi.rows(), m);
  Eigen::MatrixXcd phi = psi;
  Eigen::MatrixXcd h;
  int j = 0;
  for (std::size_t k = 0; k < ops; ++k) {
    apply_op(a, k, theta, phi);
    if (!a.program()[k].is_rotation()) continue;
    apply_generator(a, j, phi, h);
    h *= cplx(0, -1);
    for (std::size_t r = k + 1; r < ops; ++r) apply_op(a, r, theta, h);
    out.col(j++) = h.col(0);
  }
  return out;
}

UnitaryMatrix full_unitary(const AnsatzSpec& a, const ParamVector& theta,
                           std::span<const TermShift> shifts) {
  require(a.num_qubits() <= kMaxDenseQubits,
          "full_unitary needs n <= " + std::to_string(kMaxDenseQubits) + ", got " +
              std::to_string(a.num_qubits()));
  const Eigen::Index d = static_cast<Eigen::Index>(a.dim());
  return apply_ansatz(a, theta, Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(d, d)), shifts);
}

std::vector<Eigen::MatrixXcd> unitary_derivatives(const AnsatzSpec& a,
                                                  const ParamVector& theta) {
  require(a.num_qubits() <= kMaxDenseQubits,
          "unitary_derivatives needs n <= " + std::to_string(kMaxDenseQubits));
  check_params(a, theta);
  const Eigen::Index d = static_cast<Eigen::Index>(a.dim());
  const std::size_t ops = a.program().size();
  // Backward pass: D_j = U_{>j} (-i H_j) U_{<=j}, with U_{>j} accumulated
  // as a matrix from the right end of the circuit.
  std::vector<Eigen::MatrixXcd> prefix;
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Identity(d, d);
  std::vector<std::size_t> rot_ops;
  for (std::size_t k = 0; k < ops; ++k) {
    apply_op(a, k, theta, phi);
    if (a.program()[k].is_rotation()) {
      prefix.push_back(phi);
      rot_ops.push_back(k);
    }
  }
  std::vector<Eigen::MatrixXcd> out(rot_ops.size());
  Eigen::MatrixXcd tail = Eigen::MatrixXcd::Identity(d, d);  // U_{>k}^dagger
  Eigen::MatrixXcd h;
  std::size_t next = ops;
  for (std::size_t r = rot_ops.size(); r-- > 0;) {
    const std::size_t k = rot_ops[r];
    for (std::size_t q = next; q-- > k + 1;) apply_op(a, q, theta, tail, true);
    next = k + 1;
    apply_generator(a, static_cast<int>(r), prefix[r], h);
    out[r] = cplx(0, -1) * (tail.adjoint() * h);
  }
  return out;
}

StateVector basis_state(int num_qubits, std::size_t index) {
  require(num_qubits >= 1 && num_qubits <= 30, "qubit count out of range");
  const std::size_t d = std::size_t{1} << num_qubits;
  require(index < d, "basis index out of range");
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1;
  return v;
}

}  // namespace qop
