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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qop/error.hpp"
#include "qop/simulate.hpp"

using namespace qop;

namespace {

PauliSum term(const char* s, const mpq_class& c = 1) { return PauliSum(PauliTerm::parse(s), c); }

AnsatzSpec single(const PauliSum& g) { return AnsatzSpec(g.num_qubits(), {}, {Slot::param(g)}, 1); }

StateVector zero(int n) { return basis_state(n, 0); }

}  // namespace

TEST_CASE("zero angles leave the HVA input unchanged") {
  for (int layers : {1, 3, 7}) {
    const AnsatzSpec a = AnsatzSpec::hva_tfim(2, layers, Boundary::kOpen);
    const StateVector out = apply_ansatz(a, ParamVector::Zero(a.num_params()), a.input_state());
    CHECK((out - oracle::plus_state(2)).norm() < 1e-15);
  }
}

TEST_CASE("Rabi flop: e^{-i pi X/2} |0> = -i |1>") {
  const AnsatzSpec a = single(term("X", mpq_class(1, 2)));
  const StateVector out = apply_ansatz(a, ParamVector::Constant(1, M_PI), zero(1));
  CHECK(std::abs(out(0)) < 1e-15);
  CHECK(std::abs(out(1) - cplx(0, -1)) < 1e-15);
}

TEST_CASE("HVA matches the dense exponential product") {
  for (bool closed : {false, true}) {
    const int n = closed ? 3 : 2;
    const AnsatzSpec a =
        AnsatzSpec::hva_tfim(n, 2, closed ? Boundary::kClosed : Boundary::kOpen);
    ParamVector theta(4);
    theta << 0.3, 0.7, -1.1, 2.5;
    const Eigen::MatrixXcd u = oracle::hva_unitary(n, closed, theta);
    const StateVector out = apply_ansatz(a, theta, a.input_state());
    CHECK((out - u * oracle::plus_state(n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((full_unitary(a, theta) - u).norm() < 1e-10);
  }
}

TEST_CASE("HEA at zero angles is the fixed CZ pattern") {
  const AnsatzSpec a2 = AnsatzSpec::hea(2, 1);
  CHECK((full_unitary(a2, ParamVector::Zero(a2.num_params())) - oracle::cz(2, 0, 1)).norm() <
        1e-14);
  const AnsatzSpec a3 = AnsatzSpec::hea(3, 2);
  const Eigen::MatrixXcd layer = oracle::cz(3, 1, 2) * oracle::cz(3, 0, 1);
  CHECK((full_unitary(a3, ParamVector::Zero(a3.num_params())) - layer * layer).norm() < 1e-14);
}

TEST_CASE("HEA matches a dense gate-by-gate product") {
  const int n = 3;
  const AnsatzSpec a = AnsatzSpec::hea(n, 1);
  std::mt19937_64 rng(5);
  const ParamVector theta = oracle::random_angles(a.num_params(), rng);
  auto rot = [&](int q, char axis, double t) {
    std::string s(n, 'I');
    s[static_cast<std::size_t>(q)] = axis;
    return oracle::expmh(0.5 * oracle::pauli(s), t);
  };
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
  int k = 0;
  for (int q = 0; q < n; ++q) {
    u = rot(q, 'Y', theta(k++)) * u;
    u = rot(q, 'X', theta(k++)) * u;
  }
  u = oracle::cz(n, 0, 1) * u;
  for (int q : {0, 1}) {
    u = rot(q, 'Y', theta(k++)) * u;
    u = rot(q, 'X', theta(k++)) * u;
  }
  u = oracle::cz(n, 1, 2) * u;
  for (int q : {1, 2}) {
    u = rot(q, 'Y', theta(k++)) * u;
    u = rot(q, 'X', theta(k++)) * u;
  }
  REQUIRE(k == a.num_params());
  CHECK((full_unitary(a, theta) - u).norm() < 1e-12);
}

TEST_CASE("norm is preserved") {
  std::mt19937_64 rng(9);
  for (const AnsatzSpec& a : {AnsatzSpec::hva_tfim(4, 5, Boundary::kClosed), AnsatzSpec::hea(4, 3)}) {
    for (int t = 0; t < 5; ++t) {
      const StateVector out = apply_ansatz(a, oracle::random_angles(a.num_params(), rng), a.input_state());
      CHECK(std::abs(out.norm() - 1) < 1e-12);
    }
  }
}

TEST_CASE("layer periodicity: L layers equal L single-layer applications") {
  std::mt19937_64 rng(13);
  const AnsatzSpec a = AnsatzSpec::hva_tfim(3, 4, Boundary::kOpen);
  const AnsatzSpec one = a.with_layers(1);
  const ParamVector theta = oracle::random_angles(a.num_params(), rng);
  StateVector psi = a.input_state();
  for (int l = 0; l < 4; ++l) psi = apply_ansatz(one, theta.segment(2 * l, 2), psi);
  CHECK((psi - apply_ansatz(a, theta, a.input_state())).norm() < 1e-13);
}

TEST_CASE("ZZ rotation equals CNOT Rz CNOT") {
  const double beta = 0.83;
  const AnsatzSpec zz = single(term("ZZ", mpq_class(1, 2)));
  const Eigen::MatrixXcd rz1 = oracle::expmh(0.5 * oracle::pauli("IZ"), beta);
  const Eigen::MatrixXcd dec = oracle::cnot(2, 0, 1) * rz1 * oracle::cnot(2, 0, 1);
  CHECK((full_unitary(zz, ParamVector::Constant(1, beta)) - dec).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("term shifts move one term only") {
  const AnsatzSpec a = single(term("XI", mpq_class(1, 2)) + term("IZ", mpq_class(1, 3)));
  const ParamVector theta = ParamVector::Constant(1, 0.4);
  // Terms are stored in map order; find which one is IZ.
  const auto& terms = a.program().front().terms;
  const int iz = terms[0].second.to_string() == "IZ" ? 0 : 1;
  const TermShift s[1] = {{0, iz, 0.25}};
  const Eigen::MatrixXcd expect = oracle::expmh(oracle::pauli("XI") / 2.0, 0.4) *
                                  oracle::expmh(oracle::pauli("IZ") / 3.0, 0.65);
  CHECK((full_unitary(a, theta, s) - expect).norm() < 1e-13);
}

TEST_CASE("Z generator on |0>: the derivative is a pure phase direction") {
  const AnsatzSpec a = single(term("Z"));
  const ParamVector theta = ParamVector::Constant(1, 0.37);
  const StateVector d = derivative_state(a, theta, zero(1), 0);
  const StateVector psi = apply_ansatz(a, theta, zero(1));
  CHECK(std::abs(d(0) - cplx(0, -1) * std::exp(cplx(0, -0.37))) < 1e-15);
  CHECK(std::abs(d.squaredNorm() - 1) < 1e-15);
  CHECK(std::abs(std::norm(d.dot(psi)) - 1) < 1e-15);
}

TEST_CASE("X/2 generator on |0> at zero: derivative -i/2 |1>") {
  const AnsatzSpec a = single(term("X", mpq_class(1, 2)));
  const ParamVector theta = ParamVector::Zero(1);
  const StateVector d = derivative_state(a, theta, zero(1), 0);
  const StateVector fd = oracle::fd_state(
      [&](const Eigen::VectorXd& t) { return apply_ansatz(a, t, zero(1)); }, theta, 0);
  CHECK(std::abs(d(1) - cplx(0, -0.5)) < 1e-15);
  CHECK((d - fd).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("derivative states match finite differences") {
  std::mt19937_64 rng(21);
  for (const AnsatzSpec& a : {AnsatzSpec::hva_tfim(3, 2, Boundary::kOpen), AnsatzSpec::hea(3, 1)}) {
    const ParamVector theta = oracle::random_angles(a.num_params(), rng);
    const Eigen::MatrixXcd all = derivative_states(a, theta, a.input_state());
    for (int j = 0; j < a.num_params(); ++j) {
      const StateVector fd = oracle::fd_state(
          [&](const Eigen::VectorXd& t) { return apply_ansatz(a, t, a.input_state()); }, theta, j);
      const StateVector d = derivative_state(a, theta, a.input_state(), j);
      CHECK((d - fd).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((all.col(j) - d).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("unitary derivatives match finite differences") {
  std::mt19937_64 rng(22);
  const AnsatzSpec a = AnsatzSpec::hea(2, 1);
  const ParamVector theta = oracle::random_angles(a.num_params(), rng);
  const auto du = unitary_derivatives(a, theta);
  REQUIRE(static_cast<int>(du.size()) == a.num_params());
  for (int j = 0; j < a.num_params(); ++j) {
    ParamVector p = theta, m = theta;
    p(j) += 1e-5;
    m(j) -= 1e-5;
    const Eigen::MatrixXcd fd = (full_unitary(a, p) - full_unitary(a, m)) / 2e-5;
    CHECK((du[static_cast<std::size_t>(j)] - fd).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("parameter validation") {
  const AnsatzSpec a = AnsatzSpec::hva_tfim(2, 1, Boundary::kOpen);
  CHECK_THROWS_AS(apply_ansatz(a, ParamVector::Zero(3), a.input_state()), ValidationError);
  ParamVector bad = ParamVector::Zero(2);
  bad(1) = std::nan("");
  CHECK_THROWS_AS(apply_ansatz(a, bad, a.input_state()), ValidationError);
  CHECK_THROWS_AS(apply_ansatz(a, ParamVector::Zero(2), StateVector(StateVector::Zero(8))),
                  ValidationError);
  CHECK_THROWS_AS(basis_state(2, 4), ValidationError);
}
