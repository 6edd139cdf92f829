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

// Reference implementations used only by tests. Nothing here calls into the
// library's simulation or algebra code: matrices come from Kronecker products
// of 2x2 blocks, exponentials from a dense eigendecomposition, derivatives
// from central differences.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli2(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad pauli");
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Qubit 0 is the least significant bit of the basis index and the leftmost
// character of the string, so the Kronecker product runs right to left.
inline Mat pauli(const std::string& s) {
  Mat out = Mat::Identity(1, 1);
  for (char c : s) out = kron(pauli2(c), out);
  return out;
}

/// e^{-i t H} for Hermitian H.
inline Mat expmh(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    phases(k) = std::exp(cplx(0, -t * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat cz(int n, int a, int b) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat m = Mat::Identity(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    if (((k >> a) & 1) && ((k >> b) & 1)) m(k, k) = -1;
  return m;
}

inline Mat cnot(int n, int control, int target) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat m = Mat::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index out = ((k >> control) & 1) ? (k ^ (Eigen::Index{1} << target)) : k;
    m(out, k) = 1;
  }
  return m;
}

inline Vec plus_state(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  return Vec::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

/// 1/2 sum Z_i Z_{i+1} (periodic when closed) and 1/2 sum X_i as dense matrices.
inline Mat tfim_zz(int n, bool closed) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat m = Mat::Zero(d, d);
  const int bonds = closed ? n : n - 1;
  for (int i = 0; i < bonds; ++i) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(i)] = 'Z';
    s[static_cast<std::size_t>((i + 1) % n)] = 'Z';
    m += 0.5 * pauli(s);
  }
  return m;
}

inline Mat tfim_x(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat m = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(i)] = 'X';
    m += 0.5 * pauli(s);
  }
  return m;
}

/// HVA circuit as a dense product: each layer ZZ slot first, then X slot.
inline Mat hva_unitary(int n, bool closed, const Eigen::VectorXd& theta) {
  const Mat zz = tfim_zz(n, closed), x = tfim_x(n);
  Mat u = Mat::Identity(zz.rows(), zz.cols());
  for (Eigen::Index k = 0; k + 1 < theta.size(); k += 2) {
    u = expmh(zz, theta(k)) * u;
    u = expmh(x, theta(k + 1)) * u;
  }
  return u;
}

/// Dense -sum Z_i Z_{i+1} - h sum X_i.
inline Mat tfim_hamiltonian(int n, bool closed, double h) {
  return -2.0 * tfim_zz(n, closed) - 2.0 * h * tfim_x(n);
}

/// Central-difference gradient of f.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd p = x, m = x;
    p(i) += h;
    m(i) -= h;
    g(i) = (f(p) - f(m)) / (2 * h);
  }
  return g;
}

/// Central-difference Hessian of f.
inline Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x, double h = 1e-4) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      auto at = [&](double si, double sj) {
        Eigen::VectorXd y = x;
        y(i) += si * h;
        y(j) += sj * h;
        return f(y);
      };
      out(i, j) = out(j, i) =
          (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  }
  return out;
}

/// Central-difference derivative of a vector-valued map.
inline Vec fd_state(const std::function<Vec(const Eigen::VectorXd&)>& f,
                    const Eigen::VectorXd& x, Eigen::Index j, double h = 1e-5) {
  Eigen::VectorXd p = x, m = x;
  p(j) += h;
  m(j) -= h;
  return (f(p) - f(m)) / (2 * h);
}

/**
 * Dimension of the real Lie algebra generated by i*gens, by brute-force
 * Gram-Schmidt over vectorized dense matrices. Small n only.
 */
inline std::size_t dense_closure_dim(const std::vector<Mat>& gens, double tol = 1e-9) {
  std::vector<Mat> basis;
  std::vector<Eigen::VectorXd> ortho;
  auto as_real = [](const Mat& m) {
    Eigen::VectorXd v(2 * m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      v(2 * k) = m.data()[k].real();
      v(2 * k + 1) = m.data()[k].imag();
    }
    return v;
  };
  auto try_add = [&](const Mat& m) {
    Eigen::VectorXd v = as_real(m);
    const double scale = v.norm();
    if (scale < tol) return false;
    for (const auto& q : ortho) v -= q.dot(v) * q;
    if (v.norm() < tol * scale) return false;
    ortho.push_back(v.normalized());
    basis.push_back(m);
    return true;
  };
  for (const auto& g : gens) try_add(cplx(0, 1) * g);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) try_add(basis[i] * basis[j] - basis[j] * basis[i]);
  return basis.size();
}

inline Eigen::VectorXd random_angles(Eigen::Index m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  Eigen::VectorXd t(m);
  for (Eigen::Index i = 0; i < m; ++i) t(i) = u(rng);
  return t;
}

inline int rank_of(const Eigen::MatrixXd& m, double tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (top == 0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    if (es.eigenvalues()(k) > tol * top) ++r;
  return r;
}

}  // namespace oracle
