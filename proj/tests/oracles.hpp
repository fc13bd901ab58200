// Copyright 2026 The metrocommute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-side reference computations. Nothing here calls the spectral machinery under test:
// exponentials are Taylor series, derivatives are finite differences, SLDs come from a
// vectorised least-squares solve.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// exp(A) by scaling and squaring over a truncated Taylor series.
inline Matrix expm(const Matrix& a) {
  const double n = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (n / std::pow(2.0, s) > 0.25) ++s;
  const Matrix b = a / std::pow(2.0, s);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

inline Matrix unitary(const std::vector<Matrix>& hams, const std::vector<double>& theta) {
  Matrix k = Matrix::Zero(hams[0].rows(), hams[0].cols());
  for (std::size_t i = 0; i < hams.size(); ++i) k += theta[i] * hams[i];
  return expm(Complex(0.0, -1.0) * k);
}

inline Matrix encoded_state(const Matrix& rho, const std::vector<Matrix>& hams, const std::vector<double>& theta) {
  const Matrix u = unitary(hams, theta);
  return u * rho * u.adjoint();
}

// Central difference of rho_theta along theta_i.
inline Matrix derivative(const Matrix& rho, const std::vector<Matrix>& hams, std::vector<double> theta, std::size_t i,
                         double h = 1e-5) {
  std::vector<double> plus = theta, minus = theta;
  plus[i] += h;
  minus[i] -= h;
  return (encoded_state(rho, hams, plus) - encoded_state(rho, hams, minus)) / (2.0 * h);
}

// i U^dagger dU/dtheta_i by central difference.
inline Matrix generator(const std::vector<Matrix>& hams, const std::vector<double>& theta, std::size_t i, double h = 1e-5) {
  std::vector<double> plus = theta, minus = theta;
  plus[i] += h;
  minus[i] -= h;
  const Matrix du = (unitary(hams, plus) - unitary(hams, minus)) / (2.0 * h);
  return Complex(0.0, 1.0) * unitary(hams, theta).adjoint() * du;
}

// Minimum-norm solution of (L rho + rho L)/2 = drho via the vectorised linear system.
inline Matrix sld(const Matrix& rho, const Matrix& drho) {
  const Eigen::Index d = rho.rows();
  const Matrix id = Matrix::Identity(d, d);
  Matrix a = Matrix::Zero(d * d, d * d);
  // column-major vec: vec(rho L) = (1 (x) rho) vec L, vec(L rho) = (rho^T (x) 1) vec L
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      a.block(i * d, j * d, d, d) = 0.5 * (id(i, j) * rho + rho(j, i) * id);
    }
  }
  const Vector b = Eigen::Map<const Vector>(drho.data(), d * d);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(1e-10);
  const Vector x = cod.solve(b);
  Matrix l = Eigen::Map<const Matrix>(x.data(), d, d);
  return 0.5 * (l + l.adjoint());
}

inline RealMatrix qfim(const Matrix& rho, const std::vector<Matrix>& slds) {
  const auto m = static_cast<Eigen::Index>(slds.size());
  RealMatrix f(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) f(i, j) = 0.5 * (rho * (slds[i] * slds[j] + slds[j] * slds[i])).trace().real();
  }
  return f;
}

inline double trace_norm(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

// Partial trace by explicit index loops for a bipartite split d_a x d_b, keeping A or B.
inline Matrix trace_out_b(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline Matrix trace_out_a(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace oracle
