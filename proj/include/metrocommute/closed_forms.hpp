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

// Closed-form reference values for the worked examples. Only core.hpp may be used here:
// these are the oracles the state/SLD/condition pipeline is checked against.

#include "metrocommute/core.hpp"

namespace metrocommute::closed_form {

inline double pi() { return std::acos(-1.0); }

// Single qubit: W = (2 tr rho^2 - 1) Gamma with Gamma_ij = 4 tr[rho [H_i, H_j]].
inline Complex qubit_weak(const Matrix& rho, const Matrix& hi, const Matrix& hj) {
  const double purity = (rho * rho).trace().real();
  return (2.0 * purity - 1.0) * 4.0 * (rho * (hi * hj - hj * hi)).trace();
}

// White-noise state p psi + (1-p) 1/D.
inline Complex white_noise_weak(const Vector& psi, double p, Eigen::Index dim, const Matrix& hi, const Matrix& hj) {
  const double d = static_cast<double>(dim);
  const double denom = p * (d - 2.0) + 2.0;
  const Complex expect = psi.dot((hi * hj - hj * hi) * psi);
  return 4.0 * p * p * p * d * d / (denom * denom) * expect;
}

// Qutrit rank-two family with commuting Hamiltonians.
inline Complex qutrit_weak(double alpha, double lambda) {
  const Complex h(0.0, -6.0 * std::sqrt(3.0) * (1.0 - lambda) * lambda * (2.0 * lambda - 1.0));
  const double csc = 1.0 / std::sin(alpha);
  const double radicand = std::max(0.0, std::cos(2.0 * alpha + pi()) * std::pow(csc, 4));
  return h * (1.0 - std::cos(4.0 * alpha)) * std::sqrt(radicand);
}

inline Complex separable_weak(double p) { return Complex(0.0, -8.0 * (1.0 - p) * p * p); }

inline double separable_min_eigenvalue(double p) { return 0.5 * (1.0 - std::sqrt(1.0 - 3.0 * (1.0 - p) * p)); }

// W_12 = W_23 = -W_13 for the three-qubit cyclic-phase mixture.
inline Complex cyclic_phase_weak(double lambda) {
  return Complex(0.0, 64.0 * (1.0 - lambda) * lambda * (1.0 - 2.0 * lambda) / (3.0 * std::sqrt(3.0)));
}

// Rank-two W for commuting generators: 4 gamma_12 tr[S (Pi_1 (x) Pi_2)(H_i (x) H_j - H_j (x) H_i)],
// evaluated on the doubled space from an independent eigendecomposition.
inline Complex rank_two_weak(const Matrix& rho, const Matrix& hi, const Matrix& hj) {
  const EigenDecomposition eig = hermitian_eig(HermitianOperator(rho));
  const double lam = eig.values[0];
  const double gamma = 4.0 * (1.0 - 2.0 * lam) * lam * (1.0 - lam);
  const Matrix p1 = eig.vectors.col(0) * eig.vectors.col(0).adjoint();
  const Matrix p2 = eig.vectors.col(1) * eig.vectors.col(1).adjoint();
  const Matrix s = swap_operator(static_cast<int>(rho.rows())).matrix();
  const Matrix doubled = s * kron(p1, p2) * (kron(hi, hj) - kron(hj, hi));
  return 4.0 * gamma * doubled.trace();
}

// Entries of the (1,2) partial-commutator operator for the qutrit family with H_1 = a h + a' h'.
inline double qutrit_partial_s(double a, double alpha) {
  return -12.0 * a * std::sqrt(3.0) * std::pow(std::cos(alpha), 2) * std::cos(2.0 * alpha);
}

inline double qutrit_partial_t(double a, double alpha) {
  const double cot = std::cos(alpha) / std::sin(alpha);
  return 12.0 * a * std::sin(alpha) * std::pow(std::cos(alpha), 3) * std::sqrt(std::max(0.0, 6.0 - 6.0 * cot * cot));
}

inline Matrix qutrit_partial(double a, double alpha) {
  const double s = qutrit_partial_s(a, alpha);
  const double t = qutrit_partial_t(a, alpha);
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = s;
  m(0, 2) = t;
  m(1, 0) = -s;
  m(2, 0) = -t;
  return m;
}

// At alpha = pi/4 the one-sided operator has the single element (2,3) (1-indexed).
inline Matrix qutrit_one_sided_degenerate(double a, double lambda) {
  Matrix m = Matrix::Zero(3, 3);
  m(1, 2) = 3.0 * a * std::sqrt(3.0) * (1.0 - 2.0 * lambda);
  return m;
}

// QFIM at alpha = pi/4, a = 0, a' = 1 under F = (1/2) tr[rho {L_i, L_j}].
inline RealMatrix qutrit_qfim(double lambda) {
  const double c = 1.5 * std::pow(1.0 - 2.0 * lambda, 2);
  RealMatrix f(2, 2);
  f << c, std::sqrt(3.0) * c, std::sqrt(3.0) * c, 3.0 * c;
  return f;
}

// The same QFIM in the form usually quoted for this family; it is twice qutrit_qfim.
inline RealMatrix qutrit_qfim_as_stated(double lambda) {
  const double c = std::pow(1.0 - 2.0 * lambda, 2);
  RealMatrix f(2, 2);
  f << 3.0 * c, 3.0 * std::sqrt(3.0) * c, 3.0 * std::sqrt(3.0) * c, 9.0 * c;
  return f;
}

inline double bell_rank_three_f(double l1, double l2, double ax, double az, double bx, double bz) {
  return 4.0 * (1.0 - l1) * l1 * (ax * bz - az * bx) / ((1.0 - l2) * (l1 + l2));
}

inline double bell_rank_three_g(double l1, double l2, double ax, double az, double bx, double bz) {
  return 4.0 * l1 * (1.0 - l1 - 2.0 * l2) * (ax * bz + az * bx) / ((1.0 - l2) * (l1 + l2));
}

inline Matrix bell_rank_three_partial(double f) {
  Matrix m(4, 4);
  m << 0, f, f, 0, -f, 0, 0, f, -f, 0, 0, f, 0, -f, -f, 0;
  return m;
}

inline Matrix bell_rank_three_kernel_support(double g) {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 0) = g;
  m(1, 3) = g;
  m(2, 0) = -g;
  m(2, 3) = -g;
  return m;
}

// QFIM for a_x = b_x = 1, a_z = b_z = 0 under F = (1/2) tr[rho {L_i, L_j}].
inline RealMatrix bell_rank_three_qfim(double l1, double l2) {
  const double c = 1.0 - l2 - 4.0 * l1 * (1.0 - l1 - l2);
  const double k = 4.0 / (1.0 - l2);
  RealMatrix f(2, 2);
  f << k * c, k * (c - 2.0 * (1.0 - l2) * l2), k * (c - 2.0 * (1.0 - l2) * l2), k * c;
  return f;
}

// As usually quoted: twice bell_rank_three_qfim.
inline RealMatrix bell_rank_three_qfim_as_stated(double l1, double l2) { return 2.0 * bell_rank_three_qfim(l1, l2); }

inline RealMatrix qutrit_bell_qfim(double lambda) {
  RealMatrix f(2, 2);
  f << 1, -1, -1, 1;
  return 1.5 * (1.0 + 3.0 * lambda) * f;
}

// S_12 for the isotropic Bell-state family with H_1 = s_A (x) 1, H_2 = 1 (x) s_A (commuting).
inline Matrix isotropic_strong(double lambda, Eigen::Index dim, double ax, double az) {
  const double rest = (1.0 - lambda) / static_cast<double>(dim - 1);
  const double eta = (lambda - rest) / (lambda + rest);
  Matrix pattern(4, 4);
  pattern << 0, -1, 1, 0, 1, 0, 0, 1, -1, 0, 0, -1, 0, -1, 1, 0;
  return 4.0 * eta * eta * ax * az * pattern;
}

}  // namespace metrocommute::closed_form
