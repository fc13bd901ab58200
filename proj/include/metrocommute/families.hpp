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

// Named states and Hamiltonians used by the worked examples and by descriptor files.

#include "metrocommute/core.hpp"
#include "metrocommute/states.hpp"

#include <string_view>

namespace metrocommute::family {

inline Matrix pauli(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ValidationError(std::string("unknown Pauli label '") + c + "'");
  }
  return m;
}

// "XIZ" -> X (x) 1 (x) Z.
inline Matrix pauli_string(std::string_view labels) {
  if (labels.empty()) throw ValidationError("empty Pauli string");
  Matrix out = pauli(labels[0]);
  for (std::size_t k = 1; k < labels.size(); ++k) out = kron(out, pauli(labels[k]));
  return out;
}

inline Matrix spin(double x, double y, double z) { return x * pauli('X') + y * pauli('Y') + z * pauli('Z'); }

// op acting on `site` of `sites` identical subsystems.
inline Matrix local(const Matrix& op, int site, int sites) {
  if (site < 0 || site >= sites) throw ValidationError("local: site index out of range");
  const Eigen::Index d = op.rows();
  Matrix out = site == 0 ? op : Matrix::Identity(d, d);
  for (int s = 1; s < sites; ++s) out = kron(out, s == site ? op : Matrix::Identity(d, d));
  return out;
}

inline Matrix qutrit_sigma() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = Complex(0, -1);
  m(1, 0) = Complex(0, 1);
  return std::sqrt(1.5) * m;
}

inline Matrix qutrit_diag() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 2) = -2;
  return m / std::sqrt(2.0);
}

inline Matrix qutrit_h() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return std::sqrt(1.5) * m;
}

inline Matrix qutrit_hprime() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return std::sqrt(1.5) * m;
}

inline Vector basis_state(Eigen::Index dim, Eigen::Index k) {
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return v;
}

inline Vector ket(std::initializer_list<std::pair<std::string_view, Complex>> terms, int local_dim = 2) {
  const std::size_t n = terms.begin()->first.size();
  const auto dim = static_cast<Eigen::Index>(std::pow(local_dim, n));
  Vector v = Vector::Zero(dim);
  for (const auto& [digits, amp] : terms) {
    Eigen::Index idx = 0;
    for (char c : digits) idx = idx * local_dim + (c - '0');
    v[idx] += amp;
  }
  return v.normalized();
}

// Qutrit pair sin(a) sin(b_k)|0> + sin(a) cos(b_k)|1> + cos(a)|2>, b_1 = -b_2 = (pi - acos(cot^2 a))/2.
inline std::pair<Vector, Vector> qutrit_pair(double alpha) {
  const double pi = std::acos(-1.0);
  const double cot2 = std::pow(std::cos(alpha) / std::sin(alpha), 2);
  if (!(alpha >= pi / 4 - 1e-12 && alpha <= 3 * pi / 4 + 1e-12) || cot2 > 1.0 + 1e-9) {
    throw ValidationError("qutrit_pair: alpha must satisfy cot^2(alpha) <= 1");
  }
  const double beta = 0.5 * (pi - std::acos(std::min(1.0, cot2)));
  auto make = [&](double b) {
    Vector v(3);
    v << std::sin(alpha) * std::sin(b), std::sin(alpha) * std::cos(b), std::cos(alpha);
    return v;
  };
  return {make(beta), make(-beta)};
}

inline DensityMatrix rank_two(const Vector& psi1, const Vector& psi2, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("rank_two: lambda must lie in [0, 1]");
  return density_from_eigpairs({{lambda, psi1}, {1.0 - lambda, psi2}});
}

inline DensityMatrix qutrit_rank_two(double alpha, double lambda) {
  const auto [a, b] = qutrit_pair(alpha);
  return rank_two(a, b, lambda);
}

// p|00><00| + (1-p)|++><++|.
inline DensityMatrix separable_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("separable_mixture: p must lie in [0, 1]");
  const double h = 0.5;
  return density_from_eigpairs({{p, ket({{"00", 1.0}})}, {1.0 - p, ket({{"00", h}, {"01", h}, {"10", h}, {"11", h}})}});
}

inline std::pair<Vector, Vector> cyclic_phase_pair() {
  const Complex w = std::exp(Complex(0.0, 2.0 * std::acos(-1.0) / 3.0));
  return {ket({{"001", 1.0}, {"010", w}, {"100", w * w}}), ket({{"001", 1.0}, {"010", w * w}, {"100", w}})};
}

inline DensityMatrix cyclic_phase_mixture(double lambda) {
  const auto [a, b] = cyclic_phase_pair();
  return rank_two(a, b, lambda);
}

// Two-qubit marginal of the normalised |001> + w|010> + w^2|100>; which = "AB", "BC" or "CA".
inline DensityMatrix cyclic_phase_marginal(std::string_view which) {
  const Vector psi = cyclic_phase_pair().first;
  const Matrix full = psi * psi.adjoint();
  std::vector<int> keep;
  if (which == "AB") keep = {0, 1};
  else if (which == "BC") keep = {1, 2};
  else if (which == "CA") keep = {0, 2};
  else throw ValidationError("cyclic_phase_marginal: expected AB, BC or CA");
  Matrix reduced = partial_trace(full, {2, 2, 2}, keep);
  if (which == "CA") {
    // partial_trace keeps ascending order (A, C); reorder to (C, A).
    reduced = swap_operator(2).matrix() * reduced * swap_operator(2).matrix();
  }
  return DensityMatrix(reduced);
}

// lambda_1 Phi+ + lambda_2 Phi- + (1 - lambda_1 - lambda_2) Psi+.
inline DensityMatrix bell_rank_three(double lambda1, double lambda2) {
  const double rest = 1.0 - lambda1 - lambda2;
  if (!(lambda1 >= 0 && lambda2 >= 0 && rest >= -1e-12)) throw ValidationError("bell_rank_three: invalid weights");
  return bell_diagonal({lambda1, lambda2, std::max(0.0, rest)}, 2).state;
}

// lambda (|01>+|10>)/sqrt2 + (1-lambda) (|12>+|21>)/sqrt2 on two qutrits.
inline DensityMatrix qutrit_bell_pair(double lambda) {
  const double s = 1.0 / std::sqrt(2.0);
  return rank_two(ket({{"01", s}, {"10", s}}, 3), ket({{"12", s}, {"21", s}}, 3), lambda);
}

// lambda on psi, (1 - lambda)/(D - 1) on its orthogonal complement.
inline DensityMatrix isotropic(const Vector& psi, double lambda) {
  const Eigen::Index d = psi.size();
  if (d < 2) throw ValidationError("isotropic: dimension must be >= 2");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("isotropic: lambda must lie in [0, 1]");
  const Vector v = psi.normalized();
  const double rest = (1.0 - lambda) / static_cast<double>(d - 1);
  const Matrix proj = v * v.adjoint();
  return DensityMatrix(lambda * proj + rest * (Matrix::Identity(d, d) - proj));
}

inline Vector psi_plus() { return ket({{"01", 1.0}, {"10", 1.0}}); }

}  // namespace metrocommute::family
