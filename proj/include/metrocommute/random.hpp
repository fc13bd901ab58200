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

// Seeded generators for random states, Hamiltonians and measurements.

#include "metrocommute/core.hpp"
#include "metrocommute/states.hpp"

#include <random>

namespace metrocommute::random {

using Rng = std::mt19937_64;

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int integer(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

// GUE-like draw scaled to unit Frobenius norm.
inline Matrix hermitian(Rng& rng, Eigen::Index d) {
  const Matrix a = ginibre(rng, d, d);
  const Matrix h = 0.5 * (a + a.adjoint());
  return h / h.norm();
}

inline Matrix real_symmetric(Rng& rng, Eigen::Index d) {
  Matrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) a(i, j) = normal(rng);
  }
  const Matrix h = 0.5 * (a + a.transpose());
  return h / h.norm();
}

inline Matrix unitary(Rng& rng, Eigen::Index d) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(rng, d, d));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex z = r(k, k);
    if (std::abs(z) > 0) q.col(k) *= z / std::abs(z);
  }
  return q;
}

inline Vector pure(Rng& rng, Eigen::Index d) { return ginibre(rng, d, 1).col(0).normalized(); }

// Rank-r state A A^dagger / tr with A of size d x r.
inline DensityMatrix state(Rng& rng, Eigen::Index d, Eigen::Index rank) {
  const Matrix a = ginibre(rng, d, rank);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

inline std::vector<double> simplex(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(uniform(rng, 1e-12, 1.0));
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

// Rank-one POVM G^{-1/2} a_k a_k^dagger G^{-1/2} with G = sum_k a_k a_k^dagger.
inline PovmSet povm(Rng& rng, Eigen::Index d, Eigen::Index outcomes) {
  const Matrix a = ginibre(rng, d, outcomes);
  const EigenDecomposition g = hermitian_eig(HermitianOperator(a * a.adjoint()));
  const Matrix inv_root = g.vectors * g.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * g.vectors.adjoint();
  std::vector<HermitianOperator> effects;
  for (Eigen::Index k = 0; k < outcomes; ++k) {
    const Vector v = inv_root * a.col(k);
    effects.emplace_back(v * v.adjoint());
  }
  return PovmSet(std::move(effects));
}

}  // namespace metrocommute::random
