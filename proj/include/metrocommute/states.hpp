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

#include "metrocommute/core.hpp"

#include <utility>

namespace metrocommute {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kStateTol = 1e-10;
inline constexpr int kMaxCopyDim = 256;

struct SpectralData {
  RealVector eigenvalues;  // descending, entries <= rank_tol replaced by exact zeros
  Matrix eigenvectors;
  int rank = 0;
  double rank_tol = kRankTol;
  Matrix support_projector;
  Matrix kernel_projector;

  Eigen::Index dim() const { return eigenvalues.size(); }
  Matrix projector(Eigen::Index k) const { return eigenvectors.col(k) * eigenvectors.col(k).adjoint(); }
  // V diag(lambda) V^dagger, the state as seen through its cached spectrum.
  Matrix assemble() const { return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint(); }
};

namespace detail {

// Sorts descending, clamps sub-tolerance eigenvalues and builds the projectors.
inline SpectralData make_spectral(RealVector values, Matrix vectors, double rank_tol) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });
  SpectralData s;
  s.rank_tol = rank_tol;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(vectors.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v = values[order[k]];
    s.eigenvalues[k] = v > rank_tol ? v : 0.0;
    s.eigenvectors.col(k) = vectors.col(order[k]);
    if (v > rank_tol) ++s.rank;
  }
  const Matrix& v = s.eigenvectors;
  s.support_projector = v.leftCols(s.rank) * v.leftCols(s.rank).adjoint();
  s.kernel_projector = Matrix::Identity(n, n) - s.support_projector;
  return s;
}

}  // namespace detail

class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m, double rank_tol = kRankTol) : op_(validated(m)) {
    const EigenDecomposition eig = hermitian_eig(op_);
    if (eig.values.minCoeff() < -kStateTol) {
      throw ValidationError("state is not positive semidefinite (min eigenvalue " +
                            std::to_string(eig.values.minCoeff()) + ")");
    }
    spec_ = detail::make_spectral(eig.values, eig.vectors, rank_tol);
  }

  // Builds from a trusted orthonormal eigenbasis; the operator is reassembled from it.
  static DensityMatrix from_spectrum(const RealVector& values, const Matrix& vectors, double rank_tol = kRankTol) {
    if (values.size() != vectors.cols() || vectors.rows() != vectors.cols()) {
      throw ValidationError("spectrum and eigenvector dimensions disagree");
    }
    if (values.minCoeff() < -kStateTol) throw ValidationError("state is not positive semidefinite");
    // Clamped sub-tolerance eigenvalues may shift the sum by up to dim * rank_tol.
    if (std::abs(values.sum() - 1.0) > kStateTol * std::max<double>(1.0, values.size())) {
      throw ValidationError("state trace must equal 1 (got trace " + std::to_string(values.sum()) + ")");
    }
    DensityMatrix out;
    out.spec_ = detail::make_spectral(values, vectors, rank_tol);
    out.op_ = HermitianOperator(vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint());
    return out;
  }

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const SpectralData& spectrum() const { return spec_; }
  Eigen::Index dim() const { return op_.dim(); }
  int rank() const { return spec_.rank; }
  double purity() const { return (matrix() * matrix()).trace().real(); }

 private:
  DensityMatrix() = default;

  static HermitianOperator validated(const Matrix& m) {
    HermitianOperator h(m);
    const Complex tr = h.matrix().trace();
    if (std::abs(tr - 1.0) > kStateTol) {
      throw ValidationError("state trace must equal 1 (got trace " + std::to_string(tr.real()) + ")");
    }
    return h;
  }

  HermitianOperator op_;
  SpectralData spec_;
};

class PovmSet {
 public:
  explicit PovmSet(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw ValidationError("POVM needs at least one effect");
    const Eigen::Index d = effects_.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : effects_) {
      if (e.dim() != d) throw ValidationError("POVM effects have mismatched dimensions");
      if (!is_psd(e, kStateTol)) throw ValidationError("POVM effect is not positive semidefinite");
      sum += e.matrix();
    }
    if ((sum - Matrix::Identity(d, d)).norm() > kStateTol) {
      throw ValidationError("POVM effects do not sum to the identity");
    }
  }

  // Rank-one projective measurement onto the columns of an orthonormal basis.
  static PovmSet projective(const Matrix& basis) {
    std::vector<HermitianOperator> effects;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      effects.emplace_back(basis.col(k) * basis.col(k).adjoint());
    }
    return PovmSet(std::move(effects));
  }

  const std::vector<HermitianOperator>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }
  Eigen::Index dim() const { return effects_.front().dim(); }

 private:
  std::vector<HermitianOperator> effects_;
};

namespace detail {

inline double checked_weight_sum(const std::vector<double>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("weights must be finite and nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStateTol) {
    throw ValidationError("weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
  return sum;
}

}  // namespace detail

inline DensityMatrix density_from_eigpairs(const std::vector<std::pair<double, Vector>>& pairs,
                                           double rank_tol = kRankTol) {
  if (pairs.empty()) throw ValidationError("density_from_eigpairs: no pairs given");
  std::vector<double> w;
  for (const auto& p : pairs) w.push_back(p.first);
  const double sum = detail::checked_weight_sum(w);

  const Eigen::Index d = pairs.front().second.size();
  std::vector<double> kept_w;
  std::vector<Vector> kept_v;
  for (const auto& [weight, vec] : pairs) {
    if (vec.size() != d) throw ValidationError("density_from_eigpairs: vectors have mismatched dimensions");
    const double n = vec.norm();
    if (!(n > 1e-14)) throw ValidationError("density_from_eigpairs: zero vector");
    if (weight == 0.0) continue;
    kept_w.push_back(weight / sum);
    kept_v.push_back(vec / n);
  }

  const auto r = static_cast<Eigen::Index>(kept_v.size());
  Matrix v(d, r);
  for (Eigen::Index k = 0; k < r; ++k) v.col(k) = kept_v[k];
  const bool orthonormal = r <= d && (v.adjoint() * v - Matrix::Identity(r, r)).norm() <= kStateTol;

  if (!orthonormal) {
    Matrix rho = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < r; ++k) rho += kept_w[k] * v.col(k) * v.col(k).adjoint();
    return DensityMatrix(rho, rank_tol);
  }

  // Keep the supplied vectors and complete the kernel with a Householder basis.
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix basis(d, d);
  basis.leftCols(r) = v;
  if (d > r) basis.rightCols(d - r) = q.rightCols(d - r);
  RealVector values = RealVector::Zero(d);
  for (Eigen::Index k = 0; k < r; ++k) values[k] = kept_w[k];
  return DensityMatrix::from_spectrum(values, basis, rank_tol);
}

inline DensityMatrix white_noise_state(const Vector& psi, double p, Eigen::Index dim, double rank_tol = kRankTol) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("white_noise_state: p must lie in [0, 1]");
  if (psi.size() != dim) throw ValidationError("white_noise_state: psi dimension does not match dim");
  if (std::abs(psi.norm() - 1.0) > kStateTol) throw ValidationError("white_noise_state: psi must be normalised");
  const Matrix rho = p * psi * psi.adjoint() + ((1.0 - p) / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return DensityMatrix(rho, rank_tol);
}

// |psi_k> = (Z^m X^n (x) 1)|Psi+> with k = n*d + m, which gives Phi+, Phi-, Psi+, Psi- for d = 2.
inline Vector bell_basis_vector(int d, int k) {
  if (d < 2 || k < 0 || k >= d * d) throw ValidationError("bell_basis_vector: index out of range");
  const int m = k % d;
  const int n = k / d;
  const double pi = std::acos(-1.0);
  Vector psi = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j) {
    const int a = ((j - n) % d + d) % d;
    psi[a * d + j] = std::exp(Complex(0.0, 2.0 * pi * m * a / d)) / std::sqrt(static_cast<double>(d));
  }
  return psi;
}

struct BellDiagonalState {
  DensityMatrix state;
  bool real = false;
};

inline BellDiagonalState bell_diagonal(const std::vector<double>& weights, int d, double rank_tol = kRankTol) {
  if (d < 2) throw ValidationError("bell_diagonal: local dimension must be >= 2");
  if (weights.empty() || weights.size() > static_cast<std::size_t>(d * d)) {
    throw ValidationError("bell_diagonal: between 1 and d^2 weights required");
  }
  detail::checked_weight_sum(weights);
  std::vector<std::pair<double, Vector>> pairs;
  for (std::size_t k = 0; k < weights.size(); ++k) pairs.emplace_back(weights[k], bell_basis_vector(d, static_cast<int>(k)));
  DensityMatrix rho = density_from_eigpairs(pairs, rank_tol);
  const bool real = (rho.matrix() - rho.matrix().transpose()).norm() <= kStateTol;
  return {std::move(rho), real};
}

inline DensityMatrix tensor_power(const DensityMatrix& rho, int nu) {
  if (nu < 1 || nu > 3) throw ValidationError("tensor_power: nu must be 1, 2 or 3");
  const auto d = rho.dim();
  if (std::pow(static_cast<double>(d), nu) > kMaxCopyDim) {
    throw ValidationError("tensor_power: resulting dimension exceeds " + std::to_string(kMaxCopyDim));
  }
  if (nu == 1) return rho;
  const SpectralData& s = rho.spectrum();
  Matrix v = s.eigenvectors;
  Vector lam = s.eigenvalues.cast<Complex>();
  for (int c = 1; c < nu; ++c) {
    v = kron(v, s.eigenvectors);
    lam = kron(lam, Vector(s.eigenvalues.cast<Complex>()));
  }
  return DensityMatrix::from_spectrum(lam.real(), v, s.rank_tol);
}

}  // namespace metrocommute
