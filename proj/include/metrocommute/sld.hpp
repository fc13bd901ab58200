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
#include "metrocommute/encoding.hpp"
#include "metrocommute/states.hpp"

namespace metrocommute {

inline constexpr double kProbabilityFloor = 1e-12;

// Rotated-frame SLDs together with the spectral tables they were built from.
// h_elems[i](k, l) = <psi_k|H_i|psi_l> in the basis `eigenvectors`.
struct SldSet {
  std::vector<HermitianOperator> ops;
  std::vector<Matrix> h_elems;
  RealVector eigenvalues;
  Matrix eigenvectors;
  RealMatrix eta;    // (l_k - l_l)/(l_k + l_l) on support pairs, 0 elsewhere
  RealMatrix gamma;  // -4 (l_k - l_l) l_k l_l / (l_k + l_l)^2
  double rank_tol = kRankTol;

  std::size_t size() const { return ops.size(); }
  Eigen::Index dim() const { return eigenvalues.size(); }
};

namespace detail {

inline void fill_coefficients(SldSet& s) {
  const Eigen::Index d = s.eigenvalues.size();
  s.eta = RealMatrix::Zero(d, d);
  s.gamma = RealMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const double lk = s.eigenvalues[k];
      const double ll = s.eigenvalues[l];
      const double sum = lk + ll;
      if (sum <= s.rank_tol) continue;
      s.eta(k, l) = (lk - ll) / sum;
      s.gamma(k, l) = -4.0 * (lk - ll) * lk * ll / (sum * sum);
    }
  }
}

}  // namespace detail

inline SldSet sld_rotated(const SpectralData& spec, const EncodingPoint& pt) {
  if (spec.dim() != pt.dim()) throw ValidationError("sld_rotated: state and encoding dimensions differ");
  SldSet s;
  s.eigenvalues = spec.eigenvalues;
  s.eigenvectors = spec.eigenvectors;
  s.rank_tol = spec.rank_tol;
  detail::fill_coefficients(s);
  const Matrix& v = spec.eigenvectors;
  for (const auto& g : pt.generators) {
    Matrix h = v.adjoint() * g.matrix() * v;
    Matrix l = (2.0 * kI) * s.eta.cast<Complex>().cwiseProduct(h);
    s.ops.emplace_back(v * l * v.adjoint());
    s.h_elems.push_back(std::move(h));
  }
  return s;
}

// Exact derivative d_i rho_theta = -i U [H_i, rho] U^dagger.
inline HermitianOperator encoded_derivative(const DensityMatrix& rho, const EncodingPoint& pt, std::size_t i) {
  const Matrix& u = pt.unitary.matrix();
  return HermitianOperator(-kI * u * commutator(pt.generators.at(i).matrix(), rho.matrix()) * u.adjoint());
}

inline HermitianOperator sld_lyapunov(const DensityMatrix& rho_theta, const HermitianOperator& drho) {
  if (drho.dim() != rho_theta.dim()) throw ValidationError("sld_lyapunov: dimension mismatch");
  const Complex tr = drho.matrix().trace();
  if (std::abs(tr) > 1e-9) {
    throw ValidationError("sld_lyapunov: derivative must have zero trace (got trace " + std::to_string(std::abs(tr)) + ")");
  }
  const SpectralData& s = rho_theta.spectrum();
  const Matrix& v = s.eigenvectors;
  Matrix dk = v.adjoint() * drho.matrix() * v;
  for (Eigen::Index k = 0; k < dk.rows(); ++k) {
    for (Eigen::Index l = 0; l < dk.cols(); ++l) {
      const double sum = s.eigenvalues[k] + s.eigenvalues[l];
      dk(k, l) = sum > s.rank_tol ? 2.0 * dk(k, l) / sum : Complex(0.0);
    }
  }
  return HermitianOperator(v * dk * v.adjoint());
}

// L_i = U L_i^rot U^dagger.
inline std::vector<HermitianOperator> encoded_slds(const SldSet& sld, const EncodingPoint& pt) {
  const Matrix& u = pt.unitary.matrix();
  std::vector<HermitianOperator> out;
  for (const auto& l : sld.ops) out.emplace_back(u * l.matrix() * u.adjoint());
  return out;
}

namespace detail {

inline Matrix embed(const Matrix& op, int position, int nu) {
  const Eigen::Index d = op.rows();
  Matrix out = position == 0 ? op : Matrix::Identity(d, d);
  for (int p = 1; p < nu; ++p) out = kron(out, p == position ? op : Matrix::Identity(d, d));
  return out;
}

inline Matrix additive(const Matrix& op, int nu) {
  Matrix sum = embed(op, 0, nu);
  for (int p = 1; p < nu; ++p) sum += embed(op, p, nu);
  return sum;
}

}  // namespace detail

// Additive nu-copy SLD sum_pos 1 (x) ... (x) L_i (x) ... (x) 1, expressed on the product eigenbasis.
inline SldSet nu_copy_sld(const SldSet& sld, int nu) {
  if (nu < 1 || nu > 3) throw ValidationError("nu_copy_sld: nu must be 1, 2 or 3");
  if (std::pow(static_cast<double>(sld.dim()), nu) > kMaxCopyDim) {
    throw ValidationError("nu_copy_sld: resulting dimension exceeds " + std::to_string(kMaxCopyDim));
  }
  if (nu == 1) return sld;
  SldSet out;
  out.rank_tol = sld.rank_tol;
  out.eigenvectors = sld.eigenvectors;
  Vector lam = sld.eigenvalues.cast<Complex>();
  const Vector base = lam;
  for (int c = 1; c < nu; ++c) {
    out.eigenvectors = kron(out.eigenvectors, sld.eigenvectors);
    lam = kron(lam, base);
  }
  out.eigenvalues = lam.real();
  detail::fill_coefficients(out);
  for (std::size_t i = 0; i < sld.size(); ++i) {
    out.ops.emplace_back(detail::additive(sld.ops[i].matrix(), nu));
    out.h_elems.push_back(detail::additive(sld.h_elems[i], nu));
  }
  return out;
}

struct CfimResult {
  RealMatrix matrix;
  RealVector probabilities;
};

inline CfimResult cfim(const DensityMatrix& rho_theta, const PovmSet& povm, std::span<const HermitianOperator> slds) {
  if (povm.dim() != rho_theta.dim()) throw ValidationError("cfim: POVM and state dimensions differ");
  const auto m = static_cast<Eigen::Index>(slds.size());
  CfimResult out{RealMatrix::Zero(m, m), RealVector(static_cast<Eigen::Index>(povm.size()))};
  const Matrix& rho = rho_theta.matrix();
  std::vector<Matrix> rho_l;
  for (const auto& l : slds) {
    if (l.dim() != rho_theta.dim()) throw ValidationError("cfim: SLD and state dimensions differ");
    rho_l.push_back(rho * l.matrix());
  }
  RealVector dp(m);
  for (std::size_t w = 0; w < povm.size(); ++w) {
    const Matrix& e = povm.effects()[w].matrix();
    const double p = (rho * e).trace().real();
    out.probabilities[static_cast<Eigen::Index>(w)] = p;
    if (p <= kProbabilityFloor) continue;
    for (Eigen::Index i = 0; i < m; ++i) dp[i] = (rho_l[i] * e).trace().real();
    out.matrix += dp * dp.transpose() / p;
  }
  return out;
}

inline CfimResult cfim(const DensityMatrix& rho_theta, const PovmSet& povm, const std::vector<HermitianOperator>& slds) {
  return cfim(rho_theta, povm, std::span<const HermitianOperator>(slds.data(), slds.size()));
}

}  // namespace metrocommute
