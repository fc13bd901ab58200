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
#include "metrocommute/sld.hpp"
#include "metrocommute/states.hpp"

#include <array>
#include <string>

namespace metrocommute {

inline constexpr double kZeroTol = 1e-8;

enum class ScalarKind { W, Gamma, Delta, PC };
enum class OperatorKind { S, O, P, Iss, IssPrime, Isk, Iks, Ikk };

struct ScalarConditionMatrix {
  ScalarKind kind = ScalarKind::W;
  Matrix entries;

  double norm() const { return entries.norm(); }
};

struct OperatorConditionMatrix {
  OperatorKind kind = OperatorKind::S;
  std::size_t m = 0;
  std::vector<Matrix> entries;  // row-major m x m

  OperatorConditionMatrix() = default;
  OperatorConditionMatrix(OperatorKind k, std::size_t params, Eigen::Index dim)
      : kind(k), m(params), entries(params * params, Matrix::Zero(dim, dim)) {}

  const Matrix& at(std::size_t i, std::size_t j) const { return entries.at(i * m + j); }
  Matrix& at(std::size_t i, std::size_t j) { return entries.at(i * m + j); }

  double norm() const {
    double sq = 0.0;
    for (const auto& e : entries) sq += e.squaredNorm();
    return std::sqrt(sq);
  }
};

namespace detail {

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw ValidationError(std::string(what) + ": dimension mismatch");
}

inline std::vector<Matrix> generator_elements(const SpectralData& spec, const EncodingPoint& pt) {
  require_same_dim(spec.dim(), pt.dim(), "conditions");
  std::vector<Matrix> h;
  for (const auto& g : pt.generators) h.push_back(spec.eigenvectors.adjoint() * g.matrix() * spec.eigenvectors);
  return h;
}

// Fills the strict upper triangle with f(i, j) and mirrors it antisymmetrically.
template <typename F>
Matrix antisymmetric(std::size_t m, F&& f) {
  const auto n = static_cast<Eigen::Index>(m);
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out(i, j) = f(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      out(j, i) = -out(i, j);
    }
  }
  return out;
}

}  // namespace detail

// W_ij = tr[rho (L_i L_j - L_j L_i)] for any consistent frame.
inline ScalarConditionMatrix weak_direct(const Matrix& rho, std::span<const HermitianOperator> slds) {
  for (const auto& l : slds) detail::require_same_dim(rho.rows(), l.dim(), "weak_direct");
  return {ScalarKind::W, detail::antisymmetric(slds.size(), [&](std::size_t i, std::size_t j) {
            const Matrix& a = slds[i].matrix();
            const Matrix& b = slds[j].matrix();
            return (rho * commutator(a, b)).trace();
          })};
}

inline ScalarConditionMatrix weak_direct(const DensityMatrix& rho, const SldSet& slds) {
  return weak_direct(rho.matrix(), std::span<const HermitianOperator>(slds.ops.data(), slds.ops.size()));
}

struct WeakDecomposition {
  ScalarConditionMatrix gamma;
  ScalarConditionMatrix delta;
  ScalarConditionMatrix weak;
};

// W = Gamma + Delta over support pairs k < l. The SWAP trace of Pi_k H_i (x) Pi_l H_j collapses
// to h^i_kl h^j_lk on the eigenbasis, which is what is summed here.
inline WeakDecomposition weak_decomposed(const SpectralData& spec, const EncodingPoint& pt) {
  const std::vector<Matrix> h = detail::generator_elements(spec, pt);
  const Matrix rho = spec.assemble();
  const int r = spec.rank;
  const RealVector& lam = spec.eigenvalues;
  WeakDecomposition out;
  out.gamma = {ScalarKind::Gamma, detail::antisymmetric(h.size(), [&](std::size_t i, std::size_t j) {
                 return 4.0 * (rho * commutator(pt.generators[i].matrix(), pt.generators[j].matrix())).trace();
               })};
  out.delta = {ScalarKind::Delta, detail::antisymmetric(h.size(), [&](std::size_t i, std::size_t j) {
                 Complex acc = 0.0;
                 for (int k = 0; k < r; ++k) {
                   for (int l = k + 1; l < r; ++l) {
                     const double s = lam[k] + lam[l];
                     const double gamma = -4.0 * (lam[k] - lam[l]) * lam[k] * lam[l] / (s * s);
                     acc += gamma * (h[i](k, l) * h[j](l, k) - h[j](k, l) * h[i](l, k));
                   }
                 }
                 return 4.0 * acc;
               })};
  out.weak = {ScalarKind::W, out.gamma.entries + out.delta.entries};
  return out;
}

// Delta_ij = 4 gamma_12 tr[S Pi_12 (H_i (x) H_j - H_j (x) H_i)] on the doubled space.
inline ScalarConditionMatrix weak_rank_two(const SpectralData& spec, const EncodingPoint& pt) {
  if (spec.rank != 2) throw ValidationError("weak_rank_two: state must have rank 2 (got " + std::to_string(spec.rank) + ")");
  detail::require_same_dim(spec.dim(), pt.dim(), "weak_rank_two");
  const double lam = spec.eigenvalues[0];
  const double gamma12 = 4.0 * (1.0 - 2.0 * lam) * lam * (1.0 - lam);
  const Matrix p1 = spec.projector(0);
  const Matrix p2 = spec.projector(1);
  const Eigen::Index d = spec.dim();
  const auto& g = pt.generators;
  if (d > 16) {
    return {ScalarKind::Delta, detail::antisymmetric(g.size(), [&](std::size_t i, std::size_t j) {
              const Matrix& a = g[i].matrix();
              const Matrix& b = g[j].matrix();
              return 4.0 * gamma12 * (swap_trace(p1 * a, p2 * b) - swap_trace(p1 * b, p2 * a));
            })};
  }
  const Matrix swap = swap_operator(static_cast<int>(d)).matrix();
  const Matrix sp = swap * kron(p1, p2);
  return {ScalarKind::Delta, detail::antisymmetric(g.size(), [&](std::size_t i, std::size_t j) {
            const Matrix& a = g[i].matrix();
            const Matrix& b = g[j].matrix();
            return 4.0 * gamma12 * (sp * (kron(a, b) - kron(b, a))).trace();
          })};
}

// W through the combined spectral kernel l_k (l_k - l_l)^2 / (l_k + l_l)^2.
inline ScalarConditionMatrix weak_integral(const SpectralData& spec, const EncodingPoint& pt) {
  const std::vector<Matrix> h = detail::generator_elements(spec, pt);
  const Eigen::Index d = spec.dim();
  const RealVector& lam = spec.eigenvalues;
  RealMatrix kernel = RealMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const double s = lam[k] + lam[l];
      if (s <= spec.rank_tol) continue;
      const double diff = lam[k] - lam[l];
      kernel(k, l) = lam[k] * diff * diff / (s * s);
    }
  }
  return {ScalarKind::W, detail::antisymmetric(h.size(), [&](std::size_t i, std::size_t j) {
            // sum_kl K_kl (h^i_kl h^j_lk - h^j_kl h^i_lk)
            const Matrix a = h[i].cwiseProduct(h[j].transpose());
            const Matrix b = h[j].cwiseProduct(h[i].transpose());
            return 4.0 * (kernel.cast<Complex>().cwiseProduct(a - b)).sum();
          })};
}

// 4 tr[S W_alpha (H_i (x) H_j)] with W_alpha a polynomial in rho (x) 1 and 1 (x) rho.
inline ScalarConditionMatrix weak_series_truncation(const SpectralData& spec, const EncodingPoint& pt, int alpha) {
  struct Term {
    int p, q;
    double c;
  };
  // Each entry stands for c (rho^p (x) rho^q - rho^q (x) rho^p).
  // x = 0 and x = 1 summands of (rho (x) 1 - 1 (x) rho)^3 (1 - rho (x) 1 - 1 (x) rho)^{2x}.
  static const std::vector<Term> x0 = {{3, 0, 1.0}, {2, 1, -3.0}};
  static const std::vector<Term> x1 = {{3, 0, 1.0}, {4, 0, -2.0}, {5, 0, 1.0}, {2, 1, -3.0},
                                       {3, 1, 4.0}, {3, 2, -2.0}, {4, 1, -1.0}};
  if (alpha != 0 && alpha != 1) throw ValidationError("weak_series_truncation: alpha must be 0 or 1");
  detail::require_same_dim(spec.dim(), pt.dim(), "weak_series_truncation");
  std::vector<Term> terms = x0;
  if (alpha == 1) terms.insert(terms.end(), x1.begin(), x1.end());
  const Eigen::Index d = spec.dim();
  std::array<Matrix, 6> powers;
  powers[0] = Matrix::Identity(d, d);
  powers[1] = spec.assemble();
  for (int k = 2; k < 6; ++k) powers[k] = powers[k - 1] * powers[1];
  const auto& g = pt.generators;
  return {ScalarKind::W, detail::antisymmetric(g.size(), [&](std::size_t i, std::size_t j) {
            const Matrix& a = g[i].matrix();
            const Matrix& b = g[j].matrix();
            Complex acc = 0.0;
            for (const Term& t : terms) {
              acc += t.c * (swap_trace(powers[t.p] * a, powers[t.q] * b) - swap_trace(powers[t.q] * a, powers[t.p] * b));
            }
            return 4.0 * acc;
          })};
}

struct ConditionOperators {
  OperatorConditionMatrix strong;     // S_ij = [L_i, L_j]
  OperatorConditionMatrix one_sided;  // O_ij = S_ij Pi
  OperatorConditionMatrix partial;    // P_ij = Pi S_ij Pi
};

inline ConditionOperators condition_operators_direct(const DensityMatrix& rho, const SldSet& slds) {
  const SpectralData& spec = rho.spectrum();
  detail::require_same_dim(spec.dim(), slds.dim(), "condition_operators_direct");
  const std::size_t m = slds.size();
  const Eigen::Index d = spec.dim();
  const Matrix& pi = spec.support_projector;
  ConditionOperators out{{OperatorKind::S, m, d}, {OperatorKind::O, m, d}, {OperatorKind::P, m, d}};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Matrix& a = slds.ops[i].matrix();
      const Matrix& b = slds.ops[j].matrix();
      const Matrix s = a * b - b * a;
      out.strong.at(i, j) = s;
      out.one_sided.at(i, j) = s * pi;
      out.partial.at(i, j) = pi * (a * b - b * a) * pi;
      out.strong.at(j, i) = -out.strong.at(i, j);
      out.one_sided.at(j, i) = -out.one_sided.at(i, j);
      out.partial.at(j, i) = -out.partial.at(i, j);
    }
  }

  const ScalarConditionMatrix w = weak_direct(rho, slds);
  double worst_projection = 0.0;
  double worst_trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double scale = std::max(1.0, out.strong.at(i, j).norm());
      worst_projection = std::max(worst_projection, (out.partial.at(i, j) - pi * out.one_sided.at(i, j)).norm() / scale);
      const Complex tr = (rho.matrix() * out.partial.at(i, j)).trace();
      worst_trace = std::max(worst_trace, std::abs(tr - w.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) / scale);
    }
  }
  if (worst_projection > 1e-9 || worst_trace > 1e-9) {
    throw std::logic_error("condition_operators_direct: structural identity P = Pi O or W = tr[rho P] violated");
  }
  return out;
}

struct SupportKernelDecomposition {
  OperatorConditionMatrix iss, iss_prime, isk, iks, ikk;
  OperatorConditionMatrix partial, one_sided, strong;  // reassembled
};

inline SupportKernelDecomposition support_kernel_decomposition(const SpectralData& spec, const EncodingPoint& pt) {
  detail::require_same_dim(spec.dim(), pt.dim(), "support_kernel_decomposition");
  const std::size_t m = pt.size();
  const Eigen::Index d = spec.dim();
  const int r = spec.rank;
  const RealVector& lam = spec.eigenvalues;
  const Matrix& pi = spec.support_projector;
  const Matrix& perp = spec.kernel_projector;
  std::vector<Matrix> proj;
  for (int k = 0; k < r; ++k) proj.push_back(spec.projector(k));
  auto eta = [&](int k, int l) { return (lam[k] - lam[l]) / (lam[k] + lam[l]); };

  SupportKernelDecomposition out{{OperatorKind::Iss, m, d},      {OperatorKind::IssPrime, m, d},
                                 {OperatorKind::Isk, m, d},      {OperatorKind::Iks, m, d},
                                 {OperatorKind::Ikk, m, d},      {OperatorKind::P, m, d},
                                 {OperatorKind::O, m, d},        {OperatorKind::S, m, d}};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Matrix& hi = pt.generators[i].matrix();
      const Matrix& hj = pt.generators[j].matrix();
      // D^k = H_i Pi_k H_j - H_j Pi_k H_i and D^rho = sum_k D^k.
      std::vector<Matrix> dk;
      Matrix drho = Matrix::Zero(d, d);
      for (int k = 0; k < r; ++k) {
        dk.push_back(hi * proj[k] * hj - hj * proj[k] * hi);
        drho += dk.back();
      }

      out.iss.at(i, j) = 4.0 * pi * (hi * hj - hj * hi) * pi;

      Matrix acc = Matrix::Zero(d, d);
      for (int k = 0; k < r; ++k) acc += proj[k] * dk[k] * proj[k];
      for (int k = 0; k < r; ++k) {
        for (int l = 0; l < r; ++l) {
          if (k == l) continue;
          const double s = lam[k] + lam[l];
          acc += proj[k] * drho * proj[l] + (4.0 * lam[k] * lam[l] / (s * s)) * proj[k] * dk[l] * proj[k];
        }
      }
      for (int k = 0; k < r; ++k) {
        for (int l = 0; l < r; ++l) {
          if (l == k) continue;
          for (int n = 0; n < r; ++n) {
            if (n == k || n == l) continue;
            acc -= eta(k, n) * eta(l, n) * proj[k] * dk[n] * proj[l];
          }
        }
      }
      out.iss_prime.at(i, j) = -4.0 * acc;

      Matrix sk = Matrix::Zero(d, d);
      Matrix ks = Matrix::Zero(d, d);
      for (int k = 0; k < r; ++k) {
        for (int l = 0; l < r; ++l) {
          if (k == l) continue;
          sk += eta(k, l) * proj[k] * dk[l] * perp;
          ks += eta(k, l) * perp * dk[l] * proj[k];
        }
      }
      out.isk.at(i, j) = -4.0 * sk;
      out.iks.at(i, j) = -4.0 * ks;
      out.ikk.at(i, j) = 4.0 * perp * drho * perp;

      out.partial.at(i, j) = out.iss.at(i, j) + out.iss_prime.at(i, j);
      out.one_sided.at(i, j) = out.partial.at(i, j) + out.iks.at(i, j);
      out.strong.at(i, j) = out.one_sided.at(i, j) + out.isk.at(i, j) + out.ikk.at(i, j);
    }
  }
  return out;
}

// p_ij = || sqrt(rho) [L_i, L_j] sqrt(rho) ||_1 with encoded-frame SLDs.
inline ScalarConditionMatrix pc_trace_norm(const DensityMatrix& rho_theta, std::span<const HermitianOperator> slds) {
  const SpectralData& s = rho_theta.spectrum();
  const Matrix root = s.eigenvectors * s.eigenvalues.cwiseSqrt().cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
  const auto n = static_cast<Eigen::Index>(slds.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      detail::require_same_dim(rho_theta.dim(), slds[i].dim(), "pc_trace_norm");
      const Matrix c = commutator(slds[i].matrix(), slds[j].matrix());
      out(i, j) = trace_norm(root * c * root);
      out(j, i) = out(i, j);
    }
  }
  return {ScalarKind::PC, out};
}

inline ScalarConditionMatrix pc_trace_norm(const DensityMatrix& rho_theta, const std::vector<HermitianOperator>& slds) {
  return pc_trace_norm(rho_theta, std::span<const HermitianOperator>(slds.data(), slds.size()));
}

struct ClassificationReport {
  double norm_w = 0.0, norm_p = 0.0, norm_o = 0.0, norm_s = 0.0;
  bool wc = false, pc = false, oc = false, sc = false;
  bool hierarchy_consistent = true;
  double tolerance = kZeroTol;
  double scale = 1.0;
  int rank = 0;
  Eigen::Index dim = 0;
  bool gauge_dependent = false;  // S and O use the zero kernel-kernel SLD block
  bool commuting_hamiltonians = false;
  std::vector<std::string> converse_failures;
  Matrix w;
};

inline double zero_test_scale(const EncodingPoint& pt) {
  double scale = 1.0;
  for (const auto& g : pt.generators) scale = std::max(scale, g.matrix().squaredNorm());
  return scale;
}

inline ClassificationReport classify(const DensityMatrix& rho, const EncodingPoint& pt, const SldSet& slds,
                                     double tol = kZeroTol) {
  const ConditionOperators ops = condition_operators_direct(rho, slds);
  ClassificationReport rep;
  rep.w = weak_direct(rho, slds).entries;
  rep.norm_w = rep.w.norm();
  rep.norm_p = ops.partial.norm();
  rep.norm_o = ops.one_sided.norm();
  rep.norm_s = ops.strong.norm();
  rep.tolerance = tol;
  rep.scale = zero_test_scale(pt);
  const double threshold = tol * rep.scale;
  rep.wc = rep.norm_w <= threshold;
  rep.pc = rep.norm_p <= threshold;
  rep.oc = rep.norm_o <= threshold;
  rep.sc = rep.norm_s <= threshold;
  rep.hierarchy_consistent = (!rep.sc || rep.oc) && (!rep.oc || rep.pc) && (!rep.pc || rep.wc);
  rep.rank = rho.rank();
  rep.dim = rho.dim();
  rep.gauge_dependent = rho.rank() < rho.dim();
  if (rep.wc && !rep.pc) rep.converse_failures.push_back("WC holds but PC fails");
  if (rep.pc && !rep.oc) rep.converse_failures.push_back("PC holds but OC fails");
  if (rep.oc && !rep.sc) rep.converse_failures.push_back("OC holds but SC fails");
  return rep;
}

inline ClassificationReport classify(const DensityMatrix& rho, const HamiltonianSet& hs, std::span<const double> theta,
                                     double tol = kZeroTol) {
  const EncodingPoint pt = encode(hs, theta);
  ClassificationReport rep = classify(rho, pt, sld_rotated(rho.spectrum(), pt), tol);
  rep.commuting_hamiltonians = hs.commuting();
  return rep;
}

}  // namespace metrocommute
