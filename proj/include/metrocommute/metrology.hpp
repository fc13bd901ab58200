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

#include "metrocommute/conditions.hpp"
#include "metrocommute/core.hpp"
#include "metrocommute/encoding.hpp"
#include "metrocommute/sld.hpp"
#include "metrocommute/states.hpp"

#include <limits>

namespace metrocommute {

inline constexpr double kMaxConditionNumber = 1e12;

// Thrown when the QFIM cannot be inverted; the parameters cannot all be estimated at once.
class IdentifiabilityError : public std::runtime_error {
 public:
  explicit IdentifiabilityError(double condition_number)
      : std::runtime_error("parameters not jointly identifiable: QFIM is singular (condition number " +
                           (std::isfinite(condition_number) ? std::to_string(condition_number) : std::string("inf")) +
                           ")"),
        condition_number_(condition_number) {}

  double condition_number() const { return condition_number_; }

 private:
  double condition_number_;
};

struct QfimResult {
  RealMatrix matrix;
  int rank = 0;
  double condition_number = 0.0;
};

namespace detail {

inline RealVector symmetric_eigenvalues(const RealMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double condition_number(const RealMatrix& f) {
  const RealVector ev = symmetric_eigenvalues(f).cwiseAbs();
  const double hi = ev.maxCoeff();
  const double lo = ev.minCoeff();
  // eigenvalues at rounding level of a unit-scale problem count as exact zeros
  if (lo <= 1e-14 * std::max(1.0, hi)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace detail

// F_ij = (1/2) tr[rho {L_i, L_j}] = Re tr[rho L_i L_j].
inline QfimResult qfim(const Matrix& rho, std::span<const HermitianOperator> slds) {
  const auto m = static_cast<Eigen::Index>(slds.size());
  QfimResult out;
  out.matrix = RealMatrix::Zero(m, m);
  std::vector<Matrix> rl;
  for (const auto& l : slds) {
    if (l.dim() != rho.rows()) throw ValidationError("qfim: SLD and state dimensions differ");
    rl.push_back(rho * l.matrix());
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      out.matrix(i, j) = (rl[i] * slds[j].matrix()).trace().real();
      out.matrix(j, i) = out.matrix(i, j);
    }
  }
  const RealVector ev = detail::symmetric_eigenvalues(out.matrix);
  const double cutoff = 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  out.rank = static_cast<int>((ev.array() > cutoff).count());
  out.condition_number = detail::condition_number(out.matrix);
  return out;
}

inline QfimResult qfim(const DensityMatrix& rho, const SldSet& slds) {
  return qfim(rho.matrix(), std::span<const HermitianOperator>(slds.ops.data(), slds.ops.size()));
}

class WeightMatrix {
 public:
  explicit WeightMatrix(const RealMatrix& m) : m_(m) {
    if (m.rows() < 1 || m.rows() != m.cols()) throw ValidationError("weight matrix must be square");
    if (!m.allFinite()) throw ValidationError("weight matrix has non-finite entries");
    if ((m - m.transpose()).norm() > 1e-10 * std::max(1.0, m.norm())) {
      throw ValidationError("weight matrix must be symmetric");
    }
    m_ = 0.5 * (m + m.transpose());
    if (!(detail::symmetric_eigenvalues(m_).minCoeff() > 0.0)) {
      throw ValidationError("weight matrix must be positive definite");
    }
  }

  static WeightMatrix identity(Eigen::Index m) { return WeightMatrix(RealMatrix::Identity(m, m)); }
  const RealMatrix& matrix() const { return m_; }

 private:
  RealMatrix m_;
};

inline RealMatrix checked_inverse(const RealMatrix& fq) {
  const double cond = detail::condition_number(fq);
  if (!(cond < kMaxConditionNumber)) throw IdentifiabilityError(cond);
  return fq.ldlt().solve(RealMatrix::Identity(fq.rows(), fq.cols()));
}

// tr[M F_Q^{-1}].
inline double qcr_scalar(const RealMatrix& fq, const WeightMatrix& m) {
  if (fq.rows() != m.matrix().rows()) throw ValidationError("qcr_scalar: weight matrix size differs from QFIM");
  return (m.matrix() * checked_inverse(fq)).trace();
}

struct IncompatibilityResult {
  double measure = 0.0;
  double sandwich_factor = 1.0;
};

// E = (1/2) max |eig(F_Q^{-1} W)|.
inline IncompatibilityResult incompatibility(const RealMatrix& fq, const Matrix& w) {
  if (w.rows() != fq.rows() || w.cols() != fq.cols()) throw ValidationError("incompatibility: size mismatch");
  const Matrix a = checked_inverse(fq).cast<Complex>() * w;
  Eigen::ComplexEigenSolver<Matrix> solver(a, false);
  const double e = 0.5 * solver.eigenvalues().cwiseAbs().maxCoeff();
  return {e, 1.0 + e};
}

struct FisherOrdering {
  bool holds = true;
  double min_eigenvalue = 0.0;
};

inline FisherOrdering verify_fc_order(const DensityMatrix& rho_theta, const PovmSet& povm,
                                      std::span<const HermitianOperator> slds) {
  const RealMatrix fq = qfim(rho_theta.matrix(), slds).matrix;
  const RealMatrix fc = cfim(rho_theta, povm, slds).matrix;
  const double lo = detail::symmetric_eigenvalues(fq - fc).minCoeff();
  return {lo >= -1e-9, lo};
}

inline FisherOrdering verify_fc_order(const DensityMatrix& rho_theta, const PovmSet& povm,
                                      const std::vector<HermitianOperator>& slds) {
  return verify_fc_order(rho_theta, povm, std::span<const HermitianOperator>(slds.data(), slds.size()));
}

// The nu-copy encoding point: U^{(x)nu} with additive generators.
inline EncodingPoint copy_encoding(const EncodingPoint& pt, int nu) {
  if (nu < 1 || nu > 3) throw ValidationError("copy_encoding: nu must be 1, 2 or 3");
  if (std::pow(static_cast<double>(pt.dim()), nu) > kMaxCopyDim) {
    throw ValidationError("copy_encoding: resulting dimension exceeds " + std::to_string(kMaxCopyDim));
  }
  EncodingPoint out;
  out.theta = pt.theta;
  Matrix u = pt.unitary.matrix();
  for (int c = 1; c < nu; ++c) u = kron(u, pt.unitary.matrix());
  out.unitary = UnitaryOperator(u);
  for (const auto& g : pt.generators) out.generators.emplace_back(detail::additive(g.matrix(), nu));
  return out;
}

// || F_Q(rho^{(x)nu}) - nu F_Q(rho) ||_F / || nu F_Q(rho) ||_F, or the absolute gap when F_Q(rho) = 0.
inline double qfim_additivity(const DensityMatrix& rho, const EncodingPoint& pt, int nu) {
  if (nu < 2 || nu > 3) throw ValidationError("qfim_additivity: nu must be 2 or 3");
  const DensityMatrix big = tensor_power(rho, nu);
  const EncodingPoint big_pt = copy_encoding(pt, nu);
  const RealMatrix single = static_cast<double>(nu) * qfim(rho, sld_rotated(rho.spectrum(), pt)).matrix;
  const RealMatrix many = qfim(big, sld_rotated(big.spectrum(), big_pt)).matrix;
  const double ref = single.norm();
  const double gap = (many - single).norm();
  return ref > 0.0 ? gap / ref : gap;
}

}  // namespace metrocommute
