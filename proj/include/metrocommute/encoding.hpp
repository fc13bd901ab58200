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
#include "metrocommute/states.hpp"

#include <span>
#include <utility>

namespace metrocommute {

class HamiltonianSet {
 public:
  explicit HamiltonianSet(std::vector<HermitianOperator> hams) : hams_(std::move(hams)) {
    if (hams_.empty()) throw ValidationError("HamiltonianSet needs at least one Hamiltonian");
    for (const auto& h : hams_) {
      if (h.dim() != hams_.front().dim()) throw ValidationError("Hamiltonians have mismatched dimensions");
    }
    commuting_ = true;
    for (std::size_t i = 0; i < hams_.size(); ++i) {
      for (std::size_t j = i + 1; j < hams_.size(); ++j) {
        const Matrix& a = hams_[i].matrix();
        const Matrix& b = hams_[j].matrix();
        if (commutator(a, b).norm() > 1e-10 * std::max(1.0, a.norm() * b.norm())) commuting_ = false;
      }
    }
  }

  std::size_t size() const { return hams_.size(); }
  Eigen::Index dim() const { return hams_.front().dim(); }
  bool commuting() const { return commuting_; }
  const HermitianOperator& operator[](std::size_t i) const { return hams_[i]; }
  const std::vector<HermitianOperator>& hams() const { return hams_; }

 private:
  std::vector<HermitianOperator> hams_;
  bool commuting_ = true;
};

struct EncodingPoint {
  std::vector<double> theta;
  UnitaryOperator unitary;
  std::vector<HermitianOperator> generators;

  std::size_t size() const { return generators.size(); }
  Eigen::Index dim() const { return unitary.dim(); }
};

namespace detail {

// phi(x) = int_0^1 e^{i s x} ds = (e^{ix} - 1)/(ix), with its Taylor series near the removable point.
inline Complex wilcox_phi(double x) {
  if (std::abs(x) < 1e-4) {
    const Complex ix(0.0, x);
    return 1.0 + ix / 2.0 + ix * ix / 6.0 + ix * ix * ix / 24.0;
  }
  return (std::exp(Complex(0.0, x)) - 1.0) / Complex(0.0, x);
}

}  // namespace detail

inline EncodingPoint encode(const HamiltonianSet& hs, std::span<const double> theta) {
  if (theta.size() != hs.size()) {
    throw ValidationError("theta has " + std::to_string(theta.size()) + " entries but there are " +
                          std::to_string(hs.size()) + " Hamiltonians");
  }
  const Eigen::Index d = hs.dim();
  Matrix k = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < hs.size(); ++i) k += theta[i] * hs[i].matrix();
  const HermitianOperator kop(k);
  const EigenDecomposition eig = hermitian_eig(kop);

  Matrix phi(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) phi(a, b) = detail::wilcox_phi(eig.values[a] - eig.values[b]);
  }

  EncodingPoint pt;
  pt.theta.assign(theta.begin(), theta.end());
  pt.unitary = matrix_exp_i(kop, -1);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs.commuting()) {
      pt.generators.push_back(hs[i]);
      continue;
    }
    const Matrix hk = eig.vectors.adjoint() * hs[i].matrix() * eig.vectors;
    const Matrix gk = hk.cwiseProduct(phi);
    pt.generators.emplace_back(eig.vectors * gk * eig.vectors.adjoint());
  }
  return pt;
}

inline EncodingPoint encode(const HamiltonianSet& hs, const std::vector<double>& theta) {
  return encode(hs, std::span<const double>(theta.data(), theta.size()));
}

inline DensityMatrix evolve(const DensityMatrix& rho, const EncodingPoint& pt) {
  if (rho.dim() != pt.dim()) throw ValidationError("evolve: state and encoding dimensions differ");
  const SpectralData& s = rho.spectrum();
  return DensityMatrix::from_spectrum(s.eigenvalues, pt.unitary.matrix() * s.eigenvectors, s.rank_tol);
}

}  // namespace metrocommute
