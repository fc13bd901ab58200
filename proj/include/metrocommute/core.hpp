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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace metrocommute {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kUnitTol = 1e-10;
inline constexpr Complex kI{0.0, 1.0};

// Raised for any malformed input. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": matrix must be square with dim >= 1");
  }
  if (!all_finite(m)) throw ValidationError(std::string(what) + ": matrix has non-finite entries");
}

class HermitianOperator {
 public:
  HermitianOperator() = default;

  // Validates against herm_tol and stores the exactly symmetrised matrix.
  explicit HermitianOperator(const Matrix& m, double tol = kHermTol) {
    require_square(m, "Hermitian operator");
    const double asym = (m - m.adjoint()).norm();
    if (asym > tol * std::max(1.0, m.norm())) {
      throw ValidationError("operator is not Hermitian (||A - A^dagger||_F = " + std::to_string(asym) + ")");
    }
    m_ = 0.5 * (m + m.adjoint());
  }

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

class UnitaryOperator {
 public:
  UnitaryOperator() = default;

  explicit UnitaryOperator(const Matrix& m, double tol = kUnitTol) {
    require_square(m, "unitary operator");
    const double dev = (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
    if (dev > tol) {
      throw ValidationError("operator is not unitary (||U^dagger U - 1||_F = " + std::to_string(dev) + ")");
    }
    m_ = m;
  }

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  RealVector values;  // descending
  Matrix vectors;     // column k pairs with values[k]
};

inline EigenDecomposition hermitian_eig(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
  const Eigen::Index n = h.dim();
  EigenDecomposition out{RealVector(n), Matrix(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()[n - 1 - k];
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

// exp(sign * i * K) through the spectral decomposition of K.
inline UnitaryOperator matrix_exp_i(const HermitianOperator& k, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("matrix_exp_i: sign must be +1 or -1");
  const EigenDecomposition eig = hermitian_eig(k);
  Vector phases(eig.values.size());
  for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
    phases[a] = std::exp(Complex(0.0, sign * eig.values[a]));
  }
  return UnitaryOperator(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint());
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

inline UnitaryOperator swap_operator(int d) {
  if (d < 2) throw ValidationError("swap_operator: local dimension must be >= 2");
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) s(y * d + x, x * d + y) = 1.0;
  }
  return UnitaryOperator(s);
}

// tr[S (X (x) Y)] = sum_{x,y} X_yx Y_xy, evaluated without forming the doubled space.
inline Complex swap_trace(const Matrix& x, const Matrix& y) {
  return (x.transpose().array() * y.array()).sum();
}

inline double trace_norm(const Matrix& x) {
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

inline bool is_psd(const HermitianOperator& x, double tol) {
  return hermitian_eig(x).values.minCoeff() >= -tol;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Partial trace over every subsystem not listed in `keep`; `keep` is taken in ascending order.
inline Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, std::vector<int> keep) {
  const int n = static_cast<int>(dims.size());
  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  if (m.rows() != total || m.cols() != total) throw ValidationError("partial_trace: dimension mismatch");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw ValidationError("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  int dk = 1;
  for (int k : keep) dk *= dims[k];
  Matrix out = Matrix::Zero(dk, dk);
  std::vector<int> digits(n);
  auto decode = [&](int idx) {
    for (int s = n - 1; s >= 0; --s) {
      digits[s] = idx % dims[s];
      idx /= dims[s];
    }
  };
  auto kept_index = [&]() {
    int idx = 0;
    for (int s = 0; s < n; ++s) {
      if (kept[s]) idx = idx * dims[s] + digits[s];
    }
    return idx;
  };
  std::vector<int> row_digits(n);
  for (int r = 0; r < total; ++r) {
    decode(r);
    row_digits = digits;
    const int kr = kept_index();
    for (int c = 0; c < total; ++c) {
      decode(c);
      bool traced_match = true;
      for (int s = 0; s < n && traced_match; ++s) {
        if (!kept[s] && digits[s] != row_digits[s]) traced_match = false;
      }
      if (!traced_match) continue;
      out(kr, kept_index()) += m(r, c);
    }
  }
  return out;
}

}  // namespace metrocommute
