// Copyright 2026 The logmod Authors
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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace logmod {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

/// Dense row-major complex matrix.
///
/// The numeric carrier for every module. A default-constructed matrix is
/// 0x0 and only useful as a placeholder; every operation that returns a
/// matrix returns one with positive dimensions unless stated otherwise.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<cx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const cx> values);
  /// Column vector v as an n x 1 matrix.
  static ComplexMatrix column(std::span<const cx> v);
  /// Matrix unit E_{i,j} (0-based) of size rows x cols.
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i,
                            std::size_t j);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<cx> data() noexcept { return data_; }
  std::span<const cx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  CVector col(std::size_t j) const;
  CVector row(std::size_t i) const;
  void set_col(std::size_t j, std::span<const cx> v);

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                      std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

  cx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cx s);
CVector operator*(const ComplexMatrix& a, std::span<const cx> v);

/// a^* b without forming the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// (a + a^*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// Re tr(a^* b), the real Hilbert-Schmidt pairing.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// tr(a b) for square a, b of matching size.
cx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// v v^*.
ComplexMatrix outer(std::span<const cx> u, std::span<const cx> v);

/// Frobenius distance between a and its adjoint.
double hermitian_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);

/// <u, v> = sum_i u_i conj(v_i); linear in the first slot.
cx inner(std::span<const cx> u, std::span<const cx> v);
double norm(std::span<const cx> v);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are orthonormal eigenvectors
};

struct JacobiOptions {
  int max_sweeps = 100;
  double off_tol = 1e-13;  // relative to ||H||_F
};

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Throws NotHermitian or NoConvergence.
HermitianEigen herm_eig(const ComplexMatrix& h, JacobiOptions opts = {});

double min_eigenvalue(const ComplexMatrix& h);
double max_eigenvalue(const ComplexMatrix& h);

/// Upper triangular U with U^* U = P.
///
/// Pivots at or below pivot_rel * max(diag P) are treated as zero and the
/// corresponding row of U is zeroed, so positive semidefinite input is
/// accepted. Throws NotPSD when P has an eigenvalue below -psd_tol.
ComplexMatrix cholesky(const ComplexMatrix& p, double psd_tol = 1e-10,
                       double pivot_rel = 1e-10);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Hermitian square root of a positive semidefinite matrix; negative
/// eigenvalues are clipped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& p);

/// Inverse of a Hermitian positive definite matrix.
ComplexMatrix hpd_inverse(const ComplexMatrix& p);

/// Eigenvalues of a general square matrix (Hessenberg reduction followed by
/// shifted QR). Order is unspecified.
CVector eigenvalues(const ComplexMatrix& a, int max_iter_per_value = 60);

/// An m x k grid of vectors in C^d, stored row-major.
struct VectorGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<CVector> cells;

  const CVector& at(std::size_t i, std::size_t j) const {
    return cells[i * cols + j];
  }
  CVector& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
};

/// Norm of the grid in M_{m,k}(H_r): ||G||^{1/2} where
/// G[i,j] = sum_l <h_{i,l}, h_{j,l}>.
double row_block_norm(const VectorGrid& grid);

/// Norm of the grid in M_{m,k}(H_c): operator norm of the (m d) x k matrix
/// whose j-th column stacks h_{1,j}, ..., h_{m,j}.
double col_block_norm(const VectorGrid& grid);

}  // namespace logmod
