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

#include "logmod/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "logmod/error.hpp"

namespace logmod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::NotNonnegative: return "NotNonnegative";
    case ErrorCode::DegenerateLeading: return "DegenerateLeading";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotQuadratic: return "NotQuadratic";
    case ErrorCode::NotQuadraticFamily: return "NotQuadraticFamily";
    case ErrorCode::ParallelogramViolation: return "ParallelogramViolation";
    case ErrorCode::NotPOVM: return "NotPOVM";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix data length does not equal rows * cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cx> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::unit(std::size_t rows, std::size_t cols,
                                  std::size_t i, std::size_t j) {
  ComplexMatrix m(rows, cols);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(*this);
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

CVector ComplexMatrix::col(std::size_t j) const {
  CVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

CVector ComplexMatrix::row(std::size_t i) const {
  return CVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void ComplexMatrix::set_col(std::size_t j, std::span<const cx> v) {
  if (v.size() != rows_) {
    throw Error(ErrorCode::DimensionMismatch, "set_col length");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block out of range");
  }
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0,
                              const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

cx ComplexMatrix::trace() const {
  cx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix addition");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix subtraction");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cx aik = a(i, k);
      if (aik == cx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(cx s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(ComplexMatrix a, cx s) {
  a *= s;
  return a;
}

CVector operator*(const ComplexMatrix& a, std::span<const cx> v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  }
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "adjoint product");
  }
  ComplexMatrix out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cx aki = std::conj(a(k, i));
      if (aki == cx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aki * b(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return out;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "real_inner");
  }
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    s += da[k].real() * db[k].real() + da[k].imag() * db[k].imag();
  }
  return s;
}

cx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_product");
  }
  cx s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

ComplexMatrix outer(std::span<const cx> u, std::span<const cx> v) {
  ComplexMatrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

double hermitian_defect(const ComplexMatrix& a) {
  if (!a.is_square()) return INFINITY;
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  return a.is_square() &&
         hermitian_defect(a) <= rel_tol * (1.0 + a.frobenius_norm());
}

cx inner(std::span<const cx> u, std::span<const cx> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "inner product");
  }
  cx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm(std::span<const cx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

namespace {

HermitianEigen jacobi(const ComplexMatrix& h, JacobiOptions opts, bool vectors) {
  if (!h.is_square()) {
    throw Error(ErrorCode::NotHermitian, "matrix is not square");
  }
  if (!is_hermitian(h)) {
    throw Error(ErrorCode::NotHermitian, "||H - H*||_F exceeds tolerance");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = hermitian_part(h);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    if (off_norm() <= opts.off_tol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const cx e = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, conj(e)) * [[c, s], [-s, c]] acting on coordinates p, q.
        const cx jpp = c;
        const cx jpq = s;
        const cx jqp = -s * std::conj(e);
        const cx jqq = c * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const cx akp = a(k, p);
          const cx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cx apk = a(p, k);
          const cx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; vectors && k < n; ++k) {
          const cx vkp = v(k, p);
          const cx vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (!converged && off_norm() > opts.off_tol * scale) {
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep limit exceeded");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; vectors && i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace

HermitianEigen herm_eig(const ComplexMatrix& h, JacobiOptions opts) {
  return jacobi(h, opts, true);
}

double min_eigenvalue(const ComplexMatrix& h) {
  return jacobi(h, {}, false).values.front();
}

double max_eigenvalue(const ComplexMatrix& h) {
  return jacobi(h, {}, false).values.back();
}

ComplexMatrix cholesky(const ComplexMatrix& p, double psd_tol, double pivot_rel) {
  if (!p.is_square()) {
    throw Error(ErrorCode::NotHermitian, "cholesky input is not square");
  }
  const auto eig = herm_eig(p);
  if (!eig.values.empty() && eig.values.front() < -psd_tol) {
    throw Error(ErrorCode::NotPSD, "smallest eigenvalue " +
                                       std::to_string(eig.values.front()) +
                                       " is below -tol");
  }
  const std::size_t n = p.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, p(i, i).real());
  const double pivot_floor = pivot_rel * max_diag;

  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double d = p(k, k).real();
    for (std::size_t i = 0; i < k; ++i) d -= std::norm(u(i, k));
    if (d <= pivot_floor) continue;  // semidefinite direction: row k stays zero
    const double ukk = std::sqrt(d);
    u(k, k) = ukk;
    for (std::size_t j = k + 1; j < n; ++j) {
      cx s = p(k, j);
      for (std::size_t i = 0; i < k; ++i) s -= std::conj(u(i, k)) * u(i, j);
      u(k, j) = s / ukk;
    }
  }
  return u;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  const ComplexMatrix g =
      a.rows() >= a.cols() ? adjoint_times(a, a) : a * a.adjoint();
  return std::sqrt(std::max(0.0, max_eigenvalue(hermitian_part(g))));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p) {
  const auto eig = herm_eig(p);
  const std::size_t n = p.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(0.0, eig.values[k]));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += s * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

ComplexMatrix hpd_inverse(const ComplexMatrix& p) {
  const std::size_t n = p.rows();
  // Strict Cholesky P = U^* U, then P^{-1} = U^{-1} U^{-*}.
  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double d = p(k, k).real();
    for (std::size_t i = 0; i < k; ++i) d -= std::norm(u(i, k));
    if (!(d > 0.0)) {
      throw Error(ErrorCode::NotPSD, "matrix is not positive definite");
    }
    u(k, k) = std::sqrt(d);
    for (std::size_t j = k + 1; j < n; ++j) {
      cx s = p(k, j);
      for (std::size_t i = 0; i < k; ++i) s -= std::conj(u(i, k)) * u(i, j);
      u(k, j) = s / u(k, k);
    }
  }
  ComplexMatrix uinv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    uinv(j, j) = 1.0 / u(j, j);
    for (std::size_t ii = j; ii-- > 0;) {
      cx s = 0.0;
      for (std::size_t k = ii + 1; k <= j; ++k) s += u(ii, k) * uinv(k, j);
      uinv(ii, j) = -s / u(ii, ii);
    }
  }
  return uinv * uinv.adjoint();
}

double row_block_norm(const VectorGrid& grid) {
  if (grid.cells.size() != grid.rows * grid.cols) {
    throw Error(ErrorCode::DimensionMismatch, "grid cell count");
  }
  if (grid.cells.empty()) return 0.0;
  const std::size_t d = grid.cells.front().size();
  for (const auto& c : grid.cells) {
    if (c.size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "grid vectors differ in length");
    }
  }
  ComplexMatrix g(grid.rows, grid.rows);
  for (std::size_t i = 0; i < grid.rows; ++i)
    for (std::size_t j = 0; j < grid.rows; ++j)
      for (std::size_t l = 0; l < grid.cols; ++l)
        g(i, j) += inner(grid.at(i, l), grid.at(j, l));
  return std::sqrt(std::max(0.0, max_eigenvalue(hermitian_part(g))));
}

double col_block_norm(const VectorGrid& grid) {
  if (grid.cells.size() != grid.rows * grid.cols) {
    throw Error(ErrorCode::DimensionMismatch, "grid cell count");
  }
  if (grid.cells.empty()) return 0.0;
  const std::size_t d = grid.cells.front().size();
  ComplexMatrix stacked(grid.rows * d, grid.cols);
  for (std::size_t i = 0; i < grid.rows; ++i) {
    for (std::size_t j = 0; j < grid.cols; ++j) {
      const auto& h = grid.at(i, j);
      if (h.size() != d) {
        throw Error(ErrorCode::DimensionMismatch, "grid vectors differ in length");
      }
      for (std::size_t l = 0; l < d; ++l) stacked(i * d + l, j) = h[l];
    }
  }
  return operator_norm(stacked);
}

}  // namespace logmod
