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

#include "logmod/random.hpp"

#include <cmath>

#include "logmod/error.hpp"

namespace logmod {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return normal_(engine_); }

cx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cx{re, im} * M_SQRT1_2;
}

std::size_t Rng::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

CVector Rng::complex_vector(std::size_t n) {
  CVector v(n);
  for (auto& z : v) z = complex_normal();
  return v;
}

CVector Rng::unit_vector(std::size_t n) {
  CVector v = complex_vector(n);
  double s = norm(v);
  while (s == 0.0) {
    v = complex_vector(n);
    s = norm(v);
  }
  for (auto& z : v) z /= s;
  return v;
}

ComplexMatrix Rng::complex_matrix(std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = complex_normal();
  return m;
}

ComplexMatrix Rng::positive_definite(std::size_t n, double shift) {
  const ComplexMatrix b = complex_matrix(n, n);
  ComplexMatrix p = hermitian_part(adjoint_times(b, b));
  for (std::size_t i = 0; i < n; ++i) p(i, i) += shift;
  return p;
}

ComplexMatrix Rng::isometry(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::InvalidArgument, "isometry needs k <= n");
  ComplexMatrix q = complex_matrix(n, k);
  // Modified Gram-Schmidt, repeated once for stability.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        cx s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < n; ++r) q(r, j) -= s * q(r, i);
      }
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += std::norm(q(r, j));
      s = std::sqrt(s);
      for (std::size_t r = 0; r < n; ++r) q(r, j) /= s;
    }
  }
  return q;
}

ComplexMatrix Rng::unitary(std::size_t n) { return isometry(n, n); }

ComplexMatrix Rng::hermitian(std::size_t n) {
  return hermitian_part(complex_matrix(n, n));
}

}  // namespace logmod
