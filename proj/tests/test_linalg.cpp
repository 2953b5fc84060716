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

#include <algorithm>
#include <cmath>

#include "catch_amalgamated.hpp"
#include "logmod/error.hpp"
#include "logmod/linalg.hpp"
#include "logmod/random.hpp"

using namespace logmod;
using Catch::Approx;

namespace {

double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

ComplexMatrix reconstruct(const HermitianEigen& e) {
  ComplexMatrix d = ComplexMatrix::diagonal(std::span<const double>(e.values));
  return e.vectors * d * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("herm_eig on small closed-form cases", "[linalg]") {
  SECTION("identity") {
    const auto e = herm_eig(ComplexMatrix::identity(2));
    CHECK(e.values == std::vector<double>{1.0, 1.0});
    CHECK(dist(e.vectors, ComplexMatrix::identity(2)) == 0.0);
  }
  SECTION("swap matrix has eigenvalues -1, 1") {
    const auto e = herm_eig({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(e.values[0] == Approx(-1.0).margin(1e-14));
    CHECK(e.values[1] == Approx(1.0).margin(1e-14));
  }
  SECTION("diagonal input sorts ascending with permutation eigenvectors") {
    const auto e = herm_eig({{3.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}});
    CHECK(e.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(std::abs(e.vectors(1, 0)) == 1.0);
    CHECK(std::abs(e.vectors(2, 1)) == 1.0);
    CHECK(std::abs(e.vectors(0, 2)) == 1.0);
  }
  SECTION("complex off-diagonal entries") {
    // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
    const auto e = herm_eig({{2.0, cx{0, 1}}, {cx{0, -1}, 2.0}});
    CHECK(e.values[0] == Approx(1.0).margin(1e-14));
    CHECK(e.values[1] == Approx(3.0).margin(1e-14));
  }
}

TEST_CASE("herm_eig reconstruction and orthonormality on random input", "[linalg]") {
  Rng rng(11);
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u}) {
    const ComplexMatrix h = rng.hermitian(n);
    const auto e = herm_eig(h);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    CHECK(dist(adjoint_times(e.vectors, e.vectors), ComplexMatrix::identity(n)) <= 1e-10);
    CHECK(dist(reconstruct(e), h) <= 1e-9 * (1.0 + h.frobenius_norm()));
    // Deterministic for fixed input.
    CHECK(herm_eig(h).values == e.values);
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input", "[linalg]") {
  const ComplexMatrix a{{1.0, 2.0}, {0.0, 1.0}};
  try {
    herm_eig(a);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("cholesky closed-form factors", "[linalg]") {
  SECTION("identity") {
    CHECK(dist(cholesky(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) == 0.0);
  }
  SECTION("[[2,1],[1,1]]") {
    const auto u = cholesky({{2.0, 1.0}, {1.0, 1.0}});
    const ComplexMatrix expected{{std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
                                 {0.0, 1.0 / std::sqrt(2.0)}};
    CHECK(dist(u, expected) <= 1e-15);
  }
  SECTION("rank one all-ones matrix zeroes the second row") {
    const auto u = cholesky({{1.0, 1.0}, {1.0, 1.0}});
    const ComplexMatrix expected{{1.0, 1.0}, {0.0, 0.0}};
    CHECK(dist(u, expected) <= 1e-15);
  }
  SECTION("indefinite input") {
    try {
      cholesky({{1.0, 2.0}, {2.0, 1.0}});
      FAIL("expected NotPSD");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPSD);
    }
  }
}

TEST_CASE("cholesky residual property", "[linalg][property]") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    const double eps = trial % 2 ? 1e-3 : 1.0;
    const ComplexMatrix p = rng.positive_definite(n, eps);
    const ComplexMatrix u = cholesky(p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) REQUIRE(u(i, j) == cx{});
    REQUIRE(dist(adjoint_times(u, u), p) <= 1e-8 * (1.0 + p.frobenius_norm()));
  }
  // Semidefinite: rank-deficient B^*B.
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix b = rng.complex_matrix(2, 5);
    const ComplexMatrix p = hermitian_part(adjoint_times(b, b));
    const ComplexMatrix u = cholesky(p);
    REQUIRE(dist(adjoint_times(u, u), p) <= 1e-8 * (1.0 + p.frobenius_norm()));
  }
}

TEST_CASE("operator_norm", "[linalg]") {
  CHECK(operator_norm(ComplexMatrix::identity(4)) == Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm({{0.0, 2.0}, {0.0, 0.0}}) == Approx(2.0).epsilon(1e-12));
  CHECK(operator_norm(ComplexMatrix::zeros(3, 2)) == 0.0);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng.index(6);
    const std::size_t n = 1 + rng.index(6);
    const ComplexMatrix a = rng.complex_matrix(m, n);
    const ComplexMatrix b = rng.complex_matrix(n, 3);
    const double na = operator_norm(a);
    // Unitary invariance.
    const ComplexMatrix u = rng.unitary(m);
    const ComplexMatrix v = rng.unitary(n);
    CHECK(std::abs(operator_norm(u * a * v) - na) <= 1e-9);
    // Submultiplicativity.
    CHECK(operator_norm(a * b) <= na * operator_norm(b) * (1.0 + 1e-12));
    // Lower bound by any unit vector, upper bound by Frobenius.
    const CVector x = rng.unit_vector(n);
    CHECK(norm(a * std::span<const cx>(x)) <= na * (1.0 + 1e-12));
    CHECK(na <= a.frobenius_norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("row and column block norms", "[linalg]") {
  const CVector e1{1.0, 0.0};
  const CVector e2{0.0, 1.0};
  SECTION("single unit vector") {
    VectorGrid g{1, 1, {e1}};
    CHECK(row_block_norm(g) == Approx(1.0));
    CHECK(col_block_norm(g) == Approx(1.0));
  }
  SECTION("1x2 row (e1, e2)") {
    VectorGrid g{1, 2, {e1, e2}};
    CHECK(row_block_norm(g) == Approx(std::sqrt(2.0)));
    CHECK(col_block_norm(g) == Approx(1.0));
  }
  SECTION("2x1 column (e1; e2)") {
    VectorGrid g{2, 1, {e1, e2}};
    CHECK(row_block_norm(g) == Approx(1.0));
    CHECK(col_block_norm(g) == Approx(std::sqrt(2.0)));
  }
  SECTION("1x1 grids reduce to the Euclidean norm") {
    Rng rng(5);
    const CVector v = rng.complex_vector(4);
    VectorGrid g{1, 1, {v}};
    CHECK(row_block_norm(g) == Approx(norm(v)).epsilon(1e-12));
    CHECK(col_block_norm(g) == Approx(norm(v)).epsilon(1e-12));
  }
  SECTION("row of n vectors vs column of the same vectors") {
    // The 1 x n row norm and the n x 1 column norm both equal
    // (sum ||h_l||^2)^{1/2}.
    Rng rng(6);
    VectorGrid row{1, 3, {rng.complex_vector(2), rng.complex_vector(2), rng.complex_vector(2)}};
    VectorGrid col{3, 1, row.cells};
    double s = 0.0;
    for (const auto& h : row.cells) s += std::pow(norm(h), 2);
    CHECK(row_block_norm(row) == Approx(std::sqrt(s)).epsilon(1e-12));
    CHECK(col_block_norm(col) == Approx(std::sqrt(s)).epsilon(1e-12));
  }
  SECTION("mismatched vector lengths") {
    VectorGrid g{1, 2, {e1, CVector{1.0}}};
    CHECK_THROWS_AS(row_block_norm(g), Error);
    CHECK_THROWS_AS(col_block_norm(g), Error);
  }
}

TEST_CASE("general eigenvalues", "[linalg]") {
  SECTION("companion matrix of (z-1)(z-2)(z+3i)") {
    // z^3 + (-3 + 3i) z^2 + (2 - 9i) z + 6i
    const cx c2{-3.0, 3.0}, c1{2.0, -9.0}, c0{0.0, 6.0};
    const ComplexMatrix comp{{-c2, -c1, -c0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    auto ev = eigenvalues(comp);
    REQUIRE(ev.size() == 3);
    for (cx root : {cx{1, 0}, cx{2, 0}, cx{0, -3}}) {
      double best = 1e9;
      for (auto z : ev) best = std::min(best, std::abs(z - root));
      CHECK(best <= 1e-12);
    }
  }
  SECTION("power sums match traces of powers") {
    Rng rng(9);
    for (std::size_t n : {1u, 3u, 8u, 20u}) {
      const ComplexMatrix a = rng.complex_matrix(n, n);
      const auto ev = eigenvalues(a);
      ComplexMatrix pw = a;
      for (int k = 1; k <= 3; ++k) {
        cx s = 0.0;
        for (auto z : ev) s += std::pow(z, k);
        CHECK(std::abs(s - pw.trace()) <= 1e-9 * (1.0 + std::abs(pw.trace())) * n);
        pw = pw * a;
      }
    }
  }
}
