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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "logmod/domination.hpp"
#include "logmod/error.hpp"
#include "logmod/random.hpp"

using namespace logmod;

namespace {

SubspaceMap random_function_map(Rng& rng, std::size_t d, std::size_t points, std::size_t h) {
  FunctionBasis fb{points, {}};
  for (std::size_t i = 0; i < d; ++i) fb.elements.push_back(rng.complex_vector(points));
  SubspaceMap psi{fb, {}};
  for (std::size_t i = 0; i < d; ++i) psi.images.push_back(rng.complex_vector(h));
  return psi;
}

SubspaceMap first_row_map(std::size_t m, double scale) {
  MatrixBasis mb{m, {}};
  SubspaceMap psi{mb, {}};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::get<MatrixBasis>(psi.domain).elements.push_back(ComplexMatrix::unit(m, m, i, j));
      // e_1^* x as a vector of C^m: entry j is x_{1j}.
      CVector y(m, cx{});
      if (i == 0) y[j] = scale;
      psi.images.push_back(y);
    }
  return psi;
}

SubspaceMap first_column_map(std::size_t m) {
  SubspaceMap psi = first_row_map(m, 1.0);
  auto& mb = std::get<MatrixBasis>(psi.domain);
  for (std::size_t k = 0; k < mb.elements.size(); ++k) {
    const std::size_t i = k / m;
    const std::size_t j = k % m;
    CVector y(m, cx{});
    if (j == 0) y[i] = 1.0;
    psi.images[k] = y;
  }
  return psi;
}

}  // namespace

TEST_CASE("two_summing_norm examples") {
  SECTION("one point") {
    SubspaceMap psi{FunctionBasis{1, {{cx{1.0}}}}, {{cx{0.6}, cx{0.0, 0.8}}}};
    const auto c = two_summing_norm(psi);
    CHECK(std::abs(c.value - 1.0) < 1e-8);
    CHECK(std::abs(c.measure[0] - 1.0) < 1e-12);
  }
  SECTION("two points uniform") {
    const double r = 1.0 / std::sqrt(2.0);
    SubspaceMap psi{FunctionBasis{2, {{cx{1.0}, cx{0.0}}, {cx{0.0}, cx{1.0}}}},
                    {{cx{r}, cx{0.0}}, {cx{0.0}, cx{r}}}};
    const auto c = two_summing_norm(psi);
    CHECK(std::abs(c.value - 1.0) < 1e-8);
    CHECK(std::abs(c.measure[0] - 0.5) < 1e-8);
    CHECK(std::abs(c.measure[1] - 0.5) < 1e-8);
    // The row (delta_1, delta_2) has sup norm 1 and image row norm 1.
    CHECK(cb_level_norm(psi, Side::row, 1, 2, 200, 0) >= 1.0 - 1e-9 - 0.2);
    CHECK(row_ratio(psi, {{cx{1.0}, cx{0.0}}, {cx{0.0}, cx{1.0}}}) >= 1.0 - 1e-12);
  }
  SECTION("point evaluation times a vector of norm 2") {
    SubspaceMap psi{FunctionBasis{3, {{cx{1.0}, cx{0.0}, cx{0.0}}}}, {{cx{2.0}, cx{0.0}}}};
    const auto c = two_summing_norm(psi);
    CHECK(std::abs(c.value - 2.0) < 1e-8);
    CHECK(std::abs(c.measure[0] - 1.0) < 1e-8);
  }
  SECTION("zero map") {
    SubspaceMap psi{FunctionBasis{2, {{cx{1.0}, cx{1.0}}}}, {{cx{0.0}}}};
    const auto c = two_summing_norm(psi);
    CHECK(c.value == 0.0);
    CHECK(std::abs(c.measure[0] - 0.5) < 1e-15);
    CHECK(cb_level_norm(psi, Side::row, 2, 2, 10, 1) == 0.0);
  }
}

TEST_CASE("two_summing_norm certificates on random instances") {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.index(6);
    const std::size_t points = d + rng.index(21 - d);
    const auto psi = random_function_map(rng, d, points, 1 + rng.index(4));
    const auto c = two_summing_norm(psi);
    const double a2 = c.value;
    INFO("trial " << trial << " d " << d << " N " << points);

    double mass = 0.0;
    for (double m : c.measure) {
      CHECK(m >= 0.0);
      mass += m;
    }
    CHECK(std::abs(mass - 1.0) <= 1e-9);
    CHECK(c.gap <= 1e-6 * (1.0 + a2 * a2));
    CHECK(min_eigenvalue(c.dual) >= -1e-9);

    double worst = INFINITY;
    for (int k = 0; k < 1000; ++k) {
      const auto alpha = rng.complex_vector(d);
      const double scale = std::pow(norm(alpha), 2);
      worst = std::min(worst, domination_slack(psi, c, alpha) / scale);
    }
    CHECK(worst >= -1e-8);

    // The dual certificate gives a row attaining a_2, and sampled levels stay below.
    CHECK(row_ratio(psi, witness_family(c)) >= a2 - 1e-6);
    double previous = 0.0;
    for (std::size_t k = 1; k <= d; ++k) {
      const double level = cb_level_norm(psi, Side::row, 1, k, 20, trial);
      CHECK(level >= previous);
      CHECK(level <= a2 + 1e-8);
      previous = level;
    }
    CHECK(cb_level_norm(psi, Side::row, 2, 2, 10, trial) <= a2 + 1e-8);
  }
}

TEST_CASE("dominating_state examples") {
  for (std::size_t m = 1; m <= 4; ++m) {
    INFO("m " << m);
    const auto psi = first_row_map(m, 1.0);
    const auto c = dominating_state(psi, Side::row);
    CHECK(std::abs(c.value - 1.0) < 1e-6);
    CHECK(std::abs(c.density(0, 0) - 1.0) < 1e-6);
    CHECK(std::abs(c.density.trace() - 1.0) < 1e-9);
    const ComplexMatrix slack =
        c.value * c.value * state_gram(psi, c.density, Side::row) - image_gram(psi);
    CHECK(min_eigenvalue(hermitian_part(slack)) >= -1e-8);

    const auto doubled = first_row_map(m, 2.0);
    CHECK(dominating_state(doubled, Side::row).value >= 2.0 - 1e-6);
    try {
      dominating_state(doubled, Side::row, {1e-8, true});
      FAIL("expected Infeasible");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Infeasible);
    }
  }
  const auto col = dominating_state(first_column_map(2), Side::column);
  CHECK(std::abs(col.value - 1.0) < 1e-6);
  CHECK(std::abs(col.density(0, 0) - 1.0) < 1e-6);

  SubspaceMap zero = first_row_map(2, 0.0);
  const auto z = dominating_state(zero, Side::row);
  CHECK(z.value == 0.0);
}

TEST_CASE("states on diagonal matrices reproduce the 2-summing norm") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + rng.index(3);
    const std::size_t points = d + rng.index(3);
    const auto psi = random_function_map(rng, d, points, 2);
    MatrixBasis mb{points, {}};
    for (const auto& f : std::get<FunctionBasis>(psi.domain).elements)
      mb.elements.push_back(ComplexMatrix::diagonal(std::span<const cx>(f)));
    const SubspaceMap diag{mb, psi.images};
    const double a2 = two_summing_norm(psi).value;
    CHECK(std::abs(dominating_state(diag, Side::row).value - a2) <= 1e-7 * (1.0 + a2));
    CHECK(std::abs(dominating_state(diag, Side::column).value - a2) <= 1e-7 * (1.0 + a2));
  }
}

TEST_CASE("row and column values agree on adjoint data") {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng.index(2);
    const std::size_t d = 1 + rng.index(4);
    MatrixBasis mb{m, {}};
    MatrixBasis adj{m, {}};
    std::vector<CVector> images;
    std::vector<CVector> conj_images;
    for (std::size_t i = 0; i < d; ++i) {
      const auto b = rng.complex_matrix(m, m);
      mb.elements.push_back(b);
      adj.elements.push_back(b.adjoint());
      auto y = rng.complex_vector(2);
      CVector cy(y.size());
      for (std::size_t k = 0; k < y.size(); ++k) cy[k] = std::conj(y[k]);
      images.push_back(y);
      conj_images.push_back(cy);
    }
    const double row = dominating_state({mb, images}, Side::row).value;
    const double col = dominating_state({adj, conj_images}, Side::column).value;
    CHECK(std::abs(row - col) <= 1e-8 * (1.0 + row));
  }
}

TEST_CASE("sampled column norms stay below the column state value") {
  Rng rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t m = 2;
    MatrixBasis mb{m, {}};
    std::vector<CVector> images;
    for (std::size_t i = 0; i < 3; ++i) {
      mb.elements.push_back(rng.complex_matrix(m, m));
      images.push_back(rng.complex_vector(3));
    }
    const SubspaceMap psi{mb, images};
    const double col = dominating_state(psi, Side::column).value;
    for (std::size_t r = 1; r <= 3; ++r)
      for (std::size_t c = 1; c <= 3; ++c)
        CHECK(cb_level_norm(psi, Side::column, r, c, 10, trial) <= col + 1e-8);
  }
}

TEST_CASE("subspace map validation") {
  SubspaceMap dependent{FunctionBasis{2, {{cx{1.0}, cx{1.0}}, {cx{2.0}, cx{2.0}}}},
                        {{cx{1.0}}, {cx{1.0}}}};
  CHECK_THROWS_AS(validate(dependent), Error);
  SubspaceMap ragged{FunctionBasis{2, {{cx{1.0}, cx{1.0}}}}, {{cx{1.0}, cx{2.0}}, {cx{1.0}}}};
  CHECK_THROWS_AS(validate(ragged), Error);
  CHECK_THROWS_AS(two_summing_norm(first_row_map(2, 1.0)), Error);
}
