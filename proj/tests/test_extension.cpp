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

#include "logmod/error.hpp"
#include "logmod/extension.hpp"
#include "logmod/random.hpp"

using namespace logmod;

namespace {

ComplexMatrix identity_choi(std::size_t n) {
  ComplexMatrix c(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i * n + i, j * n + j) = 1.0;
  return c;
}

PatternRepresentation doubled_corner() {
  auto rho = identity_representation(Pattern::upper_triangular(2));
  rho.images[{0, 1}] = 2.0 * rho.images[{0, 1}];
  return rho;
}

std::vector<ComplexMatrix> random_povm(Rng& rng, std::size_t d, std::size_t outcomes) {
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total(d, d);
  for (std::size_t x = 0; x < outcomes; ++x) {
    const auto b = rng.complex_matrix(d, 1 + rng.index(d));
    parts.push_back(b * b.adjoint());
    total += parts.back();
  }
  // Keep the sum invertible when every part is rank deficient.
  parts.back() += 0.05 * ComplexMatrix::identity(d);
  total += 0.05 * ComplexMatrix::identity(d);
  const auto eig = herm_eig(total);
  ComplexMatrix root_inv(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const auto v = eig.vectors.col(k);
    root_inv += (1.0 / std::sqrt(eig.values[k])) * outer(v, v);
  }
  for (auto& p : parts) p = hermitian_part(root_inv * p * root_inv);
  // Remove the rounding from the sum so the POVM check sees an exact identity.
  ComplexMatrix defect = ComplexMatrix::identity(d);
  for (const auto& p : parts) defect -= p;
  parts.back() += defect;
  return parts;
}

}  // namespace

TEST_CASE("built-in representations are unital homomorphisms") {
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{{1}, {1, 1}, {2, 1}, {1, 2, 1}, {1, 1, 1, 1, 1}}) {
    const auto p = Pattern::block_upper_triangular(sizes);
    const auto id = identity_representation(p);
    const auto corner = corner_representation(p);
    CHECK_NOTHROW(validate(id));
    CHECK_NOTHROW(validate(corner));
    CHECK(corner.dim == sizes.front());
    CHECK_NOTHROW(validate(direct_sum(id, corner)));
  }
  const auto corner = corner_representation(Pattern::upper_triangular(2));
  const ComplexMatrix a{{2.0, 3.0}, {0.0, 5.0}};
  CHECK(corner(a) == ComplexMatrix{{2.0}});
  CHECK_THROWS_AS(corner(ComplexMatrix{{1.0, 0.0}, {1.0, 1.0}}), Error);
  // Lower triangular: the first class is the last index.
  const auto lower = corner_representation(Pattern::lower_triangular(3));
  CHECK_NOTHROW(validate(lower));
  CHECK(lower.image(2, 2) == ComplexMatrix{{1.0}});
  // E_12 -> 2 E_12 is still a homomorphism; it fails only contractivity.
  CHECK_NOTHROW(validate(doubled_corner()));
  auto broken = identity_representation(Pattern::upper_triangular(2));
  broken.images[{0, 0}] = 2.0 * broken.images[{0, 0}];
  CHECK_THROWS_AS(validate(broken), Error);
}

TEST_CASE("rn_margin examples") {
  const auto id = identity_representation(Pattern::upper_triangular(2));
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(rn_margin(id, n, 200, n, Side::row) >= -1e-12);
    CHECK(rn_margin(id, n, 200, n, Side::column) >= -1e-12);
  }
  const auto corner = corner_representation(Pattern::upper_triangular(2));
  CHECK(rn_margin(corner, 4, 500, 1, Side::row) >= -1e-9);
  CHECK(rn_margin(corner, 4, 500, 1, Side::column) >= -1e-9);
  CHECK(rn_margin(doubled_corner(), 2, 1000, 0, Side::row) < 0.0);
}

TEST_CASE("polarization_reconstruct examples") {
  const auto t1 = polarization_reconstruct({3, [](std::span<const cx> h) {
                                              return cx{std::pow(norm(h), 2)};
                                            }});
  CHECK((t1 - ComplexMatrix::identity(3)).max_abs() < 1e-12);
  const auto t2 = polarization_reconstruct({2, [](std::span<const cx> h) {
                                              return cx{std::norm(h[0]) - std::norm(h[1])};
                                            }});
  CHECK((t2 - ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}).max_abs() < 1e-12);

  Rng rng(21);
  for (int round = 0; round < 100; ++round) {
    const std::size_t d = 1 + rng.index(6);
    const ComplexMatrix t0 = rng.complex_matrix(d, d);
    const auto t = polarization_reconstruct(
        {d, [&](std::span<const cx> h) { return inner(t0 * h, h); }}, round);
    CHECK((t - t0).max_abs() <= 1e-10);
  }

  CHECK_THROWS_AS(polarization_reconstruct({2, [](std::span<const cx> h) { return cx{std::abs(h[0])}; }}),
                  Error);
  try {
    polarization_reconstruct({2, [](std::span<const cx> h) { return h[0] * h[0]; }});
    FAIL("expected NotQuadratic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotQuadratic);
  }
}

TEST_CASE("assemble_positive_map examples") {
  Rng rng(22);
  SECTION("rank one family") {
    const auto b = rng.complex_matrix(3, 3);
    ComplexMatrix s0 = b * b.adjoint();
    s0 *= 1.0 / s0.trace().real();
    const auto phi = assemble_positive_map(
        {2, 3, [&](std::span<const cx> h) { return std::pow(norm(h), 2) * s0; }});
    const auto x = rng.complex_matrix(3, 3);
    CHECK((phi(x) - trace_product(s0, x) * ComplexMatrix::identity(2)).max_abs() < 1e-12);
  }
  SECTION("identity map") {
    const auto phi = assemble_positive_map({3, 3, [](std::span<const cx> h) { return outer(h, h); }});
    CHECK((phi.choi - identity_choi(3)).max_abs() < 1e-12);
  }
  SECTION("compression by random isometries") {
    for (int round = 0; round < 100; ++round) {
      const std::size_t m = 2 + rng.index(4);
      const std::size_t d = 1 + rng.index(m);
      const auto v = rng.isometry(m, d);
      const auto phi = assemble_positive_map(
          {d, m, [&](std::span<const cx> h) {
             const CVector vh = v * h;
             return outer(vh, vh);
           }},
          5, round);
      const auto b = rng.complex_matrix(m, m);
      CHECK((phi(b) - v.adjoint() * b * v).max_abs() <= 1e-8);
    }
  }
  SECTION("non-quadratic family") {
    try {
      assemble_positive_map({2, 2, [](std::span<const cx> h) { return norm(h) * ComplexMatrix::identity(2); }});
      FAIL("expected NotQuadraticFamily");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotQuadraticFamily);
    }
  }
}

TEST_CASE("dominating_functional examples") {
  const auto ut2 = identity_representation(Pattern::upper_triangular(2));
  const CVector e1{1.0, 0.0};
  auto f = dominating_functional(ut2, e1);
  CHECK((f.density - ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}).max_abs() < 1e-12);
  CHECK(f.slack >= -1e-12);
  CHECK(f.free_parameters == 0);

  const double r = 1.0 / std::sqrt(2.0);
  const CVector h{r, r};
  f = dominating_functional(identity_representation(Pattern::full(2)), h);
  CHECK((f.density - outer(h, h)).max_abs() < 1e-12);

  f = dominating_functional(corner_representation(Pattern::upper_triangular(2)), CVector{1.0});
  CHECK((f.density - ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}).max_abs() < 1e-12);

  f = dominating_functional(ut2, CVector{0.0, 0.0});
  CHECK(f.density.max_abs() == 0.0);

  try {
    dominating_functional(doubled_corner(), CVector{r, r});
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
}

TEST_CASE("dominating_functional with free entries reports the spread") {
  // On the diagonal algebra the off-diagonal entry is unconstrained up to positivity.
  const auto rho = identity_representation(Pattern::diagonal(2));
  const double r = 1.0 / std::sqrt(2.0);
  const auto f = dominating_functional(rho, CVector{r, r});
  CHECK(f.free_parameters == 2);
  CHECK(f.slack >= -1e-8);
  CHECK(std::abs(f.density(0, 0) - 0.5) < 1e-9);
  CHECK(f.uniqueness_spread > 0.1);
}

TEST_CASE("positive_extension of built-in representations") {
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{{1, 1}, {2, 1}, {1, 2, 1}, {1, 1, 1, 1}}) {
    const auto p = Pattern::block_upper_triangular(sizes);
    const auto id = identity_representation(p);
    const auto rep = positive_extension(id);
    INFO("blocks " << sizes.size());
    CHECK((rep.map.choi - identity_choi(p.size())).max_abs() <= 1e-7);
    CHECK(rep.extension_error <= 1e-7);
    CHECK(rep.schwarz_gap >= -1e-7);
    CHECK(rep.parallelogram_residual <= 1e-6);
    CHECK(rep.uniqueness_spread <= 1e-6);
    CHECK(rep.positivity >= -1e-9);

    const auto corner = corner_representation(p);
    const auto crep = positive_extension(corner);
    CHECK(crep.extension_error <= 1e-7);
    CHECK(crep.schwarz_gap >= -1e-7);

    const auto sum = positive_extension(direct_sum(id, corner));
    const std::size_t n = p.size();
    const std::size_t dc = corner.dim;
    Rng rng(sizes.size());
    for (int s = 0; s < 5; ++s) {
      const auto b = rng.complex_matrix(n, n);
      const auto img = sum.map(b);
      CHECK((img.block(0, 0, n, n) - rep.map(b)).max_abs() <= 1e-7);
      CHECK((img.block(n, n, dc, dc) - crep.map(b)).max_abs() <= 1e-7);
      CHECK(img.block(0, n, n, dc).max_abs() <= 1e-7);
    }
  }
  const auto crep = positive_extension(corner_representation(Pattern::upper_triangular(2)));
  const ComplexMatrix b{{3.0, 1.0}, {2.0, 7.0}};
  CHECK((crep.map(b) - ComplexMatrix{{3.0}}).max_abs() <= 1e-12);
}

TEST_CASE("extension reproduces independently solved functionals") {
  const auto p = Pattern::block_upper_triangular({1, 2});
  const auto rho = direct_sum(identity_representation(p), corner_representation(p));
  const auto rep = positive_extension(rho);
  Rng rng(31);
  for (int s = 0; s < 50; ++s) {
    const auto h = rng.complex_vector(rho.dim);
    const auto b = rng.complex_matrix(p.size(), p.size());
    const auto f = dominating_functional(rho, h);
    CHECK(std::abs(inner(rep.map(b) * std::span<const cx>(h), h) - trace_product(f.density, b)) <=
          1e-6 * (1.0 + std::pow(norm(h), 2) * b.frobenius_norm()));
  }
}

TEST_CASE("positive_extension rejects a non-contractive representation") {
  CHECK_THROWS_AS(positive_extension(doubled_corner()), Error);
}

TEST_CASE("naimark_dilate examples") {
  SECTION("projections") {
    const std::vector<ComplexMatrix> f{ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
                                       ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}};
    const auto n = naimark_dilate(f);
    CHECK(n.isometry.rows() == 2);
    for (std::size_t x = 0; x < 2; ++x)
      CHECK((adjoint_times(n.isometry, n.projections[x] * n.isometry) - f[x]).max_abs() < 1e-12);
  }
  SECTION("coin") {
    const auto n = naimark_dilate({ComplexMatrix{{0.5}}, ComplexMatrix{{0.5}}});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(n.isometry.rows() == 2);
    CHECK(std::abs(std::abs(n.isometry(0, 0)) - r) < 1e-12);
    CHECK(std::abs(std::abs(n.isometry(1, 0)) - r) < 1e-12);
    CHECK(n.projections[0] == ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  }
  SECTION("half identities") {
    const auto half = 0.5 * ComplexMatrix::identity(2);
    CHECK(naimark_dilate({half, half}).isometry.rows() == 4);
  }
  SECTION("not a POVM") {
    try {
      naimark_dilate({ComplexMatrix{{0.5}}});
      FAIL("expected NotPOVM");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPOVM);
    }
    CHECK_THROWS_AS(naimark_dilate({ComplexMatrix{{1.5}}, ComplexMatrix{{-0.5}}}), Error);
  }
}

TEST_CASE("naimark_dilate round trips on random POVMs") {
  Rng rng(41);
  for (int round = 0; round < 100; ++round) {
    const std::size_t d = 1 + rng.index(6);
    const auto f = random_povm(rng, d, 1 + rng.index(8));
    const auto n = naimark_dilate(f);
    CHECK((adjoint_times(n.isometry, n.isometry) - ComplexMatrix::identity(d)).max_abs() <= 1e-8);
    ComplexMatrix sum = -1.0 * ComplexMatrix::identity(n.isometry.rows());
    for (std::size_t x = 0; x < f.size(); ++x) {
      CHECK((adjoint_times(n.isometry, n.projections[x] * n.isometry) - f[x]).max_abs() <= 1e-8);
      CHECK((n.projections[x] * n.projections[x] - n.projections[x]).max_abs() == 0.0);
      sum += n.projections[x];
    }
    CHECK(sum.max_abs() == 0.0);
  }
}
