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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "logmod/domination.hpp"
#include "logmod/linalg.hpp"
#include "logmod/pattern.hpp"
#include "logmod/random.hpp"

namespace logmod {

/// A representation of the pattern algebra A(p) on C^dim, given on the
/// matrix units E_{i,j} with (i,j) in the pattern.
struct PatternRepresentation {
  Pattern pattern{1};
  std::size_t dim = 0;
  std::map<IndexPair, ComplexMatrix> images;

  /// rho(E_{i,j}); throws InvalidArgument when (i,j) is not in the pattern.
  const ComplexMatrix& image(std::size_t i, std::size_t j) const;
  /// rho(a) for a supported on the pattern; throws InvalidArgument when a
  /// has an entry above 1e-12 outside it.
  ComplexMatrix operator()(const ComplexMatrix& a) const;
};

/// Checks that images exist for exactly the pattern pairs, have size dim,
/// sum to the identity on the diagonal and multiply like matrix units, all
/// within tol. Throws InvalidArgument or DimensionMismatch.
void validate(const PatternRepresentation& rho, double tol = 1e-10);

/// The inclusion A(p) -> M_n.
PatternRepresentation identity_representation(const Pattern& p);

/// Compression to the first class of the preorder: a -> a restricted to the
/// indices equivalent to the smallest minimal index. For upper triangular
/// patterns this is a -> a_{11}. Throws NotTransitive.
PatternRepresentation corner_representation(const Pattern& p);

/// rho_1 (+) rho_2 on C^{d_1 + d_2}; both must share the pattern.
PatternRepresentation direct_sum(const PatternRepresentation& a, const PatternRepresentation& b);

/// A random element of A(p): complex Gaussian entries on the pattern.
ComplexMatrix random_element(const Pattern& p, std::uint64_t seed, std::uint64_t stream);
ComplexMatrix random_element(const Pattern& p, Rng& rng);

/// Minimum over sampled n-tuples (a_1, ..., a_n) in A(p), normalized to
/// norm 1 as a block row (Side::row) or block column (Side::column), of
/// 1 - ||(rho(a_1), ..., rho(a_n))||. Negative values witness a violation.
double rn_margin(const PatternRepresentation& rho, std::size_t n, std::size_t samples,
                 std::uint64_t seed, Side side = Side::row);

/// A function h -> phi(h) on C^dim that is meant to be a bounded quadratic
/// form.
struct QuadraticFormOracle {
  std::size_t dim = 0;
  std::function<cx(std::span<const cx>)> evaluate;
};

/// The operator T with phi(h) = <Th, h>, by polarization on basis pairs.
/// Throws NotQuadratic when sampled scaling or parallelogram identities or
/// the final reproduction check fail at relative tolerance 1e-9.
ComplexMatrix polarization_reconstruct(const QuadraticFormOracle& phi, std::uint64_t seed = 0);

/// A family h -> gamma(h) of positive functionals on M_size, each given by
/// its density matrix D(h) (gamma(h)(b) = tr(D(h) b)), h in C^dim.
struct FunctionalFamily {
  std::size_t dim = 0;
  std::size_t size = 0;
  std::function<ComplexMatrix(std::span<const cx>)> evaluate;
};

/// A linear map Phi: M_m -> M_d stored through its Choi-style block matrix
/// whose (i,j) block is Phi(E_{i,j}).
struct PositiveMapOnMatrices {
  std::size_t m = 0;
  std::size_t d = 0;
  ComplexMatrix choi;

  ComplexMatrix unit_image(std::size_t i, std::size_t j) const {
    return choi.block(i * d, j * d, d, d);
  }
  ComplexMatrix operator()(const ComplexMatrix& b) const;
};

/// Minimum of <Phi(xi xi^*) eta, eta> over sampled unit vectors.
double sampled_positivity(const PositiveMapOnMatrices& phi, std::size_t samples,
                          std::uint64_t seed);

/// Phi with <Phi(b) h, h> = gamma(h)(b), by polarization of each density
/// entry. `checks` random pairs (h, k) are tested for scaling and the
/// parallelogram law first. Throws NotQuadraticFamily.
PositiveMapOnMatrices assemble_positive_map(const FunctionalFamily& gamma,
                                            std::size_t checks = 20, std::uint64_t seed = 0);

struct FunctionalOptions {
  double tol = 1e-8;
  std::size_t uniqueness_objectives = 5;
  std::uint64_t seed = 0;
};

struct DominatingFunctional {
  ComplexMatrix density;          // sigma with phi_h(b) = tr(sigma b); trace ||h||^2
  double slack = 0.0;             // smallest eigenvalue over the constraint blocks
  double uniqueness_spread = 0.0; // max Frobenius distance across objectives
  std::size_t free_parameters = 0;
};

/// The positive functional phi_h on M_n that agrees with <rho(.)h, h> on
/// A(p) and dominates a -> ||rho(a)h||^2 on a^*a and a -> ||rho(a)^*h||^2
/// on aa^*. Throws Infeasible when no such functional exists.
DominatingFunctional dominating_functional(const PatternRepresentation& rho,
                                           std::span<const cx> h,
                                           const FunctionalOptions& opts = {});

struct ExtensionReport {
  PositiveMapOnMatrices map;
  double extension_error = 0.0;        // max ||Phi(E_ij) - rho(E_ij)|| over the pattern
  double schwarz_gap = 0.0;            // min eigenvalue of the Schwarz gap matrices
  double parallelogram_residual = 0.0; // on the polarization grid
  double uniqueness_spread = 0.0;
  double positivity = 0.0;             // sampled block positivity
};

struct ExtensionOptions {
  FunctionalOptions functional;
  std::size_t schwarz_samples = 100;
  std::size_t positivity_samples = 200;
  double parallelogram_tol = 1e-6;
};

/// The positive extension Phi of rho to M_n, assembled from phi_h on the
/// grid e_p, e_p +- e_q, e_p +- i e_q. Throws Infeasible or
/// ParallelogramViolation.
ExtensionReport positive_extension(const PatternRepresentation& rho,
                                   const ExtensionOptions& opts = {});

struct NaimarkDilation {
  ComplexMatrix isometry;                  // V: C^d -> C^D
  std::vector<ComplexMatrix> projections;  // E_x on C^D
};

/// Projection-valued dilation of a finite POVM: V^* E_x V = F_x. Throws
/// NotPOVM.
NaimarkDilation naimark_dilate(const std::vector<ComplexMatrix>& povm);

}  // namespace logmod
