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
#include <variant>
#include <vector>

#include "logmod/linalg.hpp"
#include "logmod/sdp.hpp"

namespace logmod {

/// Basis of a subspace of C(X) for a finite set X of `points` points; each
/// basis element is its vector of values.
struct FunctionBasis {
  std::size_t points = 0;
  std::vector<CVector> elements;
};

/// Basis of a subspace of M_size.
struct MatrixBasis {
  std::size_t size = 0;
  std::vector<ComplexMatrix> elements;
};

/// A linear map from a finite-dimensional operator space into a Hilbert
/// space, given on a basis: psi(basis_i) = images_i.
struct SubspaceMap {
  std::variant<FunctionBasis, MatrixBasis> domain;
  std::vector<CVector> images;

  std::size_t dim() const { return images.size(); }
  std::size_t image_dim() const { return images.empty() ? 0 : images.front().size(); }
  bool on_functions() const { return std::holds_alternative<FunctionBasis>(domain); }
};

enum class Side { row, column };

/// Throws DimensionMismatch on inconsistent sizes and InvalidArgument when
/// the basis is empty or its Gram matrix has an eigenvalue below 1e-10.
void validate(const SubspaceMap& psi);

/// G[i,j] = <images_j, images_i>, so that alpha^* G alpha = ||psi(sum alpha_i b_i)||^2.
ComplexMatrix image_gram(const SubspaceMap& psi);

/// psi applied to the element with coefficients alpha.
CVector apply(const SubspaceMap& psi, std::span<const cx> alpha);

struct DominationCertificate {
  double value = 0.0;            // a_2, or sqrt of the optimal state mass
  std::vector<double> measure;   // probability weights (function domain)
  ComplexMatrix density;         // trace-one density (matrix domain)
  ComplexMatrix dual;            // Z >= 0
  double gap = 0.0;
};

/// 2-summing norm of a map on functions over a finite set, with a
/// dominating probability measure and the dual certificate.
DominationCertificate two_summing_norm(const SubspaceMap& psi, double tol = 1e-8);

/// value^2 * sum_x mu(x) |f(x)|^2 - ||psi(f)||^2 for f = sum alpha_i b_i.
double domination_slack(const SubspaceMap& psi, const DominationCertificate& cert,
                        std::span<const cx> alpha);

/// Coefficient vectors alpha_j with Z = sum_j alpha_j alpha_j^*.
std::vector<CVector> witness_family(const DominationCertificate& cert);

/// ||(psi(f_1), ..., psi(f_k))||_{R} / ||(f_1, ..., f_k)|| for the row of
/// elements with the given coefficient vectors; 0 when the row is zero.
double row_ratio(const SubspaceMap& psi, const std::vector<CVector>& family);

struct StateOptions {
  double tol = 1e-8;
  /// Throw Infeasible instead of returning a value above 1.
  bool require_contractive = false;
};

/// Smallest positive functional s on M_m with ||psi(x)||^2 <= s(xx^*)
/// (row) or s(x^*x) (column); value = sqrt(s(1)), density = s / s(1).
DominationCertificate dominating_state(const SubspaceMap& psi, Side side,
                                       const StateOptions& opts = {});

/// Gram of the state domination: alpha^* L alpha = s(xx^*) (row) or
/// s(x^*x) (column) for x = sum alpha_i b_i and s = tr(density .).
ComplexMatrix state_gram(const SubspaceMap& psi, const ComplexMatrix& density, Side side);

/// Sampled lower bound for the norm of psi at matrix level rows x cols into
/// the row or column Hilbert space. Every leading sub-block of each sample
/// is also evaluated, so the bound is monotone in the level for a fixed
/// seed. Deterministic in seed.
double cb_level_norm(const SubspaceMap& psi, Side side, std::size_t rows, std::size_t cols,
                     std::size_t samples, std::uint64_t seed);

}  // namespace logmod
